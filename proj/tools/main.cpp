// Command-line frontend for the diffusion-algebra library.
//
// Exit codes: 0 success, 1 domain failure (invalid presentation, failed
// diamond check, inapplicable transform, grid inconsistencies, ...),
// 2 usage or parse error (bad flags, malformed input files).

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "diffalg/classify.hpp"
#include "diffalg/construct.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/grid.hpp"
#include "diffalg/presentation.hpp"
#include "diffalg/rewrite.hpp"
#include "diffalg/transform.hpp"

namespace {

using namespace diffalg;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
  std::vector<Scalar> out;
  for (const std::string& s : split_list(text)) out.push_back(parse_scalar(s));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& s : split_list(text)) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + s + "' in list");
    }
  }
  return out;
}

void write_presentation(const Presentation& p, const std::string& output) {
  if (output.empty())
    std::cout << emit_presentation(p);
  else
    save_presentation_file(p, output);
}

struct NormalizeArgs {
  std::string input, word_text;
  bool trace = false, all_paths = false;
  std::size_t max_states = 100000;
};

int run_normalize(const NormalizeArgs& a) {
  Presentation p = load_presentation_file(a.input);
  p.ensure_valid();
  Word w = parse_word(a.word_text, p.generators());
  NormalizeTrace trace;
  PBWPolynomial nf = normalize(p, w, &trace);
  std::cout << "word: " << word_str(w) << "\n";
  std::cout << "normal form: " << nf.str() << "\n";
  std::cout << "steps: " << trace.measures.size() << "\n";
  if (a.trace) {
    for (std::size_t k = 0; k < trace.measures.size(); ++k)
      std::cout << "step " << (k + 1) << ": degree=" << trace.measures[k].first
                << " ascending-pairs=" << trace.measures[k].second << "\n";
  }
  if (a.all_paths) {
    std::vector<PBWPolynomial> terminals = normalize_all_paths(p, w, a.max_states);
    std::cout << "terminals: " << terminals.size() << "\n";
    for (std::size_t k = 0; k < terminals.size(); ++k)
      std::cout << "terminal " << (k + 1) << ": " << terminals[k].str() << "\n";
  }
  return 0;
}

int run_check(const std::string& input) {
  Presentation p = load_presentation_file(input);
  DiamondReport rep = is_pbw(p);
  std::cout << format_diamond(rep);
  return rep.passed ? 0 : 1;
}

int run_classify(const std::string& input) {
  Presentation p = load_presentation_file(input);
  FamilyAssignment fa = classify_family(p);
  std::cout << format_classification(fa, check_physical(p));
  return 0;
}

struct ConstructArgs {
  std::string type_name, spec_path, output;
  std::vector<std::string> params;
  bool unchecked = false, list_types = false;
};

int run_construct(const ConstructArgs& a) {
  if (a.list_types) {
    for (ThreeType t : all_three_types()) {
      std::cout << three_type_name(t) << ":";
      for (const std::string& k : three_type_param_keys(t)) std::cout << " " << k;
      std::cout << "\n";
    }
    return 0;
  }
  if (a.type_name.empty() == a.spec_path.empty())
    throw ParseError("construct needs exactly one of --type or --spec");
  Presentation p = [&] {
    if (!a.type_name.empty()) {
      ThreeType t = parse_three_type(a.type_name);
      ParamMap params;
      for (const std::string& kv : a.params) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
          throw ParseError("parameter '" + kv + "' is not of the form key=value");
        std::string key = kv.substr(0, eq);
        if (params.count(key)) throw ParseError("duplicate parameter '" + key + "'");
        params[key] = parse_scalar(kv.substr(eq + 1));
      }
      return a.unchecked ? build_three_unchecked(t, params) : build_three(t, params);
    }
    FamilySpec spec = load_family_spec_file(a.spec_path);
    return a.unchecked ? build_family_unchecked(spec) : build_family(spec);
  }();
  write_presentation(p, a.output);
  return 0;
}

struct BlendArgs {
  std::string plan_path, output;
  bool list_blocks = false;
};

int run_blend(const BlendArgs& a) {
  if (a.list_blocks) {
    for (const BlockKindInfo& info : elementary_blocks())
      std::cout << info.name << ": family " << family_name(info.family)
                << ", component " << info.u_kind << ", " << info.placement << "\n";
    return 0;
  }
  if (a.plan_path.empty()) throw ParseError("blend needs --plan");
  BlendPlan plan = load_blend_plan_file(a.plan_path);
  write_presentation(blend(plan), a.output);
  return 0;
}

struct EnumerateArgs {
  std::string plan_path;
  bool count_only = false;
  long long limit = 0;
};

int run_enumerate(const EnumerateArgs& a) {
  BlendPlan plan = load_blend_plan_file(a.plan_path);
  if (a.count_only) {
    std::cout << count_interleavings(plan.blocks) << "\n";
    return 0;
  }
  long long printed = 0;
  bool truncated = false;
  for_each_interleaving(plan.blocks, [&](const std::vector<PlanToken>& order) {
    if (a.limit > 0 && printed >= a.limit) {
      truncated = true;
      return false;
    }
    for (std::size_t k = 0; k < order.size(); ++k)
      std::cout << (k ? " " : "") << plan_token_str(order[k]);
    std::cout << "\n";
    ++printed;
    return true;
  });
  if (truncated)
    std::cout << "truncated: limit " << a.limit << " reached\n";
  else
    std::cout << "count: " << printed << "\n";
  return 0;
}

struct TransformArgs {
  std::string input, output, rescale_list, permute_list;
  bool do_mirror = false, do_shift = false;
};

int run_transform(const TransformArgs& a) {
  Presentation p = load_presentation_file(a.input);
  int modes = static_cast<int>(!a.rescale_list.empty()) +
              static_cast<int>(!a.permute_list.empty()) +
              static_cast<int>(a.do_mirror) + static_cast<int>(a.do_shift);
  if (modes != 1)
    throw ParseError(
        "transform needs exactly one of --rescale, --permute, --mirror, --shift-c");
  Presentation q = [&] {
    if (!a.rescale_list.empty()) return rescale(p, parse_scalar_list(a.rescale_list));
    if (!a.permute_list.empty()) return permute(p, parse_int_list(a.permute_list));
    if (a.do_mirror) return mirror(p);
    return shift_c_to_d(p);
  }();
  write_presentation(q, a.output);
  return 0;
}

struct GridArgs {
  std::string uppers, lowers, xvals;
  int threads = 1;
  bool prune = false;
};

int run_grid(const GridArgs& a) {
  GridSummary s = grid_search(parse_scalar_list(a.uppers), parse_scalar_list(a.lowers),
                              parse_scalar_list(a.xvals), a.threads, a.prune);
  std::cout << format_grid_summary(s);
  return s.inconsistencies == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffusion-algebra presentations: reduction, diamond checking, "
               "classification, construction, blending and transforms"};
  app.require_subcommand(1);

  NormalizeArgs na;
  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "reduce a word to its basis normal form");
  normalize_cmd->add_option("--input,-i", na.input, "presentation file")->required();
  normalize_cmd->add_option("--word,-w", na.word_text,
                            "space-separated generator indices, e.g. \"1 3 2\"")
      ->required();
  normalize_cmd->add_flag("--trace", na.trace, "print the termination measure per step");
  normalize_cmd->add_flag("--all-paths", na.all_paths,
                          "also explore every rewrite order and list the terminals");
  normalize_cmd->add_option("--max-states", na.max_states,
                            "state cap for --all-paths (default 100000)");

  std::string check_input;
  CLI::App* check_cmd =
      app.add_subcommand("check", "run the full diamond (confluence) check");
  check_cmd->add_option("--input,-i", check_input, "presentation file")->required();

  std::string classify_input;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "assign the family and recover its parameters");
  classify_cmd->add_option("--input,-i", classify_input, "presentation file")->required();

  ConstructArgs ca;
  CLI::App* construct_cmd = app.add_subcommand(
      "construct", "build a presentation from a template or a family spec");
  construct_cmd->add_option("--type,-t", ca.type_name,
                            "three-generator template name, e.g. \"B(3)\"");
  construct_cmd->add_option("--param,-p", ca.params,
                            "template parameter key=value (repeatable)");
  construct_cmd->add_option("--spec,-s", ca.spec_path, "family spec file");
  construct_cmd->add_option("--output,-o", ca.output, "write here instead of stdout");
  construct_cmd->add_flag("--unchecked", ca.unchecked,
                          "skip the parameter restrictions (shape still checked)");
  construct_cmd->add_flag("--list-types", ca.list_types,
                          "list the template names and their parameter keys");

  BlendArgs ba;
  CLI::App* blend_cmd =
      app.add_subcommand("blend", "combine building blocks along a token order");
  blend_cmd->add_option("--plan", ba.plan_path, "blend plan file");
  blend_cmd->add_option("--output,-o", ba.output, "write here instead of stdout");
  blend_cmd->add_flag("--list-blocks", ba.list_blocks, "list the block catalog");

  EnumerateArgs ea;
  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "enumerate the valid token orders for a plan's blocks");
  enumerate_cmd->add_option("--plan", ea.plan_path, "blend plan file (order ignored)")
      ->required();
  enumerate_cmd->add_flag("--count-only", ea.count_only, "print only the count");
  enumerate_cmd->add_option("--limit", ea.limit, "stop after this many orders");

  TransformArgs ta;
  CLI::App* transform_cmd =
      app.add_subcommand("transform", "apply a structure-preserving transform");
  transform_cmd->add_option("--input,-i", ta.input, "presentation file")->required();
  transform_cmd->add_option("--rescale", ta.rescale_list,
                            "comma-separated nonzero factors, one per generator");
  transform_cmd->add_option("--permute", ta.permute_list,
                            "comma-separated images sigma(1),...,sigma(n)");
  transform_cmd->add_flag("--mirror", ta.do_mirror, "reverse indices and products");
  transform_cmd->add_flag("--shift-c", ta.do_shift,
                          "remove the single x value when the shift applies");
  transform_cmd->add_option("--output,-o", ta.output, "write here instead of stdout");

  GridArgs ga;
  CLI::App* grid_cmd = app.add_subcommand(
      "grid-search", "sweep all three-generator presentations over value sets");
  grid_cmd->add_option("--uppers", ga.uppers, "comma-separated upper coefficients")
      ->required();
  grid_cmd->add_option("--lowers", ga.lowers, "comma-separated lower coefficients")
      ->required();
  grid_cmd->add_option("--xvals", ga.xvals, "comma-separated x values")->required();
  grid_cmd->add_option("--threads", ga.threads, "worker threads (default 1)");
  grid_cmd->add_flag("--prune-symmetry", ga.prune,
                     "keep only the smallest relabeling-orbit representative");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(normalize_cmd)) return run_normalize(na);
    if (app.got_subcommand(check_cmd)) return run_check(check_input);
    if (app.got_subcommand(classify_cmd)) return run_classify(classify_input);
    if (app.got_subcommand(construct_cmd)) return run_construct(ca);
    if (app.got_subcommand(blend_cmd)) return run_blend(ba);
    if (app.got_subcommand(enumerate_cmd)) return run_enumerate(ea);
    if (app.got_subcommand(transform_cmd)) return run_transform(ta);
    if (app.got_subcommand(grid_cmd)) return run_grid(ga);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
