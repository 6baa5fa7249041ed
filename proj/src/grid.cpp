#include "diffalg/grid.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "diffalg/classify.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/pbw.hpp"
#include "diffalg/presentation.hpp"
#include "diffalg/rewrite.hpp"
#include "diffalg/transform.hpp"

namespace diffalg {

namespace {

struct Accumulator {
  long long total = 0;
  long long skipped = 0;
  long long pbw_pass = 0;
  std::map<std::string, long long> per_family;
  std::map<std::string, long long> per_refined;
  long long inconsistencies = 0;
  std::vector<std::pair<long long, std::string>> details;  // (point index, text)
};

std::string point_str(const Presentation& p) {
  std::ostringstream out;
  out << "u=(" << p.g(1, 2).str() << "," << p.g(1, 3).str() << "," << p.g(2, 3).str()
      << ") l=(" << p.g(2, 1).str() << "," << p.g(3, 1).str() << "," << p.g(3, 2).str()
      << ") x=(" << p.x(1).str() << "," << p.x(2).str() << "," << p.x(3).str() << ")";
  return out.str();
}

const std::vector<std::vector<int>>& relabelings() {
  static const std::vector<std::vector<int>> perms = {
      {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  return perms;
}

void visit_point(long long k, const Presentation& p, bool prune_symmetry,
                 Accumulator& acc) {
  ++acc.total;
  if (!p.validate().empty()) return;

  if (prune_symmetry) {
    std::string self = emit_presentation(p);
    for (const std::vector<int>& sigma : relabelings()) {
      try {
        if (emit_presentation(permute(p, sigma)) < self) {
          ++acc.skipped;
          return;
        }
      } catch (const OrderViolationError&) {
        // Relabeling leaves the contract's shape; not part of the orbit.
      }
    }
  }

  DiamondReport rep = is_pbw(p);
  if (!rep.passed) return;
  ++acc.pbw_pass;
  try {
    FamilyAssignment fa = classify_family(p);
    ++acc.per_family[family_name(fa.family)];
    ++acc.per_refined[fa.refined.empty() ? family_name(fa.family) : fa.refined];
  } catch (const Error& e) {
    ++acc.inconsistencies;
    acc.details.push_back({k, point_str(p) + ": " + e.what()});
  }
}

}  // namespace

GridSummary grid_search(const std::vector<Scalar>& uppers,
                        const std::vector<Scalar>& lowers,
                        const std::vector<Scalar>& xvals, int threads,
                        bool prune_symmetry) {
  if (uppers.empty() || lowers.empty() || xvals.empty())
    throw DomainError("grid value sets must be nonempty");
  if (threads < 1) throw DomainError("thread count must be positive");

  long long nu = static_cast<long long>(uppers.size());
  long long nl = static_cast<long long>(lowers.size());
  long long nx = static_cast<long long>(xvals.size());
  long long total = nu * nu * nu * nl * nl * nl * nx * nx * nx;

  auto decode = [&](long long k) {
    Presentation p(3);
    long long rest = k;
    auto digit = [&rest](long long base) {
      long long d = rest % base;
      rest /= base;
      return static_cast<std::size_t>(d);
    };
    p.set_x(3, xvals[digit(nx)]);
    p.set_x(2, xvals[digit(nx)]);
    p.set_x(1, xvals[digit(nx)]);
    p.set_g(3, 2, lowers[digit(nl)]);
    p.set_g(3, 1, lowers[digit(nl)]);
    p.set_g(2, 1, lowers[digit(nl)]);
    p.set_g(2, 3, uppers[digit(nu)]);
    p.set_g(1, 3, uppers[digit(nu)]);
    p.set_g(1, 2, uppers[digit(nu)]);
    return p;
  };

  std::vector<Accumulator> parts(static_cast<std::size_t>(threads));
  auto work = [&](int tid) {
    Accumulator& acc = parts[static_cast<std::size_t>(tid)];
    for (long long k = tid; k < total; k += threads)
      visit_point(k, decode(k), prune_symmetry, acc);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (std::thread& t : pool) t.join();
  }

  GridSummary s;
  std::vector<std::pair<long long, std::string>> details;
  for (const Accumulator& acc : parts) {
    s.total += acc.total;
    s.skipped += acc.skipped;
    s.pbw_pass += acc.pbw_pass;
    for (const auto& [f, c] : acc.per_family) s.per_family[f] += c;
    for (const auto& [r, c] : acc.per_refined) s.per_refined[r] += c;
    s.inconsistencies += acc.inconsistencies;
    details.insert(details.end(), acc.details.begin(), acc.details.end());
  }
  std::sort(details.begin(), details.end());
  for (auto& [k, d] : details) s.inconsistency_details.push_back(std::move(d));
  return s;
}

std::string format_grid_summary(const GridSummary& s) {
  std::ostringstream out;
  out << "total: " << s.total << "\n";
  out << "skipped: " << s.skipped << "\n";
  out << "pbw_pass: " << s.pbw_pass << "\n";
  for (const auto& [f, c] : s.per_family) out << "family " << f << ": " << c << "\n";
  for (const auto& [r, c] : s.per_refined) out << "refined " << r << ": " << c << "\n";
  out << "inconsistencies: " << s.inconsistencies << "\n";
  for (const std::string& d : s.inconsistency_details)
    out << "inconsistency: " << d << "\n";
  return out.str();
}

}  // namespace diffalg
