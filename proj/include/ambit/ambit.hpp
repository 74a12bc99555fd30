#pragma once

// Construction of a single function whose right orbit meets every basic
// neighbourhood {f : |f(x) - h_U(x)| < eps_U on F_U} of a countable family.
//
// Pipeline:
//   enumerate_neighborhoods  deterministic fair stream of (F_U, h_U, eps_U)
//   greedy_select            x_U with x -> x x_U injective on F_U and the
//                            product sets F_U x_U pairwise disjoint
//   build_ambit_function     f(x x_U) = h_U(x), f = 0 elsewhere
//   verify_ambit             exhaustive re-check of the above

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ambit/orbit.hpp"
#include "ambit/rational.hpp"
#include "ambit/report.hpp"
#include "ambit/semigroup.hpp"
#include "ambit/uniform.hpp"

namespace ambit {

class BasicNeighborhood {
 public:
  BasicNeighborhood(Window support, std::map<Element, Rational> target, Rational epsilon)
      : f_(std::move(support)), eps_(std::move(epsilon)) {
    if (f_.empty()) throw Error(ErrorKind::InvariantError, "neighborhood window F is empty");
    if (eps_ <= 0) throw Error(ErrorKind::InvariantError, "neighborhood epsilon must be positive");
    if (target.size() != f_.size())
      throw Error(ErrorKind::InvariantError, "target h must be given exactly on F");
    for (const auto& [x, v] : target)
      if (v < 0 || v > 1) throw Error(ErrorKind::InvariantError, "target h leaves [0, 1]");
    h_ = WindowFunction(f_, std::move(target), std::nullopt);
  }

  const Window& window() const noexcept { return f_; }
  const WindowFunction& target() const noexcept { return h_; }
  const Rational& epsilon() const noexcept { return eps_; }

  friend bool operator==(const BasicNeighborhood& a, const BasicNeighborhood& b) {
    return a.f_ == b.f_ && a.h_ == b.h_ && a.eps_ == b.eps_;
  }

 private:
  Window f_;
  WindowFunction h_;
  Rational eps_;
};

struct AmbitWitness {
  std::vector<BasicNeighborhood> neighborhoods;
  std::vector<Element> selections;
  WindowFunction f;
};

struct NeighborhoodSchedule {
  /// Target values range over {0, 1/grid, ..., 1}.
  std::size_t grid = 2;
  /// Largest enumeration prefix used as F; unbounded when empty.
  std::optional<std::size_t> max_window;
  /// eps for the j-th neighbourhood (1-based); 1/2^j when empty.
  std::function<Rational(std::size_t)> epsilon;
};

inline Rational halving_epsilon(std::size_t j) {
  Integer den = 1;
  den <<= static_cast<unsigned>(j);
  return Rational(Integer(1), den);
}

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Stream of basic neighbourhoods. Stage t = 1, 2, ... visits prefix sizes
/// k = 1..min(t, max_window) and emits the (t - k)-th point of the grid
/// {0, 1/m, ..., 1}^k (mixed radix, first element of F least significant)
/// when it exists. Every (k, grid point) pair appears at stage k + index, so
/// the interleaving is fair; the output is a prefix of the output for any
/// larger count. Stops early only when a bounded family is exhausted.
inline std::vector<BasicNeighborhood> enumerate_neighborhoods(const Semigroup& s, std::size_t count,
                                                              const NeighborhoodSchedule& schedule) {
  if (schedule.grid == 0) throw Error(ErrorKind::InvariantError, "grid denominator must be >= 1");
  std::optional<std::size_t> k_max = schedule.max_window;
  if (auto n = s.size(); n && (!k_max || *k_max > *n)) k_max = *n;
  if (k_max && *k_max == 0) throw Error(ErrorKind::InvariantError, "max window must be >= 1");

  const std::uint64_t radix = schedule.grid + 1;
  std::vector<Element> prefix;
  Enumerator source = s.enumeration();
  std::vector<BasicNeighborhood> out;

  for (std::size_t t = 1; out.size() < count; ++t) {
    const std::size_t top = k_max ? std::min(t, *k_max) : t;
    bool any_left = !k_max || t <= *k_max;
    for (std::size_t k = 1; k <= top && out.size() < count; ++k) {
      const std::uint64_t index = t - k;
      if (index >= detail::saturating_pow(radix, k)) continue;
      any_left = true;
      while (prefix.size() < k) prefix.push_back(*source.next());
      std::map<Element, Rational> h;
      std::uint64_t rest = index;
      for (std::size_t i = 0; i < k; ++i) {
        h.emplace(prefix[i], Rational(Integer(rest % radix), Integer(schedule.grid)));
        rest /= radix;
      }
      const std::size_t j = out.size() + 1;
      Rational eps = schedule.epsilon ? schedule.epsilon(j) : halving_epsilon(j);
      out.emplace_back(Window(std::vector<Element>(prefix.begin(), prefix.begin() + k), true),
                       std::move(h), std::move(eps));
    }
    if (!any_left) break;
  }
  return out;
}

namespace detail {

/// Products z x for z in F, or nullopt when x -> zx is not injective on F.
inline std::optional<std::vector<Element>> injective_products(const Semigroup& s, const Window& f,
                                                              const Element& x) {
  std::vector<Element> images;
  std::set<Element> seen;
  for (const auto& z : f) {
    Element y = s.product(z, x);
    if (!seen.insert(y).second) return std::nullopt;
    images.push_back(std::move(y));
  }
  return images;
}

}  // namespace detail

/// For each neighbourhood in order, the first x of the canonical enumeration
/// (at most `budget` candidates) with x -> zx injective on F_U and F_U x
/// disjoint from every previously claimed product set. Throws BudgetExhausted
/// carrying the 0-based index of the first neighbourhood with no admissible x.
inline std::vector<Element> greedy_select(const Semigroup& s,
                                          const std::vector<BasicNeighborhood>& neighborhoods,
                                          std::size_t budget) {
  std::set<Element> claimed;
  std::vector<Element> selections;
  selections.reserve(neighborhoods.size());
  for (std::size_t u = 0; u < neighborhoods.size(); ++u) {
    const Window& f = neighborhoods[u].window();
    f.require_in(s);
    Enumerator candidates = s.enumeration();
    bool found = false;
    for (std::size_t tried = 0; tried < budget && !found; ++tried) {
      auto x = candidates.next();
      if (!x) break;
      auto images = detail::injective_products(s, f, *x);
      if (!images) continue;
      bool disjoint = true;
      for (const auto& y : *images)
        if (claimed.count(y)) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      claimed.insert(images->begin(), images->end());
      selections.push_back(std::move(*x));
      found = true;
    }
    if (!found) throw BudgetExhausted(u, budget);
  }
  return selections;
}

/// f(x x_U) = h_U(x) for x in F_U, zero elsewhere. Every claimed point must
/// receive exactly one value; a second claim raises IllFormedSelection.
inline AmbitWitness build_ambit_function(const Semigroup& s,
                                         std::vector<BasicNeighborhood> neighborhoods,
                                         std::vector<Element> selections) {
  if (neighborhoods.size() != selections.size())
    throw Error(ErrorKind::IllFormedSelection,
                std::to_string(selections.size()) + " selections for " +
                    std::to_string(neighborhoods.size()) + " neighborhoods");
  struct Claim {
    std::size_t u;
    Element x;
  };
  std::map<Element, Claim> owner;
  std::map<Element, Rational> values;
  for (std::size_t u = 0; u < neighborhoods.size(); ++u) {
    const auto& nb = neighborhoods[u];
    s.require(selections[u]);
    for (const auto& x : nb.window()) {
      Element y = s.product(x, selections[u]);
      if (auto it = owner.find(y); it != owner.end())
        throw Error(ErrorKind::IllFormedSelection,
                    "point " + s.format(y) + " = " + s.format(it->second.x) + "*x_" +
                        std::to_string(it->second.u) + " = " + s.format(x) + "*x_" +
                        std::to_string(u));
      owner.emplace(y, Claim{u, x});
      values.emplace(std::move(y), nb.target()(x));
    }
  }
  std::vector<Element> support;
  for (const auto& [y, v] : values) support.push_back(y);
  WindowFunction f(Window(std::move(support)), std::move(values), Rational(0));
  return AmbitWitness{std::move(neighborhoods), std::move(selections), std::move(f)};
}

/// Exhaustive checks on a witness: selection count and validity, (i)
/// injectivity, (ii) pairwise disjointness, the piecewise formula, and zero
/// deviation of f^{x_U} from h_U on every F_U.
inline Report verify_ambit(const Semigroup& s, const AmbitWitness& w) {
  Report report;
  const std::size_t n = w.neighborhoods.size();

  bool elements_ok = w.selections.size() == n;
  std::string detail = std::to_string(w.selections.size()) + " selections for " +
                       std::to_string(n) + " neighborhoods";
  for (const auto& x : w.selections)
    if (!s.contains(x)) elements_ok = false;
  for (const auto& nb : w.neighborhoods)
    for (const auto& x : nb.window())
      if (!s.contains(x)) elements_ok = false;
  if (elements_ok)
    for (const auto& [y, v] : w.f.values())
      if (!s.contains(y)) elements_ok = false;
  report.add("selections", elements_ok, elements_ok ? detail : detail + " (or invalid elements)");
  if (!elements_ok) return report;

  std::vector<std::vector<Element>> products(n);
  std::size_t non_injective = 0;
  std::string first_bad;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& f = w.neighborhoods[u].window();
    for (const auto& x : f) products[u].push_back(s.product(x, w.selections[u]));
    std::set<Element> distinct(products[u].begin(), products[u].end());
    if (distinct.size() != products[u].size()) {
      if (non_injective++ == 0) first_bad = "neighborhood " + std::to_string(u);
    }
  }
  report.add("injectivity", non_injective == 0,
             non_injective == 0 ? std::to_string(n) + " neighborhoods"
                                : std::to_string(non_injective) + " failures, first at " + first_bad);

  std::vector<std::set<Element>> sets(n);
  for (std::size_t u = 0; u < n; ++u) sets[u].insert(products[u].begin(), products[u].end());
  std::size_t collisions = 0;
  std::string first_collision;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      for (const auto& y : sets[u])
        if (sets[v].count(y)) {
          if (collisions++ == 0)
            first_collision = "neighborhoods " + std::to_string(u) + " and " + std::to_string(v) +
                              " share " + s.format(y);
          break;
        }
  report.add("disjointness", collisions == 0,
             collisions == 0 ? std::to_string(n * (n > 0 ? n - 1 : 0) / 2) + " pairs"
                             : std::to_string(collisions) + " colliding pairs, first: " +
                                   first_collision);

  std::size_t formula_failures = 0;
  std::set<Element> claimed;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nb = w.neighborhoods[u];
    std::size_t i = 0;
    for (const auto& x : nb.window()) {
      const Element& y = products[u][i++];
      claimed.insert(y);
      if (!w.f.covers(y) || w.f(y) != nb.target()(x)) ++formula_failures;
    }
  }
  for (const auto& [y, v] : w.f.values())
    if (!claimed.count(y) && v != 0) ++formula_failures;
  if (w.f.default_value() != Rational(0)) ++formula_failures;
  report.add("formula", formula_failures == 0,
             formula_failures == 0 ? std::to_string(claimed.size()) + " support points"
                                   : std::to_string(formula_failures) + " mismatches");

  std::size_t matched = 0;
  Rational worst = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nb = w.neighborhoods[u];
    Rational deviation = 0;
    for (const auto& z : nb.window()) {
      const Element y = s.product(z, w.selections[u]);
      if (!w.f.covers(y)) {
        deviation = 1;
        break;
      }
      Rational dz = abs(w.f(y) - nb.target()(z));
      if (dz > deviation) deviation = std::move(dz);
    }
    if (deviation > worst) worst = deviation;
    if (deviation == 0 && deviation < nb.epsilon()) ++matched;
  }
  report.add("exact-match", matched == n,
             matched == n ? "all " + std::to_string(n) + " neighborhoods matched exactly"
                          : std::to_string(matched) + " of " + std::to_string(n) +
                                " matched, max deviation " + format_rational(worst));
  return report;
}

/// Window-precision orbit membership for a basic neighbourhood.
inline std::optional<Element> find_approximant(const Semigroup& s, const WindowFunction& f,
                                               const BasicNeighborhood& target,
                                               const Window& search) {
  return find_approximant(s, f, target.window(), target.target(), target.epsilon(), search);
}

}  // namespace ambit
