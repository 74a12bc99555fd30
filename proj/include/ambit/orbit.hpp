#pragma once

// Right translations f^x(z) = f(zx), finite traces of the right orbit of f,
// and the map nu -> (x -> nu(y -> f(xy))) on molecular measures.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ambit/measure.hpp"
#include "ambit/rational.hpp"
#include "ambit/semigroup.hpp"
#include "ambit/uniform.hpp"

namespace ambit {

/// g(z) = f(z x) for z in out_window. The result has no default value.
inline WindowFunction right_translate(const Semigroup& s, const WindowFunction& f,
                                      const Element& x, const Window& out_window) {
  s.require(x);
  out_window.require_in(s);
  std::map<Element, Rational> values;
  for (const auto& z : out_window) values.emplace(z, f(s.product(z, x)));
  return WindowFunction(out_window, std::move(values), std::nullopt);
}

/// Restrictions (f^x)|_F for x in a search window, deduplicated in first-seen
/// order.
struct OrbitTrace {
  WindowFunction base;
  Window probe;
  std::vector<std::vector<Rational>> vectors;

  bool contains(const std::vector<Rational>& v) const {
    for (const auto& w : vectors)
      if (w == v) return true;
    return false;
  }
};

namespace detail {

inline std::vector<Rational> restriction(const Semigroup& s, const WindowFunction& f,
                                         const Window& probe, const Element& x) {
  std::vector<Rational> v;
  v.reserve(probe.size());
  for (const auto& z : probe) v.push_back(f(s.product(z, x)));
  return v;
}

}  // namespace detail

inline OrbitTrace orbit_trace(const Semigroup& s, const WindowFunction& f, const Window& probe,
                              const Window& search) {
  probe.require_in(s);
  search.require_in(s);
  OrbitTrace trace{f, probe, {}};
  std::set<std::vector<Rational>> seen;
  for (const auto& x : search) {
    auto v = detail::restriction(s, f, probe, x);
    if (seen.insert(v).second) trace.vectors.push_back(std::move(v));
  }
  return trace;
}

/// First x in `search` whose translate lies strictly within epsilon of h on F.
inline std::optional<Element> find_approximant(const Semigroup& s, const WindowFunction& f,
                                               const Window& probe, const WindowFunction& h,
                                               const Rational& epsilon, const Window& search) {
  probe.require_in(s);
  search.require_in(s);
  for (const auto& x : search) {
    bool close = true;
    for (const auto& z : probe) {
      if (abs(f(s.product(z, x)) - h(z)) >= epsilon) {
        close = false;
        break;
      }
    }
    if (close) return x;
  }
  return std::nullopt;
}

/// g(x) = sum_j c_j f(x y_j) over the terms (y_j, c_j) of nu, for x in
/// out_window. On point masses this is exactly right translation.
inline WindowFunction phi_map(const Semigroup& s, const WindowFunction& f,
                              const MolecularMeasure& nu, const Window& out_window) {
  if (nu.semigroup() != s)
    throw Error(ErrorKind::HandleMismatch, "measure lives on " + nu.semigroup().describe());
  out_window.require_in(s);
  std::map<Element, Rational> values;
  for (const auto& x : out_window) {
    Rational total = 0;
    for (const auto& [y, c] : nu.terms()) total += c * f(s.product(x, y));
    values.emplace(x, std::move(total));
  }
  return WindowFunction(out_window, std::move(values), std::nullopt);
}

}  // namespace ambit
