#pragma once

// Finite-window pseudometrics, rational-valued window functions, Lipschitz
// set membership and equicontinuity moduli for semigroup multiplication.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambit/rational.hpp"
#include "ambit/semigroup.hpp"

namespace ambit {

/// A rational function on a window with an optional value everywhere else.
/// Every window element carries a value; lookups outside the window fall
/// back to the default and raise CoverageError when there is none.
class WindowFunction {
 public:
  WindowFunction() : default_(Rational(0)) {}

  WindowFunction(Window window, std::map<Element, Rational> values,
                 std::optional<Rational> default_value = Rational(0))
      : window_(std::move(window)), values_(std::move(values)), default_(std::move(default_value)) {
    for (const auto& [x, v] : values_)
      if (!window_.contains(x))
        throw Error(ErrorKind::InvariantError, "function value keyed outside its window");
    for (const auto& x : window_) {
      if (values_.count(x)) continue;
      if (!default_)
        throw Error(ErrorKind::CoverageError, "window element without a value and no default");
      values_.emplace(x, *default_);
    }
  }

  static WindowFunction constant(Rational c) { return WindowFunction(Window{}, {}, std::move(c)); }

  /// Indicator of `ones` (value 1 there, 0 everywhere else).
  static WindowFunction indicator(std::vector<Element> ones) {
    std::map<Element, Rational> v;
    for (const auto& x : ones) v.emplace(x, Rational(1));
    return WindowFunction(Window(std::move(ones)), std::move(v), Rational(0));
  }

  const Window& window() const noexcept { return window_; }
  const std::map<Element, Rational>& values() const noexcept { return values_; }
  const std::optional<Rational>& default_value() const noexcept { return default_; }

  bool covers(const Element& x) const { return default_.has_value() || values_.count(x) > 0; }

  const Rational& operator()(const Element& x) const {
    if (auto it = values_.find(x); it != values_.end()) return it->second;
    if (!default_) throw Error(ErrorKind::CoverageError, "function evaluated outside its window");
    return *default_;
  }

  friend bool operator==(const WindowFunction& a, const WindowFunction& b) {
    return a.values_ == b.values_ && a.default_ == b.default_;
  }

 private:
  Window window_;
  std::map<Element, Rational> values_;
  std::optional<Rational> default_;
};

enum class MetricViolationKind { NonzeroDiagonal, Asymmetric, Negative, Triangle };

/// Offending points; for Triangle, y is the intermediate point and
/// d(x,z) > d(x,y) + d(y,z). Pair violations repeat y as z.
struct MetricViolation {
  MetricViolationKind kind;
  std::size_t x;
  std::size_t y;
  std::size_t z;
};

using DistanceMatrix = std::vector<std::vector<Rational>>;

/// First axiom failure of a distance matrix; triangle triples are scanned as
/// (x, y, z) lexicographically and test d(x,z) <= d(x,y) + d(y,z).
inline std::optional<MetricViolation> validate_pseudometric(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    if (d[i].size() != n)
      throw Error(ErrorKind::MalformedMatrix, "distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0) return MetricViolation{MetricViolationKind::NonzeroDiagonal, i, i, i};
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < 0) return MetricViolation{MetricViolationKind::Negative, i, j, j};
      if (d[i][j] != d[j][i]) return MetricViolation{MetricViolationKind::Asymmetric, i, j, j};
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (d[x][z] > d[x][y] + d[y][z])
          return MetricViolation{MetricViolationKind::Triangle, x, y, z};
  return std::nullopt;
}

/// Either the discrete metric (distance 1 between distinct points, defined
/// everywhere) or an explicit table on a window.
class Pseudometric {
 public:
  static Pseudometric discrete() { return Pseudometric(); }

  static Pseudometric table(Window window, DistanceMatrix matrix) {
    if (matrix.size() != window.size())
      throw Error(ErrorKind::MalformedMatrix, "matrix size does not match window size");
    if (auto bad = validate_pseudometric(matrix))
      throw Error(ErrorKind::InvariantError,
                  "not a pseudometric at (" + std::to_string(bad->x) + "," +
                      std::to_string(bad->y) + "," + std::to_string(bad->z) + ")");
    Pseudometric d;
    d.discrete_ = false;
    for (std::size_t i = 0; i < window.size(); ++i) d.position_.emplace(window[i], i);
    d.window_ = std::move(window);
    d.matrix_ = std::move(matrix);
    return d;
  }

  bool is_discrete() const noexcept { return discrete_; }
  const Window& window() const noexcept { return window_; }
  const DistanceMatrix& matrix() const noexcept { return matrix_; }

  bool defined_on(const Element& x) const { return discrete_ || position_.count(x) > 0; }

  Rational operator()(const Element& x, const Element& y) const {
    if (discrete_) return x == y ? Rational(0) : Rational(1);
    auto i = position_.find(x);
    auto j = position_.find(y);
    if (i == position_.end() || j == position_.end())
      throw Error(ErrorKind::WindowMismatch, "distance requested outside the metric window");
    return matrix_[i->second][j->second];
  }

 private:
  Pseudometric() = default;

  bool discrete_ = true;
  Window window_;
  std::map<Element, std::size_t> position_;
  DistanceMatrix matrix_;
};

enum class LipViolationKind { Range, Lipschitz, Negative };

struct LipViolation {
  LipViolationKind kind;
  Element x;
  Element y;  // second point for Lipschitz violations, otherwise x
};

/// Membership of f (restricted to its window) in Lip(d), or Lip+(d) when
/// `positive`: values in [-1, 1] (resp. [0, 1]) and 1-Lipschitz for d.
inline std::optional<LipViolation> lip_membership(const WindowFunction& f, const Pseudometric& d,
                                                  bool positive) {
  for (const auto& x : f.window())
    if (!d.defined_on(x))
      throw Error(ErrorKind::WindowMismatch, "function window is not inside the metric window");
  for (const auto& x : f.window()) {
    const Rational& v = f(x);
    if (v > 1 || v < -1) return LipViolation{LipViolationKind::Range, x, x};
    if (positive && v < 0) return LipViolation{LipViolationKind::Negative, x, x};
  }
  const auto& pts = f.window().elements();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (abs(f(pts[i]) - f(pts[j])) > d(pts[i], pts[j]))
        return LipViolation{LipViolationKind::Lipschitz, pts[i], pts[j]};
  return std::nullopt;
}

template <class T>
struct EquicontinuityReport {
  /// Best L with d(xy, x'y) <= L d(x, x') over the sample.
  Rational right_family_constant{0};
  /// Per sample element x, best L with d(xy, xy') <= L d(y, y').
  std::vector<std::pair<T, Rational>> left_constants;
  /// Pairs at distance zero whose right translates separate.
  std::vector<std::pair<T, T>> zero_distance_violations;
};

/// Moduli of the right-translation family and of each left translation over a
/// finite sample. `product(x, y)` and `distance(x, y)` are arbitrary callables
/// so the same routine serves semigroup handles and concrete number systems.
template <class T, class Product, class Distance>
EquicontinuityReport<T> equicontinuity_report(const std::vector<T>& sample, Product&& product,
                                              Distance&& distance) {
  EquicontinuityReport<T> report;
  for (std::size_t a = 0; a < sample.size(); ++a) {
    for (std::size_t b = 0; b < sample.size(); ++b) {
      if (a == b) continue;
      const T& x = sample[a];
      const T& x2 = sample[b];
      const Rational base = distance(x, x2);
      bool violated = false;
      for (const T& y : sample) {
        const Rational moved = distance(product(x, y), product(x2, y));
        if (base == 0) {
          if (moved > 0) violated = true;
        } else if (moved / base > report.right_family_constant) {
          report.right_family_constant = moved / base;
        }
      }
      if (violated && a < b) report.zero_distance_violations.emplace_back(x, x2);
    }
  }
  for (const T& x : sample) {
    Rational best{0};
    for (const T& y : sample)
      for (const T& y2 : sample) {
        const Rational base = distance(y, y2);
        if (base == 0) continue;
        const Rational ratio = distance(product(x, y), product(x, y2)) / base;
        if (ratio > best) best = ratio;
      }
    report.left_constants.emplace_back(x, best);
  }
  return report;
}

/// Semigroup-handle form: products of sample pairs must lie where d is defined.
inline EquicontinuityReport<Element> equicontinuity_report(const Semigroup& s,
                                                           const Pseudometric& d,
                                                           const Window& sample) {
  sample.require_in(s);
  for (const auto& x : sample)
    if (!d.defined_on(x))
      throw Error(ErrorKind::WindowMismatch, "sample element outside the metric window");
  for (const auto& x : sample)
    for (const auto& y : sample)
      if (!d.defined_on(s.product(x, y)))
        throw Error(ErrorKind::ProductOutsideWindow,
                    "product " + s.format(s.product(x, y)) + " has no recorded distance");
  return equicontinuity_report<Element>(
      sample.elements(), [&](const Element& x, const Element& y) { return s.product(x, y); },
      [&](const Element& x, const Element& y) { return d(x, y); });
}

}  // namespace ambit
