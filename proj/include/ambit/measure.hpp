#pragma once

// Molecular measures: finite rational combinations of point masses on a
// discrete semigroup, with convolution, the pairing against window
// functions, and the dual-Lipschitz distance on finite windows.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "ambit/rational.hpp"
#include "ambit/semigroup.hpp"
#include "ambit/simplex.hpp"
#include "ambit/uniform.hpp"

namespace ambit {

/// Coalesced, zero-free, canonically ordered list of (element, coefficient)
/// terms over a shared semigroup handle. Equality is structural.
class MolecularMeasure {
 public:
  using Term = std::pair<Element, Rational>;

  explicit MolecularMeasure(SemigroupRef handle, std::vector<Term> terms = {})
      : handle_(std::move(handle)) {
    if (!handle_) throw Error(ErrorKind::InvariantError, "measure without a semigroup");
    std::map<Element, Rational> acc;
    for (auto& [x, c] : terms) {
      handle_->require(x);
      acc[x] += c;
    }
    assign(acc);
  }

  static MolecularMeasure from_map(SemigroupRef handle, const std::map<Element, Rational>& acc) {
    MolecularMeasure m(std::move(handle));
    m.assign(acc);
    return m;
  }

  const SemigroupRef& handle() const noexcept { return handle_; }
  const Semigroup& semigroup() const noexcept { return *handle_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t support_size() const noexcept { return terms_.size(); }

  std::vector<Element> support() const {
    std::vector<Element> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.first);
    return out;
  }

  Rational coefficient(const Element& x) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), x,
                               [](const Term& t, const Element& e) { return t.first < e; });
    return (it != terms_.end() && it->first == x) ? it->second : Rational(0);
  }

  friend bool operator==(const MolecularMeasure& a, const MolecularMeasure& b) {
    return same_semigroup(a.handle_, b.handle_) && a.terms_ == b.terms_;
  }

 private:
  void assign(const std::map<Element, Rational>& acc) {
    terms_.clear();
    for (const auto& [x, c] : acc)
      if (c != 0) terms_.emplace_back(x, c);
  }

  SemigroupRef handle_;
  std::vector<Term> terms_;
};

inline void require_same_handle(const MolecularMeasure& mu, const MolecularMeasure& nu) {
  if (!same_semigroup(mu.handle(), nu.handle()))
    throw Error(ErrorKind::HandleMismatch,
                mu.semigroup().describe() + " vs " + nu.semigroup().describe());
}

inline MolecularMeasure dirac(SemigroupRef handle, const Element& x) {
  return MolecularMeasure(std::move(handle), {{x, Rational(1)}});
}

/// r mu + t nu.
inline MolecularMeasure linear_combine(const Rational& r, const MolecularMeasure& mu,
                                       const Rational& t, const MolecularMeasure& nu) {
  require_same_handle(mu, nu);
  std::map<Element, Rational> acc;
  if (r != 0)
    for (const auto& [x, c] : mu.terms()) acc[x] += r * c;
  if (t != 0)
    for (const auto& [x, c] : nu.terms()) acc[x] += t * c;
  return MolecularMeasure::from_map(mu.handle(), acc);
}

inline MolecularMeasure operator+(const MolecularMeasure& a, const MolecularMeasure& b) {
  return linear_combine(1, a, 1, b);
}
inline MolecularMeasure operator-(const MolecularMeasure& a, const MolecularMeasure& b) {
  return linear_combine(1, a, -1, b);
}
inline MolecularMeasure operator*(const Rational& r, const MolecularMeasure& a) {
  return linear_combine(r, a, 0, a);
}

/// Pairing mu(f) = sum of c_i f(x_i).
inline Rational evaluate(const MolecularMeasure& mu, const WindowFunction& f) {
  Rational total = 0;
  for (const auto& [x, c] : mu.terms()) total += c * f(x);
  return total;
}

/// Bilinear extension of delta_x * delta_y = delta_{xy}.
inline MolecularMeasure convolve(const MolecularMeasure& mu, const MolecularMeasure& nu) {
  require_same_handle(mu, nu);
  const Semigroup& s = mu.semigroup();
  std::map<Element, Rational> acc;
  for (const auto& [x, a] : mu.terms())
    for (const auto& [y, b] : nu.terms()) acc[s.product(x, y)] += a * b;
  return MolecularMeasure::from_map(mu.handle(), acc);
}

template <class Action>
concept SemigroupAction = std::invocable<const Action&, const Element&, const Element&> &&
    std::convertible_to<std::invoke_result_t<const Action&, const Element&, const Element&>,
                        Element>;

/// The action of a semigroup on itself by left multiplication.
struct TranslationAction {
  SemigroupRef semigroup;
  Element operator()(const Element& s, const Element& y) const { return semigroup->product(s, y); }
};

/// Convolution of mu on X with nu on the space Y that X acts on via
/// `action(s, y)`. The action law m(s, m(s', y)) = m(ss', y) is spot-checked
/// on up to `law_checks` support elements of each measure.
template <SemigroupAction Action>
MolecularMeasure action_convolve(const MolecularMeasure& mu, const MolecularMeasure& nu,
                                 const Action& action, std::size_t law_checks = 8) {
  const Semigroup& x_space = mu.semigroup();
  const auto& mt = mu.terms();
  const auto& nt = nu.terms();
  const std::size_t ms = std::min(mt.size(), law_checks);
  const std::size_t ns = std::min(nt.size(), law_checks);
  for (std::size_t i = 0; i < ms; ++i)
    for (std::size_t j = 0; j < ms; ++j)
      for (std::size_t k = 0; k < ns; ++k) {
        const Element& s = mt[i].first;
        const Element& s2 = mt[j].first;
        const Element& y = nt[k].first;
        if (action(s, action(s2, y)) != action(x_space.product(s, s2), y))
          throw Error(ErrorKind::ActionLawViolation,
                      "m(s, m(s', y)) != m(ss', y) for s=" + x_space.format(s) +
                          ", s'=" + x_space.format(s2) + ", y=" + nu.semigroup().format(y));
      }
  std::map<Element, Rational> acc;
  for (const auto& [s, a] : mt)
    for (const auto& [y, b] : nt) {
      Element image = action(s, y);
      nu.semigroup().require(image);
      acc[std::move(image)] += a * b;
    }
  return MolecularMeasure::from_map(nu.handle(), acc);
}

/// Total variation: sum of |c_i| over the coalesced terms.
inline Rational norm(const MolecularMeasure& mu) {
  Rational total = 0;
  for (const auto& t : mu.terms()) total += abs(t.second);
  return total;
}

inline bool is_positive(const MolecularMeasure& mu) {
  return std::all_of(mu.terms().begin(), mu.terms().end(),
                     [](const auto& t) { return t.second >= 0; });
}

/// max |(mu - nu)(f)| over f in Lip(d) restricted to `window`, i.e. over
/// -1 <= f <= 1 with |f(x) - f(x')| <= d(x, x'). Points of the window outside
/// the support of mu - nu do not change the optimum (a truncated McShane
/// extension reaches them), so the program only carries support variables.
inline Rational ueb_distance(const MolecularMeasure& mu, const MolecularMeasure& nu,
                             const Pseudometric& d, const Window& window) {
  require_same_handle(mu, nu);
  for (const auto& x : window)
    if (!d.defined_on(x))
      throw Error(ErrorKind::WindowMismatch, "window point outside the metric window");
  for (const auto* m : {&mu, &nu})
    for (const auto& [x, c] : m->terms())
      if (!window.contains(x))
        throw Error(ErrorKind::WindowMismatch, "measure support outside the window");

  const MolecularMeasure diff = linear_combine(1, mu, -1, nu);
  const auto& terms = diff.terms();
  const std::size_t n = terms.size();
  if (n == 0) return 0;

  // Shift g = f + 1 so that the origin is feasible: 0 <= g <= 2,
  // g_i - g_j <= d_ij, and maximize sum c_i g_i - sum c_i.
  lp::Problem p;
  Rational mass = 0;
  for (const auto& [x, c] : terms) {
    p.c.push_back(c);
    mass += c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    row[i] = 1;
    p.a.push_back(std::move(row));
    p.b.emplace_back(2);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<Rational> row(n);
      row[i] = 1;
      row[j] = -1;
      p.a.push_back(std::move(row));
      p.b.push_back(d(terms[i].first, terms[j].first));
    }
  const auto solution = lp::maximize(p);
  return solution->value - mass;
}

}  // namespace ambit
