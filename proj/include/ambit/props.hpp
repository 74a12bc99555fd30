#pragma once

// Seeded random molecular measures and the algebraic laws of convolution
// checked on them. Shared by `ambit props test` and the test suites.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ambit/measure.hpp"
#include "ambit/rational.hpp"
#include "ambit/report.hpp"
#include "ambit/semigroup.hpp"

namespace ambit::props {

/// Documented default seed for reproducible runs.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]. Implemented directly on the engine output so
/// sequences are identical across standard libraries.
inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

struct Carrier {
  std::string name;
  SemigroupRef semigroup;
  std::function<Element(Rng&)> sample;
};

inline Carrier cyclic_carrier(std::size_t n) {
  return {"Z" + std::to_string(n), share(Semigroup::cyclic_group(n)),
          [n](Rng& rng) {
            return Element::index(static_cast<std::uint64_t>(uniform(rng, 0, std::int64_t(n) - 1)));
          }};
}

inline Carrier free_carrier(std::size_t max_length) {
  return {"free2", share(Semigroup::free_words({"a", "b"})), [max_length](Rng& rng) {
            Word w(static_cast<std::size_t>(uniform(rng, 1, std::int64_t(max_length))));
            for (auto& g : w) g = static_cast<std::uint32_t>(uniform(rng, 0, 1));
            return Element::word(std::move(w));
          }};
}

inline Carrier nat_plus_carrier(std::uint64_t max_value) {
  return {"nat-plus", share(Semigroup::nat_plus()), [max_value](Rng& rng) {
            return Element::index(static_cast<std::uint64_t>(uniform(rng, 0, std::int64_t(max_value))));
          }};
}

/// Z6 table, words over {a, b} of length <= 4, naturals <= 50.
inline std::vector<Carrier> default_carriers() {
  return {cyclic_carrier(6), free_carrier(4), nat_plus_carrier(50)};
}

/// Rational p/q with q in 1..4 and value in [-3, 3] (or [0, 3]).
inline Rational random_coefficient(Rng& rng, bool nonnegative = false) {
  const std::int64_t q = uniform(rng, 1, 4);
  const std::int64_t p = uniform(rng, nonnegative ? 0 : -3 * q, 3 * q);
  return Rational(Integer(p), Integer(q));
}

inline MolecularMeasure random_measure(const Carrier& c, Rng& rng, std::size_t max_support = 5,
                                       bool nonnegative = false) {
  const auto size = static_cast<std::size_t>(uniform(rng, 0, std::int64_t(max_support)));
  std::vector<MolecularMeasure::Term> terms;
  for (std::size_t i = 0; i < size; ++i)
    terms.emplace_back(c.sample(rng), random_coefficient(rng, nonnegative));
  return MolecularMeasure(c.semigroup, std::move(terms));
}

// (mu * mu') * nu == mu * (mu' * nu)
inline CheckOutcome associativity(const Carrier& c, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    auto a = random_measure(c, rng), b = random_measure(c, rng), d = random_measure(c, rng);
    if (convolve(convolve(a, b), d) != convolve(a, convolve(b, d)))
      return {"associativity/" + c.name, false, "instance " + std::to_string(i)};
  }
  return {"associativity/" + c.name, true, std::to_string(count) + " triples"};
}

// (r mu) * nu == mu * (r nu) == r (mu * nu), and both distributive laws
inline CheckOutcome bilinearity(const Carrier& c, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    auto a = random_measure(c, rng), b = random_measure(c, rng), d = random_measure(c, rng);
    const Rational r = random_coefficient(rng);
    const auto ab = convolve(a, b);
    const bool scalar = convolve(r * a, b) == r * ab && convolve(a, r * b) == r * ab;
    const bool left = convolve(a + b, d) == convolve(a, d) + convolve(b, d);
    const bool right = convolve(a, b + d) == ab + convolve(a, d);
    if (!(scalar && left && right))
      return {"bilinearity/" + c.name, false, "instance " + std::to_string(i)};
  }
  return {"bilinearity/" + c.name, true, std::to_string(count) + " instances"};
}

// ||mu * nu|| <= ||mu|| ||nu||
inline CheckOutcome norm_submultiplicative(const Carrier& c, std::size_t count, Rng& rng) {
  std::size_t strict = 0;
  for (std::size_t i = 0; i < count; ++i) {
    auto a = random_measure(c, rng), b = random_measure(c, rng);
    const Rational lhs = norm(convolve(a, b));
    const Rational rhs = norm(a) * norm(b);
    if (lhs > rhs) return {"norm/" + c.name, false, "instance " + std::to_string(i)};
    if (lhs < rhs) ++strict;
  }
  return {"norm/" + c.name, true,
          std::to_string(count) + " instances, " + std::to_string(strict) + " strict"};
}

inline CheckOutcome positivity(const Carrier& c, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    auto a = random_measure(c, rng, 5, true), b = random_measure(c, rng, 5, true);
    if (!is_positive(a) || !is_positive(b) || !is_positive(convolve(a, b)))
      return {"positivity/" + c.name, false, "instance " + std::to_string(i)};
  }
  return {"positivity/" + c.name, true, std::to_string(count) + " instances"};
}

inline CheckOutcome commutativity(const Carrier& c, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    auto a = random_measure(c, rng), b = random_measure(c, rng);
    if (convolve(a, b) != convolve(b, a))
      return {"commutativity/" + c.name, false, "instance " + std::to_string(i)};
  }
  return {"commutativity/" + c.name, true, std::to_string(count) + " instances"};
}

/// Every law on every default carrier; commutativity only where the carrier
/// is commutative (Z6 and nat-plus).
inline Report run_all(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  Report report;
  for (const auto& c : default_carriers()) {
    report.checks.push_back(associativity(c, count, rng));
    report.checks.push_back(bilinearity(c, count, rng));
    report.checks.push_back(norm_submultiplicative(c, count, rng));
    report.checks.push_back(positivity(c, count, rng));
    if (c.semigroup->kind() != SemigroupKind::FreeWords)
      report.checks.push_back(commutativity(c, count, rng));
  }
  return report;
}

}  // namespace ambit::props
