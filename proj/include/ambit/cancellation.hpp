#pragma once

// Window-level evidence for the two cancellation conditions under which an
// infinite discrete semigroup admits an ambit:
//   (1) for finite F, many z separate F on the right (xz != yz for x != y in F);
//   (2) left preimages {x}^{-1}P of small sets P stay small.
// Both are cardinality statements about infinite carriers, so the checkers
// report what a finite search window shows, plus a closed-form verdict for
// the built-in families where one is known.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ambit/semigroup.hpp"

namespace ambit {

/// R^{-1}P restricted to `search`: every x in search with rx in P for some r in R.
inline Window preimage_set(const Semigroup& s, const Window& r, const Window& p,
                           const Window& search) {
  r.require_in(s);
  p.require_in(s);
  search.require_in(s);
  std::vector<Element> out;
  for (const auto& x : search) {
    for (const auto& left : r) {
      if (p.contains(s.product(left, x))) {
        out.push_back(x);
        break;
      }
    }
  }
  return Window(std::move(out));
}

enum class Verdict { Holds, Fails };

inline const char* to_string(Verdict v) { return v == Verdict::Holds ? "holds" : "fails"; }

/// Known closed-form answer for the right-separation condition.
inline std::optional<Verdict> property_1_verdict(const Semigroup& s) {
  switch (s.kind()) {
    case SemigroupKind::FreeWords:
    case SemigroupKind::NatPlus:
      return Verdict::Holds;  // infinite and right cancellative
    case SemigroupKind::RightZero:
      return Verdict::Fails;
    default:
      return std::nullopt;
  }
}

/// Known closed-form answer for the weak left cancellation condition.
inline std::optional<Verdict> property_2_verdict(const Semigroup& s) {
  switch (s.kind()) {
    case SemigroupKind::FreeWords:
    case SemigroupKind::NatPlus:
      return Verdict::Holds;
    case SemigroupKind::LeftZero:
      return Verdict::Fails;  // {x}^{-1}P is the whole carrier once x is in P
    default:
      return std::nullopt;
  }
}

struct Property1Report {
  Window qualifying;
  std::size_t count = 0;
  std::optional<Verdict> closed_form_verdict;
};

/// z in `search` qualifies when x -> xz is injective on F.
inline Property1Report check_property_1(const Semigroup& s, const Window& f, const Window& search) {
  if (f.empty()) throw Error(ErrorKind::InvariantError, "F must be non-empty");
  f.require_in(s);
  search.require_in(s);
  std::vector<Element> qualifying;
  for (const auto& z : search) {
    std::set<Element> images;
    bool injective = true;
    for (const auto& x : f) {
      if (!images.insert(s.product(x, z)).second) {
        injective = false;
        break;
      }
    }
    if (injective) qualifying.push_back(z);
  }
  Property1Report report;
  report.count = qualifying.size();
  report.qualifying = Window(std::move(qualifying));
  report.closed_form_verdict = property_1_verdict(s);
  return report;
}

struct Property2Report {
  std::vector<std::size_t> window_sizes;
  std::vector<std::size_t> preimage_sizes;
  std::optional<Verdict> closed_form_verdict;

  /// The last two windows saw the same preimage size.
  bool stabilized() const {
    const auto n = preimage_sizes.size();
    return n < 2 || preimage_sizes[n - 1] == preimage_sizes[n - 2];
  }
  /// Every window was filled completely by the preimage.
  bool fills_windows() const {
    for (std::size_t i = 0; i < preimage_sizes.size(); ++i)
      if (preimage_sizes[i] != window_sizes[i]) return false;
    return !preimage_sizes.empty();
  }
};

/// Size of {x}^{-1}P inside each window of a growing schedule.
inline Property2Report check_property_2(const Semigroup& s, const Element& x, const Window& p,
                                        const std::vector<Window>& schedule) {
  s.require(x);
  const Window left{std::vector<Element>{x}};
  Property2Report report;
  for (const auto& w : schedule) {
    report.window_sizes.push_back(w.size());
    report.preimage_sizes.push_back(preimage_set(s, left, p, w).size());
  }
  report.closed_form_verdict = property_2_verdict(s);
  return report;
}

}  // namespace ambit
