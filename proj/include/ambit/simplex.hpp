#pragma once

// Dense primal simplex over exact rationals for problems whose origin is
// feasible:  maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0.
// Bland's rule guarantees termination on degenerate problems.

#include <cstddef>
#include <optional>
#include <vector>

#include "ambit/rational.hpp"

namespace ambit::lp {

struct Problem {
  std::vector<std::vector<Rational>> a;  // rows x vars
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct Solution {
  Rational value;
  std::vector<Rational> x;
};

/// nullopt when the objective is unbounded.
inline std::optional<Solution> maximize(const Problem& p) {
  const std::size_t m = p.a.size();
  const std::size_t n = p.c.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (p.a[i].size() != n) throw Error(ErrorKind::MalformedMatrix, "constraint row has wrong width");
    if (p.b[i] < 0) throw Error(ErrorKind::InvariantError, "origin must be feasible (b >= 0)");
  }

  // Tableau columns: n structural, m slack, then the right-hand side.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = p.a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = p.b[i];
  }
  // Reduced costs are stored negated: entering candidates have obj[j] < 0.
  std::vector<Rational> obj(width);
  for (std::size_t j = 0; j < n; ++j) obj[j] = -p.c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) return std::nullopt;

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[i][j] -= factor * t[leave][j];
    }
    if (obj[enter] != 0) {
      const Rational factor = obj[enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) obj[j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  Solution s;
  s.value = obj[width - 1];
  s.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) s.x[basis[i]] = t[i][width - 1];
  return s;
}

}  // namespace ambit::lp
