#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here deliberately avoid the library's enumeration/backtracking code paths.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qgkit/qgkit.hpp"

namespace qgtest {

// LF-family instance over E = T = Z2 with eps = id; the running example.
inline const qgkit::Table kQ4ex3 = {
    {0, 1, 2, 3}, {3, 2, 1, 0}, {2, 3, 0, 1}, {1, 0, 3, 2}};

// Order-3 idempotent quasigroup, rule x*y = 2x + 2y mod 3.
inline const qgkit::Table kIQ3 = {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}};

// A 3x3 Latin square none of whose columns is the identity.
inline const qgkit::Table kRightUnitFree3 = {{1, 0, 2}, {0, 2, 1}, {2, 1, 0}};

inline qgkit::Quasigroup q4ex3() { return qgkit::make_quasigroup(kQ4ex3); }
inline qgkit::Quasigroup iq3() { return qgkit::make_quasigroup(kIQ3); }
inline qgkit::Quasigroup z(int n) { return qgkit::cyclic_group(n); }

// Naive oracle: every labeled n x n Latin square, built by choosing one of
// the n! permutations per row and filtering on column-distinctness.
inline std::vector<qgkit::Table> latin_squares_oracle(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<qgkit::Table> out;
  std::vector<int> choice(n, 0);
  qgkit::Table t(n);
  auto rec = [&](auto&& self, int row) -> void {
    if (row == n) {
      out.push_back(t);
      return;
    }
    for (const auto& perm : perms) {
      bool ok = true;
      for (int c = 0; c < n && ok; ++c)
        for (int r = 0; r < row && ok; ++r)
          if (t[r][c] == perm[c]) ok = false;
      if (!ok) continue;
      t[row] = perm;
      self(self, row + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline qgkit::BruckSystem sample_bruck(int m, int k, std::mt19937& rng) {
  qgkit::Quasigroup base =
      qgkit::make_quasigroup(qgkit::sample_latin_square(m, rng));
  std::vector<qgkit::Table> blocks;
  for (int i = 0; i < m * m; ++i)
    blocks.push_back(qgkit::sample_latin_square(k, rng));
  return qgkit::make_bruck_system(std::move(base), k, std::move(blocks));
}

}  // namespace qgtest
