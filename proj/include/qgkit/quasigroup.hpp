#pragma once

// Finite quasigroups as Latin-square multiplication tables with eagerly
// materialized division tables. Elements are 0-based indices.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgkit/errors.hpp"

namespace qgkit {

using Table = std::vector<std::vector<int>>;

namespace detail {

// Throws NotLatin if some row or column of `mul` repeats a symbol or holds a
// value outside 0..n-1. Rows are checked before columns.
inline void validate_latin(const Table& mul) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) throw PreconditionFailed("multiplication table is empty");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n)
      throw PreconditionFailed("multiplication table is not square");
  }
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      const int v = mul[r][c];
      if (v < 0 || v >= n || seen[v]) throw NotLatin(NotLatin::Kind::Row, r);
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      const int v = mul[r][c];
      if (seen[v]) throw NotLatin(NotLatin::Kind::Column, c);
      seen[v] = 1;
    }
  }
}

}  // namespace detail

class Quasigroup {
 public:
  int order() const { return order_; }

  // x * y
  int mul(int x, int y) const { return mul_[x][y]; }
  // x \ y : the unique z with x * z = y
  int ldiv(int x, int y) const { return ldiv_[x][y]; }
  // y / x : the unique z with z * x = y (row = right operand x)
  int rdiv(int x, int y) const { return rdiv_[x][y]; }

  const Table& mul_table() const { return mul_; }
  const Table& ldiv_table() const { return ldiv_; }
  const Table& rdiv_table() const { return rdiv_; }

  friend bool operator==(const Quasigroup& a, const Quasigroup& b) {
    return a.mul_ == b.mul_;
  }
  friend bool operator!=(const Quasigroup& a, const Quasigroup& b) {
    return !(a == b);
  }

  friend Quasigroup make_quasigroup(const Table& mul);

 private:
  explicit Quasigroup(Table mul) : order_(static_cast<int>(mul.size())), mul_(std::move(mul)) {
    ldiv_.assign(order_, std::vector<int>(order_));
    rdiv_.assign(order_, std::vector<int>(order_));
    for (int x = 0; x < order_; ++x)
      for (int z = 0; z < order_; ++z) ldiv_[x][mul_[x][z]] = z;
    for (int x = 0; x < order_; ++x)
      for (int z = 0; z < order_; ++z) rdiv_[x][mul_[z][x]] = z;
  }

  int order_;
  Table mul_;
  Table ldiv_;   // ldiv_[x][y] = x \ y
  Table rdiv_;   // rdiv_[x][y] = y / x
};

inline Quasigroup make_quasigroup(const Table& mul) {
  detail::validate_latin(mul);
  return Quasigroup(mul);
}

// (left local unit a/a, right local unit a\a)
inline std::pair<int, int> local_units(const Quasigroup& q, int a) {
  if (a < 0 || a >= q.order()) throw PreconditionFailed("element out of range");
  return {q.rdiv(a, a), q.ldiv(a, a)};
}

inline bool is_associative(const Quasigroup& q) {
  const int n = q.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (q.mul(q.mul(x, y), z) != q.mul(x, q.mul(y, z))) return false;
  return true;
}

struct Classification {
  std::optional<int> left_unit;   // element whose row is the identity
  std::optional<int> right_unit;  // element whose column is the identity
  bool is_loop = false;
  bool is_group = false;
  bool is_idempotent = false;
};

inline Classification classify(const Quasigroup& q) {
  const int n = q.order();
  Classification c;
  for (int e = 0; e < n && !c.left_unit; ++e) {
    bool id = true;
    for (int y = 0; y < n; ++y)
      if (q.mul(e, y) != y) { id = false; break; }
    if (id) c.left_unit = e;
  }
  for (int e = 0; e < n && !c.right_unit; ++e) {
    bool id = true;
    for (int x = 0; x < n; ++x)
      if (q.mul(x, e) != x) { id = false; break; }
    if (id) c.right_unit = e;
  }
  c.is_loop = c.left_unit && c.right_unit;
  // A left and a right unit always coincide.
  if (c.is_loop && *c.left_unit != *c.right_unit)
    throw InconsistentPredicates("left and right unit differ");
  c.is_group = c.is_loop && is_associative(q);
  c.is_idempotent = true;
  for (int x = 0; x < n; ++x)
    if (q.mul(x, x) != x) { c.is_idempotent = false; break; }
  return c;
}

// Relabeling bijection sigma with sigma(x*y) = sigma(x)*sigma(y), if any.
// Backtracking over images with incremental product pruning; desk scale only.
inline std::optional<std::vector<int>> are_isomorphic(const Quasigroup& a,
                                                      const Quasigroup& b) {
  constexpr int kMaxOrder = 8;
  if (a.order() != b.order()) return std::nullopt;
  const int n = a.order();
  if (n > kMaxOrder)
    throw OrderTooLarge("isomorphism search is capped at order " +
                        std::to_string(kMaxOrder));

  std::vector<int> sigma(n, -1);
  std::vector<char> used(n, 0);

  // Checks all products that became fully determined when sigma[v] was set.
  auto consistent = [&](int v) {
    for (int x = 0; x <= v; ++x) {
      if (sigma[x] < 0) continue;
      for (int y = 0; y <= v; ++y) {
        if (sigma[y] < 0) continue;
        const int p = a.mul(x, y);
        if (p > v || sigma[p] < 0) continue;
        if (x != v && y != v && p != v) continue;
        if (b.mul(sigma[x], sigma[y]) != sigma[p]) return false;
      }
    }
    return true;
  };

  auto search = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int img = 0; img < n; ++img) {
      if (used[img]) continue;
      sigma[v] = img;
      used[img] = 1;
      if (consistent(v) && self(self, v + 1)) return true;
      used[img] = 0;
      sigma[v] = -1;
    }
    return false;
  };

  if (search(search, 0)) return sigma;
  return std::nullopt;
}

}  // namespace qgkit
