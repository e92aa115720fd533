#pragma once

// Total maps between element sets of two quasigroups, homomorphism checks,
// and image subquasigroups.

#include <algorithm>
#include <string>
#include <vector>

#include "qgkit/errors.hpp"
#include "qgkit/quasigroup.hpp"

namespace qgkit {

struct QMap {
  int domain_order = 0;
  int codomain_order = 0;
  std::vector<int> values;

  int operator()(int x) const { return values[x]; }

  friend bool operator==(const QMap& a, const QMap& b) {
    return a.domain_order == b.domain_order &&
           a.codomain_order == b.codomain_order && a.values == b.values;
  }
};

inline QMap make_qmap(int domain_order, int codomain_order,
                      std::vector<int> values) {
  if (static_cast<int>(values.size()) != domain_order)
    throw DimensionMismatch("map has " + std::to_string(values.size()) +
                            " values, expected " + std::to_string(domain_order));
  for (int v : values)
    if (v < 0 || v >= codomain_order)
      throw DimensionMismatch("map value " + std::to_string(v) +
                              " outside codomain 0.." +
                              std::to_string(codomain_order - 1));
  return QMap{domain_order, codomain_order, std::move(values)};
}

inline QMap identity_map(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return QMap{n, n, std::move(v)};
}

inline QMap constant_map(int n, int m, int value) {
  return make_qmap(n, m, std::vector<int>(n, value));
}

inline bool is_surjective(const QMap& f) {
  std::vector<char> hit(f.codomain_order, 0);
  for (int v : f.values) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// f(x*y) = f(x)*f(y) over all pairs.
inline bool is_homomorphism(const QMap& f, const Quasigroup& q,
                            const Quasigroup& r) {
  if (f.domain_order != q.order() || f.codomain_order != r.order())
    throw DimensionMismatch("map dimensions do not match the quasigroups");
  const int n = q.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (f(q.mul(x, y)) != r.mul(f(x), f(y))) return false;
  return true;
}

inline bool is_endomorphism(const QMap& f, const Quasigroup& q) {
  return is_homomorphism(f, q, q);
}

struct ImageSubquasigroup {
  std::vector<int> elements;  // sorted image of f inside r
  Quasigroup induced;         // re-indexed quasigroup on the image
  QMap embed;                 // induced indices -> r
};

// The image of a homomorphism is closed under all three operations of the
// codomain; closure is validated, not assumed.
inline ImageSubquasigroup image_subquasigroup(const QMap& f,
                                              const Quasigroup& q,
                                              const Quasigroup& r) {
  if (!is_homomorphism(f, q, r)) throw NotHomomorphism("map is not a homomorphism");

  std::vector<int> elements = f.values;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

  std::vector<int> pos(r.order(), -1);
  for (int i = 0; i < static_cast<int>(elements.size()); ++i)
    pos[elements[i]] = i;

  const int k = static_cast<int>(elements.size());
  Table mul(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (pos[r.mul(elements[i], elements[j])] < 0 ||
          pos[r.ldiv(elements[i], elements[j])] < 0 ||
          pos[r.rdiv(elements[i], elements[j])] < 0)
        throw NotHomomorphism("image is not closed under the quasigroup operations");
      mul[i][j] = pos[r.mul(elements[i], elements[j])];
    }
  }
  Quasigroup induced = make_quasigroup(mul);
  QMap embed = make_qmap(k, r.order(), elements);
  return ImageSubquasigroup{std::move(elements), std::move(induced), std::move(embed)};
}

// All homomorphisms q -> r, in lexicographic order of their value vectors.
// Brute force over value assignments with prefix filtering.
inline std::vector<QMap> enumerate_homomorphisms(const Quasigroup& q,
                                                 const Quasigroup& r) {
  constexpr int kMaxDomain = 6;
  const int n = q.order();
  const int m = r.order();
  if (n > kMaxDomain)
    throw OrderTooLarge("homomorphism enumeration is capped at domain order " +
                        std::to_string(kMaxDomain));

  std::vector<QMap> result;
  std::vector<int> f(n, -1);

  auto consistent = [&](int v) {
    for (int x = 0; x <= v; ++x)
      for (int y = 0; y <= v; ++y) {
        const int p = q.mul(x, y);
        if (p > v) continue;
        if (x != v && y != v && p != v) continue;
        if (f[p] != r.mul(f[x], f[y])) return false;
      }
    return true;
  };

  auto search = [&](auto&& self, int v) -> void {
    if (v == n) {
      result.push_back(make_qmap(n, m, f));
      return;
    }
    for (int img = 0; img < m; ++img) {
      f[v] = img;
      if (consistent(v)) self(self, v + 1);
    }
    f[v] = -1;
  };

  search(search, 0);
  return result;
}

}  // namespace qgkit
