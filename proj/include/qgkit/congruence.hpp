#pragma once

// Congruences induced by endomorphism fibers, and quotient quasigroups.

#include <algorithm>
#include <vector>

#include "qgkit/errors.hpp"
#include "qgkit/qmap.hpp"
#include "qgkit/quasigroup.hpp"

namespace qgkit {

struct Congruence {
  std::vector<int> class_of;             // element -> class index
  std::vector<std::vector<int>> classes; // class -> ascending element list

  int class_count() const { return static_cast<int>(classes.size()); }
};

inline bool is_compatible(const Congruence& c, const Quasigroup& q) {
  // class(x*y) must depend only on (class(x), class(y)).
  const int m = c.class_count();
  std::vector<int> prod(static_cast<std::size_t>(m) * m, -1);
  for (int x = 0; x < q.order(); ++x) {
    for (int y = 0; y < q.order(); ++y) {
      const int idx = c.class_of[x] * m + c.class_of[y];
      const int p = c.class_of[q.mul(x, y)];
      if (prod[idx] < 0)
        prod[idx] = p;
      else if (prod[idx] != p)
        return false;
    }
  }
  return true;
}

// Builds a Congruence from a class assignment, validating that the classes
// partition 0..n-1, are uniform in size, and are compatible with q.
inline Congruence make_congruence(const Quasigroup& q, std::vector<int> class_of) {
  const int n = q.order();
  if (static_cast<int>(class_of.size()) != n)
    throw DimensionMismatch("class assignment length does not match the order");
  int c = 0;
  for (int v : class_of) {
    if (v < 0) throw PreconditionFailed("negative class index");
    c = std::max(c, v + 1);
  }
  Congruence cong;
  cong.class_of = std::move(class_of);
  cong.classes.assign(c, {});
  for (int x = 0; x < n; ++x) cong.classes[cong.class_of[x]].push_back(x);
  for (const auto& cls : cong.classes) {
    if (cls.empty()) throw PreconditionFailed("empty congruence class");
    if (cls.size() != cong.classes[0].size())
      throw NonUniformFibers("congruence classes are not uniform");
  }
  if (!is_compatible(cong, q))
    throw NotCompatible("partition is not compatible with multiplication");
  return cong;
}

// Congruence classes are the preimages of an endomorphism, ordered by their
// smallest element.
inline Congruence fibers(const QMap& f, const Quasigroup& q) {
  if (!is_endomorphism(f, q)) throw NotHomomorphism("map is not an endomorphism");
  const int n = q.order();
  // Order image values by the smallest preimage element; since f is scanned
  // in element order, first occurrence order is exactly that.
  std::vector<int> class_of(n, -1);
  std::vector<int> value_class(n, -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    int& cls = value_class[f(x)];
    if (cls < 0) cls = next++;
    class_of[x] = cls;
  }
  return make_congruence(q, std::move(class_of));
}

struct Quotient {
  Quasigroup quotient;  // classes with class(x) * class(y) = class(x*y)
  QMap proj;            // canonical projection
};

inline Quotient quotient(const Quasigroup& q, const Congruence& c) {
  const int m = c.class_count();
  Table mul(m, std::vector<int>(m, -1));
  // Well-definedness is rechecked over every pair, not just representatives.
  for (int x = 0; x < q.order(); ++x) {
    for (int y = 0; y < q.order(); ++y) {
      int& cell = mul[c.class_of[x]][c.class_of[y]];
      const int p = c.class_of[q.mul(x, y)];
      if (cell < 0)
        cell = p;
      else if (cell != p)
        throw NotCompatible("induced product is ill-defined");
    }
  }
  return Quotient{make_quasigroup(mul),
                  make_qmap(q.order(), m, c.class_of)};
}

}  // namespace qgkit
