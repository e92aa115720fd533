#pragma once

// Bruck systems: a base quasigroup E, a fiber set T of size k, and an
// E x E indexed family of Latin squares. Composing yields a quasigroup on
// T x E; conversely a quasigroup decomposes with respect to an epimorphism
// or an endomorphism.

#include <string>
#include <utility>
#include <vector>

#include "qgkit/congruence.hpp"
#include "qgkit/errors.hpp"
#include "qgkit/qmap.hpp"
#include "qgkit/quasigroup.hpp"

namespace qgkit {

class BruckSystem {
 public:
  const Quasigroup& base() const { return base_; }
  int base_order() const { return base_.order(); }
  int fiber_size() const { return fiber_size_; }

  // Block (a,b): the Latin square of the fiber multiplication over that pair.
  const Table& block(int a, int b) const { return blocks_[a * base_.order() + b]; }
  const std::vector<Table>& blocks() const { return blocks_; }

  friend bool operator==(const BruckSystem& x, const BruckSystem& y) {
    return x.base_ == y.base_ && x.fiber_size_ == y.fiber_size_ &&
           x.blocks_ == y.blocks_;
  }

  friend BruckSystem make_bruck_system(Quasigroup base, int fiber_size,
                                       std::vector<Table> blocks);

 private:
  BruckSystem(Quasigroup base, int fiber_size, std::vector<Table> blocks)
      : base_(std::move(base)), fiber_size_(fiber_size), blocks_(std::move(blocks)) {}

  Quasigroup base_;
  int fiber_size_;
  std::vector<Table> blocks_;  // row-major over (a,b)
};

inline BruckSystem make_bruck_system(Quasigroup base, int fiber_size,
                                     std::vector<Table> blocks) {
  const int m = base.order();
  if (fiber_size < 1) throw InvalidSystem("fiber size must be positive");
  if (static_cast<int>(blocks.size()) != m * m)
    throw InvalidSystem("expected " + std::to_string(m * m) + " blocks, got " +
                        std::to_string(blocks.size()));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const Table& t = blocks[a * m + b];
      if (static_cast<int>(t.size()) != fiber_size)
        throw InvalidSystem("block (" + std::to_string(a) + "," +
                            std::to_string(b) + ") has the wrong size");
      try {
        detail::validate_latin(t);
      } catch (const Error& e) {
        throw InvalidSystem("block (" + std::to_string(a) + "," +
                            std::to_string(b) + "): " + e.what());
      }
    }
  }
  return BruckSystem(std::move(base), fiber_size, std::move(blocks));
}

// Pair (t, a) in T x E <-> single index t*m + a, so the canonical projection
// is index mod m.
inline int encode_pair(int t, int a, int base_order) { return t * base_order + a; }
inline std::pair<int, int> decode_pair(int index, int base_order) {
  return {index / base_order, index % base_order};
}

struct Composition {
  Quasigroup q;  // quasigroup on T x E
  QMap proj;     // canonical epimorphism (t,a) -> a
};

inline Composition compose(const BruckSystem& sys) {
  const int m = sys.base_order();
  const int k = sys.fiber_size();
  const int n = k * m;
  Table mul(n, std::vector<int>(n));
  for (int t1 = 0; t1 < k; ++t1)
    for (int a = 0; a < m; ++a)
      for (int t2 = 0; t2 < k; ++t2)
        for (int b = 0; b < m; ++b)
          mul[encode_pair(t1, a, m)][encode_pair(t2, b, m)] =
              encode_pair(sys.block(a, b)[t1][t2], sys.base().mul(a, b), m);

  std::vector<int> proj(n);
  for (int i = 0; i < n; ++i) proj[i] = i % m;
  return Composition{make_quasigroup(mul), make_qmap(n, m, std::move(proj))};
}

// Transversal labeling: element of Q -> (fiber rank, base element). Each
// fiber is labeled 0..k-1 in ascending element order.
using Labeling = std::vector<std::pair<int, int>>;

struct EpiDecomposition {
  BruckSystem system;
  Labeling labeling;
};

namespace detail {

inline void check_round_trip(const Quasigroup& q, const BruckSystem& sys,
                             const Labeling& labeling) {
  const int m = sys.base_order();
  Composition comp = compose(sys);
  for (int x = 0; x < q.order(); ++x) {
    for (int y = 0; y < q.order(); ++y) {
      const int cx = encode_pair(labeling[x].first, labeling[x].second, m);
      const int cy = encode_pair(labeling[y].first, labeling[y].second, m);
      const int p = q.mul(x, y);
      if (comp.q.mul(cx, cy) !=
          encode_pair(labeling[p].first, labeling[p].second, m))
        throw InconsistentDecomposition(
            "composition does not reproduce the original table");
    }
  }
}

}  // namespace detail

// Bruck decomposition of q with respect to an epimorphism pi onto e. The
// result reproduces q's table exactly through the labeling, not merely up to
// isomorphism.
inline EpiDecomposition decompose_epi(const Quasigroup& q, const QMap& pi,
                                      const Quasigroup& e) {
  if (pi.domain_order != q.order() || pi.codomain_order != e.order())
    throw DimensionMismatch("projection dimensions do not match");
  if (!is_homomorphism(pi, q, e))
    throw NotEpimorphism("projection is not a homomorphism");
  if (!is_surjective(pi)) throw NotEpimorphism("projection is not surjective");

  const int m = e.order();
  std::vector<std::vector<int>> fiber(m);
  for (int x = 0; x < q.order(); ++x) fiber[pi(x)].push_back(x);
  const int k = static_cast<int>(fiber[0].size());
  for (const auto& f : fiber)
    if (static_cast<int>(f.size()) != k)
      throw NonUniformFibers("projection fibers are not uniform");

  Labeling labeling(q.order());
  for (int a = 0; a < m; ++a)
    for (int t = 0; t < k; ++t) labeling[fiber[a][t]] = {t, a};

  std::vector<Table> blocks(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Table blk(k, std::vector<int>(k));
      const int ab = e.mul(a, b);
      for (int t1 = 0; t1 < k; ++t1) {
        for (int t2 = 0; t2 < k; ++t2) {
          const int p = q.mul(fiber[a][t1], fiber[b][t2]);
          if (pi(p) != ab)
            throw InconsistentDecomposition("product escaped its fiber");
          blk[t1][t2] = labeling[p].first;
        }
      }
      blocks[a * m + b] = std::move(blk);
    }
  }

  EpiDecomposition dec{make_bruck_system(e, k, std::move(blocks)),
                       std::move(labeling)};
  detail::check_round_trip(q, dec.system, dec.labeling);
  return dec;
}

// Bruck decomposition with respect to an endomorphism eta: the base E is the
// quotient by eta's fibers and iota = eta o pi^{-1} splits into a fiber part
// gamma: E -> T and a base part g: E -> E.
struct EndoDecomposition {
  BruckSystem system;
  Labeling labeling;
  std::vector<int> gamma;  // class -> fiber label of iota(class)
  QMap g;                  // endomorphism induced on the base
  QMap proj;               // canonical projection Q -> E
  QMap eta;                // the decomposed endomorphism
};

inline EndoDecomposition decompose_endo(const Quasigroup& q, const QMap& eta) {
  if (!is_endomorphism(eta, q))
    throw NotHomomorphism("map is not an endomorphism");

  Congruence cong = fibers(eta, q);
  Quotient quot = quotient(q, cong);
  EpiDecomposition epi = decompose_epi(q, quot.proj, quot.quotient);

  const int m = quot.quotient.order();
  std::vector<int> gamma(m);
  std::vector<int> g_values(m);
  for (int a = 0; a < m; ++a) {
    // iota(a) = eta(representative); eta is constant on each fiber.
    const int rep = cong.classes[a][0];
    const int image = eta(rep);
    for (int x : cong.classes[a])
      if (eta(x) != image)
        throw NotHomomorphism("map is not constant on its own fibers");
    gamma[a] = epi.labeling[image].first;
    g_values[a] = epi.labeling[image].second;
  }
  QMap g = make_qmap(m, m, std::move(g_values));
  if (!is_endomorphism(g, quot.quotient))
    throw InconsistentDecomposition("induced base map is not an endomorphism");

  // gamma(ab) = gamma(a) nabla_{g(a),g(b)} gamma(b) for all a, b.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (gamma[quot.quotient.mul(a, b)] !=
          epi.system.block(g(a), g(b))[gamma[a]][gamma[b]])
        throw InconsistentDecomposition("fiber map violates the Bruck identity");

  return EndoDecomposition{std::move(epi.system), std::move(epi.labeling),
                           std::move(gamma),      std::move(g),
                           std::move(quot.proj),  eta};
}

// eta is idempotent iff g is idempotent and gamma factors over g. Both the
// decomposition criterion and eta o eta = eta are evaluated; they must agree.
inline bool is_idempotent_via_decomposition(const EndoDecomposition& d) {
  const int m = d.g.domain_order;
  bool via_maps = true;
  for (int a = 0; a < m && via_maps; ++a) {
    if (d.g(d.g(a)) != d.g(a)) via_maps = false;
    if (d.gamma[d.g(a)] != d.gamma[a]) via_maps = false;
  }
  bool direct = true;
  for (int x = 0; x < d.eta.domain_order && direct; ++x)
    if (d.eta(d.eta(x)) != d.eta(x)) direct = false;
  if (via_maps != direct)
    throw InconsistentDecomposition(
        "decomposition criterion disagrees with direct idempotency");
  return via_maps;
}

}  // namespace qgkit
