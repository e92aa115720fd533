#pragma once

// Builders for the worked families: Bruck systems composing into Dl or aDl,
// and the LF-quasigroup built from two groups and a homomorphism between
// them, together with its closed-form left inverse and the isotopism onto
// the direct product.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgkit/bruck.hpp"
#include "qgkit/errors.hpp"
#include "qgkit/qmap.hpp"
#include "qgkit/quasigroup.hpp"
#include "qgkit/varieties.hpp"

namespace qgkit {

inline Quasigroup cyclic_group(int n) {
  if (n < 1) throw PreconditionFailed("cyclic group order must be positive");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return make_quasigroup(t);
}

// Direct product on pairs (x, y) encoded as x * |b| + y.
inline Quasigroup product_quasigroup(const Quasigroup& a, const Quasigroup& b) {
  const int nb = b.order();
  const int n = a.order() * nb;
  Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return make_quasigroup(t);
}

// A finite group presented as a quasigroup table, with its unit and inverse
// map resolved once.
class GroupSpec {
 public:
  static GroupSpec cyclic(int n) {
    return GroupSpec(cyclic_group(n), "Z" + std::to_string(n));
  }

  static GroupSpec product(const GroupSpec& a, const GroupSpec& b) {
    return GroupSpec(product_quasigroup(a.group(), b.group()),
                     a.name() + "x" + b.name());
  }

  static GroupSpec from_table(const Table& t, std::string name = "custom") {
    return GroupSpec(make_quasigroup(t), std::move(name));
  }

  static GroupSpec from_quasigroup(Quasigroup q, std::string name = "custom") {
    return GroupSpec(std::move(q), std::move(name));
  }

  const Quasigroup& group() const { return group_; }
  const std::string& name() const { return name_; }
  int order() const { return group_.order(); }
  int unit() const { return unit_; }
  int inverse(int x) const { return group_.ldiv(x, unit_); }

 private:
  GroupSpec(Quasigroup q, std::string name)
      : group_(std::move(q)), name_(std::move(name)) {
    Classification c = classify(group_);
    if (!c.is_group) throw NotGroup("'" + name_ + "' is not a group table");
    unit_ = *c.left_unit;
  }

  Quasigroup group_;
  std::string name_;
  int unit_;
};

// The stock of small groups used by the exhaustive batteries.
inline std::vector<GroupSpec> group_catalog() {
  std::vector<GroupSpec> cat;
  for (int n = 1; n <= 6; ++n) cat.push_back(GroupSpec::cyclic(n));
  cat.push_back(GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::cyclic(2)));
  cat.push_back(GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::cyclic(3)));
  return cat;
}

inline std::vector<QMap> enumerate_group_homs(const GroupSpec& e,
                                              const GroupSpec& t) {
  return enumerate_homomorphisms(e.group(), t.group());
}

namespace detail {

inline Table checked_filler(const std::optional<Table>& filler,
                            const Quasigroup& fallback, int k) {
  if (!filler) return fallback.mul_table();
  if (static_cast<int>(filler->size()) != k)
    throw PreconditionFailed("filler block has the wrong size");
  try {
    validate_latin(*filler);
  } catch (const Error& e) {
    throw PreconditionFailed(std::string("filler block: ") + e.what());
  }
  return *filler;
}

}  // namespace detail

// Bruck system whose composition lies in Dl: blocks over (a, a\a) carry t1
// (which has a right unit eps), blocks over pairs of deviation values carry
// t2 (in which eps is idempotent) except where that would collide with the
// first pattern, and every other pair gets the filler.
inline BruckSystem build_dl_system(const Quasigroup& e, const Quasigroup& t1,
                                   const Quasigroup& t2,
                                   std::optional<Table> filler = std::nullopt,
                                   bool verify = kDebugChecks) {
  if (!in_Dl(e)) throw PreconditionFailed("base quasigroup is not in Dl");
  const int k = t1.order();
  if (t2.order() != k)
    throw PreconditionFailed("fiber quasigroups must have equal order");
  Classification c1 = classify(t1);
  if (!c1.right_unit)
    throw PreconditionFailed("first fiber quasigroup has no right unit");
  const int eps = *c1.right_unit;
  if (t2.mul(eps, eps) != eps)
    throw PreconditionFailed("right unit is not idempotent in the second fiber quasigroup");
  const Table fill = detail::checked_filler(filler, t1, k);

  const int m = e.order();
  std::vector<Table> blocks(static_cast<std::size_t>(m) * m, fill);
  std::vector<char> claim(static_cast<std::size_t>(m) * m, 0);  // 1 = unit pattern, 2 = deviation pattern

  for (int a = 0; a < m; ++a) {
    blocks[a * m + e.ldiv(a, a)] = t1.mul_table();
    claim[a * m + e.ldiv(a, a)] = 1;
  }

  std::vector<char> is_deviation_value(m, 0);
  for (int a = 0; a < m; ++a) is_deviation_value[e.ldiv(a, a)] = 1;
  for (int u = 0; u < m; ++u) {
    if (!is_deviation_value[u]) continue;
    for (int v = 0; v < m; ++v) {
      if (!is_deviation_value[v] || v == e.ldiv(u, u)) continue;
      if (claim[u * m + v] == 1)
        throw PatternConflict("block patterns overlap");  // excluded by construction
      blocks[u * m + v] = t2.mul_table();
      claim[u * m + v] = 2;
    }
  }

  BruckSystem sys = make_bruck_system(e, k, std::move(blocks));
  if (verify && !check_dl_conditions(sys, true).passed())
    throw InconsistentPredicates("built system fails the Dl criterion");
  return sys;
}

// Bruck system whose composition lies in aDl: over a group base E, the block
// at (a, 1) multiplies by (alpha / eps(a)) o beta, every other column of
// blocks is the filler.
inline BruckSystem build_adl_system(const Quasigroup& e, const Quasigroup& t,
                                    const QMap& eps,
                                    std::optional<Table> filler = std::nullopt,
                                    bool verify = kDebugChecks) {
  Classification ce = classify(e);
  if (!ce.is_group) throw PreconditionFailed("base quasigroup is not a group");
  const int unit = *ce.left_unit;
  const int m = e.order();
  const int k = t.order();
  if (eps.domain_order != m || eps.codomain_order != k)
    throw DimensionMismatch("eps dimensions do not match");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (eps(e.mul(a, b)) != t.mul(eps(a), eps(b)))
        throw PreconditionFailed("eps is not a homomorphism");
  for (int alpha = 0; alpha < k; ++alpha)
    if (t.mul(alpha, eps(unit)) != alpha)
      throw PreconditionFailed("eps(1) is not a right unit of the fiber quasigroup");
  const Table fill = detail::checked_filler(filler, t, k);

  std::vector<Table> blocks(static_cast<std::size_t>(m) * m, fill);
  for (int a = 0; a < m; ++a) {
    Table blk(k, std::vector<int>(k));
    for (int alpha = 0; alpha < k; ++alpha)
      for (int beta = 0; beta < k; ++beta)
        blk[alpha][beta] = t.mul(t.rdiv(eps(a), alpha), beta);
    blocks[a * m + unit] = std::move(blk);
  }

  BruckSystem sys = make_bruck_system(e, k, std::move(blocks));
  if (verify && !check_adl_conditions(sys, true).passed())
    throw InconsistentPredicates("built system fails the aDl criterion");
  return sys;
}

// LF-quasigroup on T x E built from groups E, T and a homomorphism eps:
// (alpha, a)(beta, b) = (alpha . eps(a)^-1 . beta, ab). Instances keep their
// factorization so the closed-form operations below can run.
class LfInstance {
 public:
  const Quasigroup& quasigroup() const { return q_; }
  const GroupSpec& base() const { return base_; }   // E
  const GroupSpec& fiber() const { return fiber_; } // T
  const QMap& eps() const { return eps_; }

  int encode(int t, int a) const { return encode_pair(t, a, base_.order()); }
  std::pair<int, int> decode(int x) const { return decode_pair(x, base_.order()); }

  friend LfInstance build_lf_quasigroup(const GroupSpec&, const GroupSpec&,
                                        const QMap&);
  friend LfInstance lf_instance_from_table(const Table&, const GroupSpec&,
                                           const GroupSpec&, const QMap&);

 private:
  LfInstance(Quasigroup q, GroupSpec base, GroupSpec fiber, QMap eps)
      : q_(std::move(q)), base_(std::move(base)), fiber_(std::move(fiber)),
        eps_(std::move(eps)) {}

  Quasigroup q_;
  GroupSpec base_;
  GroupSpec fiber_;
  QMap eps_;
};

namespace detail {

inline Table lf_table(const GroupSpec& e, const GroupSpec& t, const QMap& eps) {
  const int m = e.order();
  const int k = t.order();
  const int n = k * m;
  Table mul(n, std::vector<int>(n));
  for (int alpha = 0; alpha < k; ++alpha)
    for (int a = 0; a < m; ++a)
      for (int beta = 0; beta < k; ++beta)
        for (int b = 0; b < m; ++b)
          mul[encode_pair(alpha, a, m)][encode_pair(beta, b, m)] = encode_pair(
              t.group().mul(t.group().mul(alpha, t.inverse(eps(a))), beta),
              e.group().mul(a, b), m);
  return mul;
}

}  // namespace detail

inline LfInstance build_lf_quasigroup(const GroupSpec& e, const GroupSpec& t,
                                      const QMap& eps) {
  if (eps.domain_order != e.order() || eps.codomain_order != t.order())
    throw DimensionMismatch("eps dimensions do not match the groups");
  if (!is_homomorphism(eps, e.group(), t.group()))
    throw NotHomomorphism("eps is not a group homomorphism");
  return LfInstance(make_quasigroup(detail::lf_table(e, t, eps)), e, t, eps);
}

// Accepts a table as an LF instance only if it matches the construction for
// the claimed factorization exactly.
inline LfInstance lf_instance_from_table(const Table& table, const GroupSpec& e,
                                         const GroupSpec& t, const QMap& eps) {
  if (eps.domain_order != e.order() || eps.codomain_order != t.order())
    throw DimensionMismatch("eps dimensions do not match the groups");
  if (!is_homomorphism(eps, e.group(), t.group()))
    throw NotHomomorphism("eps is not a group homomorphism");
  if (table != detail::lf_table(e, t, eps))
    throw NotLfInstance("table does not match the claimed factorization");
  return LfInstance(make_quasigroup(table), e, t, eps);
}

// Closed-form left inverse of x = (alpha, a):
// (eps(a) . alpha^-1 . eps(a)^-1, a^-1). Verified against the definition and
// against the scanned left-inverse map.
inline int lf_left_inverse(const LfInstance& inst, int x) {
  const Quasigroup& q = inst.quasigroup();
  if (x < 0 || x >= q.order()) throw PreconditionFailed("element out of range");
  const auto [alpha, a] = inst.decode(x);
  const Quasigroup& tg = inst.fiber().group();
  const int ea = inst.eps()(a);
  const int lam = inst.encode(
      tg.mul(tg.mul(ea, inst.fiber().inverse(alpha)), inst.fiber().inverse(ea)),
      inst.base().inverse(a));
  for (int y = 0; y < q.order(); ++y)
    if (q.mul(lam, q.mul(x, y)) != y)
      throw InconsistentPredicates("closed-form left inverse fails the definition");
  auto scanned = has_left_inverse_property(q);
  if (!scanned || (*scanned)(x) != lam)
    throw InconsistentPredicates("closed-form left inverse disagrees with the scan");
  return lam;
}

// The bijection phi(alpha, a) = (alpha . eps(a)^-1, a) as an index permutation.
inline std::vector<int> isotopy_phi(const LfInstance& inst) {
  const Quasigroup& tg = inst.fiber().group();
  const int k = inst.fiber().order();
  const int m = inst.base().order();
  std::vector<int> phi(static_cast<std::size_t>(k) * m);
  for (int alpha = 0; alpha < k; ++alpha)
    for (int a = 0; a < m; ++a)
      phi[inst.encode(alpha, a)] =
          inst.encode(tg.mul(alpha, inst.fiber().inverse(inst.eps()(a))), a);
  return phi;
}

// Checks that (phi, id, id) is an isotopism onto the direct product T x E:
// x o y = phi(x) . y for all x, y.
inline bool isotopy_to_direct_product(const LfInstance& inst) {
  const std::vector<int> phi = isotopy_phi(inst);
  const int n = inst.quasigroup().order();
  std::vector<char> hit(n, 0);
  for (int v : phi) {
    if (hit[v]) throw IsotopyFailed("phi is not a bijection");
    hit[v] = 1;
  }
  const Quasigroup prod =
      product_quasigroup(inst.fiber().group(), inst.base().group());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (inst.quasigroup().mul(x, y) != prod.mul(phi[x], y))
        throw IsotopyFailed("phi does not carry the product onto the direct product");
  return true;
}

// Everything the LF construction promises, checked on one instance: the LF
// identity, the left unit at (1,1), the closed-form left inverse, aDl
// membership, the deviation (eps(a), 1), and the isotopism onto T x E.
inline bool verify_lf_instance(const LfInstance& inst) {
  const Quasigroup& q = inst.quasigroup();
  const int m = inst.base().order();
  if (!is_LF(q)) return false;
  Classification cls = classify(q);
  const int unit = inst.encode(inst.fiber().unit(), inst.base().unit());
  if (!cls.left_unit || *cls.left_unit != unit) return false;
  for (int x = 0; x < q.order(); ++x) lf_left_inverse(inst, x);  // throws on failure
  if (!in_aDl(q)) return false;
  for (int t = 0; t < inst.fiber().order(); ++t)
    for (int a = 0; a < m; ++a)
      if (q.ldiv(inst.encode(t, a), inst.encode(t, a)) !=
          inst.encode(inst.eps()(a), inst.base().unit()))
        return false;
  return isotopy_to_direct_product(inst);
}

struct LfBatteryResult {
  int instances = 0;
  int violations = 0;
};

// Sweeps every homomorphism between every ordered pair of catalog groups.
inline LfBatteryResult lf_family_battery(
    const std::vector<GroupSpec>& groups = group_catalog()) {
  LfBatteryResult result;
  for (const GroupSpec& e : groups) {
    for (const GroupSpec& t : groups) {
      for (const QMap& eps : enumerate_group_homs(e, t)) {
        ++result.instances;
        try {
          if (!verify_lf_instance(build_lf_quasigroup(e, t, eps)))
            ++result.violations;
        } catch (const Error&) {
          ++result.violations;
        }
      }
    }
  }
  return result;
}

}  // namespace qgkit
