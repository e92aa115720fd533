#pragma once

// Exhaustive enumeration of small Latin squares (row-by-row backtracking
// with per-column used-symbol masks), endomorphism enumeration, and the
// variety census. The parallel paths split the search forest by completed
// second row and merge per-worker tallies, so results are independent of the
// worker count.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qgkit/errors.hpp"
#include "qgkit/qmap.hpp"
#include "qgkit/quasigroup.hpp"
#include "qgkit/varieties.hpp"

namespace qgkit {

enum class CellOrder { RowMajor, ColumnMajor };

struct EnumOptions {
  bool allow_order_six = false;
  CellOrder cell_order = CellOrder::RowMajor;
};

namespace detail {

constexpr int kEnumSoftCap = 5;
constexpr int kEnumHardCap = 6;

inline void check_enum_order(int n, const EnumOptions& opts) {
  if (n < 1) throw PreconditionFailed("order must be positive");
  if (n > kEnumHardCap || (n > kEnumSoftCap && !opts.allow_order_six))
    throw OrderTooLarge("enumeration of order " + std::to_string(n) +
                        " is not enabled");
}

// Backtracking state. Cells are stored row-major in `cells` whatever the
// fill order; `cross_used[j]` holds the symbols already placed in cross-line
// j (columns when filling rows, rows when filling columns).
struct LatinSearch {
  int n = 0;
  bool transposed = false;
  std::array<int, kEnumHardCap * kEnumHardCap> cells{};
  std::array<std::uint32_t, kEnumHardCap> cross_used{};

  int cell_index(int line, int j) const {
    return transposed ? j * n + line : line * n + j;
  }

  Table to_table() const {
    Table t(n, std::vector<int>(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) t[r][c] = cells[r * n + c];
    return t;
  }

  // Visits every completion of the cells from `step` onward, in ascending
  // symbol order. `visit` receives the finished state.
  template <class Visit>
  void complete(int step, std::uint32_t line_used, Visit&& visit) {
    if (step == n * n) {
      visit(*this);
      return;
    }
    const int j = step % n;
    if (j == 0) line_used = 0;
    const std::uint32_t full = (1u << n) - 1;
    std::uint32_t avail = full & ~(line_used | cross_used[j]);
    const int idx = cell_index(step / n, j);
    while (avail != 0) {
      const std::uint32_t bit = avail & (~avail + 1);
      avail ^= bit;
      const int s = std::countr_zero(bit);
      cells[idx] = s;
      cross_used[j] |= bit;
      complete(step + 1, line_used | bit, visit);
      cross_used[j] ^= bit;
    }
  }

  // Collects every valid prefix of the first `lines` fill lines.
  std::vector<LatinSearch> prefixes(int lines) {
    std::vector<LatinSearch> out;
    const int steps = std::min(lines * n, n * n);
    collect_prefixes(0, steps, 0, out);
    return out;
  }

 private:
  void collect_prefixes(int step, int limit, std::uint32_t line_used,
                        std::vector<LatinSearch>& out) {
    if (step == limit) {
      out.push_back(*this);
      return;
    }
    const int j = step % n;
    if (j == 0) line_used = 0;
    const std::uint32_t full = (1u << n) - 1;
    std::uint32_t avail = full & ~(line_used | cross_used[j]);
    const int idx = cell_index(step / n, j);
    while (avail != 0) {
      const std::uint32_t bit = avail & (~avail + 1);
      avail ^= bit;
      cells[idx] = std::countr_zero(bit);
      cross_used[j] |= bit;
      collect_prefixes(step + 1, limit, line_used | bit, out);
      cross_used[j] ^= bit;
    }
  }
};

}  // namespace detail

// Worker count from QGKIT_THREADS; unset means single-threaded.
inline int thread_count() {
  const char* env = std::getenv("QGKIT_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1)
    throw ParseError("QGKIT_THREADS must be a positive integer");
  return static_cast<int>(v);
}

// Visits every labeled n x n Latin square exactly once, sequentially, in
// lexicographic fill order. Returns the number visited.
template <class Visit>
std::uint64_t enumerate_latin_squares(int n, Visit&& visit,
                                      EnumOptions opts = {}) {
  detail::check_enum_order(n, opts);
  detail::LatinSearch s;
  s.n = n;
  s.transposed = opts.cell_order == CellOrder::ColumnMajor;
  std::uint64_t count = 0;
  s.complete(0, 0, [&](const detail::LatinSearch& done) {
    ++count;
    visit(done.to_table());
  });
  return count;
}

// Parallel fold over all labeled n x n Latin squares. `fold(acc, search)`
// consumes one finished square into a worker-local accumulator built by
// `make`; `merge` combines worker results and must be commutative and
// associative.
template <class Acc, class Make, class Fold, class Merge>
Acc enumerate_reduce(int n, int threads, Make make, Fold fold, Merge merge,
                     EnumOptions opts = {}) {
  detail::check_enum_order(n, opts);
  detail::LatinSearch root;
  root.n = n;
  root.transposed = opts.cell_order == CellOrder::ColumnMajor;

  if (threads < 1) threads = 1;
  if (threads == 1) {
    Acc acc = make();
    root.complete(0, 0, [&](const detail::LatinSearch& s) { fold(acc, s); });
    return acc;
  }

  std::vector<detail::LatinSearch> prefixes = root.prefixes(2);
  const int fill_from = std::min(2 * n, n * n);
  std::vector<Acc> results;
  results.reserve(threads);
  for (int w = 0; w < threads; ++w) results.push_back(make());

  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      Acc& acc = results[w];
      for (std::size_t i = w; i < prefixes.size();
           i += static_cast<std::size_t>(threads)) {
        detail::LatinSearch s = prefixes[i];
        // Resume with the line mask of the partially filled line (none:
        // prefixes end on a line boundary).
        s.complete(fill_from, 0, [&](const detail::LatinSearch& done) {
          fold(acc, done);
        });
      }
    });
  }
  for (auto& t : workers) t.join();

  Acc total = std::move(results[0]);
  for (int w = 1; w < threads; ++w) merge(total, results[w]);
  return total;
}

inline std::uint64_t count_latin_squares(int n, EnumOptions opts = {},
                                         int threads = 1) {
  return enumerate_reduce<std::uint64_t>(
      n, threads, [] { return std::uint64_t{0}; },
      [](std::uint64_t& acc, const detail::LatinSearch&) { ++acc; },
      [](std::uint64_t& a, const std::uint64_t& b) { a += b; }, opts);
}

// All endomorphisms of q, deduplicated by construction, in lexicographic
// order of their value vectors.
inline std::vector<QMap> enumerate_endomorphisms(const Quasigroup& q) {
  constexpr int kMaxOrder = 5;
  if (q.order() > kMaxOrder)
    throw OrderTooLarge("endomorphism enumeration is capped at order " +
                        std::to_string(kMaxOrder));
  return enumerate_homomorphisms(q, q);
}

struct CensusRow {
  int order = 0;
  std::uint64_t total = 0;
  std::map<std::string, std::uint64_t> counts;
};

namespace detail {

inline std::vector<int> census_predicate_indices(
    const std::vector<std::string>& predicates) {
  const auto& names = property_names();
  std::vector<int> idx;
  if (predicates.empty()) {
    for (int i = 0; i < static_cast<int>(names.size()); ++i) idx.push_back(i);
    return idx;
  }
  for (const auto& p : predicates) {
    bool found = false;
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
      if (names[i] == p) { idx.push_back(i); found = true; break; }
    if (!found) throw PreconditionFailed("unknown predicate '" + p + "'");
  }
  return idx;
}

struct CensusAcc {
  std::uint64_t total = 0;
  std::array<std::uint64_t, 7> counts{};
};

}  // namespace detail

// Streams every labeled Latin square of order n through the selected
// predicates. Counts are labeled counts.
inline CensusRow census(int n, const std::vector<std::string>& predicates = {},
                        int threads = 1) {
  if (n > detail::kEnumSoftCap)
    throw OrderTooLarge("census is capped at order " +
                        std::to_string(detail::kEnumSoftCap));
  const std::vector<int> idx = detail::census_predicate_indices(predicates);

  detail::CensusAcc acc = enumerate_reduce<detail::CensusAcc>(
      n, threads, [] { return detail::CensusAcc{}; },
      [&idx](detail::CensusAcc& a, const detail::LatinSearch& s) {
        ++a.total;
        const Quasigroup q = make_quasigroup(s.to_table());
        const PropertyFlags flags = property_flags(q);
        for (int i : idx)
          if (flags.get(i)) ++a.counts[i];
      },
      [](detail::CensusAcc& a, const detail::CensusAcc& b) {
        a.total += b.total;
        for (std::size_t i = 0; i < a.counts.size(); ++i)
          a.counts[i] += b.counts[i];
      });

  CensusRow row;
  row.order = n;
  row.total = acc.total;
  for (int i : idx) row.counts[property_names()[i]] = acc.counts[i];
  return row;
}

// Census over isomorphism classes instead of labeled tables; quadratic in the
// class count, so capped lower.
inline CensusRow census_up_to_iso(int n,
                                  const std::vector<std::string>& predicates = {}) {
  constexpr int kMaxIsoOrder = 4;
  if (n > kMaxIsoOrder)
    throw OrderTooLarge("isomorphism-class census is capped at order " +
                        std::to_string(kMaxIsoOrder));
  const std::vector<int> idx = detail::census_predicate_indices(predicates);

  std::vector<Quasigroup> reps;
  enumerate_latin_squares(n, [&](const Table& t) {
    Quasigroup q = make_quasigroup(t);
    for (const Quasigroup& r : reps)
      if (are_isomorphic(q, r)) return;
    reps.push_back(std::move(q));
  });

  CensusRow row;
  row.order = n;
  row.total = reps.size();
  for (int i : idx) row.counts[property_names()[i]] = 0;
  for (const Quasigroup& q : reps) {
    const PropertyFlags flags = property_flags(q);
    for (int i : idx)
      if (flags.get(i)) ++row.counts[property_names()[i]];
  }
  return row;
}

// Seeded sampler: randomized backtracking, first completion wins. Not
// uniform; used for fuzzing and round-trip tests only.
inline Table sample_latin_square(int n, std::mt19937& rng) {
  if (n < 1 || n > detail::kEnumHardCap)
    throw OrderTooLarge("sampler supports orders 1.." +
                        std::to_string(detail::kEnumHardCap));
  Table t(n, std::vector<int>(n, -1));
  std::vector<std::uint32_t> col_used(n, 0);
  const std::uint32_t full = (1u << n) - 1;

  auto fill = [&](auto&& self, int step, std::uint32_t row_used) -> bool {
    if (step == n * n) return true;
    const int r = step / n, c = step % n;
    if (c == 0) row_used = 0;
    std::uint32_t avail = full & ~(row_used | col_used[c]);
    std::vector<int> symbols;
    while (avail != 0) {
      const std::uint32_t bit = avail & (~avail + 1);
      avail ^= bit;
      symbols.push_back(std::countr_zero(bit));
    }
    std::shuffle(symbols.begin(), symbols.end(), rng);
    for (int s : symbols) {
      t[r][c] = s;
      col_used[c] |= 1u << s;
      if (self(self, step + 1, row_used | (1u << s))) return true;
      col_used[c] ^= 1u << s;
      t[r][c] = -1;
    }
    return false;
  };
  fill(fill, 0, 0);
  return t;
}

}  // namespace qgkit
