#pragma once

// Text formats. Readers skip blank lines and `#` comments; writers emit the
// canonical form: space-separated integers, one trailing newline, no
// locale-dependent formatting. write(read(write(x))) is byte-identical.
//
//   qg     first line n, then n rows of n entries
//   qmap   first line `n m`, then one line of n values
//   bruck  `bruck m k`, the m x m base table, then one `block a b` header
//          plus k rows per block in lexicographic (a,b) order

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qgkit/bruck.hpp"
#include "qgkit/errors.hpp"
#include "qgkit/qmap.hpp"
#include "qgkit/quasigroup.hpp"

namespace qgkit {
namespace detail {

// Token stream over the non-comment content of a text file.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string tok;
    while (line_ >> tok || refill()) {
      if (!tok.empty()) return tok;
    }
    throw ParseError(std::string("unexpected end of input, expected ") + what);
  }

  int next_int(const char* what) {
    const std::string tok = next(what);
    try {
      std::size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected " + std::string(what) + ", got '" + tok + "'");
    }
  }

  void expect(const std::string& literal, const char* what) {
    const std::string tok = next(what);
    if (tok != literal)
      throw ParseError("expected '" + literal + "', got '" + tok + "'");
  }

 private:
  bool refill() {
    std::string raw;
    while (std::getline(in_, raw)) {
      const auto start = raw.find_first_not_of(" \t\r");
      if (start == std::string::npos || raw[start] == '#') continue;
      line_.clear();
      line_.str(raw);
      return true;
    }
    return false;
  }

  std::istream& in_;
  std::istringstream line_;
};

inline Table read_table(TokenReader& r, int rows, int cols, const char* what) {
  Table t(rows, std::vector<int>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t[i][j] = r.next_int(what);
  return t;
}

inline void write_row(std::ostream& out, const std::vector<int>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out << ' ';
    out << row[i];
  }
  out << '\n';
}

}  // namespace detail

inline Quasigroup read_quasigroup(std::istream& in) {
  detail::TokenReader r(in);
  const int n = r.next_int("order");
  if (n < 1) throw ParseError("order must be positive");
  return make_quasigroup(detail::read_table(r, n, n, "table entry"));
}

inline void write_quasigroup(std::ostream& out, const Quasigroup& q) {
  out << q.order() << '\n';
  for (const auto& row : q.mul_table()) detail::write_row(out, row);
}

inline QMap read_qmap(std::istream& in) {
  detail::TokenReader r(in);
  const int n = r.next_int("domain order");
  const int m = r.next_int("codomain order");
  if (n < 1 || m < 1) throw ParseError("map orders must be positive");
  std::vector<int> values(n);
  for (int i = 0; i < n; ++i) values[i] = r.next_int("map value");
  return make_qmap(n, m, std::move(values));
}

inline void write_qmap(std::ostream& out, const QMap& f) {
  out << f.domain_order << ' ' << f.codomain_order << '\n';
  detail::write_row(out, f.values);
}

inline BruckSystem read_bruck(std::istream& in) {
  detail::TokenReader r(in);
  r.expect("bruck", "'bruck' header");
  const int m = r.next_int("base order");
  const int k = r.next_int("fiber size");
  if (m < 1 || k < 1) throw ParseError("system dimensions must be positive");
  Quasigroup base = make_quasigroup(detail::read_table(r, m, m, "base entry"));
  std::vector<Table> blocks;
  blocks.reserve(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      r.expect("block", "'block' header");
      if (r.next_int("block row index") != a || r.next_int("block column index") != b)
        throw ParseError("blocks must appear in lexicographic order");
      blocks.push_back(detail::read_table(r, k, k, "block entry"));
    }
  }
  return make_bruck_system(std::move(base), k, std::move(blocks));
}

inline void write_bruck(std::ostream& out, const BruckSystem& sys) {
  const int m = sys.base_order();
  out << "bruck " << m << ' ' << sys.fiber_size() << '\n';
  for (const auto& row : sys.base().mul_table()) detail::write_row(out, row);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      out << "block " << a << ' ' << b << '\n';
      for (const auto& row : sys.block(a, b)) detail::write_row(out, row);
    }
  }
}

namespace detail {

template <class T, class Reader>
T read_file(const std::string& path, Reader reader, const char* kind) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + std::string(kind) + " file '" + path + "'");
  return reader(in);
}

template <class T, class Writer>
void write_file(const std::string& path, const T& value, Writer writer) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file '" + path + "'");
  writer(out, value);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace detail

inline Quasigroup read_quasigroup_file(const std::string& path) {
  return detail::read_file<Quasigroup>(
      path, [](std::istream& in) { return read_quasigroup(in); }, "quasigroup");
}

inline void write_quasigroup_file(const std::string& path, const Quasigroup& q) {
  detail::write_file(path, q, [](std::ostream& out, const Quasigroup& v) {
    write_quasigroup(out, v);
  });
}

inline QMap read_qmap_file(const std::string& path) {
  return detail::read_file<QMap>(
      path, [](std::istream& in) { return read_qmap(in); }, "map");
}

inline void write_qmap_file(const std::string& path, const QMap& f) {
  detail::write_file(path, f,
                     [](std::ostream& out, const QMap& v) { write_qmap(out, v); });
}

inline BruckSystem read_bruck_file(const std::string& path) {
  return detail::read_file<BruckSystem>(
      path, [](std::istream& in) { return read_bruck(in); }, "bruck system");
}

inline void write_bruck_file(const std::string& path, const BruckSystem& sys) {
  detail::write_file(path, sys, [](std::ostream& out, const BruckSystem& v) {
    write_bruck(out, v);
  });
}

}  // namespace qgkit
