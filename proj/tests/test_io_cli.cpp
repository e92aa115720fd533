#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qgkit/cli.hpp"
#include "qgkit/qgkit.hpp"
#include "test_support.hpp"

using namespace qgkit;
using namespace qgtest;

namespace {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("qgkit-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("qg format") {
  SECTION("reader accepts comments and blank lines") {
    std::istringstream in(
        "# running example\n\n 4 \n0 1 2 3\n3 2 1 0\n# mid comment\n2 3 0 1\n1 0 3 2\n");
    CHECK(read_quasigroup(in).mul_table() == kQ4ex3);
  }

  SECTION("canonical writer") {
    std::ostringstream out;
    write_quasigroup(out, z(2));
    CHECK(out.str() == "2\n0 1\n1 0\n");
  }

  SECTION("parse errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_quasigroup(empty), ParseError);
    std::istringstream short_table("3\n0 1 2\n1 2 0\n");
    CHECK_THROWS_AS(read_quasigroup(short_table), ParseError);
    std::istringstream non_int("2\n0 x\n1 0\n");
    CHECK_THROWS_AS(read_quasigroup(non_int), ParseError);
    std::istringstream negative("-1\n");
    CHECK_THROWS_AS(read_quasigroup(negative), ParseError);
    std::istringstream out_of_range("2\n0 5\n5 0\n");
    CHECK_THROWS_AS(read_quasigroup(out_of_range), NotLatin);
  }
}

TEST_CASE("qmap format") {
  std::ostringstream out;
  write_qmap(out, make_qmap(4, 2, {0, 1, 0, 1}));
  CHECK(out.str() == "4 2\n0 1 0 1\n");

  std::istringstream in(out.str());
  QMap f = read_qmap(in);
  CHECK(f.domain_order == 4);
  CHECK(f.codomain_order == 2);
  CHECK(f.values == std::vector<int>{0, 1, 0, 1});

  std::istringstream bad("2 2\n0 7\n");
  CHECK_THROWS_AS(read_qmap(bad), DimensionMismatch);
}

TEST_CASE("bruck format round trips byte-exactly") {
  std::mt19937 rng(31);
  for (int i = 0; i < 25; ++i) {
    BruckSystem sys = sample_bruck(1 + i % 3, 1 + (i * 7) % 3, rng);
    std::ostringstream first;
    write_bruck(first, sys);
    std::istringstream in(first.str());
    BruckSystem back = read_bruck(in);
    CHECK(back == sys);
    std::ostringstream second;
    write_bruck(second, back);
    CHECK(second.str() == first.str());
  }

  std::istringstream missing_header("2 2\n0 1\n1 0\n");
  CHECK_THROWS_AS(read_bruck(missing_header), ParseError);
  std::istringstream bad_order(
      "bruck 1 1\nblock 1 0\n0\n");
  CHECK_THROWS_AS(read_bruck(bad_order), ParseError);
}

TEST_CASE("cli validate") {
  TempDir dir;
  write_quasigroup_file(dir.file("good.qg"), q4ex3());
  CliResult ok = cli({"validate", dir.file("good.qg")});
  CHECK(ok.rc == 0);
  CHECK(ok.out == "ok order=4\n");

  std::ofstream bad(dir.file("bad.qg"));
  bad << "2\n0 0\n1 1\n";
  bad.close();
  CliResult fail = cli({"validate", dir.file("bad.qg")});
  CHECK(fail.rc == 2);
  CHECK(fail.err.find("not a permutation") != std::string::npos);

  CliResult missing = cli({"validate", dir.file("absent.qg")});
  CHECK(missing.rc == 2);
}

TEST_CASE("cli props and deviation") {
  TempDir dir;
  write_quasigroup_file(dir.file("q.qg"), q4ex3());
  CliResult props = cli({"props", dir.file("q.qg")});
  CHECK(props.rc == 0);
  CHECK(props.out == "loop=0 group=0 idempotent=0 Dl=1 aDl=1 LF=1 LIP=1\n");

  CliResult dev = cli({"deviation", dir.file("q.qg")});
  CHECK(dev.rc == 0);
  CHECK(dev.out ==
        "4 4\n0 2 0 2\nendomorphism=1\nimage_group=1\nimage=0 2\n");
}

TEST_CASE("cli decompose and compose round trip") {
  TempDir dir;
  write_quasigroup_file(dir.file("q.qg"), q4ex3());

  CliResult dec = cli({"decompose", dir.file("q.qg"), "--deviation", "--out",
                       dir.file("d")});
  REQUIRE(dec.rc == 0);
  CHECK(dec.out.find("classes=2\n") != std::string::npos);
  CHECK(dec.out.find("fiber=2\n") != std::string::npos);
  CHECK(dec.out.find("proj=0 1 0 1\n") != std::string::npos);
  CHECK(dec.out.find("gamma=0 1\n") != std::string::npos);
  CHECK(dec.out.find("g=0 0\n") != std::string::npos);
  CHECK(dec.out.find("idempotent=0\n") != std::string::npos);

  CliResult comp = cli({"compose", dir.file("d.bruck"), "--out", dir.file("r")});
  REQUIRE(comp.rc == 0);
  // The transversal labeling of this example is the identity, so the
  // round-tripped file is byte-identical.
  CHECK(slurp(dir.file("r.qg")) == slurp(dir.file("q.qg")));
  CHECK(slurp(dir.file("r.qmap")) == "4 2\n0 1 0 1\n");

  // Decomposing with respect to an explicit endomorphism file.
  write_qmap_file(dir.file("e.qmap"), constant_map(4, 4, 0));
  CliResult dec2 = cli({"decompose", dir.file("q.qg"), "--endo-file",
                        dir.file("e.qmap"), "--out", dir.file("d2")});
  CHECK(dec2.rc == 0);
  CHECK(dec2.out.find("classes=1\n") != std::string::npos);
  CHECK(dec2.out.find("idempotent=1\n") != std::string::npos);

  // Deviation of a non-Dl table is rejected with an input error.
  std::optional<Quasigroup> non_dl;
  enumerate_latin_squares(4, [&](const Table& t) {
    if (non_dl) return;
    Quasigroup q = make_quasigroup(t);
    if (!left_deviation(q).is_endomorphism) non_dl = q;
  });
  REQUIRE(non_dl.has_value());
  write_quasigroup_file(dir.file("nd.qg"), *non_dl);
  CliResult rejected = cli({"decompose", dir.file("nd.qg"), "--deviation",
                            "--out", dir.file("x")});
  CHECK(rejected.rc == 2);
  CHECK(rejected.err.find("endomorphism") != std::string::npos);
}

TEST_CASE("cli construct") {
  TempDir dir;

  CliResult ex3 = cli({"construct", "example3", "--E", "cyclic:2", "--T",
                       "cyclic:2", "--eps", "id", "--out", dir.file("lf")});
  REQUIRE(ex3.rc == 0);
  CHECK(ex3.out.find("order=4\n") != std::string::npos);
  CHECK(ex3.out.find("left_unit=0\n") != std::string::npos);
  CHECK(slurp(dir.file("lf.qg")) == "4\n0 1 2 3\n3 2 1 0\n2 3 0 1\n1 0 3 2\n");

  CliResult ex1 = cli({"construct", "example1", "--E", "file:" + dir.file("lf.qg"),
                       "--T1", "cyclic:2", "--T2", "cyclic:2", "--out",
                       dir.file("dl")});
  REQUIRE(ex1.rc == 0);
  CliResult thm2 = cli({"check", "theorem2", dir.file("dl.bruck")});
  CHECK(thm2.rc == 0);
  CHECK(thm2.out.find("verdict=PASS\n") != std::string::npos);

  CliResult ex2 = cli({"construct", "example2", "--E", "cyclic:3", "--T",
                       "cyclic:3", "--eps", "const:0", "--out", dir.file("adl")});
  REQUIRE(ex2.rc == 0);
  CliResult thm3 = cli({"check", "theorem3", dir.file("adl.bruck")});
  CHECK(thm3.rc == 0);
  CHECK(thm3.out.find("verdict=PASS\n") != std::string::npos);

  // Product specifier.
  CliResult prod = cli({"construct", "example3", "--E", "prod:cyclic:2xcyclic:3",
                        "--T", "cyclic:6", "--eps", "const:0", "--out",
                        dir.file("p")});
  CHECK(prod.rc == 0);
  CHECK(prod.out.find("order=36\n") != std::string::npos);

  // Example 2 demands a right unit in the fiber.
  TempDir dir2;
  write_quasigroup_file(dir2.file("iq3.qg"), iq3());
  CliResult noruf = cli({"construct", "example2", "--E", "cyclic:2", "--T",
                         "file:" + dir2.file("iq3.qg"), "--eps", "const:0",
                         "--out", dir2.file("bad")});
  CHECK(noruf.rc == 2);
}

TEST_CASE("cli check verdicts") {
  TempDir dir;

  // A system failing the Dl criterion: right-unit-free block on (1, 1\1).
  std::vector<Table> blocks(4, z(3).mul_table());
  blocks[1 * 2 + 0] = kRightUnitFree3;
  write_bruck_file(dir.file("bad.bruck"), make_bruck_system(z(2), 3, blocks));
  CliResult fail = cli({"check", "theorem2", dir.file("bad.bruck")});
  CHECK(fail.rc == 1);
  CHECK(fail.out.find("right_units=0\n") != std::string::npos);
  CHECK(fail.out.find("verdict=FAIL\n") != std::string::npos);

  write_quasigroup_file(dir.file("q.qg"), q4ex3());
  CliResult prop1 = cli({"check", "prop1", dir.file("q.qg")});
  CHECK(prop1.rc == 0);
  CHECK(prop1.out.find("violations=0\n") != std::string::npos);

  CliResult thm4 = cli({"check", "theorem4", "--E", "cyclic:2", "--T",
                        "cyclic:2", "--eps", "all"});
  CHECK(thm4.rc == 0);
  CHECK(thm4.out.find("instances=2\n") != std::string::npos);
  CHECK(thm4.out.find("verdict=PASS\n") != std::string::npos);
}

TEST_CASE("cli census and isotopy-check") {
  unsetenv("QGKIT_THREADS");
  CliResult c3 = cli({"census", "--order", "3"});
  CHECK(c3.rc == 0);
  CHECK(c3.out ==
        "order=3 total=12 loop=3 group=3 idempotent=1 Dl=12 aDl=6 LF=12 LIP=12\n");

  CliResult c2 = cli({"census", "--order", "2", "--predicates", "group,LF"});
  CHECK(c2.rc == 0);
  CHECK(c2.out == "order=2 total=2 group=2 LF=2\n");

  CliResult iso = cli({"census", "--order", "3", "--up-to-iso"});
  CHECK(iso.rc == 0);
  CHECK(iso.out.find("total=5") != std::string::npos);

  CliResult itp = cli({"isotopy-check", "--E", "cyclic:2", "--T", "cyclic:2",
                       "--eps", "id"});
  CHECK(itp.rc == 0);
  CHECK(itp.out == "phi=0 3 2 1\nverdict=PASS\n");
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).rc == 2);
  CHECK(cli({"frobnicate"}).rc == 2);
  CHECK(cli({"census"}).rc == 2);                       // missing --order
  CHECK(cli({"decompose", "nowhere.qg"}).rc == 2);      // missing --out
  CHECK(cli({"construct", "example3", "--E", "cyclic:2", "--T", "cyclic:3",
             "--eps", "id", "--out", "/tmp/x"})
            .rc == 2);  // id needs equal orders
}
