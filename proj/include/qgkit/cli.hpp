#pragma once

// Command-line surface. A thin dispatcher over the library: every subcommand
// reads/writes the text formats from io.hpp and prints stable, line-oriented
// reports. Exit codes: 0 success (and true verdicts), 1 false verdict from a
// `check`, 2 usage or input errors.

#include <CLI11.hpp>

#include <cctype>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgkit/qgkit.hpp"

namespace qgkit {
namespace cli_detail {

inline std::pair<Quasigroup, std::string> parse_qspec_at(const std::string& s,
                                                         std::size_t& pos);

// Specifier grammar: cyclic:<n> | prod:<spec>x<spec> | file:<path.qg>.
// file: consumes the rest of the string, so it cannot be nested inside prod.
inline std::pair<Quasigroup, std::string> parse_qspec_at(const std::string& s,
                                                         std::size_t& pos) {
  auto starts = [&](const char* prefix) {
    return s.compare(pos, std::string::traits_type::length(prefix), prefix) == 0;
  };
  if (starts("cyclic:")) {
    pos += 7;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected an order after 'cyclic:'");
    const int n = std::stoi(s.substr(start, pos - start));
    return {cyclic_group(n), "Z" + std::to_string(n)};
  }
  if (starts("prod:")) {
    pos += 5;
    auto [a, name_a] = parse_qspec_at(s, pos);
    if (pos >= s.size() || s[pos] != 'x')
      throw ParseError("expected 'x' between product factors in '" + s + "'");
    ++pos;
    auto [b, name_b] = parse_qspec_at(s, pos);
    return {product_quasigroup(a, b), name_a + "x" + name_b};
  }
  if (starts("file:")) {
    const std::string path = s.substr(pos + 5);
    pos = s.size();
    return {read_quasigroup_file(path), path};
  }
  throw ParseError("bad quasigroup specifier '" + s.substr(pos) +
                   "' (expected cyclic:<n>, prod:<spec>x<spec> or file:<path>)");
}

inline Quasigroup parse_quasigroup_spec(const std::string& s) {
  std::size_t pos = 0;
  auto [q, name] = parse_qspec_at(s, pos);
  if (pos != s.size())
    throw ParseError("trailing characters in specifier '" + s + "'");
  return q;
}

inline GroupSpec parse_group_spec(const std::string& s) {
  std::size_t pos = 0;
  auto [q, name] = parse_qspec_at(s, pos);
  if (pos != s.size())
    throw ParseError("trailing characters in specifier '" + s + "'");
  return GroupSpec::from_quasigroup(std::move(q), name);
}

// id | const:<elem> | file:<path.qmap>
inline QMap parse_map_spec(const std::string& s, int domain, int codomain) {
  if (s == "id") {
    if (domain != codomain)
      throw ParseError("'id' needs equal domain and codomain orders");
    return identity_map(domain);
  }
  if (s.rfind("const:", 0) == 0) {
    const int v = std::stoi(s.substr(6));
    return constant_map(domain, codomain, v);
  }
  if (s.rfind("file:", 0) == 0) {
    QMap f = read_qmap_file(s.substr(5));
    if (f.domain_order != domain || f.codomain_order != codomain)
      throw DimensionMismatch("map file dimensions do not match the operands");
    return f;
  }
  throw ParseError("bad map specifier '" + s +
                   "' (expected id, const:<elem> or file:<path>)");
}

inline void print_values(std::ostream& out, const char* key,
                         const std::vector<int>& values) {
  out << key << '=';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ' ';
    out << values[i];
  }
  out << '\n';
}

inline void print_props(std::ostream& out, const PropertyFlags& f) {
  const auto& names = property_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out << ' ';
    out << names[i] << '=' << (f.get(static_cast<int>(i)) ? 1 : 0);
  }
  out << '\n';
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"finite quasigroup toolkit: Bruck systems, deviation varieties, "
               "constructions and exhaustive censuses"};
  app.require_subcommand(1);
  int rc = 0;

  // validate
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a .qg file");
  validate->add_option("file", validate_path, "quasigroup file")->required();
  validate->callback([&] {
    Quasigroup q = read_quasigroup_file(validate_path);
    out << "ok order=" << q.order() << '\n';
  });

  // props
  std::string props_path;
  auto* props = app.add_subcommand("props", "print the property flag line");
  props->add_option("file", props_path, "quasigroup file")->required();
  props->callback([&] {
    print_props(out, property_flags(read_quasigroup_file(props_path)));
  });

  // deviation
  std::string dev_path;
  auto* deviation = app.add_subcommand(
      "deviation", "print the left deviation as a map plus verdicts");
  deviation->add_option("file", dev_path, "quasigroup file")->required();
  deviation->callback([&] {
    DeviationReport rep = left_deviation(read_quasigroup_file(dev_path));
    write_qmap(out, rep.e);
    out << "endomorphism=" << (rep.is_endomorphism ? 1 : 0) << '\n';
    out << "image_group=" << (rep.image_is_group ? 1 : 0) << '\n';
    print_values(out, "image", rep.image);
  });

  // decompose
  std::string decomp_path, decomp_endo_file, decomp_out;
  bool decomp_deviation = false;
  auto* decomp = app.add_subcommand(
      "decompose", "Bruck decomposition with respect to an endomorphism");
  decomp->add_option("file", decomp_path, "quasigroup file")->required();
  auto* opt_dev = decomp->add_flag("--deviation", decomp_deviation,
                                   "decompose with respect to the left deviation");
  decomp->add_option("--endo-file", decomp_endo_file, "endomorphism as a .qmap file")
      ->excludes(opt_dev);
  decomp->add_option("--out", decomp_out, "output prefix")->required();
  decomp->callback([&] {
    if (!decomp_deviation && decomp_endo_file.empty())
      throw ParseError("need --deviation or --endo-file");
    Quasigroup q = read_quasigroup_file(decomp_path);
    QMap eta = decomp_deviation ? left_deviation_map(q)
                                : read_qmap_file(decomp_endo_file);
    EndoDecomposition d = decompose_endo(q, eta);
    write_bruck_file(decomp_out + ".bruck", d.system);
    out << "wrote " << decomp_out << ".bruck\n";
    out << "classes=" << d.system.base_order() << '\n';
    out << "fiber=" << d.system.fiber_size() << '\n';
    print_values(out, "proj", d.proj.values);
    print_values(out, "gamma", d.gamma);
    print_values(out, "g", d.g.values);
    out << "idempotent=" << (is_idempotent_via_decomposition(d) ? 1 : 0) << '\n';
  });

  // compose
  std::string comp_path, comp_out;
  auto* comp = app.add_subcommand("compose", "compose a Bruck system");
  comp->add_option("file", comp_path, "bruck system file")->required();
  comp->add_option("--out", comp_out, "output prefix")->required();
  comp->callback([&] {
    Composition c = compose(read_bruck_file(comp_path));
    write_quasigroup_file(comp_out + ".qg", c.q);
    write_qmap_file(comp_out + ".qmap", c.proj);
    out << "wrote " << comp_out << ".qg\n";
    out << "wrote " << comp_out << ".qmap\n";
    out << "order=" << c.q.order() << '\n';
  });

  // construct
  auto* construct = app.add_subcommand("construct", "build one of the worked families");
  construct->require_subcommand(1);
  std::string c_E, c_T1, c_T2, c_T, c_eps, c_filler, c_out;

  auto* ex1 = construct->add_subcommand("example1", "Dl family from a Dl base");
  ex1->add_option("--E", c_E, "base quasigroup spec (must lie in Dl)")->required();
  ex1->add_option("--T1", c_T1, "fiber quasigroup with a right unit")->required();
  ex1->add_option("--T2", c_T2, "fiber quasigroup where that unit is idempotent")
      ->required();
  ex1->add_option("--filler", c_filler, "filler block (default: T1)");
  ex1->add_option("--out", c_out, "output prefix")->required();
  ex1->callback([&] {
    std::optional<Table> filler;
    if (!c_filler.empty()) filler = parse_quasigroup_spec(c_filler).mul_table();
    BruckSystem sys =
        build_dl_system(parse_quasigroup_spec(c_E), parse_quasigroup_spec(c_T1),
                        parse_quasigroup_spec(c_T2), filler);
    Composition c = compose(sys);
    write_bruck_file(c_out + ".bruck", sys);
    write_quasigroup_file(c_out + ".qg", c.q);
    out << "wrote " << c_out << ".bruck\n";
    out << "wrote " << c_out << ".qg\n";
    out << "order=" << c.q.order() << '\n';
  });

  auto* ex2 = construct->add_subcommand("example2", "aDl family over a group base");
  ex2->add_option("--E", c_E, "base group spec")->required();
  ex2->add_option("--T", c_T, "fiber quasigroup spec")->required();
  ex2->add_option("--eps", c_eps, "homomorphism spec E -> T")->required();
  ex2->add_option("--filler", c_filler, "filler block (default: T)");
  ex2->add_option("--out", c_out, "output prefix")->required();
  ex2->callback([&] {
    Quasigroup e = parse_quasigroup_spec(c_E);
    Quasigroup t = parse_quasigroup_spec(c_T);
    QMap eps = parse_map_spec(c_eps, e.order(), t.order());
    std::optional<Table> filler;
    if (!c_filler.empty()) filler = parse_quasigroup_spec(c_filler).mul_table();
    BruckSystem sys = build_adl_system(e, t, eps, filler);
    Composition c = compose(sys);
    write_bruck_file(c_out + ".bruck", sys);
    write_quasigroup_file(c_out + ".qg", c.q);
    out << "wrote " << c_out << ".bruck\n";
    out << "wrote " << c_out << ".qg\n";
    out << "order=" << c.q.order() << '\n';
  });

  auto* ex3 = construct->add_subcommand(
      "example3", "LF family from two groups and a homomorphism");
  ex3->add_option("--E", c_E, "base group spec")->required();
  ex3->add_option("--T", c_T, "fiber group spec")->required();
  ex3->add_option("--eps", c_eps, "group homomorphism spec E -> T")->required();
  ex3->add_option("--out", c_out, "output prefix")->required();
  ex3->callback([&] {
    GroupSpec e = parse_group_spec(c_E);
    GroupSpec t = parse_group_spec(c_T);
    LfInstance inst =
        build_lf_quasigroup(e, t, parse_map_spec(c_eps, e.order(), t.order()));
    write_quasigroup_file(c_out + ".qg", inst.quasigroup());
    out << "wrote " << c_out << ".qg\n";
    out << "order=" << inst.quasigroup().order() << '\n';
    out << "left_unit=" << inst.encode(t.unit(), e.unit()) << '\n';
  });

  // check
  auto* check = app.add_subcommand("check", "run an assertion battery");
  check->require_subcommand(1);
  std::string chk_path, chk_endo_file, chk_E, chk_T, chk_eps;

  auto* thm2 = check->add_subcommand(
      "theorem2", "Dl criterion for a Bruck system (right units + section)");
  thm2->add_option("file", chk_path, "bruck system file")->required();
  thm2->callback([&] {
    DlSystemReport rep = check_dl_conditions(read_bruck_file(chk_path), true);
    out << "right_units=" << (rep.fibers_have_right_units ? 1 : 0) << '\n';
    if (rep.epsilon) print_values(out, "epsilon", *rep.epsilon);
    out << "section_hom=" << (rep.section_is_homomorphism ? 1 : 0) << '\n';
    out << "verdict=" << (rep.passed() ? "PASS" : "FAIL") << '\n';
    if (!rep.passed()) rc = 1;
  });

  auto* thm3 = check->add_subcommand(
      "theorem3", "aDl criterion for a Bruck system (group base + units + eps)");
  thm3->add_option("file", chk_path, "bruck system file")->required();
  thm3->callback([&] {
    AdlSystemReport rep = check_adl_conditions(read_bruck_file(chk_path), true);
    out << "base_group=" << (rep.base_is_group ? 1 : 0) << '\n';
    out << "right_units=" << (rep.fibers_have_right_units ? 1 : 0) << '\n';
    if (rep.epsilon) print_values(out, "epsilon", *rep.epsilon);
    out << "epsilon_hom=" << (rep.epsilon_is_homomorphism ? 1 : 0) << '\n';
    out << "verdict=" << (rep.passed() ? "PASS" : "FAIL") << '\n';
    if (!rep.passed()) rc = 1;
  });

  auto* prop1 = check->add_subcommand(
      "prop1", "idempotency of endomorphisms vs their decompositions");
  prop1->add_option("file", chk_path, "quasigroup file")->required();
  prop1->add_option("--endo-file", chk_endo_file, "restrict to one endomorphism");
  prop1->callback([&] {
    Quasigroup q = read_quasigroup_file(chk_path);
    std::vector<QMap> endos;
    if (!chk_endo_file.empty())
      endos.push_back(read_qmap_file(chk_endo_file));
    else
      endos = enumerate_endomorphisms(q);
    int violations = 0;
    for (const QMap& eta : endos) {
      EndoDecomposition d = decompose_endo(q, eta);
      bool direct = true;
      for (int x = 0; x < q.order(); ++x)
        if (eta(eta(x)) != eta(x)) { direct = false; break; }
      if (is_idempotent_via_decomposition(d) != direct) ++violations;
    }
    out << "endomorphisms=" << endos.size() << '\n';
    out << "violations=" << violations << '\n';
    out << "verdict=" << (violations == 0 ? "PASS" : "FAIL") << '\n';
    if (violations != 0) rc = 1;
  });

  auto* thm4 = check->add_subcommand(
      "theorem4", "LF construction battery over the group catalog");
  thm4->add_option("--E", chk_E, "base group spec (default: whole catalog)");
  thm4->add_option("--T", chk_T, "fiber group spec");
  thm4->add_option("--eps", chk_eps, "homomorphism spec or 'all'");
  thm4->callback([&] {
    LfBatteryResult res;
    if (chk_E.empty() && chk_T.empty()) {
      res = lf_family_battery();
    } else {
      if (chk_E.empty() || chk_T.empty() || chk_eps.empty())
        throw ParseError("need --E, --T and --eps (or none of them)");
      GroupSpec e = parse_group_spec(chk_E);
      GroupSpec t = parse_group_spec(chk_T);
      std::vector<QMap> homs;
      if (chk_eps == "all")
        homs = enumerate_group_homs(e, t);
      else
        homs.push_back(parse_map_spec(chk_eps, e.order(), t.order()));
      for (const QMap& eps : homs) {
        ++res.instances;
        if (!verify_lf_instance(build_lf_quasigroup(e, t, eps)))
          ++res.violations;
      }
    }
    out << "instances=" << res.instances << '\n';
    out << "violations=" << res.violations << '\n';
    out << "verdict=" << (res.violations == 0 ? "PASS" : "FAIL") << '\n';
    if (res.violations != 0) rc = 1;
  });

  // census
  int census_order = 0;
  std::vector<std::string> census_preds;
  bool census_iso = false;
  auto* cen = app.add_subcommand("census", "count labeled Latin squares by predicate");
  cen->add_option("--order", census_order, "order to enumerate")->required();
  cen->add_option("--predicates", census_preds,
                  "comma-separated predicate names (default: all)")
      ->delimiter(',');
  cen->add_flag("--up-to-iso", census_iso, "count isomorphism classes instead");
  cen->callback([&] {
    CensusRow row = census_iso ? census_up_to_iso(census_order, census_preds)
                               : census(census_order, census_preds, thread_count());
    out << "order=" << row.order << " total=" << row.total;
    for (const std::string& name : property_names()) {
      auto it = row.counts.find(name);
      if (it != row.counts.end()) out << ' ' << name << '=' << it->second;
    }
    out << '\n';
  });

  // isotopy-check
  auto* iso = app.add_subcommand(
      "isotopy-check", "verify the (phi,id,id) isotopism of an LF instance");
  iso->add_option("--E", chk_E, "base group spec")->required();
  iso->add_option("--T", chk_T, "fiber group spec")->required();
  iso->add_option("--eps", chk_eps, "group homomorphism spec")->required();
  iso->callback([&] {
    GroupSpec e = parse_group_spec(chk_E);
    GroupSpec t = parse_group_spec(chk_T);
    LfInstance inst =
        build_lf_quasigroup(e, t, parse_map_spec(chk_eps, e.order(), t.order()));
    const bool ok = isotopy_to_direct_product(inst);
    print_values(out, "phi", isotopy_phi(inst));
    out << "verdict=" << (ok ? "PASS" : "FAIL") << '\n';
    if (!ok) rc = 1;
  });

  std::vector<const char*> argv;
  argv.push_back("qgkit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}

}  // namespace qgkit
