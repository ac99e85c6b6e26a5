#pragma once

// Command-line driver. run_command returns 0 on success, 1 when a check fails, 2 on input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cartan_diag.hpp"
#include "cartan/equivalence.hpp"
#include "cartan/instance_io.hpp"
#include "cartan/rotation.hpp"
#include "cartan/twisted_dual.hpp"
#include "cartan/weyl.hpp"

namespace cartan {

struct CliOptions {
  std::string command;
  std::vector<std::string> files;
  bool json = false;
  std::int64_t modulus_limit = 0;
  bool oracle = false;
  std::string catalog;
  std::string theta;
  std::string lattice;
  std::string subgroupoid;
};

struct Report {
  std::string instance;
  nlohmann::ordered_json checks = {{"max", nullptr}, {"ricc", nullptr}, {"cartan", nullptr}, {"diag_S", nullptr}, {"diag_B", nullptr}};
  nlohmann::ordered_json weyl = {{"principal", nullptr}, {"free", nullptr}, {"trivializable", nullptr}};
  std::vector<std::string> notes;
  bool failed = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["instance"] = instance;
    j["checks"] = checks;
    j["weyl"] = weyl;
    j["notes"] = notes;
    return j;
  }

  void print(std::ostream& out) const {
    out << instance << '\n';
    auto field = [&](const std::string& key, const nlohmann::ordered_json& v) {
      if (v.is_null()) return;
      out << "  " << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    };
    for (const auto& [k, v] : checks.items()) field(k, v);
    for (const auto& [k, v] : weyl.items()) field(k, v);
    for (const auto& n : notes) out << "  " << n << '\n';
  }
};

// "a b; c d" with one generator per row.
inline std::vector<Vec2> parse_lattice_rows(const std::string& text) {
  std::vector<Vec2> gens;
  std::stringstream ss(text);
  for (std::string row; std::getline(ss, row, ';');) {
    std::istringstream rs(row);
    std::vector<std::int64_t> v;
    for (std::string t; rs >> t;) {
      std::size_t used = 0;
      try {
        v.push_back(std::stoll(t, &used));
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || used != t.size()) fail(ErrorCode::ParseError, "bad lattice entry '" + t + "'");
    }
    if (v.empty()) continue;
    if (v.size() != 2) fail(ErrorCode::ParseError, "each lattice row must hold two integers");
    gens.push_back({v[0], v[1]});
  }
  if (gens.empty()) fail(ErrorCode::ParseError, "lattice needs at least one generator");
  return gens;
}

namespace detail {

inline std::string bool_word(bool b) { return b ? "true" : "false"; }

inline Report rotation_report(const std::string& command, const std::string& name, const RotationBlock& rb) {
  Report r;
  r.instance = name;
  const Theta& theta = rb.theta;
  const LatticeSubgroup s = lattice_from_generators(rb.generators);
  r.notes.push_back("theta: " + theta.str());
  r.notes.push_back("hermite: " + s.str() + ", rank " + std::to_string(s.rank()));
  const bool cartan = check_cartan_rotation(theta, s);
  r.checks["cartan"] = cartan;
  const DThetaReport dt = coboundary_d_theta(theta, s);
  r.notes.push_back("d_theta(l,r) = Lambda^(" + dt.exponent.str({"l", "r"}) + "), identity " + (dt.verified ? "verified" : "FAILED"));
  if (!dt.verified) r.failed = true;
  if (cartan) {
    const bool diag = check_diag_rotation(theta, s);
    r.checks["diag_S"] = diag;
    const WeylRotationDescriptor w = weyl_groupoid_rotation(theta, s);
    const bool cert = theta.irrational ? w.quotient_iso_verified : w.freeness_certificate;
    r.weyl["principal"] = cert;
    r.weyl["free"] = cert;
    r.notes.push_back("weyl groupoid: " + w.str());
    const Verdict v = weyl_trivializable_rotation(theta, s);
    r.weyl["trivializable"] = v == Verdict::Unknown ? nlohmann::ordered_json("unknown") : nlohmann::ordered_json(v == Verdict::True);
    if (theta.irrational) {
      const Vec2 g = s.rank_one_generator();
      const RotationF f = trivializing_F_rotation(g[0], g[1]);
      r.notes.push_back("bezout: a = " + std::to_string(f.a) + ", b = " + std::to_string(f.b));
      r.notes.push_back(f.str());
    }
    if (command == "check-diagonal" && !diag) r.failed = true;
    if (command == "weyl-trivial" && v != Verdict::True) r.failed = true;
  } else {
    r.checks["diag_S"] = false;
    r.failed = true;
  }
  return r;
}

inline std::vector<std::pair<std::string, Subgroupoid>> select_subgroupoids(const LoadedInstance& li, const CliOptions& o) {
  if (!o.subgroupoid.empty()) {
    for (const auto& p : li.subgroupoids)
      if (p.first == o.subgroupoid) return {p};
    fail(ErrorCode::ParseError, "no subgroupoid named " + o.subgroupoid);
  }
  if (!li.subgroupoids.empty()) return li.subgroupoids;
  std::vector<std::pair<std::string, Subgroupoid>> out;
  std::size_t i = 0;
  for (const Subgroupoid& s : wide_normal_subgroupoids(li.groupoid))
    if (is_abelian_twist(li.cocycle, s)) out.emplace_back("auto" + std::to_string(i++), s);
  return out;
}

inline std::string members_str(const Subgroupoid& s) {
  std::string out;
  for (Id x : s.members()) out += (out.empty() ? "" : " ") + std::to_string(x);
  return "{" + out + "}";
}

inline Report finite_report(const CliOptions& o, const std::string& name, const Cocycle& c, const Subgroupoid& s) {
  Report r;
  r.instance = name;
  r.notes.push_back("S = " + members_str(s));
  const std::string& cmd = o.command;
  const CartanVerdict v = check_cartan(c, s);
  auto set_cartan = [&] {
    r.checks["max"] = v.max;
    r.checks["ricc"] = v.ricc;
    r.checks["cartan"] = v.cartan;
  };
  const bool buildable = v.wide && v.normal && v.abelian;
  if (cmd == "info") {
    const NormalityReport n = is_wide_normal(s);
    r.notes.push_back("wide: " + bool_word(n.wide) + ", in isotropy: " + bool_word(n.in_isotropy) + ", normal: " + bool_word(n.normal) +
                      ", abelian twist: " + bool_word(v.abelian));
    set_cartan();
    return r;
  }
  if (cmd == "check-cartan") {
    set_cartan();
    if (!v.cartan) r.failed = true;
  }
  if (cmd == "check-diagonal") {
    set_cartan();
    r.checks["diag_S"] = check_diag_S(c, s);
    r.checks["diag_B"] = check_diag_B(c, s);
    if (!r.checks["diag_S"].get<bool>()) r.failed = true;
  }
  if (cmd == "dual") {
    if (!buildable) {
      r.notes.push_back("S is not wide, normal and abelian-twist");
      r.failed = true;
      return r;
    }
    const TwistedPair p = TwistedPair::build(c, s);
    for (Id x = 0; x < static_cast<Id>(p.point_count()); ++x) {
      const TwistedCharacter& k = p.point(x);
      std::string line = "point " + std::to_string(x) + " at unit " + std::to_string(k.unit) + ":";
      for (std::size_t i = 0; i < k.support.size(); ++i) line += " " + std::to_string(k.support[i]) + "->" + k.values[i].str();
      r.notes.push_back(line);
    }
    return r;
  }
  if (cmd == "weyl" || cmd == "weyl-trivial") {
    if (!buildable) {
      r.notes.push_back("S is not wide, normal and abelian-twist");
      r.failed = true;
      return r;
    }
    const TwistedPair p = TwistedPair::build(c, s);
    const WeylTwistRep rep = build_weyl_twist(p);
    r.weyl["principal"] = is_principal(rep.base);
    r.weyl["free"] = is_free(rep.base);
    r.notes.push_back("dual points: " + std::to_string(p.point_count()) + ", W arrows: " + std::to_string(rep.base.arrow_count()) +
                      ", quotient size: " + std::to_string(p.quot().groupoid.size()));
    r.notes.push_back("weyl cocycle modulus: " + std::to_string(rep.phase_modulus));
    if (cmd == "weyl-trivial") {
      set_cartan();
      if (!v.cartan) {
        r.notes.push_back("pair is not Cartan");
        r.failed = true;
        return r;
      }
      const auto f = solve_weyl_twist(rep);
      r.weyl["trivializable"] = f.has_value();
      if (f) {
        if (!verify_trivializing_F(p, *f)) fail(ErrorCode::CriteriaDisagree, "solved F is not a homomorphism");
        std::string xs = "F correction x:";
        for (std::size_t a = 0; a < f->x.size(); ++a) xs += " " + f->x[a].str();
        r.notes.push_back(xs);
      } else {
        r.failed = true;
      }
    }
  }
  if (cmd == "equivalence-suite") {
    const EquivalenceReport e = equivalence_suite(c, s);
    set_cartan();
    r.checks["diag_S"] = e.diag_S;
    r.checks["diag_B"] = e.diag_B;
    if (e.weyl_built) {
      r.weyl["principal"] = e.principal;
      r.weyl["free"] = e.free;
    }
    if (e.trivializable) r.weyl["trivializable"] = *e.trivializable;
    for (const auto& f : e.failures) r.notes.push_back("inconsistent: " + f);
    if (!e.consistent()) r.failed = true;
  }
  if (o.oracle && buildable) {
    const TwistedPair p = TwistedPair::build(c, s);
    const EquivalenceReport e = equivalence_suite(c, s, false);
    const bool delta = cross_check_delta(p, build_weyl_twist(p));
    r.notes.push_back("oracle: equivalence " + std::string(e.consistent() ? "consistent" : "INCONSISTENT") + ", normalizer criteria " +
                      (delta ? "agree" : "DISAGREE"));
    if (!e.consistent() || !delta) r.failed = true;
  }
  return r;
}

inline std::vector<Report> run_instance(const CliOptions& o, const std::string& name, const InstanceData& data) {
  std::vector<Report> out;
  LoadedInstance li = load_instance(data);
  if (data.has_groupoid && o.modulus_limit > 0 && li.cocycle.modulus() > o.modulus_limit)
    fail(ErrorCode::ModulusLimit, name + ": cocycle modulus " + std::to_string(li.cocycle.modulus()) + " exceeds the limit");
  if (o.command == "validate") {
    Report r;
    r.instance = name;
    if (data.has_groupoid)
      r.notes.push_back("valid: " + std::to_string(li.groupoid.size()) + " elements, " + std::to_string(li.groupoid.unit_count()) +
                        " units, cocycle modulus " + std::to_string(li.cocycle.modulus()) + ", " +
                        std::to_string(li.subgroupoids.size()) + " subgroupoids");
    if (li.rotation) r.notes.push_back("rotation block: theta " + li.rotation->theta.str());
    out.push_back(r);
    return out;
  }
  if (data.has_groupoid && o.command != "rotation") {
    if (o.command == "info") {
      Report r;
      r.instance = name;
      const FiniteGroupoid& g = li.groupoid;
      r.notes.push_back("elements: " + std::to_string(g.size()) + ", units: " + std::to_string(g.unit_count()) +
                        ", isotropy size: " + std::to_string(isotropy(g).size()) + ", principal: " + bool_word(is_principal(g)));
      r.notes.push_back("cocycle modulus: " + std::to_string(li.cocycle.modulus()) + ", trivial: " + bool_word(li.cocycle.is_trivial()));
      out.push_back(r);
    }
    for (const auto& [sname, s] : select_subgroupoids(li, o)) out.push_back(finite_report(o, name + "#" + sname, li.cocycle, s));
    return out;
  }
  if (!li.rotation) fail(ErrorCode::ParseError, name + ": no ROTATION block");
  if (o.command == "dual" || o.command == "equivalence-suite")
    fail(ErrorCode::PreconditionFailed, o.command + " needs a finite instance");
  out.push_back(rotation_report(o.command, name + "#rotation", *li.rotation));
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cartan pairs and Weyl groupoids for twisted groupoids"};
  app.require_subcommand(1);
  CliOptions o;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Parse and validate instance files"},
      {"info", "Summarize groupoids and subgroupoids"},
      {"check-cartan", "Decide the Cartan conditions"},
      {"check-diagonal", "Decide the diagonal conditions"},
      {"weyl", "Build the Weyl groupoid and twist"},
      {"weyl-trivial", "Decide whether the Weyl twist is trivial"},
      {"dual", "List the twisted dual"},
      {"rotation", "Rotation-algebra subgroups of Z^2"},
      {"equivalence-suite", "Cross-check all conditions on each pair"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", o.files, "Instance files");
    sub->add_flag("--json", o.json, "Print one JSON report per line");
    sub->add_option("--modulus-limit", o.modulus_limit, "Reject cocycles with a larger modulus");
    sub->add_flag("--oracle", o.oracle, "Run brute-force cross-checks as well");
    sub->add_option("--catalog", o.catalog, "Run on every .gpd file in a directory");
    sub->add_option("--theta", o.theta, "Rotation angle: p/q or irrational");
    sub->add_option("--S", o.lattice, "Lattice generators, one per row: \"a b; c d\"");
    sub->add_option("--subgroupoid", o.subgroupoid, "Named subgroupoid to use");
    sub->callback([&o, name = name] { o.command = name; });
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::pair<std::string, InstanceData>> inputs;
  try {
    for (const auto& f : o.files) inputs.emplace_back(f, parse_instance(detail::read_file(f)));
    if (!o.catalog.empty()) {
      std::vector<std::filesystem::path> paths;
      for (const auto& entry : std::filesystem::directory_iterator(o.catalog))
        if (entry.path().extension() == ".gpd") paths.push_back(entry.path());
      std::sort(paths.begin(), paths.end());
      for (const auto& p : paths) inputs.emplace_back(p.string(), parse_instance(detail::read_file(p.string())));
    }
    if (!o.theta.empty() || !o.lattice.empty()) {
      InstanceData d;
      d.rotation = RotationBlock{Theta::parse(o.theta.empty() ? "irrational" : o.theta),
                                 parse_lattice_rows(o.lattice.empty() ? "0 0" : o.lattice)};
      inputs.emplace_back("theta=" + d.rotation->theta.str(), d);
    }
    if (inputs.empty()) fail(ErrorCode::ParseError, "no input: give files, --catalog or --theta/--S");
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  int status = 0;
  for (const auto& [name, data] : inputs) {
    std::vector<Report> reports;
    try {
      reports = detail::run_instance(o, name, data);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      const bool input_error = e.code() != ErrorCode::CriteriaDisagree;
      status = std::max(status, input_error ? 2 : 1);
      continue;
    }
    for (const Report& r : reports) {
      if (o.json) out << r.to_json().dump() << '\n';
      else r.print(out);
      if (r.failed) status = std::max(status, 1);
    }
  }
  return status;
}

}  // namespace cartan
