// keller_lab command-line front end. run() is callable in-process.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "keller/constructions.hpp"
#include "keller/identities.hpp"
#include "keller/serialize.hpp"

namespace keller::cli {

enum ExitCode { ok = 0, failed = 1, error = 2 };

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline std::set<Condition> parse_checks(const std::string& list) {
  std::set<Condition> out;
  for (const auto& name : split(list, ',')) {
    if (name == "all") {
      out.insert(all_conditions().begin(), all_conditions().end());
      continue;
    }
    auto it = std::find_if(all_conditions().begin(), all_conditions().end(),
                           [&](Condition c) { return json::check_name(c) == name; });
    if (it == all_conditions().end()) throw ParseError("unknown check '" + name + "'");
    out.insert(*it);
  }
  if (out.empty()) throw ParseError("no checks requested");
  return out;
}

/// "p/q" or a comma-separated coordinate list in the given field.
inline Scalar parse_scalar(const std::string& text, const Field& f) {
  auto parts = split(text, ',');
  if (parts.empty() || parts.size() > f.degree()) throw ParseError("bad scalar '" + text + "'");
  std::vector<Rational> coords(f.degree(), Rational(0));
  for (std::size_t i = 0; i < parts.size(); ++i) coords[i] = parse_rational(parts[i]);
  return Scalar(f, std::move(coords));
}

inline unsigned thread_cap() {
  const char* env = std::getenv("KELLER_LAB_THREADS");
  if (!env || !*env) return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ParseError("KELLER_LAB_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

inline std::string field_label(const Field& f) {
  if (f.is_rational()) return "Q";
  return "Q[t]/" + json::field_to_json(f)["min_poly"].dump();
}

struct Options {
  std::string family, nu, out_path, map_path, checks = "all", report_path, cert_path, level, identity;
  unsigned degree = 0;
  std::size_t dim = 0;
};

inline int cmd_gen(const Options& o, std::ostream& out) {
  FamilySpec spec{parse_family_kind(o.family), o.degree, std::nullopt, std::nullopt};
  if (o.dim) spec.n = o.dim;
  if (!o.nu.empty()) spec.nu = parse_scalar(o.nu, family_field(spec));
  const PolyMap h = make_family(spec);
  const auto nonzero = std::count_if(h.components().begin(), h.components().end(),
                                     [](const MultiPoly& p) { return !p.is_zero(); });
  const std::string summary = "family=" + to_string(spec.kind) + " d=" + std::to_string(spec.d) +
                              " n=" + std::to_string(h.nvars()) + " nonzero=" + std::to_string(nonzero) +
                              " field=" + field_label(h.field());
  if (o.out_path.empty()) {
    out << json::map_to_json(h).dump(2) << '\n';
  } else {
    json::write_file(o.out_path, json::map_to_json(h));
    out << summary << '\n';
  }
  return ok;
}

inline int cmd_analyze(const Options& o, std::ostream& out) {
  const std::set<Condition> checks = parse_checks(o.checks);
  const PolyMap f = add_identity(json::map_from_json(json::read_file(o.map_path)));
  if (!f.is_square()) throw DimensionError("map is not square");
  std::optional<StarCertificate> cert;
  if (!o.cert_path.empty()) cert = json::certificate_from_json(json::read_file(o.cert_path), f.field(), f.nvars());
  const ChainReport rep = chain_report(f, cert, checks, thread_cap());
  bool any_fail = false, all_hold = true;
  for (const auto& [c, v] : rep.verdicts) {
    out << json::check_name(c) << ": " << to_string(v);
    if (auto it = rep.notes.find(c); it != rep.notes.end()) out << " (" << it->second << ")";
    out << '\n';
    any_fail = any_fail || v == Verdict::fails;
    all_hold = all_hold && v == Verdict::holds;
  }
  if (!o.report_path.empty()) json::write_file(o.report_path, json::report_to_json(rep));
  return any_fail ? failed : all_hold ? ok : error;
}

inline int cmd_certify(const Options& o, std::ostream& out) {
  const PolyMap h = json::map_from_json(json::read_file(o.map_path));
  if (!h.is_square()) throw DimensionError("map is not square");
  StarCertificate cert = json::certificate_from_json(json::read_file(o.cert_path), h.field(), h.nvars());
  cert.level = parse_star_level(o.level);
  const CertificateCheck chk = check_star_certificate(h, cert);
  if (chk.ok) {
    out << "certificate verifies at level " << o.level << '\n';
    return ok;
  }
  out << "certificate rejected: " << chk.clause << '\n';
  return failed;
}

inline int cmd_verify_identity(const Options& o, std::ostream& out) {
  std::vector<IdentityName> names;
  if (o.identity == "all") {
    names = all_identities();
  } else {
    names.push_back(parse_identity_name(o.identity));
  }
  bool all = true;
  for (auto n : names) {
    const bool v = verify_identity(n, o.degree);
    out << to_string(n) << " d=" << o.degree << ": " << (v ? "verified" : "FAILED") << '\n';
    all = all && v;
  }
  return all ? ok : failed;
}

inline int cmd_gz_verify(std::ostream& out) {
  const GZReport rep = gz_verify(gz_example());
  out << "6H = BG: " << (rep.mismatched_rows.empty() ? "exact" : "mismatch") << '\n'
      << "BC = I: " << (rep.right_inverse_ok ? "yes" : "no") << '\n'
      << "rank B: " << rep.rank_b << '\n'
      << "rank J_x G: " << rep.rank_jg << '\n'
      << "gz-verify: " << to_string(rep.verdict) << '\n';
  return rep.verdict == Verdict::holds ? ok : failed;
}

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact analysis of polynomial Keller maps", "keller_lab"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a family map");
  gen->add_option("--family", o.family, "n4, n5, f666, f667, nonhomog_n4, nonhomog_n5, small2, small3")->required();
  gen->add_option("--degree,-d", o.degree, "degree d")->required();
  gen->add_option("--nu", o.nu, "nu for f666/f667 (rational or coordinate list)");
  gen->add_option("--dim,-n", o.dim, "truncation dimension for f666/f667");
  gen->add_option("-o,--output", o.out_path, "output file (stdout if omitted)");

  auto* analyze = app.add_subcommand("analyze", "Decide the condition chain for x + H");
  analyze->add_option("map", o.map_path, "map file (H)")->required();
  analyze->add_option("--checks", o.checks, "comma list of checks or 'all'");
  analyze->add_option("--report", o.report_path, "write a JSON report");
  analyze->add_option("--cert", o.cert_path, "star certificate file");

  auto* certify = app.add_subcommand("certify", "Verify a star certificate");
  certify->add_option("map", o.map_path, "map file (H)")->required();
  certify->add_option("--cert", o.cert_path, "certificate file")->required();
  certify->add_option("--level", o.level, "star, doublestar or triplestar")->required();

  auto* ident = app.add_subcommand("verify-identity", "Verify a polynomial identity");
  ident->add_option("--name", o.identity, "eq666, eq667, eq667h, pl666, pl667 or all")->required();
  ident->add_option("--degree,-d", o.degree, "degree d")->required();

  auto* gz = app.add_subcommand("gz-verify", "Verify the GZ-pairing example");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : error;
  }
  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (certify->parsed()) return cmd_certify(o, out);
    if (ident->parsed()) return cmd_verify_identity(o, out);
    if (gz->parsed()) return cmd_gz_verify(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return error;
  }
  return error;
}

}  // namespace keller::cli
