// Acceptance runner: one PASS/FAIL line per criterion, with runtime limits.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "keller/keller.hpp"
#include "property_checks.hpp"

using namespace keller;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Sum of JF at k points whose coordinates are polynomials in nv variables.
PolyMatrix sum_at(const PolyMap& f, std::size_t k, const std::vector<std::vector<MultiPoly>>& points,
                  const Field& field, std::size_t nv) {
  const std::size_t n = f.nvars();
  PolyMatrix sum = sum_of_substitutions(jacobian(f), k);
  std::vector<MultiPoly> assign(n, MultiPoly(field, nv));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) assign.push_back(points[i][j]);
  return sum.substitute(assign);
}

void criterion_1(Outcome& o) {
  const auto t0 = Clock::now();
  for (auto name : all_identities())
    for (unsigned d = 2; d <= 6; ++d) o.require(verify_identity(name, d), to_string(name) + " d=" + std::to_string(d));
  const double s = seconds_since(t0);
  o.require(s < 30.0, "runtime");
  o.detail << "25 identities exact, " << s << " s";
}

void criterion_2(Outcome& o) {
  for (unsigned d = 3; d <= 5; ++d) {
    const auto t0 = Clock::now();
    const std::string tag = " d=" + std::to_string(d);
    const PolyMap h = make_family({FamilyKind::n4, d, std::nullopt, std::nullopt});
    const PolyMap f = add_identity(h);
    o.require(is_quasi_translation(f), "quasi" + tag);
    const SumConditionResult jc = check_sum_condition(f, d - 1);
    o.require(jc.verdict == Verdict::fails, "jc fails" + tag);

    // symbolic c: v_1 = ... = v_{d-2} = e_1, v_{d-1} = (1, c, 0, 0)
    const Field q = Field::rationals();
    const MultiPoly one = MultiPoly::constant(q, 1, 1), zero(q, 1), c = MultiPoly::variable(q, 1, 0);
    std::vector<std::vector<MultiPoly>> pts(d - 2, {one, zero, zero, zero});
    pts.push_back({one, c, zero, zero});
    const PolyMatrix s = sum_at(f, d - 1, pts, q, 1);
    PolyMatrix minor(q, 1, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) minor.at(i, j) = s.at(2 + i, 2 + j);
    const MultiPoly expected = c.pow(2).scaled(q.from_int(d - 2)) + MultiPoly::constant(q, 1, (d - 1) * (d - 1));
    o.require(matrix_det(minor) == expected, "trailing minor" + tag);

    // c^2 (d-2) + (d-1)^2 = 0 in Q[t]/(t^2 + (d-1)^2/(d-2))
    const Field ext = Field::make({Rational((d - 1) * (d - 1), d - 2), 0, 1});
    const Scalar root = ext.generator();
    PointWitness w{ext, std::vector<ScalarVector>(d - 2, ScalarVector{ext.one(), ext.zero(), ext.zero(), ext.zero()})};
    w.points.push_back({ext.one(), root, ext.zero(), ext.zero()});
    const ScalarMatrix val = evaluate_jacobian_sum(f, w);
    o.require(determinant(val).is_zero(), "4x4 determinant at witness" + tag);
    const Scalar minor_val = val.at(2, 2) * val.at(3, 3) - val.at(2, 3) * val.at(3, 2);
    o.require(minor_val == root * root * ext.from_int(d - 2) + ext.from_int((d - 1) * (d - 1)), "minor value" + tag);
    const double sec = seconds_since(t0);
    o.require(sec < 10.0, "runtime" + tag);
    o.detail << "d=" << d << " " << sec << " s; ";
  }
}

void criterion_3(Outcome& o) {
  for (unsigned d = 2; d <= 4; ++d) {
    const auto t0 = Clock::now();
    const std::string tag = " d=" + std::to_string(d);
    const PolyMap h = make_family({FamilyKind::n5, d, std::nullopt, std::nullopt});
    const PolyMap f = add_identity(h);
    o.require(check_sum_condition(f, 5).verdict == Verdict::holds, "jc-plus holds" + tag);
    o.require(matrix_is_nilpotent(sum_of_substitutions(jacobian(h), 5)), "generic sum nilpotent" + tag);
    const StrongNilpotenceResult sn = is_strongly_nilpotent(h);
    o.require(sn.verdict == Verdict::fails, "strong nilpotence fails" + tag);

    const PolyMatrix jh = jacobian(h);
    const MultiPoly zero(h.field(), 5);
    const PolyMatrix prod = jh.substitute_var(0, zero) * jh.substitute_var(1, zero);
    const MultiPoly m = MultiPoly::variable(h.field(), 5, 0).pow(d - 1) * MultiPoly::variable(h.field(), 5, 1).pow(d - 1);
    const std::vector<MultiPoly> expected = {zero, zero, m, -m, zero};
    o.require(prod.diagonal() == expected, "x1=0 / x2=0 product diagonal" + tag);
    o.require(!matrix_is_nilpotent(prod), "product not nilpotent" + tag);
    o.require(sn.pair && sn.pair->first_var == 0 && sn.pair->second_var == 1 && sn.pair->product.diagonal() == expected,
              "reported pair witness" + tag);
    const double sec = seconds_since(t0);
    o.require(sec < 60.0, "runtime" + tag);
    o.detail << "d=" << d << " " << sec << " s; ";
  }
}

std::vector<FamilySpec> star_instances() {
  std::vector<FamilySpec> out;
  for (unsigned d = 2; d <= 3; ++d)
    for (std::size_t n = 3; n <= 2 * d + 2; ++n) {
      const Field q = Field::rationals();
      out.push_back({FamilyKind::f666, d, n, std::nullopt});
      out.push_back({FamilyKind::f666, d, n, q.zero()});
      out.push_back({FamilyKind::f667, d, n, std::nullopt});
      out.push_back({FamilyKind::f667, d, n, q.zero()});
    }
  return out;
}

std::string label(const FamilySpec& s) {
  std::string nu = s.nu ? s.nu->to_string() : "1";
  return to_string(s.kind) + "(d=" + std::to_string(s.d) + ",n=" + std::to_string(*s.n) + ",nu=" + nu + ")";
}

void criterion_4(Outcome& o) {
  int count = 0;
  for (const auto& spec : star_instances()) {
    const std::string tag = " " + label(spec);
    const PolyMap h = make_family(spec);
    const StarCertificate cert = family_certificate(spec);
    const CertificateCheck chk = check_star_certificate(h, cert);
    o.require(chk.ok, "certificate at declared level" + tag + " " + chk.clause);
    const bool nu_zero = spec.nu && spec.nu->is_zero();
    if (spec.kind == FamilyKind::f666) {
      o.require(cert.level == (nu_zero ? StarLevel::doublestar : StarLevel::triplestar), "f666 level" + tag);
    }
    if (spec.kind == FamilyKind::f667 && spec.d == 2 && nu_zero) {
      const Field& f = h.field();
      o.require(cert.level == StarLevel::doublestar, "f667 d=2 nu=0 level" + tag);
      ScalarVector b1(h.nvars(), f.zero()), b2(h.nvars(), f.zero());
      b1[2] = f.from_rational(Rational(1, 4));
      b2[2] = f.from_rational(Rational(-1, 4));
      o.require(cert.triples.size() >= 2 && cert.triples[0].b == b1 && cert.triples[1].b == b2, "b1, b2" + tag);
    }
    o.require(decide_star(h).verdict == Verdict::holds, "decide_star" + tag);
    const ScalarMatrix t = triangularization_from_certificate(cert, h.nvars(), h.field());
    for (const auto& tr : cert.triples)
      o.require(jacobian(conjugate(triple_map(tr, h.field()), t)).is_strictly_lower_triangular(),
                "per-term triangular" + tag);
    o.require(jacobian(conjugate(h, t)).is_strictly_lower_triangular(), "H triangular" + tag);
    ++count;
  }
  o.detail << count << " instances";
}

void criterion_5(Outcome& o) {
  int count = 0;
  std::vector<std::pair<PolyMap, StarCertificate>> certified;
  for (const auto& spec : star_instances()) certified.emplace_back(make_family(spec), family_certificate(spec));
  for (auto kind : {FamilyKind::small2, FamilyKind::small3}) {
    const FamilySpec s{kind, 3, std::nullopt, std::nullopt};
    certified.emplace_back(make_family(s), family_certificate(s));
  }
  const auto t0 = Clock::now();
  for (const auto& [h, cert] : certified) {
    if (!verify_star_certificate(h, cert)) continue;
    const std::size_t n = h.nvars();
    const PolyMatrix s = sum_of_substitutions(jacobian(h), n);
    PolyMatrix p = s;
    for (std::size_t k = 0; k < cert.size(); ++k) p = p * s;
    o.require(p.is_zero(), "S^(N+1) = 0 n=" + std::to_string(n));
    const PolyMatrix ni = PolyMatrix::identity(h.field(), s.nvars(), n).scaled(h.field().from_int(static_cast<long>(n)));
    Rational nn = 1;
    for (std::size_t k = 0; k < n; ++k) nn *= static_cast<long>(n);
    o.require(matrix_det(ni + s) == MultiPoly::constant(h.field().from_rational(nn), s.nvars()),
              "det(nI + S) = n^n n=" + std::to_string(n));
    ++count;
  }
  o.detail << count << " certificates, " << seconds_since(t0) << " s";
}

void criterion_6(Outcome& o) {
  const auto t0 = Clock::now();
  const GZInstance inst = gz_example();
  const GZReport rep = gz_verify(inst);
  o.require(rep.mismatched_rows.empty(), "6H = BG");
  o.require(rep.rank_b == 5, "rank B");
  o.require(rep.right_inverse_ok, "BC = I5");
  o.require(rep.rank_jg == 5, "rank JG");
  o.require(rep.verdict == Verdict::holds, "verdict");
  const double s = seconds_since(t0);
  o.require(s < 10.0, "runtime");
  o.detail << s << " s";
}

void criterion_7(Outcome& o) {
  const FamilySpec s2{FamilyKind::small2, 3, std::nullopt, std::nullopt};
  const PolyMap h2 = make_family(s2);
  o.require(verify_star_certificate(h2, family_certificate(s2)), "small2 star certificate");
  const LevelDecision dd = decide_single_term(h2, StarLevel::doublestar);
  o.require(dd.verdict == Verdict::fails, "small2 no doublestar (" + dd.note + ")");

  const FamilySpec s3{FamilyKind::small3, 3, std::nullopt, std::nullopt};
  const PolyMap h3 = make_family(s3);
  const StarCertificate c3 = family_certificate(s3);
  o.require(c3.level == StarLevel::doublestar && verify_star_certificate(h3, c3), "small3 doublestar certificate");
  const LevelDecision td = decide_triplestar_by_span(h3);
  o.require(td.verdict == Verdict::fails, "small3 no triplestar (" + td.note + ")");
  o.detail << "oracles: " << dd.note << "; " << td.note;
}

void criterion_8(Outcome& o) {
  const int cases = 200;
  const std::vector<std::pair<std::string, std::function<int(int)>>> suites = {
      {"ring axioms", [](int c) { return props::ring_axioms(c); }},
      {"Leibniz/partials", [](int c) { return props::leibniz_and_partials(c); }},
      {"det multiplicativity", [](int c) { return props::det_multiplicative(c); }},
      {"pure power round trip", [](int c) { return props::pure_power_round_trip(c); }},
      {"hadamard Jacobian", [](int c) { return props::hadamard_jacobian(c); }}};
  for (const auto& [name, run] : suites) {
    const int bad = run(cases);
    o.require(bad == 0, name + " (" + std::to_string(bad) + " failing)");
    o.detail << name << " " << cases << "; ";
  }
}

void criterion_9(Outcome& o) {
  const PolyMap f4 = add_identity(make_family({FamilyKind::nonhomog_n4, 3, std::nullopt, std::nullopt}));
  o.require(f4.nvars() == 3, "nonhomog_n4 dimension");
  o.require(is_quasi_translation(f4), "nonhomog_n4 quasi");
  const SumConditionResult jc = check_sum_condition(f4, 2);
  o.require(jc.verdict == Verdict::fails, "nonhomog_n4 jc fails");
  if (jc.witness) o.require(determinant(evaluate_jacobian_sum(f4, *jc.witness)).is_zero(), "nonhomog_n4 witness");

  const PolyMap h5 = make_family({FamilyKind::nonhomog_n5, 3, std::nullopt, std::nullopt});
  const PolyMap f5 = add_identity(h5);
  o.require(f5.nvars() == 4, "nonhomog_n5 dimension");
  o.require(check_sum_condition(f5, 4).verdict == Verdict::holds, "nonhomog_n5 jc-plus holds");
  o.require(is_strongly_nilpotent(h5).verdict == Verdict::fails, "nonhomog_n5 strong nilpotence fails");
  o.detail << "nonhomog_n4 det: " << jc.determinant.to_string();
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria = {
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4}, {5, criterion_5},
      {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    std::cout << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << " (" << seconds_since(t0) << " s) "
              << o.detail.str() << std::endl;
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
