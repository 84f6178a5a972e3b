#include <gtest/gtest.h>

#include "keller/constructions.hpp"

using namespace keller;

namespace {

const Field Q = Field::rationals();

MultiPoly x(std::size_t i, std::size_t n, const Field& f = Q) { return MultiPoly::variable(f, n, i - 1); }
MultiPoly zero(std::size_t n) { return MultiPoly(Q, n); }

std::vector<FamilySpec> all_specs(unsigned max_d) {
  std::vector<FamilySpec> out;
  for (unsigned d = 2; d <= max_d; ++d)
    for (auto k : {FamilyKind::n4, FamilyKind::n5, FamilyKind::f666, FamilyKind::f667, FamilyKind::nonhomog_n4,
                   FamilyKind::nonhomog_n5, FamilyKind::small2, FamilyKind::small3}) {
      if (d < 3 && (k == FamilyKind::n4 || k == FamilyKind::nonhomog_n4)) continue;
      out.push_back({k, d, std::nullopt, std::nullopt});
    }
  return out;
}

}  // namespace

TEST(Families, N4AtThree) {
  const PolyMap h = make_family({FamilyKind::n4, 3, std::nullopt, std::nullopt});
  const MultiPoly inv = x(1, 4) * x(3, 4) - x(2, 4) * x(4, 4);
  EXPECT_EQ(h, PolyMap(Q, 4, {zero(4), zero(4), x(2, 4) * inv, x(1, 4) * inv}));
}

TEST(Families, Small2) {
  const PolyMap h = make_family({FamilyKind::small2, 3, std::nullopt, std::nullopt});
  EXPECT_EQ(h, PolyMap(Q, 2, {zero(2), x(1, 2).pow(3) - x(1, 2).pow(2)}));
}

TEST(Families, F666Nu0) {
  const PolyMap h = make_family({FamilyKind::f666, 2, 6, Q.zero()});
  const std::size_t n = 6;
  const MultiPoly x1 = x(1, n), x2 = x(2, n), x3 = x(3, n);
  const MultiPoly two = MultiPoly::constant(Q, n, 2);
  EXPECT_EQ(h, PolyMap(Q, n,
                       {zero(n), zero(n), x1.pow(2) - x2.pow(2), (x1 + two * x3).pow(2), (x2 + x3).pow(2),
                        (x2 + two * x3).pow(2)}));
}

TEST(Families, F667OverCyclotomicField) {
  const PolyMap h = make_family({FamilyKind::f667, 3, std::nullopt, std::nullopt});
  EXPECT_EQ(h.field(), cyclotomic_field(3));
  EXPECT_EQ(h.nvars(), 8u);
  const Field& f = h.field();
  const Scalar z = f.generator();
  EXPECT_EQ(h[3], (x(1, 8, f).scaled(z) + x(2, 8, f) + x(3, 8, f)).pow(3));
  EXPECT_EQ(h[5], (x(1, 8, f) + x(2, 8, f) - x(3, 8, f)).pow(3));
}

TEST(Families, Truncation) {
  const PolyMap h = make_family({FamilyKind::f666, 3, 5, std::nullopt});
  EXPECT_EQ(h.nvars(), 5u);
  EXPECT_EQ(h.n_out(), 5u);
  EXPECT_THROW(make_family({FamilyKind::f666, 3, 2, std::nullopt}), PreconditionError);
  EXPECT_THROW(make_family({FamilyKind::f666, 3, 9, std::nullopt}), PreconditionError);
  EXPECT_THROW(make_family({FamilyKind::n4, 3, 5, std::nullopt}), PreconditionError);
}

TEST(Families, Validation) {
  EXPECT_THROW(make_family({FamilyKind::n4, 2, std::nullopt, std::nullopt}), PreconditionError);
  EXPECT_THROW(make_family({FamilyKind::nonhomog_n4, 2, std::nullopt, std::nullopt}), PreconditionError);
  EXPECT_THROW(make_family({FamilyKind::n5, 1, std::nullopt, std::nullopt}), PreconditionError);
  EXPECT_THROW(make_family({FamilyKind::n5, 3, std::nullopt, Q.one()}), PreconditionError);
  EXPECT_THROW(parse_family_kind("n6"), ParseError);
}

TEST(Families, NonHomogeneousVariants) {
  const PolyMap a = make_family({FamilyKind::nonhomog_n4, 3, std::nullopt, std::nullopt});
  const MultiPoly inv = x(1, 3) * x(2, 3) - x(3, 3);
  EXPECT_EQ(a, PolyMap(Q, 3, {zero(3), inv, x(1, 3) * inv}));
  const PolyMap b = make_family({FamilyKind::nonhomog_n5, 3, std::nullopt, std::nullopt});
  EXPECT_EQ(b[1], x(1, 4) * x(3, 4));
  EXPECT_EQ(b[2], x(1, 4).pow(2) * x(2, 4) - x(1, 4) * x(4, 4));
  EXPECT_EQ(b[3], x(1, 4).pow(2) * x(3, 4));
}

TEST(Families, AllKeller) {
  for (const auto& s : all_specs(4)) {
    EXPECT_TRUE(is_keller(add_identity(make_family(s)))) << to_string(s.kind) << " d=" << s.d;
  }
}

TEST(Families, FullF666F667TriangularAsGenerated) {
  for (unsigned d = 2; d <= 4; ++d)
    for (auto k : {FamilyKind::f666, FamilyKind::f667})
      EXPECT_TRUE(jacobian(make_family({k, d, std::nullopt, std::nullopt})).is_strictly_lower_triangular());
}

TEST(Certificates, DeclaredLevels) {
  EXPECT_EQ(family_certificate({FamilyKind::f666, 2, std::nullopt, std::nullopt}).level, StarLevel::triplestar);
  EXPECT_EQ(family_certificate({FamilyKind::f666, 2, std::nullopt, Q.zero()}).level, StarLevel::doublestar);
  EXPECT_EQ(family_certificate({FamilyKind::f667, 2, std::nullopt, Q.zero()}).level, StarLevel::doublestar);
  EXPECT_EQ(family_certificate({FamilyKind::f667, 3, std::nullopt, Q.zero()}).level, StarLevel::star);
  EXPECT_EQ(family_certificate({FamilyKind::small2, 3, std::nullopt, std::nullopt}).level, StarLevel::star);
  EXPECT_THROW(family_certificate({FamilyKind::n5, 3, std::nullopt, std::nullopt}), PreconditionError);
}

TEST(Certificates, Small3) {
  const auto c = family_certificate({FamilyKind::small3, 3, std::nullopt, std::nullopt});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.triples[0].d, 3u);
  EXPECT_EQ(c.triples[1].d, 2u);
  EXPECT_EQ(c.triples[0].b, unit_vector(Q, 3, 2));
}

TEST(Certificates, VerifyForAllSupportedInstances) {
  for (unsigned d = 2; d <= 4; ++d)
    for (auto k : {FamilyKind::f666, FamilyKind::f667})
      for (std::size_t n = 3; n <= 2 * d + 2; ++n)
        for (bool nu_zero : {false, true}) {
          const FamilySpec s{k, d, n, nu_zero ? std::optional<Scalar>(Q.zero()) : std::nullopt};
          const auto chk = check_star_certificate(make_family(s), family_certificate(s));
          EXPECT_TRUE(chk.ok) << to_string(k) << " d=" << d << " n=" << n << " " << chk.clause;
          if (n < 2 * d + 2) {
            EXPECT_EQ(decide_star(make_family(s)).verdict, Verdict::holds);
          }
        }
  for (unsigned d = 2; d <= 5; ++d)
    for (auto k : {FamilyKind::small2, FamilyKind::small3}) {
      const FamilySpec s{k, d, std::nullopt, std::nullopt};
      EXPECT_TRUE(verify_star_certificate(make_family(s), family_certificate(s)));
    }
}

TEST(Certificates, RationalNuInCyclotomicFamily) {
  const FamilySpec s{FamilyKind::f667, 3, std::nullopt, Q.from_rational(Rational(2, 3))};
  EXPECT_TRUE(verify_star_certificate(make_family(s), family_certificate(s)));
}

TEST(GZ, ExampleHolds) {
  const GZInstance inst = gz_example();
  EXPECT_EQ(inst.g.nvars(), 13u);
  EXPECT_EQ(inst.scale, Q.from_int(6));
  const GZReport r = gz_verify(inst);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.rank_b, 5u);
  EXPECT_EQ(r.rank_jg, 5u);
  // row 3: -2 G5 + G6 + G7 = 6 x2^2 x4
  const MultiPoly row3 = inst.g[4].scaled(Q.from_int(-2)) + inst.g[5] + inst.g[6];
  EXPECT_EQ(row3, (x(2, 13).pow(2) * x(4, 13)).scaled(Q.from_int(6)));
}

TEST(GZ, Corruptions) {
  GZInstance a = gz_example();
  for (std::size_t j = 0; j < 13; ++j) a.b.at(2, j) = Q.zero();
  GZReport ra = gz_verify(a);
  EXPECT_EQ(ra.verdict, Verdict::fails);
  EXPECT_EQ(ra.mismatched_rows, (std::vector<std::size_t>{2}));
  GZInstance b = gz_example();
  b.c = ScalarMatrix(Q, 13, 5);
  GZReport rb = gz_verify(b);
  EXPECT_EQ(rb.verdict, Verdict::fails);
  EXPECT_FALSE(rb.right_inverse_ok);
  GZInstance c = gz_example();
  c.c = ScalarMatrix(Q, 5, 5);
  EXPECT_THROW(gz_verify(c), DimensionError);
}
