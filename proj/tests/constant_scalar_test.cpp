// Exact constant ring and radial scalar ring against hand-computed values.
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "equiforms/scalar.hpp"

using namespace equiforms;

TEST(ConstantRing, ImaginaryUnitSquaresToMinusOne) {
  ConstantScalar i = ConstantScalar::unit_i();
  EXPECT_EQ(i * i, ConstantScalar(rat(-1)));
  EXPECT_EQ(i * i * i * i, ConstantScalar(rat(1)));
}

TEST(ConstantRing, HalfPiPowersMultiplyAdditively) {
  EXPECT_EQ(ConstantScalar::pi_half_pow(1) * ConstantScalar::pi_half_pow(3),
            ConstantScalar::pi_half_pow(4));
  EXPECT_EQ(ConstantScalar::pi_half_pow(-2) * ConstantScalar::pi_half_pow(2),
            ConstantScalar(rat(1)));
}

TEST(ConstantRing, MonomialInverse) {
  ConstantScalar c = ConstantScalar::monomial(rat(3, 2), 1, -2);
  EXPECT_EQ(c * c.inverse(), ConstantScalar(rat(1)));
  ConstantScalar sum = ConstantScalar(rat(1)) + ConstantScalar::unit_i();
  EXPECT_THROW(sum.inverse(), std::exception);
}

TEST(ConstantRing, OrientationConstants) {
  // (-1)^{d(d-1)/2} pi^{d/2}: sign pattern + + - - + + ...
  EXPECT_EQ(eps_d(1), ConstantScalar::pi_half_pow(1));
  EXPECT_EQ(eps_d(2), ConstantScalar::monomial(rat(-1), 0, 2));
  EXPECT_EQ(eps_d(3), ConstantScalar::monomial(rat(-1), 0, 3));
  EXPECT_EQ(eps_d(4), ConstantScalar::monomial(rat(1), 0, 4));
  EXPECT_EQ(eps_d(5), ConstantScalar::monomial(rat(1), 0, 5));
  EXPECT_EQ(eps_d(6), ConstantScalar::monomial(rat(-1), 0, 6));
}

TEST(ConstantRing, GammaHalfLadder) {
  EXPECT_EQ(gamma_half(1), ConstantScalar::pi_half_pow(1));
  EXPECT_EQ(gamma_half(2), ConstantScalar(rat(1)));
  EXPECT_EQ(gamma_half(3), ConstantScalar::monomial(rat(1, 2), 0, 1));
  EXPECT_EQ(gamma_half(4), ConstantScalar(rat(1)));
  EXPECT_EQ(gamma_half(5), ConstantScalar::monomial(rat(3, 4), 0, 1));
  EXPECT_EQ(gamma_half(6), ConstantScalar(rat(2)));
  EXPECT_EQ(gamma_half(7), ConstantScalar::monomial(rat(15, 8), 0, 1));
}

TEST(ConstantRing, ComplexEvaluation) {
  CD v = ConstantScalar::monomial(rat(1, 2), 1, 1).to_complex();
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.5 * std::sqrt(std::acos(-1.0)), 1e-13);
}

TEST(RadialScalar, SquaredNormCollapsesAgainstInverseRadius) {
  int d = 3;
  ScalarExpr sum = ScalarExpr::zero(d);
  for (int i = 1; i <= d; ++i) {
    ScalarExpr xi = ScalarExpr::coordinate(d, i);
    sum += xi * xi;
  }
  EXPECT_EQ(sum, ScalarExpr::rho(d));
  EXPECT_EQ(sum * ScalarExpr::r_pow(d, -2), ScalarExpr::one(d));
  EXPECT_EQ(ScalarExpr::r_pow(d, 3) * ScalarExpr::r_pow(d, -3), ScalarExpr::one(d));
}

TEST(RadialScalar, PartialChainRules) {
  int d = 2;
  ScalarExpr x1 = ScalarExpr::coordinate(d, 1);

  EXPECT_EQ((x1 * x1).partial(1), x1.scaled(ConstantScalar::integer(2)));

  ScalarExpr g = ScalarExpr::gaussian(d, {rat(0), rat(0), rat(1)});
  EXPECT_EQ(g.partial(1),
            (x1 * ScalarExpr::t_pow(d, 2) * g).scaled(ConstantScalar::integer(-2)));

  ScalarExpr f = ScalarExpr::f_order(d, 0);
  EXPECT_EQ(f.partial(1), (x1 * ScalarExpr::f_order(d, 1)).scaled(ConstantScalar::integer(2)));

  EXPECT_EQ(ScalarExpr::r_pow(d, -1).partial(1),
            (x1 * ScalarExpr::r_pow(d, -3)).scaled(ConstantScalar::integer(-1)));
}

TEST(RadialScalar, HalfLineGaussianMoments) {
  int d = 2;
  ScalarExpr g = ScalarExpr::gaussian(d, {rat(0), rat(0), rat(1)});
  // int_0^inf t e^{-t^2 r^2} dt = 1/2 r^{-2}
  EXPECT_EQ((ScalarExpr::t_pow(d, 1) * g).t_integrate(),
            ScalarExpr::r_pow(d, -2).scaled(ConstantScalar::rational(1, 2)));
  // int_0^inf t^2 e^{-t^2 r^2} dt = (sqrt(pi)/4) r^{-3}
  EXPECT_EQ((ScalarExpr::t_pow(d, 2) * g).t_integrate(),
            ScalarExpr::r_pow(d, -3).scaled(ConstantScalar::monomial(rat(1, 4), 0, 1)));
  // rate 4, odd moment stays rational: int_0^inf t e^{-4 t^2 r^2} dt = 1/8 r^{-2}
  ScalarExpr g4 = ScalarExpr::gaussian(d, {rat(0), rat(0), rat(4)});
  EXPECT_EQ((ScalarExpr::t_pow(d, 1) * g4).t_integrate(),
            ScalarExpr::r_pow(d, -2).scaled(ConstantScalar::rational(1, 8)));
  // no decay in t: divergent
  EXPECT_THROW(ScalarExpr::one(d).t_integrate(), std::exception);
}

TEST(RadialScalar, DefiniteAntiderivativeFromZero) {
  int d = 2;
  ScalarExpr g = ScalarExpr::gaussian(d, {rat(0), rat(0), rat(1)});
  // int_0^t s e^{-s^2 r^2} ds = (1 - e^{-t^2 r^2}) / (2 r^2)
  ScalarExpr got = (ScalarExpr::t_pow(d, 1) * g).t_antiderivative();
  ScalarExpr expect = (ScalarExpr::r_pow(d, -2) - ScalarExpr::r_pow(d, -2) * g)
                          .scaled(ConstantScalar::rational(1, 2));
  EXPECT_EQ(got, expect);
  EXPECT_TRUE(got.substitute_t(rat(0)).is_zero());
}

TEST(RadialScalar, TDerivativeOfGaussianAtom) {
  int d = 2;
  ScalarExpr g = ScalarExpr::gaussian(d, {rat(0), rat(0), rat(1)});
  ScalarExpr expect =
      (ScalarExpr::t_pow(d, 1) * ScalarExpr::rho(d) * g).scaled(ConstantScalar::integer(-2));
  EXPECT_EQ(g.t_derivative(), expect);
}

TEST(RadialScalar, ThetaPoleCancellation) {
  int d = 2;
  // (e^{i theta} - 1) / theta -> i
  ScalarExpr s =
      (ScalarExpr::eith_half(d, 2) - ScalarExpr::one(d)) * ScalarExpr::theta_pow(d, -1);
  EXPECT_EQ(s.theta_limit0(), ScalarExpr::constant(d, ConstantScalar::unit_i()));
  EXPECT_THROW(ScalarExpr::theta_pow(d, -1).theta_limit0(), std::exception);
}

TEST(RadialScalar, ConjugationIsRingInvolution) {
  int d = 2;
  ScalarExpr s = ScalarExpr::eith_half(d, 3) *
                     ScalarExpr::coordinate(d, 1).scaled(ConstantScalar::unit_i()) +
                 ScalarExpr::r_pow(d, -1);
  EXPECT_EQ(s.conjugated().conjugated(), s);
  EXPECT_EQ(ScalarExpr::constant(d, ConstantScalar::unit_i()).conjugated(),
            ScalarExpr::constant(d, -ConstantScalar::unit_i()));
  EXPECT_EQ(ScalarExpr::eith_half(d, 2).conjugated(), ScalarExpr::eith_half(d, -2));
}

TEST(RadialScalar, OriginRestriction) {
  int d = 2;
  ScalarExpr s = ScalarExpr::f_order(d, 0) + ScalarExpr::f_order(d, 1) +
                 ScalarExpr::gaussian(d, {rat(0), rat(0), rat(1)}) +
                 ScalarExpr::coordinate(d, 1);
  // f(0) = 1, f'(0) = 0, gaussian -> 1, coordinate -> 0
  EXPECT_EQ(s.restrict_origin(), ScalarExpr::constant(d, ConstantScalar::integer(2)));
  EXPECT_THROW(ScalarExpr::r_pow(d, -1).restrict_origin(), std::exception);
}
