// Cartan differential, relative pairs, cutoff maps, and exact fiber
// integration against hand-computed Gaussian moments.
#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "equiforms/jsonio.hpp"

using namespace equiforms;

namespace {

Form gaussian_form(int d) {
  return Form::from_scalar(ScalarExpr::gaussian(d, {rat(1)}));
}

// rotation-invariant angular one-form on R^2 times the Gaussian
Form invariant_angular2() {
  int d = 2;
  Form ang = Form::dx(d, 2).scaled_expr(ScalarExpr::coordinate(d, 1)) -
             Form::dx(d, 1).scaled_expr(ScalarExpr::coordinate(d, 2));
  return gaussian_form(d) * ang;
}

}  // namespace

TEST(Equivariant, CartanSquareOnCoordinate) {
  // D^2 x_1 = -iota(VX) dx_1 = -sum_m X_{1m} x_m
  int d = 3;
  XMatrix X = XMatrix::indeterminates(d);
  Form x1 = Form::from_scalar(ScalarExpr::coordinate(d, 1));
  Form dd = equivariant_d(equivariant_d(x1, X), X);
  XPoly vx1 = XPoly::zero(d);
  for (int m = 1; m <= d; ++m) {
    if (m == 1) continue;
    vx1 += X.entry(1, m) * XPoly::from_scalar(ScalarExpr::coordinate(d, m));
  }
  EXPECT_EQ(dd, -Form::from_xpoly(vx1));
}

TEST(Equivariant, CartanSquareVanishesOnInvariants) {
  XMatrix X2 = XMatrix::indeterminates(2);
  Form g = gaussian_form(2);
  EXPECT_TRUE(equivariant_d(equivariant_d(g, X2), X2).is_zero());
  Form ang = invariant_angular2();
  EXPECT_TRUE(equivariant_d(equivariant_d(ang, X2), X2).is_zero());
}

TEST(Equivariant, RelDifferentialSquaresToZeroOnInvariants) {
  XMatrix X = XMatrix::indeterminates(2);
  Form g = gaussian_form(2);
  RelativePair p{equivariant_d(g, X), g};
  RelativePair dd = d_rel(d_rel(p, X), X);
  EXPECT_TRUE(dd.alpha.is_zero());
  EXPECT_TRUE(dd.beta.is_zero());
}

TEST(Equivariant, RelProductBilinear) {
  std::mt19937_64 rng(31337);
  PairData data{1};
  int d = 2;
  for (int trial = 0; trial < 4; ++trial) {
    RelativePair p{random_form(d, rng), random_form(d, rng)};
    RelativePair q{random_form(d, rng), random_form(d, rng)};
    RelativePair r{random_form(d, rng), random_form(d, rng)};
    EXPECT_EQ(rel_product(p + q, r, data),
              rel_product(p, r, data) + rel_product(q, r, data));
    EXPECT_EQ(rel_product(p, q + r, data),
              rel_product(p, q, data) + rel_product(p, r, data));
  }
}

TEST(Equivariant, NestedTripleDataValidates) {
  XMatrix X = XMatrix::indeterminates(3);
  TripleData td = TripleData::nested(3, 1, 2);
  EXPECT_NO_THROW(td.validate(3, X));
  TripleData broken = td;
  broken.Lam[0] = -broken.Lam[0];
  EXPECT_THROW(broken.validate(3, X), std::exception);
}

TEST(Equivariant, GaussianMomentIntegration) {
  int d = 2;
  Form vol = Form::dx(d, 1) * Form::dx(d, 2);
  Form g = gaussian_form(d);
  EXPECT_EQ(integrate_over_V(g * vol), XPoly::constant(d, ConstantScalar::pi_half_pow(2)));

  ScalarExpr x1 = ScalarExpr::coordinate(d, 1);
  EXPECT_EQ(integrate_over_V((g * vol).scaled_expr(x1 * x1)),
            XPoly::constant(d, ConstantScalar::monomial(rat(1, 2), 0, 2)));
  EXPECT_TRUE(integrate_over_V((g * vol).scaled_expr(x1)).is_zero());

  // rate-4 Gaussian: pi/4
  Form g4 = Form::from_scalar(ScalarExpr::gaussian(d, {rat(4)}));
  EXPECT_EQ(integrate_over_V(g4 * vol),
            XPoly::constant(d, ConstantScalar::monomial(rat(1, 4), 0, 2)));

  // profiles outside the exact table are rejected
  Form f = Form::from_scalar(ScalarExpr::f_order(d, 0));
  EXPECT_THROW(integrate_over_V(f * vol), std::exception);
  EXPECT_THROW(integrate_over_V(vol), std::exception);
}

TEST(Equivariant, SupportMapGuardsOrigin) {
  int d = 2;
  Form singular = Form::from_scalar(ScalarExpr::r_pow(d, -2));
  // a singular alpha multiplied by the plain cutoff value keeps the pole
  EXPECT_THROW(p_chi({singular, Form::zero(d)}, Cutoff::radial_f()), std::exception);
  // the same coefficient behind dchi rides on f', supported away from 0
  EXPECT_NO_THROW(p_chi({Form::zero(d), singular}, Cutoff::radial_f()));
  // formal cutoffs carry support formally
  EXPECT_NO_THROW(p_chi({singular, Form::zero(d)}, Cutoff::formal(1)));
}

TEST(Equivariant, ExcisionPairStructure) {
  std::mt19937_64 rng(11);
  int d = 2;
  Cutoff c = Cutoff::formal(1);
  Form chi = c.chi(d), dchi = c.dchi(d);
  for (int trial = 0; trial < 4; ++trial) {
    RelativePair p{random_form(d, rng), random_form(d, rng)};
    RelativePair got = excision_Ichi(p, c);
    EXPECT_EQ(got.alpha, chi * p.alpha + dchi * p.beta);
    EXPECT_EQ(got.alpha, p_chi(p, c));
    EXPECT_EQ(got.beta, chi * p.beta);
  }
}
