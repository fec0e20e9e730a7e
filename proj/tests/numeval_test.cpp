// Numeric evaluation layer: ring-homomorphism property of pointwise
// evaluation, the two independent integration routes against closed-form
// values, half-line quadrature, Gauss rules, cutoff profile shape, and the
// finite-difference exterior derivative cross-check.
#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "equiforms/numeval.hpp"
#include "equiforms/thom.hpp"

using namespace equiforms;

namespace {

const double kPi = std::acos(-1.0);

ScalarExpr random_scalar(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 7), cnum(-3, 3), small(1, 2);
  auto atom = [&]() -> ScalarExpr {
    switch (pick(rng)) {
      case 0: return ScalarExpr::coordinate(d, 1 + (int)(rng() % d));
      case 1: return ScalarExpr::r_pow(d, (int)(rng() % 4) - 2);
      case 2: return ScalarExpr::gaussian(d, {rat(0), rat(0), rat(small(rng))});
      case 3: return ScalarExpr::f_order(d, (int)(rng() % 3));
      case 4: return ScalarExpr::t_pow(d, (int)(rng() % 3));
      case 5: return ScalarExpr::theta_pow(d, (int)(rng() % 3) - 1);
      case 6: return ScalarExpr::eith_half(d, (int)(rng() % 5) - 2);
      default: {
        int n = cnum(rng);
        return ScalarExpr::constant(d, ConstantScalar::monomial(rat(n ? n : 1, 2),
                                                                (int)(rng() % 2),
                                                                (int)(rng() % 3) - 1));
      }
    }
  };
  ScalarExpr out = ScalarExpr::zero(d);
  int nterms = 1 + (int)(rng() % 3);
  for (int t = 0; t < nterms; ++t) {
    ScalarExpr term = atom();
    int nfac = (int)(rng() % 3);
    for (int f = 0; f < nfac; ++f) term = term * atom();
    out += term;
  }
  return out;
}

}  // namespace

TEST(NumEval, EvaluationIsRingHomomorphism) {
  std::mt19937_64 rng(20260815);
  EvalParams p;
  p.x = {0.7, 0.4};
  p.t = 1.3;
  p.theta = 0.9;
  for (int trial = 0; trial < 200; ++trial) {
    ScalarExpr a = random_scalar(2, rng), b = random_scalar(2, rng);
    CD va = eval_scalar(a, p), vb = eval_scalar(b, p);
    double scale = 1.0 + std::abs(va) + std::abs(vb);
    EXPECT_LT(std::abs(eval_scalar(a * b, p) - va * vb), 1e-10 * scale * scale) << trial;
    EXPECT_LT(std::abs(eval_scalar(a + b, p) - (va + vb)), 1e-10 * scale) << trial;
    EXPECT_LT(std::abs(eval_scalar(a.conjugated(), p) - std::conj(va)), 1e-10 * scale);
  }
}

TEST(NumEval, IntegrationRoutesAgreeOnClosedForms) {
  EvalParams p;
  {
    int d = 1;
    Form a = Form::dx(d, 1).scaled_expr(ScalarExpr::gaussian(d, {rat(1)}));
    CD exact = std::sqrt(kPi);
    EXPECT_LT(std::abs(integrate_angular_reduction(a, p) - exact), 1e-10);
    EXPECT_LT(std::abs(integrate_tensor(a, p, 1e-10) - exact), 1e-8);
  }
  {
    int d = 2;
    Form vol = Form::dx(d, 1) * Form::dx(d, 2);
    Form g = vol.scaled_expr(ScalarExpr::gaussian(d, {rat(1)}));
    EXPECT_LT(std::abs(integrate_angular_reduction(g, p) - kPi), 1e-10);
    EXPECT_LT(std::abs(integrate_tensor(g, p, 1e-10) - kPi), 1e-8);

    ScalarExpr x1 = ScalarExpr::coordinate(d, 1);
    Form m = g.scaled_expr(x1 * x1);
    EXPECT_LT(std::abs(integrate_angular_reduction(m, p) - kPi / 2), 1e-10);
    EXPECT_LT(std::abs(integrate_tensor(m, p, 1e-10) - kPi / 2), 1e-8);
  }
  {
    int d = 3;
    Form vol = Form::dx(d, 1) * Form::dx(d, 2) * Form::dx(d, 3);
    Form g = vol.scaled_expr(ScalarExpr::gaussian(d, {rat(1)}));
    CD exact = std::pow(kPi, 1.5);
    EXPECT_LT(std::abs(integrate_numeric(g, p) - exact), 1e-8);
  }
}

TEST(NumEval, CutoffIntegralAgainstSimpsonReference) {
  // int_{R^2} f(r^2) dx = pi int_0^inf f(u) du, reference by fine Simpson
  EvalParams p;
  CutoffSpec profile;
  double a = 0.0, b = profile.hi();
  int n = 20000;
  double h = (b - a) / n, acc = profile.f(a) + profile.f(b);
  for (int i = 1; i < n; ++i) acc += profile.f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  double ref = kPi * acc * h / 3.0;

  Form vol = Form::dx(2, 1) * Form::dx(2, 2);
  Form a2 = vol.scaled_expr(ScalarExpr::f_order(2, 0));
  EXPECT_LT(std::abs(integrate_angular_reduction(a2, p) - ref), 1e-7);
  EXPECT_LT(std::abs(integrate_tensor(a2, p, 1e-9) - ref), 1e-6);
}

TEST(NumEval, HalfLineQuadrature) {
  CD half = quadrature_t([](double t) { return CD(t * std::exp(-t * t), 0); });
  EXPECT_LT(std::abs(half - CD(0.5, 0)), 1e-11);
  CD g2 = quadrature_t([](double t) { return CD(t * t * t * std::exp(-t * t), 0); });
  EXPECT_LT(std::abs(g2 - CD(0.5, 0)), 1e-11);
  CD cpx = quadrature_t([](double t) { return CD(1, 2) * t * std::exp(-t * t); });
  EXPECT_LT(std::abs(cpx - CD(0.5, 1)), 1e-10);
  EXPECT_THROW(quadrature_t([](double t) { return CD(1.0 / (1.0 + t), 0); }),
               std::exception);
}

TEST(NumEval, GaussRulesSatisfyMoments) {
  for (int m : {8, 16, 32}) {
    const auto& [xg, wg] = gauss_legendre(m);
    double s0 = 0, s2 = 0;
    for (int i = 0; i < m; ++i) {
      s0 += wg[i];
      s2 += wg[i] * xg[i] * xg[i];
    }
    EXPECT_NEAR(s0, 2.0, 1e-13);
    EXPECT_NEAR(s2, 2.0 / 3.0, 1e-13);

    const auto& [xh, wh] = gauss_hermite(m);
    double h0 = 0, h2 = 0;
    for (int i = 0; i < m; ++i) {
      h0 += wh[i];
      h2 += wh[i] * xh[i] * xh[i];
    }
    EXPECT_NEAR(h0, std::sqrt(kPi), 1e-12);
    EXPECT_NEAR(h2, std::sqrt(kPi) / 2, 1e-12);
  }
}

TEST(NumEval, CutoffProfileShape) {
  CutoffSpec c;
  EXPECT_EQ(c.f(0.0), 1.0);
  EXPECT_EQ(c.f(c.lo()), 1.0);
  EXPECT_EQ(c.f(c.hi()), 0.0);
  EXPECT_EQ(c.f(c.hi() + 1.0), 0.0);
  double span = c.hi() - c.lo();
  double prev = 1.0;
  for (int i = 1; i <= 50; ++i) {
    double u = c.lo() + span * i / 50.0;
    double v = c.f(u);
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
  }
  // derivative orders against central differences on the interior
  for (int i = 1; i < 10; ++i) {
    double u = c.lo() + span * (0.05 + 0.09 * i);
    double h = 1e-6;
    EXPECT_NEAR(c.f(u, 1), (c.f(u + h) - c.f(u - h)) / (2 * h), 1e-5);
    EXPECT_NEAR(c.f(u, 2), (c.f(u + h, 1) - c.f(u - h, 1)) / (2 * h), 1e-4);
  }
}

TEST(NumEval, ExteriorDerivativeFiniteDifference) {
  EvalParams p;
  p.x = {0.45, -0.7};
  p.t = 1.0;
  p.xvals[{1, 2}] = CD(0.5, 0);
  Form C1 = thom_C_t(2, XMatrix::indeterminates(2)).substitute_t(rat(1));
  EXPECT_LT(fd_exterior_derivative_check(C1, p), 1e-6);

  Form mixed = Form::dx(2, 1).scaled_expr(ScalarExpr::f_order(2, 0)) +
               Form::dx(2, 2).scaled_expr(ScalarExpr::gaussian(2, {rat(1)}) *
                                          ScalarExpr::coordinate(2, 1));
  EvalParams q;
  q.x = {1.1, 0.6};  // inside the transition band of the cutoff
  EXPECT_LT(fd_exterior_derivative_check(mixed, q), 1e-6);
}
