// Clifford generators on the spinor space: relations, supertrace values,
// the closed-form block exponential, and the square-root determinant factor
// against a per-block product oracle.
#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "equiforms/clifford.hpp"
#include "equiforms/numeval.hpp"

using namespace equiforms;

namespace {

const double kPi = std::acos(-1.0);

CD supertrace_of(const CliffordModule& cm, const Mat<CD>& m) {
  CD tr = 0;
  for (int i = 0; i < cm.N; ++i) tr += (cm.parity[i] ? -1.0 : 1.0) * m.at(i, i);
  return tr;
}

}  // namespace

TEST(Clifford, GeneratorRelations) {
  for (int n = 1; n <= 3; ++n) {
    CliffordModule cm = build_clifford(n);
    Mat<CD> minus2 = Mat<CD>::identity(cm.N, CD(-2, 0));
    for (int k = 1; k <= 2 * n; ++k)
      for (int l = k; l <= 2 * n; ++l) {
        Mat<CD> anti = cm.c(k) * cm.c(l) + cm.c(l) * cm.c(k);
        if (k == l)
          EXPECT_EQ(anti, minus2) << n << " " << k;
        else
          EXPECT_TRUE(anti.is_zero()) << n << " " << k << " " << l;
      }
  }
}

TEST(Clifford, VectorSquareIsMinusNorm) {
  CliffordModule cm = build_clifford(2);
  for (int a = -2; a <= 2; ++a)
    for (int b = -1; b <= 2; ++b) {
      std::vector<double> x = {double(a), double(b), 1.0, -2.0};
      double norm2 = 0;
      for (double v : x) norm2 += v * v;
      Mat<CD> sq = cm.vector_insert(x) * cm.vector_insert(x);
      EXPECT_EQ(sq, Mat<CD>::identity(cm.N, CD(-norm2, 0)));
    }
}

TEST(Clifford, SupertraceCalibration) {
  for (int n = 1; n <= 3; ++n) {
    CliffordModule cm = build_clifford(n);
    Mat<CD> prod = Mat<CD>::identity(cm.N, CD(1, 0));
    for (int k = 1; k <= 2 * n; ++k) prod = prod * cm.c(k);
    CD expect = std::pow(CD(0, -2), n);
    EXPECT_LT(std::abs(supertrace_of(cm, prod) - expect), 1e-14) << n;
    // any proper sub-product is supertraceless
    Mat<CD> sub = Mat<CD>::identity(cm.N, CD(1, 0));
    for (int k = 1; k <= 2 * n - 1; ++k) sub = sub * cm.c(k);
    EXPECT_LT(std::abs(supertrace_of(cm, sub)), 1e-14) << n;
  }
}

TEST(Clifford, SymbolicInsertionMatchesNumeric) {
  CliffordModule cm = build_clifford(2);
  Mat<ScalarExpr> vs = cm.vector_insert_symbolic();
  EvalParams p;
  p.x = {0.3, -0.8, 1.1, 0.25};
  Mat<CD> vn = cm.vector_insert(p.x);
  for (int i = 0; i < cm.N; ++i)
    for (int j = 0; j < cm.N; ++j)
      EXPECT_LT(std::abs(eval_scalar(vs.at(i, j), p) - vn.at(i, j)), 1e-14);
}

TEST(Clifford, ExactConversionRoundTrip) {
  CliffordModule cm = build_clifford(2);
  Mat<ScalarExpr> e = to_exact(cm.c(3), 4);
  EvalParams p;
  p.x = {0, 0, 0, 0};
  for (int i = 0; i < cm.N; ++i)
    for (int j = 0; j < cm.N; ++j)
      EXPECT_EQ(eval_scalar(e.at(i, j), p), cm.c(3).at(i, j));
  Mat<CD> bad(1);
  bad.at(0, 0) = CD(0.5, 0);
  EXPECT_THROW(to_exact(bad, 2), std::exception);
}

TEST(Clifford, HalfDeterminantAgainstBlockOracle) {
  std::mt19937_64 rng(515);
  std::uniform_real_distribution<double> u(-6.2, 6.2);
  for (int d : {2, 4, 6}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> w(d / 2);
      for (auto& v : w) v = u(rng);
      double expect = 1.0;
      for (double v : w) expect *= (v == 0.0) ? 1.0 : std::sin(v / 2) / (v / 2);
      if (expect <= 0) continue;
      double got = j_half(d, antisym_blocks(d, w));
      EXPECT_NEAR(got, expect, 1e-12 * (1 + std::abs(expect)));
    }
  }
  // zero matrix and near-zero angles sit on the removable singularity
  EXPECT_NEAR(j_half(4, antisym_blocks(4, {0.0, 0.0})), 1.0, 1e-14);
  EXPECT_NEAR(j_half(2, antisym_blocks(2, {1e-9})), 1.0, 1e-12);
}

TEST(Clifford, HalfDeterminantBranchGuard) {
  // sin(w/2)/(w/2) < 0 for w in (2 pi, 4 pi): outside the principal branch
  EXPECT_THROW(j_half(2, antisym_blocks(2, {6.4})), std::exception);
  EXPECT_NO_THROW(j_half(2, antisym_blocks(2, {2 * kPi - 1e-3})));
}

TEST(Clifford, HalfDeterminantRotationInvariance) {
  // conjugating by an orthogonal matrix preserves the angular eigenvalues
  int d = 4;
  std::vector<double> A = antisym_blocks(d, {1.3, -0.7});
  double c = std::cos(0.7), s = std::sin(0.7);
  std::vector<double> Q(d * d, 0.0);
  Q[0 * d + 0] = c;
  Q[0 * d + 2] = -s;
  Q[2 * d + 0] = s;
  Q[2 * d + 2] = c;
  Q[1 * d + 1] = 1;
  Q[3 * d + 3] = 1;
  std::vector<double> QA(d * d, 0.0), QAQt(d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) QA[i * d + j] += Q[i * d + k] * A[k * d + j];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) QAQt[i * d + j] += QA[i * d + k] * Q[j * d + k];
  EXPECT_NEAR(j_half(d, QAQt), j_half(d, A), 1e-10);
}

TEST(Clifford, BlockExponentialClosedForm) {
  CliffordModule cm = build_clifford(2);
  int d = 4;
  for (double t : {0.4, 1.0, 1.7}) {
    for (double lam : {-1.3, 0.0, 0.8}) {
      for (int k = 1; k <= 2; ++k) {
        SuperForm<CD> arg(d, cm.N, cm.parity);
        arg.add_term(0, cm.pair_product(k).scale(CD(lam, 0)));
        arg.add_term(1u << (2 * k - 2), cm.c(2 * k - 1).scale(CD(t, 0)));
        arg.add_term(1u << (2 * k - 1), cm.c(2 * k).scale(CD(t, 0)));
        SuperForm<CD> ref = super_exp_numeric(arg);
        SuperForm<CD> got = exp_Bk_closed(cm, k, t, lam);
        double dev = 0;
        for (const auto& [mask, m] : ref.terms) {
          Mat<CD> g = got.coefficient(mask);
          for (size_t i = 0; i < m.a.size(); ++i)
            dev = std::max(dev, std::abs(m.a[i] - g.a[i]));
        }
        for (const auto& [mask, m] : got.terms) {
          Mat<CD> r = ref.coefficient(mask);
          for (size_t i = 0; i < m.a.size(); ++i)
            dev = std::max(dev, std::abs(m.a[i] - r.a[i]));
        }
        EXPECT_LT(dev, 1e-12) << t << " " << lam << " " << k;
      }
    }
  }
}
