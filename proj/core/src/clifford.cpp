#include "equiforms/clifford.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace equiforms {

namespace {

// creation operator on subset states: a+_k e_S = (-1)^{|S cap [1,k)|} e_{S u k}
Mat<CD> ladder_create(int n, int k) {
  int N = 1 << n;
  uint32_t bit = 1u << (k - 1);
  uint32_t below = bit - 1;
  Mat<CD> out(N);
  for (int s = 0; s < N; ++s) {
    if (s & bit) continue;
    double sign = (std::popcount(static_cast<uint32_t>(s) & below) & 1) ? -1.0 : 1.0;
    out.at(s | bit, s) = CD(sign, 0.0);
  }
  return out;
}

Mat<CD> transpose(const Mat<CD>& m) {
  Mat<CD> out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out.at(i, j) = m.at(j, i);
  return out;
}

void check_relations(const CliffordModule& cm) {
  int N = cm.N;
  for (int a = 0; a < 2 * cm.n; ++a)
    for (int b = a; b < 2 * cm.n; ++b) {
      Mat<CD> anti = cm.gen[a] * cm.gen[b] + cm.gen[b] * cm.gen[a];
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          CD want = (a == b && i == j) ? CD(-2.0, 0.0) : CD(0.0, 0.0);
          if (anti.at(i, j) != want)
            throw std::logic_error("clifford: generator relations violated");
        }
    }
  // full product has supertrace (-2i)^n
  Mat<CD> prod = Mat<CD>::identity(N, CD(1.0, 0.0));
  for (const auto& g : cm.gen) prod = prod * g;
  CD str(0.0);
  for (int i = 0; i < N; ++i) str += (cm.parity[i] ? -prod.at(i, i) : prod.at(i, i));
  CD want(1.0, 0.0);
  for (int k = 0; k < cm.n; ++k) want *= CD(0.0, -2.0);
  if (str != want) throw std::logic_error("clifford: supertrace calibration violated");
}

}  // namespace

CliffordModule build_clifford(int n) {
  CliffordModule cm;
  cm.n = n;
  cm.N = 1 << n;
  cm.parity.resize(cm.N);
  for (int s = 0; s < cm.N; ++s) cm.parity[s] = std::popcount(static_cast<uint32_t>(s)) & 1;
  cm.gen.reserve(2 * n);
  for (int k = 1; k <= n; ++k) {
    Mat<CD> ad = ladder_create(n, k);
    Mat<CD> a = transpose(ad);
    cm.gen.push_back(a - ad);                           // c_{2k-1}
    cm.gen.push_back((a + ad).scale(CD(0.0, -1.0)));    // c_{2k}
  }
  check_relations(cm);
  return cm;
}

Mat<CD> CliffordModule::pair_product(int k) const { return gen[2 * k - 2] * gen[2 * k - 1]; }

Mat<CD> CliffordModule::vector_insert(const std::vector<double>& x) const {
  Mat<CD> out(N);
  for (int m = 0; m < 2 * n; ++m) out = out + gen[m].scale(CD(x[m], 0.0));
  return out;
}

Mat<ScalarExpr> CliffordModule::vector_insert_symbolic() const {
  int d = 2 * n;
  Mat<ScalarExpr> out(N);
  for (int m = 0; m < 2 * n; ++m) {
    Mat<ScalarExpr> g = to_exact(gen[m], d);
    ScalarExpr xm = ScalarExpr::coordinate(d, m + 1);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) out.at(i, j) += g.at(i, j) * xm;
  }
  return out;
}

Mat<ScalarExpr> to_exact(const Mat<CD>& m, int d) {
  Mat<ScalarExpr> out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      CD v = m.at(i, j);
      long re = std::lround(v.real());
      long im = std::lround(v.imag());
      if (v != CD(static_cast<double>(re), static_cast<double>(im)))
        throw std::domain_error("to_exact: entry not a Gaussian integer");
      if (re == 0 && im == 0) continue;
      ConstantScalar c = ConstantScalar::integer(re) +
                         ConstantScalar::monomial(rat(im), 1, 0);
      out.at(i, j) = ScalarExpr::constant(d, c);
    }
  return out;
}

SuperForm<CD> curvature_spin(const CliffordModule& cm, double t,
                             const std::vector<double>& lam,
                             const std::vector<double>& x) {
  int d = 2 * cm.n;
  SuperForm<CD> out(d, cm.N, cm.parity);
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  Mat<CD> b = Mat<CD>::identity(cm.N, CD(-t * t * r2, 0.0));
  for (int k = 1; k <= cm.n; ++k) b = b + cm.pair_product(k).scale(CD(lam[k - 1], 0.0));
  out.add_term(0, b);
  for (int m = 1; m <= d; ++m)
    out.add_term(1u << (m - 1), cm.c(m).scale(CD(t, 0.0)));
  return out;
}

SuperForm<CD> exp_Bk_closed(const CliffordModule& cm, int k, double t, double lam) {
  int d = 2 * cm.n;
  double sinc, g2;  // sin(lam)/lam and (sin(lam) - lam cos(lam))/lam^2
  if (std::abs(lam) < 1e-4) {
    double l2 = lam * lam;
    sinc = 1.0 - l2 / 6.0 + l2 * l2 / 120.0;
    g2 = lam / 3.0 - lam * l2 / 30.0;
  } else {
    sinc = std::sin(lam) / lam;
    g2 = (std::sin(lam) - lam * std::cos(lam)) / (lam * lam);
  }
  double cosl = std::cos(lam);
  uint32_t m1 = 1u << (2 * k - 2), m2 = 1u << (2 * k - 1);

  SuperForm<CD> out(d, cm.N, cm.parity);
  Mat<CD> id = Mat<CD>::identity(cm.N, CD(1.0, 0.0));
  Mat<CD> cc = cm.pair_product(k);
  out.add_term(0, id.scale(CD(cosl, 0.0)) + cc.scale(CD(sinc * lam, 0.0)));
  out.add_term(m1, cm.c(2 * k - 1).scale(CD(t * sinc, 0.0)));
  out.add_term(m2, cm.c(2 * k).scale(CD(t * sinc, 0.0)));
  out.add_term(m1 | m2, id.scale(CD(t * t * g2, 0.0)) - cc.scale(CD(t * t * sinc, 0.0)));
  return out;
}

double j_half(int d, const std::vector<double>& a_flat) {
  Eigen::MatrixXcd h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = a_flat[static_cast<size_t>(i) * d + j];
      if (std::abs(v + a_flat[static_cast<size_t>(j) * d + i]) > 1e-12)
        throw std::domain_error("j_half: matrix not antisymmetric");
      h(i, j) = CD(0.0, 1.0) * v;  // i A is hermitian
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("j_half: eigensolve failed");
  double out = 1.0;
  for (int i = 0; i < d; ++i) {
    double r = es.eigenvalues()(i);  // A-eigenvalue is -i r
    double hv = (std::abs(r) < 1e-8) ? 1.0 - r * r / 24.0 : std::sin(r / 2.0) / (r / 2.0);
    if (hv <= 0.0) throw std::domain_error("j_half: eigenvalue outside principal branch");
    out *= std::sqrt(hv);
  }
  return out;
}

std::vector<double> antisym_blocks(int d, const std::vector<double>& w) {
  std::vector<double> a(static_cast<size_t>(d) * d, 0.0);
  for (size_t k = 0; k < w.size(); ++k) {
    int i = static_cast<int>(2 * k), j = static_cast<int>(2 * k + 1);
    a[static_cast<size_t>(i) * d + j] = w[k];
    a[static_cast<size_t>(j) * d + i] = -w[k];
  }
  return a;
}

}  // namespace equiforms
