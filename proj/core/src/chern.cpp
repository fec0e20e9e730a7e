#include "equiforms/chern.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace equiforms {

namespace {

// re-dimension a pure polynomial scalar, shifting coordinates by offset
ScalarExpr embed_scalar(const ScalarExpr& s, int newd, int offset) {
  ScalarExpr out(newd);
  for (const auto& [m, c] : s.terms) {
    if (m.rexp != 0 || !m.gauss.empty() || !m.forders.empty() || !m.phis.empty() ||
        m.tpow != 0 || m.thpow != 0 || m.eith2 != 0)
      throw std::domain_error("embed: symbol entry is not a pure polynomial");
    SMono mm;
    mm.xpow.assign(static_cast<size_t>(newd), 0);
    for (size_t i = 0; i < m.xpow.size(); ++i) mm.xpow[offset + i] = m.xpow[i];
    out += ScalarExpr::monomial(newd, mm, c);
  }
  return out;
}

Mat<ScalarExpr> embed_mat(const Mat<ScalarExpr>& m, int newd, int offset) {
  Mat<ScalarExpr> out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      const ScalarExpr& v = m.at(i, j);
      out.at(i, j) = v.terms.empty() ? ScalarExpr::zero(newd) : embed_scalar(v, newd, offset);
    }
  return out;
}

// graded tensor product on the basis (i, j) -> i*N2 + j: entry B(j, j') has
// parity p2(j)+p2(j') and crosses the source basis vector i', hence the sign
Mat<ScalarExpr> kron_graded(const Mat<ScalarExpr>& A, const std::vector<int>& p1,
                            const Mat<ScalarExpr>& B, const std::vector<int>& p2) {
  int N1 = A.n, N2 = B.n;
  Mat<ScalarExpr> out(N1 * N2);
  for (int i = 0; i < N1; ++i)
    for (int i2 = 0; i2 < N1; ++i2)
      for (int j = 0; j < N2; ++j)
        for (int j2 = 0; j2 < N2; ++j2) {
          const ScalarExpr& a = A.at(i, i2);
          const ScalarExpr& b = B.at(j, j2);
          if (a.terms.empty() || b.terms.empty()) continue;
          ScalarExpr v = a * b;
          if (((p2[j] + p2[j2]) & 1) && (p1[i2] & 1)) v = -v;
          out.at(i * N2 + j, i2 * N2 + j2) += v;
        }
  return out;
}

Form form_from_strace(int d, const std::map<uint32_t, ScalarExpr>& str) {
  Form out(d);
  for (const auto& [mask, s] : str) {
    if (s.is_zero()) continue;
    out.terms[FKey{mask, 0, 0}] = XPoly::from_scalar(s);
  }
  return out;
}

// letters of the curvature: i t (d_k v) at dx_k
SuperForm<ScalarExpr> curvature_letters(const SymbolMorphism& s) {
  SuperForm<ScalarExpr> letters(s.d, s.N, s.parity);
  ScalarExpr it = ScalarExpr::t_pow(s.d, 1).scaled(ConstantScalar::unit_i());
  for (int k = 1; k <= s.d; ++k) {
    Mat<ScalarExpr> dk(s.N);
    for (int i = 0; i < s.N; ++i)
      for (int j = 0; j < s.N; ++j) dk.at(i, j) = s.v.at(i, j).partial(k) * it;
    letters.add_term(1u << (k - 1), dk);
  }
  return letters;
}

// rational coefficient c with v^2 = c r^2 Id, verified exactly
Rational gaussian_rate(const SymbolMorphism& s) {
  Mat<ScalarExpr> vsq = s.v * s.v;
  SMono probe;
  probe.xpow.assign(static_cast<size_t>(s.d), 0);
  probe.xpow[0] = 2;
  auto it = vsq.at(0, 0).terms.find(probe);
  if (it == vsq.at(0, 0).terms.end())
    throw std::domain_error("exp: v^2 is not a positive multiple of r^2");
  ConstantScalar cc = it->second;
  if (cc.terms.size() != 1 || cc.terms.begin()->first != std::make_pair(0, 0))
    throw std::domain_error("exp: v^2 rate is not rational");
  Rational c = cc.terms.begin()->second;
  if (c <= Rational(0)) throw std::domain_error("exp: v^2 rate is not positive");
  ScalarExpr crho = ScalarExpr::rho(s.d).scaled(ConstantScalar(c));
  for (int i = 0; i < s.N; ++i)
    for (int j = 0; j < s.N; ++j) {
      const ScalarExpr& e = vsq.at(i, j);
      if (i == j ? (e != crho) : !e.is_zero())
        throw std::domain_error("exp: v^2 is not a positive multiple of r^2");
    }
  return c;
}

std::vector<Rational> padded_weights(const SymbolMorphism& s) {
  std::vector<Rational> q = s.weights;
  q.resize(static_cast<size_t>(s.N), Rational(0));
  return q;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("chern identity failed: " + what);
}

Mat<CD> eval_mat(const Mat<ScalarExpr>& m, const EvalParams& p) {
  Mat<CD> out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      out.at(i, j) = m.at(i, j).terms.empty() ? CD(0.0) : eval_scalar(m.at(i, j), p);
  return out;
}

std::mt19937_64 seeded(uint64_t seed) { return std::mt19937_64(seed); }

double sample_u(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double nf_dev(const NumericForm& a, const NumericForm& b) {
  double m = 0.0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    m = std::max(m, std::abs(v - (it == b.end() ? CD(0.0) : it->second)));
  }
  for (const auto& [k, v] : b)
    if (!a.count(k)) m = std::max(m, std::abs(v));
  return m;
}

NumericForm nf_scaled(const NumericForm& a, CD c) {
  NumericForm out;
  for (const auto& [k, v] : a) out[k] = v * c;
  return out;
}

}  // namespace

Mat<ScalarExpr> SymbolMorphism::mu() const {
  Mat<ScalarExpr> out(N);
  for (int i = 0; i < N; ++i) {
    if (i < static_cast<int>(weights.size()) && weights[i] != Rational(0))
      out.at(i, i) = ScalarExpr::theta_pow(d, 1)
                         .scaled(ConstantScalar::monomial(weights[i], 1, 0));
    else
      out.at(i, i) = ScalarExpr::zero(d);
  }
  return out;
}

SymbolMorphism symbol_bott() {
  SymbolMorphism s;
  s.name = "bott";
  s.d = 2;
  s.N = 2;
  s.parity = {0, 1};
  s.v = Mat<ScalarExpr>(2);
  ScalarExpr x1 = ScalarExpr::coordinate(2, 1), x2 = ScalarExpr::coordinate(2, 2);
  ScalarExpr ix2 = x2.scaled(ConstantScalar::unit_i());
  s.v.at(0, 1) = x1 - ix2;  // conj(z)
  s.v.at(1, 0) = x1 + ix2;  // z
  s.weights = {Rational(0), Rational(1)};
  s.blocks = {Rational(1)};
  return s;
}

SymbolMorphism symbol_complex1() {
  SymbolMorphism s = symbol_bott();
  s.name = "complex:1";
  return s;
}

SymbolMorphism symbol_spin(int n, const std::vector<Rational>& nu) {
  if (n < 1 || static_cast<int>(nu.size()) != n)
    throw std::invalid_argument("spin symbol: need n >= 1 rotation speeds");
  CliffordModule cm = build_clifford(n);
  SymbolMorphism s;
  s.name = "spin:" + std::to_string(n);
  s.d = 2 * n;
  s.N = cm.N;
  s.parity = cm.parity;
  ScalarExpr neg_i = ScalarExpr::constant(s.d, ConstantScalar::monomial(Rational(-1), 1, 0));
  s.v = cm.vector_insert_symbolic().scale(neg_i);
  s.weights.assign(static_cast<size_t>(s.N), Rational(0));
  for (int st = 0; st < s.N; ++st)
    for (int k = 0; k < n; ++k) {
      int occ = (st >> k) & 1;
      s.weights[st] += nu[k] / 2 * Rational(2 * occ - 1);
    }
  s.blocks = nu;
  return s;
}

SymbolMorphism symbol_spinc(int n, const std::vector<Rational>& nu) {
  SymbolMorphism s = symbol_spin(n, nu);
  s.name = "spinc:" + std::to_string(n);
  for (auto& w : s.weights) w += Rational(1);
  return s;
}

SymbolMorphism symbol_by_name(const std::string& name) {
  if (name == "bott") return symbol_bott();
  if (name == "complex:1" || name == "complex") return symbol_complex1();
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string head = name.substr(0, colon);
    int n = std::stoi(name.substr(colon + 1));
    std::vector<Rational> nu(static_cast<size_t>(n), Rational(1));
    if (head == "spin") return symbol_spin(n, nu);
    if (head == "spinc") return symbol_spinc(n, nu);
  }
  throw std::invalid_argument("unknown symbol: " + name);
}

SymbolMorphism odot_product(const SymbolMorphism& s1, const SymbolMorphism& s2) {
  SymbolMorphism s;
  s.name = s1.name + "(x)" + s2.name;
  s.d = s1.d + s2.d;
  s.N = s1.N * s2.N;
  s.parity.resize(static_cast<size_t>(s.N));
  for (int i = 0; i < s1.N; ++i)
    for (int j = 0; j < s2.N; ++j) s.parity[i * s2.N + j] = (s1.parity[i] + s2.parity[j]) & 1;
  Mat<ScalarExpr> v1 = embed_mat(s1.v, s.d, 0);
  Mat<ScalarExpr> v2 = embed_mat(s2.v, s.d, s1.d);
  ScalarExpr one = ScalarExpr::one(s.d);
  Mat<ScalarExpr> id1 = Mat<ScalarExpr>::identity(s1.N, one);
  Mat<ScalarExpr> id2 = Mat<ScalarExpr>::identity(s2.N, one);
  s.v = kron_graded(v1, s1.parity, id2, s2.parity) + kron_graded(id1, s1.parity, v2, s2.parity);
  std::vector<Rational> w1 = s1.weights, w2 = s2.weights;
  w1.resize(static_cast<size_t>(s1.N), Rational(0));
  w2.resize(static_cast<size_t>(s2.N), Rational(0));
  s.weights.resize(static_cast<size_t>(s.N));
  for (int i = 0; i < s1.N; ++i)
    for (int j = 0; j < s2.N; ++j) s.weights[i * s2.N + j] = w1[i] + w2[j];
  s.blocks = s1.blocks;
  s.blocks.insert(s.blocks.end(), s2.blocks.begin(), s2.blocks.end());
  return s;
}

SymbolMorphism scaled_symbol(const SymbolMorphism& s, const Rational& c) {
  SymbolMorphism out = s;
  std::ostringstream nm;
  nm << s.name << "*(" << c << ")";
  out.name = nm.str();
  out.v = s.v.scale(ScalarExpr::constant(s.d, ConstantScalar(c)));
  return out;
}

SymbolMorphism random_polynomial_symbol(int d, int p, int q, int degree, std::mt19937_64& rng) {
  SymbolMorphism s;
  s.name = "random";
  s.d = d;
  s.N = p + q;
  s.parity.assign(static_cast<size_t>(p), 0);
  s.parity.insert(s.parity.end(), static_cast<size_t>(q), 1);
  s.v = Mat<ScalarExpr>(s.N);
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 2);
  // enumerate exponent tuples of total degree <= degree
  std::vector<std::vector<int>> monos;
  std::vector<int> cur(static_cast<size_t>(d), 0);
  std::function<void(int, int)> walk = [&](int pos, int left) {
    if (pos == d) {
      monos.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      walk(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  walk(0, degree);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < p; ++b) {
      ScalarExpr entry = ScalarExpr::zero(d);
      for (const auto& mx : monos) {
        Rational re = rat(num(rng), den(rng)), im = rat(num(rng), den(rng));
        SMono m;
        m.xpow = mx;
        ConstantScalar c =
            ConstantScalar(re) + ConstantScalar::monomial(im, 1, 0);
        if (!c.is_zero()) entry += ScalarExpr::monomial(d, m, c);
      }
      s.v.at(p + a, b) = entry;
      s.v.at(b, p + a) = entry.conjugated();
    }
  return s;
}

XMatrix theta_action(int d, const std::vector<Rational>& blocks) {
  XMatrix x(d);
  for (size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k] == Rational(0)) continue;
    x.upper[{2 * static_cast<int>(k) + 1, 2 * static_cast<int>(k) + 2}] =
        XPoly::from_scalar(ScalarExpr::theta_pow(d, 1).scaled(ConstantScalar(blocks[k])));
  }
  return x;
}

double h_sigma(const SymbolMorphism& s, const std::vector<double>& x) {
  EvalParams p;
  p.x = x;
  Mat<CD> vx = eval_mat(s.v, p);
  Eigen::MatrixXcd V(s.N, s.N);
  for (int i = 0; i < s.N; ++i)
    for (int j = 0; j < s.N; ++j) V(i, j) = vx.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(V * V);
  return es.eigenvalues().minCoeff();
}

SuperForm<ScalarExpr> curvature_sigma(const SymbolMorphism& s) {
  SuperForm<ScalarExpr> F = curvature_letters(s);
  ScalarExpr mt2 = ScalarExpr::t_pow(s.d, 2).scaled(ConstantScalar::integer(-1));
  Mat<ScalarExpr> b = (s.v * s.v).scale(mt2) + s.mu();
  F.add_term(0, b);
  return F;
}

SuperForm<ScalarExpr> exp_curvature_theta(const SymbolMorphism& s) {
  Rational c = gaussian_rate(s);
  SuperForm<ScalarExpr> E = super_exp_theta(s.d, padded_weights(s), curvature_letters(s));
  return E.scale(ScalarExpr::gaussian(s.d, {Rational(0), Rational(0), c}));
}

Form ch_quillen_t(const SymbolMorphism& s) {
  return form_from_strace(s.d, exp_curvature_theta(s).supertrace());
}

Form ch_quillen(const SymbolMorphism& s, const Rational& t0) {
  return ch_quillen_t(s).substitute_t(t0);
}

Form transgression_eta(const SymbolMorphism& s) {
  SuperForm<ScalarExpr> iv(s.d, s.N, s.parity);
  iv.add_term(0, s.v.scale(ScalarExpr::constant(s.d, ConstantScalar::unit_i())));
  Form tr = form_from_strace(s.d, (iv * exp_curvature_theta(s)).supertrace());
  return -tr;
}

Form beta_sigma(const SymbolMorphism& s) { return transgression_eta(s).t_integrate(); }

ChernTriple ch_triple(const SymbolMorphism& s) {
  ChernTriple out;
  out.s = s;
  Form cht = ch_quillen_t(s);
  out.eta = transgression_eta(s);
  out.beta = out.eta.t_integrate();
  out.ch = cht.substitute_t(Rational(0));
  out.ch_q = cht.substitute_t(Rational(1));
  XMatrix X = theta_action(s.d, s.blocks);

  require((cht.t_derivative() + equivariant_d(out.eta, X)).is_zero(),
          "transgression d/dt Ch = -D eta");
  require(d_rel({out.ch, out.beta}, X).is_zero(), "relative pair closedness");
  Form A = out.eta.t_antiderivative();
  require(out.ch - cht == equivariant_d(A, X), "finite transgression Ch(0) - Ch(t) = D int eta");

  Cutoff cut = Cutoff::radial_f();
  out.ch_sup = p_chi({out.ch, out.beta}, cut);
  Form A1 = A.substitute_t(Rational(1));
  Form beta1 = out.beta - A1;  // int_1^infty eta dt
  Form chi = cut.chi(s.d);
  Form corrector = chi * A1 + (chi - Form::one(s.d)) * beta1;
  require(out.ch_sup - out.ch_q == equivariant_d(corrector, X),
          "retarded comparison Ch_sup - Ch_Q = D(chi A_1 + (chi-1) beta_1)");

  for (const auto& [key, xp] : out.ch_q.terms) {
    (void)key;
    for (const auto& [xm, se] : xp.terms) {
      (void)xm;
      for (const auto& [m, cc] : se.terms) {
        (void)cc;
        bool decays = !m.gauss.empty() && m.gauss[0] > Rational(0);
        for (size_t k = 1; k < m.gauss.size(); ++k)
          if (m.gauss[k] != Rational(0)) decays = false;
        require(decays, "Gaussian decay of every Ch_Q term");
      }
    }
  }
  return out;
}

SuperForm<CD> curvature_numeric(const SymbolMorphism& s, double t,
                                const std::vector<double>& x, double theta) {
  EvalParams p;
  p.x = x;
  Mat<CD> vx = eval_mat(s.v, p);
  Mat<CD> b = -(vx * vx).scale(CD(t * t, 0.0));
  for (int i = 0; i < s.N && i < static_cast<int>(s.weights.size()); ++i)
    b.at(i, i) += CD(0.0, theta * to_double(s.weights[i]));
  SuperForm<CD> F(s.d, s.N, s.parity);
  F.add_term(0, b);
  for (int k = 1; k <= s.d; ++k) {
    Mat<CD> dk(s.N);
    for (int i = 0; i < s.N; ++i)
      for (int j = 0; j < s.N; ++j)
        if (!s.v.at(i, j).terms.empty())
          dk.at(i, j) = CD(0.0, t) * eval_scalar(s.v.at(i, j).partial(k), p);
    F.add_term(1u << (k - 1), dk);
  }
  return F;
}

NumericForm ch_quillen_numeric(const SymbolMorphism& s, double t,
                               const std::vector<double>& x, double theta) {
  return super_exp_numeric(curvature_numeric(s, t, x, theta)).supertrace();
}

NumericForm eta_numeric(const SymbolMorphism& s, double t,
                        const std::vector<double>& x, double theta) {
  EvalParams p;
  p.x = x;
  SuperForm<CD> iv(s.d, s.N, s.parity);
  iv.add_term(0, eval_mat(s.v, p).scale(CD(0.0, 1.0)));
  auto str = (iv * super_exp_numeric(curvature_numeric(s, t, x, theta))).supertrace();
  NumericForm out;
  for (const auto& [k, v] : str) out[k] = -v;
  return out;
}

ConstantScalar two_i_pi_pow(int n) {
  BigInt two_n = BigInt(1) << n;
  Rational coef(two_n);
  int im = n % 2;
  if ((n % 4) == 2 || (n % 4) == 3) coef = -coef;
  return ConstantScalar::monomial(coef, im, 2 * n);
}

ScalarExpr g_itheta(int d) {
  // (e^{i theta} - 1) * theta^{-1} * (-i)
  ScalarExpr diff = ScalarExpr::eith_half(d, 2) - ScalarExpr::one(d);
  return diff * ScalarExpr::theta_pow(d, -1).scaled(ConstantScalar::monomial(Rational(-1), 1, 0));
}

CD g_itheta_numeric(double theta) {
  if (std::abs(theta) < 1e-6) {
    CD z(0.0, theta);
    return CD(1.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  }
  return (std::exp(CD(0.0, theta)) - CD(1.0)) / CD(0.0, theta);
}

DeviationReport check_ch_wedge(int n, int samples, uint64_t seed, double tol) {
  DeviationReport rep;
  rep.name = "ch_wedge n=" + std::to_string(n);
  rep.samples = samples;
  rep.tolerance = tol;
  int d = 2 * n;
  CliffordModule cm = build_clifford(n);
  XMatrix X = XMatrix::indeterminates(d);
  Form C = thom_C_t(d, X);
  Form eta_w = thom_eta_t(d, X);
  Form beta_w = beta_wedge(d, X);
  CD pref = std::pow(CD(0.0, -2.0), n);
  auto rng = seeded(seed);
  for (int sm = 0; sm < samples; ++sm) {
    std::vector<double> lam(static_cast<size_t>(n)), x(static_cast<size_t>(d));
    for (auto& l : lam) l = sample_u(rng, -1.3, 1.3);
    for (auto& xi : x) xi = sample_u(rng, -1.5, 1.5);
    double t = sample_u(rng, 0.3, 1.5);

    EvalParams p;
    p.x = x;
    p.t = t;
    std::vector<double> tau(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) tau[k] = 2.0 * lam[k];
    for (int k = 1; k <= d; ++k)
      for (int l = k + 1; l <= d; ++l) p.xvals[{k, l}] = CD(0.0);
    for (int k = 0; k < n; ++k) p.xvals[{2 * k + 1, 2 * k + 2}] = CD(tau[k]);
    CD factor = pref * j_half(d, antisym_blocks(d, tau));

    SuperForm<CD> E = super_exp_numeric(curvature_spin(cm, t, lam, x));
    NumericForm ch_c = E.supertrace();
    SuperForm<CD> cx(d, cm.N, cm.parity);
    cx.add_term(0, cm.vector_insert(x));
    NumericForm eta_c = nf_scaled((cx * E).supertrace(), CD(-1.0));

    rep.max_dev = std::max(rep.max_dev, nf_dev(ch_c, nf_scaled(eval_form(C, p), factor)));
    rep.max_dev = std::max(rep.max_dev, nf_dev(eta_c, nf_scaled(eval_form(eta_w, p), factor)));

    if (sm < 4) {  // transgression integral beta, mask by mask
      NumericForm bw = nf_scaled(eval_form(beta_w, p), factor);
      for (const auto& [mask, want] : bw) {
        CD got = quadrature_t(
            [&](double tt) {
              SuperForm<CD> Et = super_exp_numeric(curvature_spin(cm, tt, lam, x));
              SuperForm<CD> cxt(d, cm.N, cm.parity);
              cxt.add_term(0, cm.vector_insert(x));
              auto str = (cxt * Et).supertrace();
              auto it = str.find(mask);
              return it == str.end() ? CD(0.0) : -it->second;
            },
            1e-11);
        rep.max_dev = std::max(rep.max_dev, std::abs(got - want));
      }
    }
  }
  rep.pass = rep.max_dev <= tol;
  return rep;
}

DeviationReport riemann_roch_check(const std::string& which, int n, int samples,
                                   uint64_t seed, double tol) {
  DeviationReport rep;
  rep.name = "riemann_roch " + which + " n=" + std::to_string(n);
  rep.samples = samples;
  rep.tolerance = tol;
  int d = 2 * n;
  XMatrix X = XMatrix::indeterminates(d);
  Form mq = build_thom(d, ThomFlavor::MQ, X).form;
  ConstantScalar pref = two_i_pi_pow(n);
  auto rng = seeded(seed);

  if (which == "spin" || which == "spinc") {
    CliffordModule cm = build_clifford(n);
    for (int sm = 0; sm < samples; ++sm) {
      std::vector<double> lam(static_cast<size_t>(n)), x(static_cast<size_t>(d));
      for (auto& l : lam) l = sample_u(rng, -1.2, 1.2);
      for (auto& xi : x) xi = sample_u(rng, -1.4, 1.4);
      double theta = (which == "spinc") ? sample_u(rng, -2.0, 2.0) : 0.0;

      SuperForm<CD> F = curvature_spin(cm, 1.0, lam, x);
      if (which == "spinc")
        F.add_term(0, Mat<CD>::identity(cm.N, CD(1.0)).scale(CD(0.0, theta)));
      NumericForm lhs = super_exp_numeric(F).supertrace();

      EvalParams p;
      p.x = x;
      std::vector<double> tau(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) tau[k] = 2.0 * lam[k];
      for (int k = 1; k <= d; ++k)
        for (int l = k + 1; l <= d; ++l) p.xvals[{k, l}] = CD(0.0);
      for (int k = 0; k < n; ++k) p.xvals[{2 * k + 1, 2 * k + 2}] = CD(tau[k]);
      CD factor = pref.to_complex() * j_half(d, antisym_blocks(d, tau));
      if (which == "spinc") factor *= std::exp(CD(0.0, theta));
      rep.max_dev = std::max(rep.max_dev, nf_dev(lhs, nf_scaled(eval_form(mq, p), factor)));
    }
  } else if (which == "complex") {
    if (n != 1) throw std::invalid_argument("riemann_roch complex: n = 1 only");
    SymbolMorphism bott = symbol_bott();
    for (int sm = 0; sm < samples; ++sm) {
      std::vector<double> x = {sample_u(rng, -1.4, 1.4), sample_u(rng, -1.4, 1.4)};
      double theta = sample_u(rng, -2.5, 2.5);
      NumericForm lhs = ch_quillen_numeric(bott, 1.0, x, theta);
      // Todd route: factor = j^{1/2} * Ch(L^{1/2}) = g(i theta)
      CD todd = j_half(2, antisym_blocks(2, {theta})) * std::exp(CD(0.0, theta / 2.0));
      EvalParams p;
      p.x = x;
      p.xvals[{1, 2}] = CD(theta);
      CD factor = pref.to_complex() * todd;
      rep.max_dev = std::max(rep.max_dev, nf_dev(lhs, nf_scaled(eval_form(mq, p), factor)));
      rep.max_dev = std::max(rep.max_dev, std::abs(todd - g_itheta_numeric(theta)));
    }
  } else {
    throw std::invalid_argument("riemann_roch: case must be spin, spinc, or complex");
  }
  rep.pass = rep.max_dev <= tol;
  return rep;
}

DeviationReport multiplicativity_integral_check(const std::vector<double>& thetas, double tol) {
  DeviationReport rep;
  rep.name = "multiplicativity integral";
  rep.samples = static_cast<int>(thetas.size());
  rep.tolerance = tol;
  SymbolMorphism bott = symbol_bott();
  ChernTriple single = ch_triple(bott);
  ChernTriple prod = ch_triple(odot_product(bott, bott));
  for (double theta : thetas) {
    EvalParams p;
    p.theta = theta;
    p.theta_exact0 = theta == 0.0;
    CD twopig = CD(0.0, 2.0 * std::numbers::pi) * g_itheta_numeric(theta);
    CD i2 = integrate_numeric(single.ch_sup, p);
    rep.max_dev = std::max(rep.max_dev, std::abs(i2 - twopig));
    CD i4 = integrate_numeric(prod.ch_sup, p);
    rep.max_dev = std::max(rep.max_dev, std::abs(i4 - twopig * twopig));
  }
  rep.pass = rep.max_dev <= tol;
  return rep;
}

}  // namespace equiforms
