#include "equiforms/numeval.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <stdexcept>

namespace equiforms {

namespace {

double to_dbl(const Rational& r) { return to_double(r); }

double cutoff_profile(double u, int order, double a, double b) {
  if (order > 2) throw std::domain_error("cutoff profile: only C^2 derivatives available");
  if (u <= a) return order == 0 ? 1.0 : 0.0;
  if (u >= b) return 0.0;
  double inv = 1.0 / (b - a);
  double w = (u - a) * inv;
  switch (order) {
    case 0:
      return 1.0 - ((6.0 * w - 15.0) * w + 10.0) * w * w * w;
    case 1:
      return -((30.0 * w - 60.0) * w + 30.0) * w * w * inv;
    default:
      return -((120.0 * w - 180.0) * w + 60.0) * w * inv * inv;
  }
}

struct CMono {
  CD coef;
  std::vector<int> xpow;
  int rexp = 0;
  bool has_g = false;
  double cg = 0.0;  // exp(-cg * r^2)
  std::vector<int> forders;
};

CD fixed_factors(const SMono& m, const EvalParams& p) {
  if (!m.phis.empty())
    throw std::domain_error("eval: formal homotopy atoms have no numeric value");
  CD v(1.0, 0.0);
  for (int k = 0; k < m.tpow; ++k) v *= p.t;
  for (int k = 0; k > m.tpow; --k) v /= p.t;
  if (m.thpow != 0) {
    if (p.theta == 0.0 && m.thpow < 0)
      throw std::domain_error("eval: negative theta power at theta 0; use theta_exact0");
    v *= std::pow(p.theta, m.thpow);
  }
  if (m.eith2 != 0) v *= std::exp(CD(0.0, p.theta * m.eith2 / 2.0));
  return v;
}

double gauss_at_t(const SMono& m, double t) {
  double c = 0.0, tp = 1.0;
  for (const Rational& q : m.gauss) {
    c += to_dbl(q) * tp;
    tp *= t;
  }
  return c;
}

std::vector<CMono> compile_scalar(const ScalarExpr& s, const EvalParams& p, const CD& outer) {
  std::vector<CMono> out;
  for (const auto& [m, c] : s.terms) {
    CD coef = outer * c.to_complex() * fixed_factors(m, p);
    if (coef == CD(0.0)) continue;
    CMono cm;
    cm.coef = coef;
    cm.xpow = m.xpow;
    cm.xpow.resize(s.d, 0);
    cm.rexp = m.rexp;
    if (!m.gauss.empty()) {
      cm.has_g = true;
      cm.cg = gauss_at_t(m, p.t);
    }
    cm.forders = m.forders;
    out.push_back(std::move(cm));
  }
  return out;
}

std::vector<CMono> compile_xpoly(const XPoly& q, const EvalParams& p) {
  std::vector<CMono> out;
  for (const auto& [xm, s] : q.terms) {
    CD factor(1.0, 0.0);
    for (const auto& [kl, e] : xm.factors) {
      auto it = p.xvals.find(kl);
      if (it == p.xvals.end())
        throw std::invalid_argument("eval: no value provided for an antisymmetric parameter entry");
      for (int r = 0; r < e; ++r) factor *= it->second;
    }
    auto part = compile_scalar(s, p, factor);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

CD eval_cmono(const CMono& m, const std::vector<double>& x, const CutoffSpec& cut) {
  double u = 0.0;
  for (double v : x) u += v * v;
  double real = 1.0;
  for (size_t i = 0; i < m.xpow.size(); ++i)
    for (int k = 0; k < m.xpow[i]; ++k) real *= x[i];
  if (m.rexp != 0) real *= std::pow(u, m.rexp * 0.5);
  if (m.has_g) real *= std::exp(-m.cg * u);
  for (int n : m.forders) real *= cutoff_profile(u, n, cut.lo(), cut.hi());
  return m.coef * real;
}

const XPoly* top_coefficient(const Form& a) {
  uint32_t full = (a.d >= 32) ? 0xffffffffu : ((1u << a.d) - 1);
  for (const auto& [k, q] : a.terms) {
    if (k.w || k.e) throw std::domain_error("integrate: form has non-spatial generators");
    if (k.dx == full) return &q;
  }
  return nullptr;
}

double gl_segment(const CMono& m, double s, double lo, double hi, const CutoffSpec& cut) {
  const auto& [nodes, weights] = gauss_legendre(64);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    double u = mid + half * nodes[i];
    double v = std::pow(u, s - 1.0) * std::exp(-m.cg * u);
    for (int n : m.forders) v *= cutoff_profile(u, n, cut.lo(), cut.hi());
    acc += weights[i] * v;
  }
  return acc * half;
}

// int_0^lo u^{s-1} e^{-c u} du with u = lo v^2, smooth since 2s-1 >= 0
double gl_origin_segment(const CMono& m, double s, double lo) {
  const auto& [nodes, weights] = gauss_legendre(64);
  double acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    double v = 0.5 * (nodes[i] + 1.0);
    acc += 0.5 * weights[i] * std::pow(v, 2.0 * s - 1.0) * std::exp(-m.cg * lo * v * v);
  }
  return acc * 2.0 * std::pow(lo, s);
}

}  // namespace

double CutoffSpec::f(double u, int order) const { return cutoff_profile(u, order, lo(), hi()); }

CD eval_scalar(const ScalarExpr& s, const EvalParams& p) {
  ScalarExpr w = p.theta_exact0 ? s.theta_limit0() : s;
  CD acc(0.0);
  for (const auto& cm : compile_scalar(w, p, CD(1.0)))
    acc += eval_cmono(cm, p.x, p.cutoff);
  return acc;
}

CD eval_xpoly(const XPoly& q, const EvalParams& p) {
  XPoly w = p.theta_exact0 ? q.theta_limit0() : q;
  CD acc(0.0);
  for (const auto& cm : compile_xpoly(w, p))
    acc += eval_cmono(cm, p.x, p.cutoff);
  return acc;
}

NumericForm eval_form(const Form& a, const EvalParams& p) {
  Form w = p.theta_exact0 ? a.theta_limit0() : a;
  NumericForm out;
  for (const auto& [k, q] : w.terms) {
    if (k.w || k.e) throw std::domain_error("eval: form has non-spatial generators");
    CD v = eval_xpoly(q, p);
    if (v != CD(0.0)) out[k.dx] += v;
  }
  return out;
}

CD integrate_angular_reduction(const Form& a, const EvalParams& p) {
  Form w = p.theta_exact0 ? a.theta_limit0() : a;
  const XPoly* top = top_coefficient(w);
  if (!top) return CD(0.0);
  CD total(0.0);
  for (const auto& m : compile_xpoly(*top, p)) {
    bool odd = false;
    int adeg = 0;
    for (int e : m.xpow) {
      if (e & 1) odd = true;
      adeg += e;
    }
    if (odd) continue;
    double s = 0.5 * (adeg + m.rexp + a.d);
    if (s <= 0.0) throw std::domain_error("integrate: divergent at the origin");
    double ang = 1.0;
    for (int e : m.xpow) ang *= std::tgamma(0.5 * (e + 1));
    ang /= std::tgamma(0.5 * (adeg + a.d));
    double radial;
    if (m.forders.empty()) {
      if (!m.has_g || m.cg <= 0.0)
        throw std::domain_error("integrate: no decay at infinity");
      radial = std::tgamma(s) * std::pow(m.cg, -s);
    } else {
      bool vanishing_inner = false;
      for (int n : m.forders) vanishing_inner |= (n >= 1);
      radial = vanishing_inner ? 0.0 : gl_origin_segment(m, s, p.cutoff.lo());
      radial += gl_segment(m, s, p.cutoff.lo(), p.cutoff.hi(), p.cutoff);
    }
    total += m.coef * ang * radial;
  }
  return total;
}

CD integrate_tensor(const Form& a, const EvalParams& p, double tol) {
  Form w = p.theta_exact0 ? a.theta_limit0() : a;
  const XPoly* top = top_coefficient(w);
  if (!top) return CD(0.0);
  std::vector<CMono> monos = compile_xpoly(*top, p);
  if (monos.empty()) return CD(0.0);

  bool any_f = false, all_gauss = true;
  for (const auto& m : monos) {
    any_f |= !m.forders.empty();
    all_gauss &= (m.forders.empty() && m.has_g && m.cg > 0.0 && m.rexp >= 0);
  }

  int d = a.d;
  if (!any_f && all_gauss) {
    // per-monomial Gauss-Hermite after rescaling each axis by sqrt(cg)
    CD total(0.0);
    const auto& [nodes, weights] = gauss_hermite(40);
    for (const auto& m : monos) {
      double sc = std::sqrt(m.cg);
      std::vector<double> pt(d, 0.0);
      std::function<CD(int)> rec = [&](int ax) -> CD {
        CD acc(0.0);
        for (size_t i = 0; i < nodes.size(); ++i) {
          pt[ax] = nodes[i] / sc;
          double u = 0.0;
          CD val;
          if (ax + 1 < d) {
            val = rec(ax + 1);
          } else {
            double real = 1.0;
            for (int q = 0; q < d; ++q) {
              u += pt[q] * pt[q];
              for (int k = 0; k < m.xpow[q]; ++k) real *= pt[q];
            }
            val = m.coef * real * std::pow(u, m.rexp * 0.5);
          }
          acc += weights[i] * val;
        }
        return acc;
      };
      total += rec(0) / std::pow(sc, d);
    }
    return total;
  }

  double R = p.cutoff.R;
  bool has_plain_gauss = false;
  for (const auto& m : monos) has_plain_gauss |= (m.forders.empty());
  if (has_plain_gauss)
    // mixed integrand: widen the box until the gaussian tail is negligible
    R = std::max(R, 8.0);

  auto pass = [&](int mm) -> CD {
    const auto& [nodes, weights] = gauss_legendre(mm);
    std::vector<double> pt(d, 0.0);
    std::function<CD(int, double)> rec = [&](int ax, double wacc) -> CD {
      CD acc(0.0);
      for (size_t i = 0; i < nodes.size(); ++i) {
        pt[ax] = R * nodes[i];
        double wg = wacc * R * weights[i];
        if (ax + 1 < d) {
          acc += rec(ax + 1, wg);
        } else {
          CD v(0.0);
          for (const auto& m : monos) v += eval_cmono(m, pt, p.cutoff);
          acc += wg * v;
        }
      }
      return acc;
    };
    return rec(0, 1.0);
  };

  int mm = (d >= 4) ? 24 : 16;
  CD prev = pass(mm);
  int cap = (d >= 4) ? 40 : 192;
  while (true) {
    int next = (d >= 4) ? mm + 8 : mm * 2;
    if (next > cap) return prev;
    CD cur = pass(next);
    if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
    mm = next;
  }
}

CD integrate_numeric(const Form& a, const EvalParams& p, double tol) {
  try {
    return integrate_angular_reduction(a, p);
  } catch (const std::domain_error&) {
    return integrate_tensor(a, p, tol);
  }
}

CD quadrature_t(const std::function<CD(double)>& f, double tol) {
  const auto& [nodes, weights] = gauss_legendre(64);
  auto segment = [&](double lo, double hi) {
    CD acc(0.0);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (size_t i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(mid + half * nodes[i]);
    return acc * half;
  };
  CD total = segment(0.0, 1.0);
  double lo = 1.0, hi = 2.0;
  double prev_mag = std::abs(total);
  int grow = 0;
  for (int k = 0; k < 60; ++k) {
    CD seg = segment(lo, hi);
    total += seg;
    double mag = std::abs(seg);
    if (mag <= tol * (1.0 + std::abs(total)) && k >= 1) return total;
    grow = (mag > prev_mag + tol) ? grow + 1 : 0;
    if (grow >= 4) throw std::runtime_error("quadrature_t: integrand does not decay");
    prev_mag = mag;
    lo = hi;
    hi *= 2.0;
  }
  throw std::runtime_error("quadrature_t: no convergence on [0, infinity)");
}

namespace {

NumericForm fd_assemble_d(const std::function<NumericForm(const std::vector<double>&)>& F,
                          int d, const std::vector<double>& x, double h) {
  NumericForm fd;
  for (int i = 0; i < d; ++i) {
    std::vector<double> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    NumericForm up = F(xp), dn = F(xm);
    std::set<uint32_t> masks;
    for (const auto& [k, v] : up) masks.insert(k);
    for (const auto& [k, v] : dn) masks.insert(k);
    uint32_t bit = 1u << i;
    for (uint32_t mask : masks) {
      if (mask & bit) continue;
      CD hi = (up.count(mask) ? up[mask] : CD(0.0));
      CD lo = (dn.count(mask) ? dn[mask] : CD(0.0));
      CD der = (hi - lo) / (2.0 * h);
      int sgn = epsilon_sign(bit, mask);
      fd[mask | bit] += static_cast<double>(sgn) * der;
    }
  }
  return fd;
}

}  // namespace

double fd_exterior_derivative_check(const Form& a, const EvalParams& p, double h) {
  NumericForm sym = eval_form(a.exterior_d(), p);
  NumericForm fd = fd_assemble_d(
      [&](const std::vector<double>& pt) {
        EvalParams q = p;
        q.x = pt;
        return eval_form(a, q);
      },
      a.d, p.x, h);
  double dev = 0.0;
  std::set<uint32_t> masks;
  for (const auto& [k, v] : sym) masks.insert(k);
  for (const auto& [k, v] : fd) masks.insert(k);
  for (uint32_t mask : masks) {
    CD s = sym.count(mask) ? sym[mask] : CD(0.0);
    CD g = fd.count(mask) ? fd[mask] : CD(0.0);
    dev = std::max(dev, std::abs(s - g));
  }
  return dev;
}

double fd_closedness_check(const std::function<NumericForm(const std::vector<double>&)>& F,
                           int d, const std::vector<double>& x, double h) {
  NumericForm fd = fd_assemble_d(F, d, x, h);
  double dev = 0.0;
  for (const auto& [k, v] : fd) dev = std::max(dev, std::abs(v));
  return dev;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> golub_welsch(int m, bool hermite) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    double off = hermite ? std::sqrt(k / 2.0)
                         : k / std::sqrt(4.0 * k * k - 1.0);
    J(k - 1, k) = off;
    J(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> nodes(m), weights(m);
  double mu0 = hermite ? std::sqrt(M_PI) : 2.0;
  for (int i = 0; i < m; ++i) {
    nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
  return {nodes, weights};
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int m) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, golub_welsch(m, false)).first;
  return it->second;
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_hermite(int m) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, golub_welsch(m, true)).first;
  return it->second;
}

}  // namespace equiforms
