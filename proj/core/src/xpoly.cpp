#include "equiforms/xpoly.hpp"

#include <sstream>

namespace equiforms {

int XMono::degree() const {
  int s = 0;
  for (const auto& [kl, p] : factors) s += p;
  return s;
}

void XPoly::insert(const XMono& m, const ScalarExpr& s) {
  if (s.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end())
    terms[m] = s;
  else {
    it->second += s;
    if (it->second.is_zero()) terms.erase(it);
  }
}

XPoly XPoly::from_scalar(const ScalarExpr& s) {
  XPoly p(s.d);
  if (!s.is_zero()) p.terms[XMono{}] = s;
  return p;
}

XPoly XPoly::constant(int d, const ConstantScalar& c) {
  return from_scalar(ScalarExpr::constant(d, c));
}

XPoly XPoly::indeterminate(int d, int k, int l) {
  if (k == l) throw std::domain_error("X_{kk} is not an indeterminate");
  ConstantScalar c(Rational(1));
  if (k > l) {
    std::swap(k, l);
    c = -c;
  }
  XPoly p(d);
  XMono m;
  m.factors = {{{k, l}, 1}};
  p.terms[m] = ScalarExpr::constant(d, c);
  return p;
}

XPoly XPoly::operator+(const XPoly& o) const {
  XPoly out = *this;
  if (out.d == 0) out.d = o.d;
  for (const auto& [m, s] : o.terms) out.insert(m, s);
  return out;
}

XPoly XPoly::operator-() const {
  XPoly out = *this;
  for (auto& [m, s] : out.terms) s = -s;
  return out;
}

XPoly XPoly::operator-(const XPoly& o) const { return *this + (-o); }

XPoly XPoly::operator*(const XPoly& o) const {
  XPoly out(d ? d : o.d);
  for (const auto& [ma, sa] : terms)
    for (const auto& [mb, sb] : o.terms) {
      std::map<std::pair<int, int>, int> merged(ma.factors.begin(), ma.factors.end());
      for (const auto& [kl, p] : mb.factors) merged[kl] += p;
      XMono m;
      m.factors.assign(merged.begin(), merged.end());
      out.insert(m, sa * sb);
    }
  return out;
}

XPoly XPoly::scaled(const ConstantScalar& c) const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.scaled(c));
  return out;
}

XPoly XPoly::scaled_expr(const ScalarExpr& s0) const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s * s0);
  return out;
}

XPoly XPoly::partial(int i) const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.partial(i));
  return out;
}

XPoly XPoly::t_derivative() const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.t_derivative());
  return out;
}

XPoly XPoly::t_integrate() const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.t_integrate());
  return out;
}

XPoly XPoly::t_antiderivative() const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.t_antiderivative());
  return out;
}

XPoly XPoly::substitute_t(const Rational& t0) const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.substitute_t(t0));
  return out;
}

XPoly XPoly::theta_limit0() const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.theta_limit0());
  return out;
}

XPoly XPoly::restrict_origin() const {
  XPoly out(d);
  for (const auto& [m, s] : terms) out.insert(m, s.restrict_origin());
  return out;
}

std::map<int, XPoly> XPoly::phi_differentials() const {
  std::map<int, XPoly> out;
  for (const auto& [m, s] : terms)
    for (auto& [id, ds] : s.phi_differentials()) {
      auto it = out.find(id);
      if (it == out.end()) it = out.emplace(id, XPoly(d)).first;
      it->second.insert(m, ds);
    }
  return out;
}

XPoly XPoly::substitute_X(const std::map<std::pair<int, int>, XPoly>& vals) const {
  XPoly out(d);
  for (const auto& [m, s] : terms) {
    XPoly acc = XPoly::from_scalar(s);
    XMono rest;
    for (const auto& [kl, p] : m.factors) {
      auto it = vals.find(kl);
      if (it == vals.end()) {
        rest.factors.push_back({kl, p});
        continue;
      }
      for (int j = 0; j < p; ++j) acc = acc * it->second;
    }
    if (!rest.factors.empty()) {
      XPoly shift(d);
      for (const auto& [mm, ss] : acc.terms) {
        std::map<std::pair<int, int>, int> merged(mm.factors.begin(), mm.factors.end());
        for (const auto& [kl, p] : rest.factors) merged[kl] += p;
        XMono m2;
        m2.factors.assign(merged.begin(), merged.end());
        shift.insert(m2, ss);
      }
      acc = shift;
    }
    out += acc;
  }
  return out;
}

bool XPoly::has_negative_rexp() const {
  for (const auto& [m, s] : terms)
    if (s.has_negative_rexp()) return true;
  return false;
}

int XPoly::max_xdegree() const {
  int md = 0;
  for (const auto& [m, s] : terms) md = std::max(md, m.degree());
  return md;
}

std::string XPoly::render() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, s] : terms) {
    if (!first) os << " + ";
    first = false;
    for (const auto& [kl, p] : m.factors) {
      os << "X" << kl.first << kl.second;
      if (p > 1) os << "^" << p;
      os << "*";
    }
    os << "[" << s.render() << "]";
  }
  return os.str();
}

XMatrix XMatrix::indeterminates(int d) {
  XMatrix x(d);
  for (int k = 1; k <= d; ++k)
    for (int l = k + 1; l <= d; ++l) x.upper[{k, l}] = XPoly::indeterminate(d, k, l);
  return x;
}

XMatrix XMatrix::theta_so2() {
  XMatrix x(2);
  x.upper[{1, 2}] = XPoly::from_scalar(ScalarExpr::theta_pow(2, 1));
  return x;
}

XMatrix XMatrix::block_rational(int d, const std::vector<Rational>& lambdas) {
  if (d % 2 != 0 || static_cast<int>(lambdas.size()) != d / 2)
    throw std::domain_error("block_rational: need d even and d/2 rotation speeds");
  XMatrix x(d);
  for (int k = 0; k < d / 2; ++k)
    x.upper[{2 * k + 1, 2 * k + 2}] = XPoly::constant(d, ConstantScalar(lambdas[k]));
  return x;
}

XMatrix XMatrix::from_rational_entries(int d,
                                       const std::map<std::pair<int, int>, Rational>& entries) {
  XMatrix x(d);
  for (const auto& [kl, v] : entries) {
    if (kl.first >= kl.second) throw std::domain_error("entries must be strictly upper");
    x.upper[kl] = XPoly::constant(d, ConstantScalar(v));
  }
  return x;
}

XPoly XMatrix::entry(int k, int l) const {
  if (k == l) return XPoly::zero(d);
  bool flip = k > l;
  if (flip) std::swap(k, l);
  auto it = upper.find({k, l});
  if (it == upper.end()) return XPoly::zero(d);
  return flip ? -it->second : it->second;
}

void XMatrix::set_entry(int k, int l, const XPoly& v) {
  if (k == l) throw std::domain_error("diagonal of an antisymmetric matrix is zero");
  if (k < l)
    upper[{k, l}] = v;
  else
    upper[{l, k}] = -v;
}

XMatrix XMatrix::scaled(const ConstantScalar& c) const {
  XMatrix x(d);
  for (const auto& [kl, v] : upper) x.upper[kl] = v.scaled(c);
  return x;
}

}  // namespace equiforms
