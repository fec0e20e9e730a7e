#include "equiforms/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace equiforms {

namespace {

int cmp_int(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

template <class T>
int cmp_vec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

std::vector<Rational> trim_poly(std::vector<Rational> p) {
  while (!p.empty() && p.back() == Rational(0)) p.pop_back();
  bool allzero = true;
  for (const auto& c : p)
    if (c != Rational(0)) allzero = false;
  return allzero ? std::vector<Rational>{} : p;
}

using Poly = std::map<std::vector<int>, ConstantScalar>;

void poly_add(Poly& p, const std::vector<int>& m, const ConstantScalar& c) {
  auto it = p.find(m);
  if (it == p.end()) {
    if (!c.is_zero()) p[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Poly poly_mul_rho(const Poly& p, int d) {
  Poly out;
  for (const auto& [m, c] : p)
    for (int i = 0; i < d; ++i) {
      auto mm = m;
      mm[i] += 2;
      poly_add(out, mm, c);
    }
  return out;
}

// division by rho = sum x_i^2; returns quotient iff exactly divisible
std::optional<Poly> poly_div_rho(const Poly& p, int d) {
  Poly q, r = p;
  while (!r.empty()) {
    auto it = std::prev(r.end());  // lex-largest monomial
    std::vector<int> m = it->first;
    ConstantScalar c = it->second;
    if (m[0] < 2) return std::nullopt;  // leading term of rho is x_1^2
    m[0] -= 2;
    poly_add(q, m, c);
    for (int i = 0; i < d; ++i) {
      auto mm = m;
      mm[i] += 2;
      poly_add(r, mm, -c);
    }
  }
  return q;
}

Rational rational_pow(const Rational& q, int e) {
  Rational out(1);
  Rational base = e >= 0 ? q : Rational(1) / q;
  int n = e >= 0 ? e : -e;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < Rational(0)) return std::nullopt;
  BigInt n = boost::multiprecision::sqrt(q.numerator());
  BigInt d = boost::multiprecision::sqrt(q.denominator());
  if (n * n != q.numerator() || d * d != q.denominator()) return std::nullopt;
  return Rational(n, d);
}

}  // namespace

bool SMono::operator==(const SMono& o) const {
  return xpow == o.xpow && rexp == o.rexp && gauss == o.gauss && forders == o.forders &&
         phis == o.phis && tpow == o.tpow && thpow == o.thpow && eith2 == o.eith2;
}

bool SMono::operator<(const SMono& o) const {
  if (int c = cmp_vec(xpow, o.xpow)) return c < 0;
  if (int c = cmp_int(rexp, o.rexp)) return c < 0;
  if (int c = cmp_vec(gauss, o.gauss)) return c < 0;
  if (int c = cmp_vec(forders, o.forders)) return c < 0;
  if (int c = cmp_vec(phis, o.phis)) return c < 0;
  if (int c = cmp_int(tpow, o.tpow)) return c < 0;
  if (int c = cmp_int(thpow, o.thpow)) return c < 0;
  return eith2 < o.eith2;
}

int SMono::xdeg() const {
  int s = 0;
  for (int e : xpow) s += e;
  return s;
}

ScalarExpr normalized(int d, std::map<SMono, ConstantScalar>&& raw) {
  // step 1: window rewrite r^e -> r^{e-2} * rho for e >= 2
  std::vector<std::pair<SMono, ConstantScalar>> work(raw.begin(), raw.end());
  std::map<SMono, ConstantScalar> flat;
  while (!work.empty()) {
    auto [m, c] = work.back();
    work.pop_back();
    if (c.is_zero()) continue;
    if (m.rexp >= 2) {
      m.rexp -= 2;
      for (int i = 0; i < d; ++i) {
        auto mm = m;
        mm.xpow[i] += 2;
        work.push_back({mm, c});
      }
      continue;
    }
    auto it = flat.find(m);
    if (it == flat.end())
      flat[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) flat.erase(it);
    }
  }

  // step 2: group by all slots except (xpow, rexp), keeping rexp parity;
  // extract rho-content while rexp <= -1
  struct GKey {
    int rpar;
    std::vector<Rational> gauss;
    std::vector<int> forders;
    std::vector<std::pair<int, int>> phis;
    int tpow, thpow, eith2;
    bool operator<(const GKey& o) const {
      if (int c = cmp_int(rpar, o.rpar)) return c < 0;
      if (int c = cmp_vec(gauss, o.gauss)) return c < 0;
      if (int c = cmp_vec(forders, o.forders)) return c < 0;
      if (int c = cmp_vec(phis, o.phis)) return c < 0;
      if (int c = cmp_int(tpow, o.tpow)) return c < 0;
      if (int c = cmp_int(thpow, o.thpow)) return c < 0;
      return eith2 < o.eith2;
    }
  };
  struct Member {
    std::vector<int> xpow;
    int rexp;
    ConstantScalar c;
  };
  std::map<GKey, std::vector<Member>> groups;
  for (auto& [m, c] : flat) {
    GKey k{((m.rexp % 2) + 2) % 2, m.gauss, m.forders, m.phis, m.tpow, m.thpow, m.eith2};
    groups[k].push_back({m.xpow, m.rexp, c});
  }

  ScalarExpr out(d);
  for (auto& [k, members] : groups) {
    int minr = members[0].rexp;
    for (const auto& mem : members) minr = std::min(minr, mem.rexp);
    Poly p;
    for (const auto& mem : members) {
      Poly one;
      one[mem.xpow] = mem.c;
      for (int e = mem.rexp; e > minr; e -= 2) one = poly_mul_rho(one, d);
      for (const auto& [mono, c] : one) poly_add(p, mono, c);
    }
    while (minr <= -1 && !p.empty()) {
      auto q = poly_div_rho(p, d);
      if (!q) break;
      p = *q;
      minr += 2;
    }
    for (const auto& [mono, c] : p) {
      SMono m;
      m.xpow = mono;
      m.rexp = minr;
      m.gauss = k.gauss;
      m.forders = k.forders;
      m.phis = k.phis;
      m.tpow = k.tpow;
      m.thpow = k.thpow;
      m.eith2 = k.eith2;
      out.terms[m] = c;
    }
  }
  return out;
}

ScalarExpr ScalarExpr::constant(int d, const ConstantScalar& c) {
  ScalarExpr s(d);
  SMono m;
  m.xpow.assign(d, 0);
  if (!c.is_zero()) s.terms[m] = c;
  return s;
}

ScalarExpr ScalarExpr::monomial(int d, const SMono& m, const ConstantScalar& c) {
  std::map<SMono, ConstantScalar> raw;
  if (!c.is_zero()) raw[m] = c;
  return normalized(d, std::move(raw));
}

ScalarExpr ScalarExpr::coordinate(int d, int i) {
  SMono m;
  m.xpow.assign(d, 0);
  m.xpow.at(i - 1) = 1;
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::r_pow(int d, int e) {
  SMono m;
  m.xpow.assign(d, 0);
  m.rexp = e;
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::rho(int d) { return r_pow(d, 2); }

ScalarExpr ScalarExpr::gaussian(int d, const std::vector<Rational>& ct) {
  SMono m;
  m.xpow.assign(d, 0);
  m.gauss = trim_poly(ct);
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::f_order(int d, int n) {
  SMono m;
  m.xpow.assign(d, 0);
  m.forders = {n};
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::phi_atom(int d, int id) {
  SMono m;
  m.xpow.assign(d, 0);
  m.phis = {{id, 1}};
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::t_pow(int d, int k) {
  SMono m;
  m.xpow.assign(d, 0);
  m.tpow = k;
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::theta_pow(int d, int m0) {
  SMono m;
  m.xpow.assign(d, 0);
  m.thpow = m0;
  return monomial(d, m, ConstantScalar(Rational(1)));
}

ScalarExpr ScalarExpr::eith_half(int d, int h2) {
  SMono m;
  m.xpow.assign(d, 0);
  m.eith2 = h2;
  return monomial(d, m, ConstantScalar(Rational(1)));
}

bool ScalarExpr::operator<(const ScalarExpr& o) const {
  if (d != o.d) return d < o.d;
  return std::lexicographical_compare(
      terms.begin(), terms.end(), o.terms.begin(), o.terms.end(), [](const auto& a, const auto& b) {
        if (a.first < b.first) return true;
        if (b.first < a.first) return false;
        return a.second < b.second;
      });
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
  // canonical form is a property of the sum (rho-divisibility of negative
  // r-power groups), so addition re-normalizes
  std::map<SMono, ConstantScalar> raw = terms;
  for (const auto& [m, c] : o.terms) {
    auto it = raw.find(m);
    if (it == raw.end())
      raw[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) raw.erase(it);
    }
  }
  return normalized(d ? d : o.d, std::move(raw));
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr out = *this;
  for (auto& [m, c] : out.terms) c = -c;
  return out;
}

ScalarExpr ScalarExpr::operator-(const ScalarExpr& o) const { return *this + (-o); }

ScalarExpr ScalarExpr::scaled(const ConstantScalar& c) const {
  std::map<SMono, ConstantScalar> raw;
  for (const auto& [m, v] : terms) {
    ConstantScalar cc = v * c;
    if (!cc.is_zero()) raw[m] = cc;
  }
  ScalarExpr out(d);
  out.terms = std::move(raw);
  return out;
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
  std::map<SMono, ConstantScalar> raw;
  int dd = d ? d : o.d;
  for (const auto& [ma, ca] : terms)
    for (const auto& [mb, cb] : o.terms) {
      SMono m;
      m.xpow.resize(dd);
      for (int i = 0; i < dd; ++i)
        m.xpow[i] = (i < (int)ma.xpow.size() ? ma.xpow[i] : 0) +
                    (i < (int)mb.xpow.size() ? mb.xpow[i] : 0);
      m.rexp = ma.rexp + mb.rexp;
      std::vector<Rational> g(std::max(ma.gauss.size(), mb.gauss.size()), Rational(0));
      for (size_t k = 0; k < ma.gauss.size(); ++k) g[k] += ma.gauss[k];
      for (size_t k = 0; k < mb.gauss.size(); ++k) g[k] += mb.gauss[k];
      m.gauss = trim_poly(std::move(g));
      m.forders = ma.forders;
      m.forders.insert(m.forders.end(), mb.forders.begin(), mb.forders.end());
      std::sort(m.forders.begin(), m.forders.end());
      std::map<int, int> ph(ma.phis.begin(), ma.phis.end());
      for (const auto& [id, p] : mb.phis) ph[id] += p;
      m.phis.assign(ph.begin(), ph.end());
      m.tpow = ma.tpow + mb.tpow;
      m.thpow = ma.thpow + mb.thpow;
      m.eith2 = ma.eith2 + mb.eith2;
      ConstantScalar c = ca * cb;
      auto it = raw.find(m);
      if (it == raw.end()) {
        if (!c.is_zero()) raw[m] = c;
      } else {
        it->second += c;
        if (it->second.is_zero()) raw.erase(it);
      }
    }
  return normalized(dd, std::move(raw));
}

ScalarExpr ScalarExpr::partial(int i) const {
  std::map<SMono, ConstantScalar> raw;
  auto add = [&raw](const SMono& m, const ConstantScalar& c) {
    if (c.is_zero()) return;
    auto it = raw.find(m);
    if (it == raw.end())
      raw[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) raw.erase(it);
    }
  };
  int ii = i - 1;
  for (const auto& [m, c] : terms) {
    if (m.xpow[ii] > 0) {
      SMono mm = m;
      mm.xpow[ii] -= 1;
      add(mm, c * ConstantScalar(rat(m.xpow[ii])));
    }
    if (m.rexp != 0) {
      SMono mm = m;
      mm.xpow[ii] += 1;
      mm.rexp -= 2;
      add(mm, c * ConstantScalar(rat(m.rexp)));
    }
    for (size_t k = 0; k < m.gauss.size(); ++k) {
      if (m.gauss[k] == Rational(0)) continue;
      SMono mm = m;
      mm.xpow[ii] += 1;
      mm.tpow += static_cast<int>(k);
      add(mm, c * ConstantScalar(Rational(-2) * m.gauss[k]));
    }
    // f^(n)(r^2) -> 2 x_i f^(n+1)(r^2), once per factor
    for (size_t j = 0; j < m.forders.size(); ++j) {
      if (j > 0 && m.forders[j] == m.forders[j - 1]) continue;  // handle multiplicity below
      int mult = static_cast<int>(std::count(m.forders.begin(), m.forders.end(), m.forders[j]));
      SMono mm = m;
      mm.xpow[ii] += 1;
      auto pos = std::find(mm.forders.begin(), mm.forders.end(), m.forders[j]);
      *pos = m.forders[j] + 1;
      std::sort(mm.forders.begin(), mm.forders.end());
      add(mm, c * ConstantScalar(rat(2 * mult)));
    }
  }
  return normalized(d, std::move(raw));
}

std::map<int, ScalarExpr> ScalarExpr::phi_differentials() const {
  std::map<int, std::map<SMono, ConstantScalar>> raw;
  for (const auto& [m, c] : terms)
    for (size_t j = 0; j < m.phis.size(); ++j) {
      auto [id, p] = m.phis[j];
      SMono mm = m;
      if (p == 1)
        mm.phis.erase(mm.phis.begin() + j);
      else
        mm.phis[j].second = p - 1;
      auto& dst = raw[id];
      ConstantScalar cc = c * ConstantScalar(rat(p));
      auto it = dst.find(mm);
      if (it == dst.end())
        dst[mm] = cc;
      else {
        it->second += cc;
        if (it->second.is_zero()) dst.erase(it);
      }
    }
  std::map<int, ScalarExpr> out;
  for (auto& [id, mp] : raw) {
    ScalarExpr s = normalized(d, std::move(mp));
    if (!s.is_zero()) out[id] = s;
  }
  return out;
}

ScalarExpr ScalarExpr::t_derivative() const {
  std::map<SMono, ConstantScalar> raw;
  auto add = [&raw](const SMono& m, const ConstantScalar& c) {
    if (c.is_zero()) return;
    auto it = raw.find(m);
    if (it == raw.end())
      raw[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) raw.erase(it);
    }
  };
  for (const auto& [m, c] : terms) {
    if (m.tpow > 0) {
      SMono mm = m;
      mm.tpow -= 1;
      add(mm, c * ConstantScalar(rat(m.tpow)));
    }
    for (size_t k = 1; k < m.gauss.size(); ++k) {
      if (m.gauss[k] == Rational(0)) continue;
      SMono mm = m;
      mm.tpow += static_cast<int>(k) - 1;
      mm.rexp += 2;
      add(mm, c * ConstantScalar(-Rational(BigInt(k)) * m.gauss[k]));
    }
  }
  return normalized(d, std::move(raw));
}

ScalarExpr ScalarExpr::t_integrate() const {
  std::map<SMono, ConstantScalar> raw;
  for (const auto& [m, c] : terms) {
    // profile must be t^a exp(-q t^2 r^2), q > 0
    bool ok = m.gauss.size() == 3 && m.gauss[0] == Rational(0) && m.gauss[1] == Rational(0) &&
              m.gauss[2] > Rational(0);
    if (!ok) throw std::domain_error("t_integrate: divergent or non-Gaussian t-profile");
    Rational q = m.gauss[2];
    int a = m.tpow;
    ConstantScalar factor = gamma_half(a + 1) * ConstantScalar(rat(1, 2));
    if (a % 2 == 1) {
      factor *= ConstantScalar(rational_pow(q, -(a + 1) / 2));
    } else {
      auto sq = rational_sqrt(q);
      if (!sq) throw std::domain_error("t_integrate: irrational Gaussian rate");
      factor *= ConstantScalar(rational_pow(*sq, -(a + 1)));
    }
    SMono mm = m;
    mm.gauss.clear();
    mm.tpow = 0;
    mm.rexp -= (a + 1);
    ConstantScalar cc = c * factor;
    auto it = raw.find(mm);
    if (it == raw.end()) {
      if (!cc.is_zero()) raw[mm] = cc;
    } else {
      it->second += cc;
      if (it->second.is_zero()) raw.erase(it);
    }
  }
  return normalized(d, std::move(raw));
}

namespace {

// indefinite antiderivative of t^a exp(-q t^2 r^2) for odd a, as
// exp(-q t^2 r^2) * (polynomial in t, r^{-2})
ScalarExpr odd_power_antiderivative(int d, int a, const Rational& q) {
  // I(1) = -1/(2q) r^{-2} exp(-q t^2 r^2)
  // I(a) = -1/(2q) t^{a-1} r^{-2} exp(...) + (a-1)/(2q) r^{-2} I(a-2)
  ScalarExpr gauss = ScalarExpr::gaussian(d, {Rational(0), Rational(0), q});
  ScalarExpr rm2 = ScalarExpr::r_pow(d, -2);
  ScalarExpr acc =
      (gauss * rm2).scaled(ConstantScalar(Rational(-1) / (Rational(2) * q)));
  for (int aa = 3; aa <= a; aa += 2) {
    ScalarExpr lead = (gauss * rm2 * ScalarExpr::t_pow(d, aa - 1))
                          .scaled(ConstantScalar(Rational(-1) / (Rational(2) * q)));
    acc = lead + (acc * rm2).scaled(ConstantScalar(Rational(BigInt(aa - 1)) / (Rational(2) * q)));
  }
  return acc;
}

}  // namespace

ScalarExpr ScalarExpr::t_antiderivative() const {
  ScalarExpr out(d);
  for (const auto& [m, c] : terms) {
    bool ok = m.gauss.size() == 3 && m.gauss[0] == Rational(0) && m.gauss[1] == Rational(0) &&
              m.gauss[2] > Rational(0) && m.tpow % 2 == 1;
    if (!ok)
      throw std::domain_error("t antiderivative: needs odd t-powers with Gaussian profile");
    SMono rest = m;
    rest.gauss.clear();
    rest.tpow = 0;
    ScalarExpr indef = odd_power_antiderivative(d, m.tpow, m.gauss[2]);
    ScalarExpr definite = indef - indef.substitute_t(Rational(0));
    out += (definite * ScalarExpr::monomial(d, rest, ConstantScalar(Rational(1)))).scaled(c);
  }
  return out;
}

ScalarExpr ScalarExpr::substitute_t(const Rational& t0) const {
  std::map<SMono, ConstantScalar> raw;
  for (const auto& [m, c] : terms) {
    SMono mm = m;
    ConstantScalar cc = c;
    if (m.tpow != 0) {
      cc *= ConstantScalar(rational_pow(t0, m.tpow));
      mm.tpow = 0;
    }
    if (!m.gauss.empty()) {
      Rational v(0);
      Rational tp(1);
      for (size_t k = 0; k < m.gauss.size(); ++k) {
        v += m.gauss[k] * tp;
        tp *= t0;
      }
      mm.gauss = trim_poly({v});
    }
    if (cc.is_zero()) continue;
    auto it = raw.find(mm);
    if (it == raw.end())
      raw[mm] = cc;
    else {
      it->second += cc;
      if (it->second.is_zero()) raw.erase(it);
    }
  }
  return normalized(d, std::move(raw));
}

ScalarExpr ScalarExpr::theta_limit0() const {
  int maxneg = 0;
  for (const auto& [m, c] : terms) maxneg = std::max(maxneg, -m.thpow);
  std::map<SMono, ConstantScalar> raw;
  auto add = [&raw](const SMono& m, const ConstantScalar& c) {
    if (c.is_zero()) return;
    auto it = raw.find(m);
    if (it == raw.end())
      raw[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) raw.erase(it);
    }
  };
  for (const auto& [m, c] : terms) {
    // expand exp(i th h/2) = sum_j (i h/2)^j th^j / j!
    Rational h2 = rat(m.eith2, 2);
    ConstantScalar pow_factor(Rational(1));
    Rational factorial(1);
    for (int j = 0; j <= maxneg - m.thpow; ++j) {
      if (j > 0) {
        pow_factor *= ConstantScalar::monomial(h2, 1, 0);
        factorial *= Rational(BigInt(j));
      }
      SMono mm = m;
      mm.eith2 = 0;
      mm.thpow = m.thpow + j;
      add(mm, c * pow_factor * ConstantScalar(Rational(1) / factorial));
    }
  }
  ScalarExpr expanded = normalized(d, std::move(raw));
  ScalarExpr out(d);
  for (const auto& [m, c] : expanded.terms) {
    if (m.thpow < 0) throw std::domain_error("theta_limit0: pole does not cancel");
    if (m.thpow == 0) out.terms[m] = c;
  }
  return out;
}

ScalarExpr ScalarExpr::restrict_origin() const {
  std::map<SMono, ConstantScalar> raw;
  for (const auto& [m, c] : terms) {
    if (m.rexp < 0) throw std::domain_error("restrict_origin: singular at 0");
    if (m.xdeg() > 0 || m.rexp > 0) continue;
    bool fdrop = false;
    for (int n : m.forders)
      if (n >= 1) fdrop = true;
    if (fdrop) continue;
    SMono mm = m;
    mm.gauss.clear();
    mm.forders.clear();
    auto it = raw.find(mm);
    if (it == raw.end())
      raw[mm] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) raw.erase(it);
    }
  }
  return normalized(d, std::move(raw));
}

ScalarExpr ScalarExpr::conjugated() const {
  std::map<SMono, ConstantScalar> raw;
  for (const auto& [m, c] : terms) {
    SMono mm = m;
    mm.eith2 = -mm.eith2;
    raw[mm] = c.conjugated();
  }
  return normalized(d, std::move(raw));
}

bool ScalarExpr::has_negative_rexp() const {
  for (const auto& [m, c] : terms)
    if (m.rexp < 0) return true;
  return false;
}

bool ScalarExpr::has_atoms() const {
  for (const auto& [m, c] : terms)
    if (!m.forders.empty() || !m.phis.empty()) return true;
  return false;
}

std::optional<ConstantScalar> ScalarExpr::as_constant() const {
  if (terms.empty()) return ConstantScalar();
  if (terms.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms.begin();
  SMono unit;
  unit.xpow.assign(d, 0);
  if (!(m == unit)) return std::nullopt;
  return c;
}

std::string ScalarExpr::render() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.render() << ")";
    for (size_t i = 0; i < m.xpow.size(); ++i)
      if (m.xpow[i] > 0) {
        os << "*x" << (i + 1);
        if (m.xpow[i] > 1) os << "^" << m.xpow[i];
      }
    if (m.rexp != 0) os << "*r^" << m.rexp;
    if (!m.gauss.empty()) {
      os << "*exp(-(";
      bool f2 = true;
      for (size_t k = 0; k < m.gauss.size(); ++k) {
        if (m.gauss[k] == Rational(0)) continue;
        if (!f2) os << "+";
        f2 = false;
        os << m.gauss[k].numerator();
        if (m.gauss[k].denominator() != 1) os << "/" << m.gauss[k].denominator();
        if (k == 1) os << "*t";
        if (k > 1) os << "*t^" << k;
      }
      os << ")*r^2)";
    }
    for (int n : m.forders) {
      if (n == 0)
        os << "*f(r^2)";
      else if (n == 1)
        os << "*f'(r^2)";
      else if (n == 2)
        os << "*f''(r^2)";
      else
        os << "*f^(" << n << ")(r^2)";
    }
    for (const auto& [id, p] : m.phis) {
      os << "*phi" << id;
      if (p > 1) os << "^" << p;
    }
    if (m.tpow != 0) os << "*t^" << m.tpow;
    if (m.thpow != 0) os << "*th^" << m.thpow;
    if (m.eith2 != 0) {
      if (m.eith2 % 2 == 0)
        os << "*exp(" << m.eith2 / 2 << "*i*th)";
      else
        os << "*exp(" << m.eith2 << "/2*i*th)";
    }
  }
  return os.str();
}

}  // namespace equiforms
