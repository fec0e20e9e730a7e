#include "equiforms/equivariant.hpp"

namespace equiforms {

Form equivariant_d(const Form& a, const XMatrix& X) {
  return a.exterior_d() - a.contract_vx(X);
}

RelativePair d_rel(const RelativePair& p, const XMatrix& X) {
  return {equivariant_d(p.alpha, X), p.alpha - equivariant_d(p.beta, X)};
}

Form PairData::Phi1(int d) const { return Form::from_scalar(ScalarExpr::phi_atom(d, phi_id)); }

Form PairData::Phi2(int d) const { return Form::one(d) - Phi1(d); }

Form PairData::dPhi1(int d) const { return Form::w_gen(d, phi_id); }

RelativePair rel_product(const RelativePair& p1, const RelativePair& p2, const PairData& data) {
  int d = p1.dim();
  Form beta = data.Phi1(d) * p1.beta * p2.alpha;
  beta += p1.alpha.parity_twisted() * data.Phi2(d) * p2.beta;
  beta += data.dPhi1(d) * p1.beta.parity_twisted() * p2.beta;
  return {p1.alpha * p2.alpha, beta};
}

TripleData TripleData::nested(int d, int inner_id, int outer_id) {
  Form phi = Form::from_scalar(ScalarExpr::phi_atom(d, inner_id));
  Form vphi = Form::from_scalar(ScalarExpr::phi_atom(d, outer_id));
  Form one = Form::one(d);
  Form dphi = Form::w_gen(d, inner_id);
  Form dvphi = Form::w_gen(d, outer_id);
  TripleData t;
  t.Phi[0] = vphi * phi;
  t.Phi[1] = vphi * (one - phi);
  t.Phi[2] = one - vphi;
  t.Lam[0] = -(dvphi * (one - phi));
  t.Lam[1] = dvphi * phi;
  t.Lam[2] = -(vphi * dphi);
  t.Theta = t.Lam[0].exterior_d();
  return t;
}

void TripleData::validate(int d, const XMatrix& X) const {
  Form sum = Phi[0] + Phi[1] + Phi[2] - Form::one(d);
  if (!sum.is_zero()) throw std::domain_error("triple data: Phi_1+Phi_2+Phi_3 != 1");
  Form c1 = Phi[0].exterior_d() - (Lam[1] - Lam[2]);
  Form c2 = Phi[1].exterior_d() - (Lam[2] - Lam[0]);
  Form c3 = Phi[2].exterior_d() - (Lam[0] - Lam[1]);
  if (!c1.is_zero() || !c2.is_zero() || !c3.is_zero())
    throw std::domain_error("triple data: dPhi_i != Lam_j - Lam_k");
  for (int i = 0; i < 3; ++i)
    if (!(equivariant_d(Lam[i], X) - Theta).is_zero())
      throw std::domain_error("triple data: D Lam_i != Theta");
}

RelativePair triple_product(const RelativePair& p1, const RelativePair& p2,
                            const RelativePair& p3, const TripleData& data) {
  int d = p1.dim();
  XMatrix X = XMatrix::indeterminates(d);
  data.validate(d, X);
  const Form& a1 = p1.alpha;
  const Form& b1 = p1.beta;
  const Form& a2 = p2.alpha;
  const Form& b2 = p2.beta;
  const Form& a3 = p3.alpha;
  const Form& b3 = p3.beta;
  // per-factor parity twists realize the (-1)^{|a_1|}, (-1)^{|a_2|} signs:
  // |a_i| = |alpha_i| on alpha factors and |beta_i| + 1 on beta factors
  Form beta = data.Phi[0] * b1 * a2 * a3;
  beta += data.Phi[1] * a1.parity_twisted() * b2 * a3;
  beta += data.Phi[2] * a1.parity_twisted() * a2.parity_twisted() * b3;
  beta += -(data.Lam[0] * a1 * b2.parity_twisted() * b3);
  beta += data.Lam[1] * b1.parity_twisted() * a2.parity_twisted() * b3;
  beta += -(data.Lam[2] * b1.parity_twisted() * b2 * a3);
  beta += data.Theta * b1 * b2.parity_twisted() * b3;
  return {a1 * a2 * a3, beta};
}

Form Cutoff::chi(int d) const {
  if (kind == RADIAL_F) return Form::from_scalar(ScalarExpr::f_order(d, 0));
  return Form::from_scalar(ScalarExpr::phi_atom(d, phi_id));
}

Form Cutoff::dchi(int d) const {
  if (kind == FORMAL) return Form::w_gen(d, phi_id);
  Form out(d);
  for (int i = 1; i <= d; ++i) {
    ScalarExpr c = ScalarExpr::f_order(d, 1) * ScalarExpr::coordinate(d, i);
    out += Form::dx(d, i).scaled_expr(c.scaled(ConstantScalar(rat(2))));
  }
  return out;
}

namespace {

void check_supported_away_from_origin(const Form& f, const char* who) {
  for (const auto& [k, c] : f.terms) {
    if (k.w) continue;  // formal atoms carry support away from the origin
    for (const auto& [xm, s] : c.terms)
      for (const auto& [m, cc] : s.terms) {
        if (m.rexp >= 0) continue;
        bool fprime = false;
        for (int n : m.forders)
          if (n >= 1) fprime = true;
        if (!fprime && m.phis.empty())
          throw std::domain_error(std::string(who) + ": singularity not cancelled");
      }
  }
}

}  // namespace

Form p_chi(const RelativePair& p, const Form& chi, const Form& dchi) {
  Form out = chi * p.alpha + dchi * p.beta;
  check_supported_away_from_origin(out, "p_chi");
  return out;
}

Form p_chi(const RelativePair& p, const Cutoff& c) {
  int d = p.dim();
  return p_chi(p, c.chi(d), c.dchi(d));
}

RelativePair excision_Ichi(const RelativePair& p, const Form& chi, const Form& dchi) {
  return {chi * p.alpha + dchi * p.beta, chi * p.beta};
}

RelativePair excision_Ichi(const RelativePair& p, const Cutoff& c) {
  int d = p.dim();
  return excision_Ichi(p, c.chi(d), c.dchi(d));
}

XPoly integrate_over_V(const Form& a) {
  int d = a.d;
  uint32_t full = (1u << d) - 1u;
  XPoly top = a.coefficient(FKey{full, 0, 0});
  XPoly out(d);
  for (const auto& [xm, s] : top.terms) {
    ScalarExpr integrated(d);
    for (const auto& [m, c] : s.terms) {
      bool odd = false;
      for (int e : m.xpow)
        if (e % 2 == 1) odd = true;
      if (odd) continue;  // odd moments vanish for any radial profile
      if (!m.forders.empty() || !m.phis.empty())
        throw std::domain_error("integrate_over_V: cutoff profile; use numeric evaluation");
      if (m.tpow != 0) throw std::domain_error("integrate_over_V: free t parameter");
      if (m.rexp != 0)
        throw std::domain_error("integrate_over_V: odd radial power; use numeric evaluation");
      if (m.gauss.size() != 1 || m.gauss[0] <= Rational(0))
        throw std::domain_error("integrate_over_V: coefficient is not Gaussian-decaying");
      Rational cexp = m.gauss[0];
      ConstantScalar moment(Rational(1));
      int esum = 0;
      for (int e : m.xpow) {
        moment *= gamma_half(e + 1);
        esum += e + 1;
      }
      // times cexp^{-esum/2}
      if (esum % 2 == 0) {
        Rational f(1);
        for (int j = 0; j < esum / 2; ++j) f /= cexp;
        moment *= ConstantScalar(f);
      } else {
        BigInt n = boost::multiprecision::sqrt(cexp.numerator());
        BigInt dd = boost::multiprecision::sqrt(cexp.denominator());
        if (n * n != cexp.numerator() || dd * dd != cexp.denominator())
          throw std::domain_error("integrate_over_V: irrational Gaussian rate");
        Rational sq(n, dd), f(1);
        for (int j = 0; j < esum; ++j) f /= sq;
        moment *= ConstantScalar(f);
      }
      SMono unit;
      unit.xpow.assign(d, 0);
      unit.thpow = m.thpow;
      unit.eith2 = m.eith2;
      integrated += ScalarExpr::monomial(d, unit, c * moment);
    }
    out.insert(xm, integrated);
  }
  return out;
}

}  // namespace equiforms
