#include "equiforms/thom.hpp"

namespace equiforms {

Form build_f_t(int d, const XMatrix& X) {
  Form f(d);
  // -t^2 r^2
  f += Form::from_scalar((ScalarExpr::t_pow(d, 2) * ScalarExpr::rho(d))
                             .scaled(ConstantScalar(rat(-1))));
  // t sum dx_k e_k
  for (int k = 1; k <= d; ++k)
    f += (Form::dx(d, k) * Form::e_gen(d, k)).scaled_expr(ScalarExpr::t_pow(d, 1));
  // 1/2 sum_{k<l} X_kl e_k e_l
  for (int k = 1; k <= d; ++k)
    for (int l = k + 1; l <= d; ++l) {
      XPoly ent = X.entry(k, l);
      if (ent.is_zero()) continue;
      f += (Form::e_gen(d, k) * Form::e_gen(d, l))
               .scaled_xpoly(ent.scaled(ConstantScalar(rat(1, 2))));
    }
  return f;
}

Form thom_C_t(int d, const XMatrix& X) { return super_exp_nilpotent(build_f_t(d, X)).berezin(); }

Form thom_eta_t(int d, const XMatrix& X) {
  Form xe(d);
  for (int k = 1; k <= d; ++k)
    xe += Form::e_gen(d, k).scaled_expr(ScalarExpr::coordinate(d, k));
  return -(xe * super_exp_nilpotent(build_f_t(d, X))).berezin();
}

Form beta_wedge(int d, const XMatrix& X) { return thom_eta_t(d, X).t_integrate(); }

Form beta_explicit(int d, const XMatrix& X) {
  XMatrix Xhalf = X.scaled(ConstantScalar(rat(1, 2)));
  Form out(d);
  for (int k = 1; k <= d; ++k) {
    std::vector<int> rest;
    for (int j = 1; j <= d; ++j)
      if (j != k) rest.push_back(j);
    int n = static_cast<int>(rest.size());
    for (uint32_t sub = 0; sub < (1u << n); ++sub) {
      std::vector<int> I, J;
      for (int b = 0; b < n; ++b)
        ((sub >> b) & 1u ? I : J).push_back(rest[b]);
      if (I.size() % 2 != 0) continue;
      uint32_t mI = mask_of(I), mJ = mask_of(J), mk = 1u << (k - 1);
      int nJ = static_cast<int>(J.size());
      int sgn = epsilon_sign(mI, mJ) * epsilon_sign(mk, mI | mJ);
      ConstantScalar gamma = gamma_half(nJ + 1) * ConstantScalar(rat(-sgn, 2));
      if ((nJ * (nJ + 1) / 2) % 2 == 1) gamma = -gamma;
      XPoly pf = pfaffian(Xhalf, I);
      if (pf.is_zero()) continue;
      SMono m;
      m.xpow.assign(d, 0);
      m.xpow[k - 1] = 1;
      m.rexp = -(nJ + 1);
      Form term(d);
      term.add_term(FKey{mJ, 0, 0}, pf.scaled_expr(ScalarExpr::monomial(d, m, gamma)));
      out += term;
    }
  }
  return out;
}

ThomFamily build_thom(int d, ThomFlavor flavor, const XMatrix& X) {
  ThomFamily fam;
  fam.d = d;
  fam.flavor = flavor;
  fam.eps = eps_d(d);
  ConstantScalar inv = fam.eps.inverse();
  Form pf = Form::from_xpoly(pfaffian(X.scaled(ConstantScalar(rat(1, 2))), indices_of((1u << d) - 1u)));
  switch (flavor) {
    case ThomFlavor::Rel: {
      RelativePair p{pf, beta_wedge(d, X)};
      fam.rel = p.scaled(inv);
      break;
    }
    case ThomFlavor::Compact: {
      RelativePair p{pf, beta_wedge(d, X)};
      fam.form = p_chi(p, Cutoff::radial_f()).scaled(inv);
      break;
    }
    case ThomFlavor::MQ:
      fam.form = thom_C_t(d, X).substitute_t(Rational(1)).scaled(inv);
      break;
  }
  return fam;
}

Form eta_antiderivative(int d, const XMatrix& X) {
  return thom_eta_t(d, X).t_antiderivative();
}

RetardedReport thom_retarded_transgression(int d, const Rational& t0) {
  RetardedReport rep;
  rep.d = d;
  rep.t0 = t0;
  XMatrix X = XMatrix::indeterminates(d);
  Form C = thom_C_t(d, X);
  Form eta = thom_eta_t(d, X);
  Form beta = beta_wedge(d, X);
  Form pf =
      Form::from_xpoly(pfaffian(X.scaled(ConstantScalar(rat(1, 2))), indices_of((1u << d) - 1u)));
  Cutoff cut = Cutoff::radial_f();
  Form chi = cut.chi(d), dchi = cut.dchi(d);
  Form dCdt = C.t_derivative();

  // (a) d/dt: -chi dC/dt + dchi eta == D(chi eta)
  rep.derivative_a = ((-(chi * dCdt) + dchi * eta) - equivariant_d(chi * eta, X)).is_zero();
  // (a) t=0: C^0 == Pf(X/2)
  rep.boundary_a = (C.substitute_t(Rational(0)) == pf);
  // (b) d/dt: (chi - 1) dC/dt - dchi eta == -D((chi - 1) eta)
  Form chim1 = chi - Form::one(d);
  rep.derivative_b =
      ((chim1 * dCdt - dchi * eta) + equivariant_d(chim1 * eta, X)).is_zero();
  // (b) t=0: (chi Pf + dchi beta) - Pf == D((chi - 1) beta)
  rep.boundary_b =
      ((chi * pf + dchi * beta - pf) - equivariant_d(chim1 * beta, X)).is_zero();

  // integrated route: exact antiderivative exists iff eta's t-powers are odd
  bool odd_only = true;
  for (const auto& [k, c] : eta.terms)
    for (const auto& [xm, s] : c.terms)
      for (const auto& [m, cc] : s.terms)
        if (m.tpow % 2 == 0) odd_only = false;
  rep.integrated_available = odd_only;
  if (odd_only) {
    Form A = eta_antiderivative(d, X);
    Form beta_t = beta - A;
    Form CV_chi = chi * pf + dchi * beta;
    Form CV_chi_t = chi * C + dchi * beta_t;
    rep.integrated_a = ((CV_chi - CV_chi_t) - equivariant_d(chi * A, X)).is_zero();
    rep.integrated_b = ((CV_chi_t - C) - equivariant_d(chim1 * beta_t, X)).is_zero();
    if (rep.integrated_a && rep.integrated_b && t0 > Rational(0)) {
      rep.integrated_a =
          ((CV_chi - CV_chi_t).substitute_t(t0) - equivariant_d(chi * A, X).substitute_t(t0))
              .is_zero();
    }
  }
  return rep;
}

}  // namespace equiforms
