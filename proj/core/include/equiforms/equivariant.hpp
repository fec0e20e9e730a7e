#pragma once
// Cartan model on R^d: equivariant differential D = d - iota(VX), relative
// pairs (alpha, beta) with D_rel(alpha, beta) = (D alpha, alpha - D beta),
// the cutoff-dependent products and support maps, and fiber integration
// over V.

#include "equiforms/form.hpp"

namespace equiforms {

// D a = d a - iota(VX) a, with (VX)_j = sum_m X_{jm} x_m
Form equivariant_d(const Form& a, const XMatrix& X);

struct RelativePair {
  Form alpha;
  Form beta;

  RelativePair() = default;
  RelativePair(Form a, Form b) : alpha(std::move(a)), beta(std::move(b)) {}

  int dim() const { return alpha.d ? alpha.d : beta.d; }
  bool is_zero() const { return alpha.is_zero() && beta.is_zero(); }
  bool operator==(const RelativePair& o) const { return alpha == o.alpha && beta == o.beta; }
  bool operator!=(const RelativePair& o) const { return !(*this == o); }
  RelativePair operator+(const RelativePair& o) const {
    return {alpha + o.alpha, beta + o.beta};
  }
  RelativePair operator-(const RelativePair& o) const {
    return {alpha - o.alpha, beta - o.beta};
  }
  RelativePair operator-() const { return {-alpha, -beta}; }
  RelativePair scaled(const ConstantScalar& c) const { return {alpha.scaled(c), beta.scaled(c)}; }
};

// (D alpha, alpha - D beta)
RelativePair d_rel(const RelativePair& p, const XMatrix& X);

// partition of unity with two formal members: Phi_1 = phi_id, Phi_2 = 1 - phi_id
struct PairData {
  int phi_id = 0;

  Form Phi1(int d) const;
  Form Phi2(int d) const;
  Form dPhi1(int d) const;  // w_{phi_id}
};

// (alpha_1 alpha_2, Phi_1 beta_1 alpha_2 + (-1)^{|a1|} alpha_1 Phi_2 beta_2
//                   - (-1)^{|a1|} dPhi_1 beta_1 beta_2),
// mixed degrees resolved termwise
RelativePair rel_product(const RelativePair& p1, const RelativePair& p2, const PairData& data);

// three-member data: scalars Phi_i, one-forms Lam_i, two-form Theta with
// dPhi_1 = Lam_2 - Lam_3 (cyclically) and D Lam_i = Theta
struct TripleData {
  Form Phi[3];
  Form Lam[3];
  Form Theta;

  // built from two nested two-member partitions: inner phi (ids: inner),
  // outer varphi (ids: outer); Phi_1 = varphi*phi, Phi_2 = varphi*(1-phi),
  // Phi_3 = 1 - varphi, Lam_1 = -dvarphi*(1-phi), Lam_2 = dvarphi*phi,
  // Lam_3 = -varphi*dphi
  static TripleData nested(int d, int inner_id, int outer_id);

  void validate(int d, const XMatrix& X) const;  // throws on broken relations
};

// seven-term relative triple product
RelativePair triple_product(const RelativePair& p1, const RelativePair& p2,
                            const RelativePair& p3, const TripleData& data);

// invariant cutoff symbol: either the concrete radial profile f(r^2) or a
// formal invariant atom phi_id with differential w_{phi_id}
struct Cutoff {
  enum Kind { RADIAL_F, FORMAL } kind = RADIAL_F;
  int phi_id = 0;

  static Cutoff radial_f() { return {RADIAL_F, 0}; }
  static Cutoff formal(int id) { return {FORMAL, id}; }

  Form chi(int d) const;
  Form dchi(int d) const;
};

// p^chi(alpha, beta) = chi alpha + dchi beta; errors if a negative r-power
// survives without an f'(or higher) factor or a formal atom to carry support
// away from the origin
Form p_chi(const RelativePair& p, const Form& chi, const Form& dchi);
Form p_chi(const RelativePair& p, const Cutoff& c);

// I^chi(alpha, beta) = (chi alpha + dchi beta, chi beta)
RelativePair excision_Ichi(const RelativePair& p, const Form& chi, const Form& dchi);
RelativePair excision_Ichi(const RelativePair& p, const Cutoff& c);

// integration over V of the top dx coefficient against Gaussian moments;
// errors on profiles that require numeric treatment
XPoly integrate_over_V(const Form& a);

}  // namespace equiforms
