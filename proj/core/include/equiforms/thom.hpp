#pragma once
// Gaussian-family construction on R^d: the closed family C^t, its
// transgression eta^t, the integrated singular form beta on V\{0} (by two
// independent routes), and the three Thom-form flavors with normalization
// eps_d = (-1)^{d(d-1)/2} pi^{d/2}.

#include "equiforms/equivariant.hpp"

namespace equiforms {

// -t^2 r^2 + t sum_k dx_k e_k + 1/2 sum_{k<l} X_kl e_k e_l
Form build_f_t(int d, const XMatrix& X);

// C^t = T(exp(f_t))
Form thom_C_t(int d, const XMatrix& X);

// eta^t = -T((sum_k x_k e_k) exp(f_t))
Form thom_eta_t(int d, const XMatrix& X);

// beta = int_0^inf eta^t dt, computed termwise from eta
Form beta_wedge(int d, const XMatrix& X);

// the same form from the closed coefficient formula: sum over partitions
// {k} u I u J = {1..d}, |I| even, of
//   gamma_(k,I,J) Pf(X_I/2) x_k dx_J r^{-(|J|+1)}
// with gamma_(k,I,J) = -1/2 (-1)^{|J|(|J|+1)/2} Gamma((|J|+1)/2)
//                      eps(I,J) eps({k}, I u J)
Form beta_explicit(int d, const XMatrix& X);

enum class ThomFlavor { Rel, Compact, MQ };

struct ThomFamily {
  int d = 0;
  ThomFlavor flavor = ThomFlavor::Rel;
  RelativePair rel;       // set for Rel
  Form form;              // set for Compact and MQ
  ConstantScalar eps;     // the normalization eps_d (already divided out)
};

// Rel:     eps_d^{-1} (Pf(X/2), beta)
// Compact: eps_d^{-1} (f(r^2) Pf(X/2) + d(f(r^2)) beta)
// MQ:      eps_d^{-1} C^1
ThomFamily build_thom(int d, ThomFlavor flavor, const XMatrix& X);

// exact ring antiderivative A(t) = int_0^t eta^s ds; exists iff every
// t-power in eta is odd (d even); throws otherwise
Form eta_antiderivative(int d, const XMatrix& X);

// report of the retarded-family identities
//   (a) C^chi - C^{chi,t} = D(chi int_0^t eta)
//   (b) C^{chi,t} - C^t = D((chi - 1) beta^t),   beta^t = beta - int_0^t eta
// checked at derivative level in t plus the t = 0 boundary identities; for
// even d the integrated forms are also checked with the explicit
// antiderivative, both symbolically in t and at t = t0
struct RetardedReport {
  int d = 0;
  Rational t0;
  bool derivative_a = false;
  bool derivative_b = false;
  bool boundary_a = false;
  bool boundary_b = false;
  bool integrated_available = false;
  bool integrated_a = false;
  bool integrated_b = false;
  bool ok() const {
    return derivative_a && derivative_b && boundary_a && boundary_b &&
           (!integrated_available || (integrated_a && integrated_b));
  }
};

RetardedReport thom_retarded_transgression(int d, const Rational& t0);

}  // namespace equiforms
