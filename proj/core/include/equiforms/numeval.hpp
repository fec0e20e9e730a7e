#pragma once
// Numeric evaluation and quadrature for symbolic forms.  The radial cutoff
// profile backing the f-atoms is a C^2 quintic smoothstep bump: f(u) = 1 for
// u <= R^2/4, f(u) = 0 for u >= R^2, monotone in between.

#include <functional>

#include "equiforms/form.hpp"

namespace equiforms {

struct CutoffSpec {
  double R = 2.0;
  double lo() const { return R * R / 4.0; }
  double hi() const { return R * R; }
  double f(double u, int order = 0) const;  // order in 0..2
};

struct EvalParams {
  std::vector<double> x;  // evaluation point
  double t = 1.0;
  double theta = 0.0;
  bool theta_exact0 = false;  // substitute theta -> 0 symbolically first
  std::map<std::pair<int, int>, CD> xvals;  // antisymmetric parameter entries, k < l
  CutoffSpec cutoff;
};

using NumericForm = std::map<uint32_t, CD>;

CD eval_scalar(const ScalarExpr& s, const EvalParams& p);
CD eval_xpoly(const XPoly& q, const EvalParams& p);
NumericForm eval_form(const Form& a, const EvalParams& p);

// integral over R^d of the coefficient of dx_1...dx_d.
// exact angular moments + adaptive radial segments; the integrand's
// coefficients are monomial-times-radial by construction
CD integrate_angular_reduction(const Form& a, const EvalParams& p);

// cross-check route: Gauss-Hermite tensor grid for pure-gaussian integrands,
// Gauss-Legendre tensor grid over the cutoff support box otherwise, with
// node doubling until two passes agree to tol
CD integrate_tensor(const Form& a, const EvalParams& p, double tol = 1e-8);

// primary entry: angular reduction, falling back to the tensor grid
CD integrate_numeric(const Form& a, const EvalParams& p, double tol = 1e-8);

// adaptive integral of f over [0, infinity); throws if no decay is detected
CD quadrature_t(const std::function<CD(double)>& f, double tol = 1e-10);

// max over coefficients of |symbolic d - central-difference d| at p.x
double fd_exterior_derivative_check(const Form& a, const EvalParams& p, double h = 1e-5);

// exterior derivative of a pointwise-evaluable form assembled by central
// differences; returns the largest resulting coefficient magnitude (zero for
// a closed form, up to O(h^2))
double fd_closedness_check(const std::function<NumericForm(const std::vector<double>&)>& F,
                           int d, const std::vector<double>& x, double h = 1e-5);

// Gauss-Legendre nodes/weights on [-1, 1] (cached per order)
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int m);
// Gauss-Hermite nodes/weights for weight exp(-x^2) (cached per order)
const std::pair<std::vector<double>, std::vector<double>>& gauss_hermite(int m);

}  // namespace equiforms
