#pragma once
// Exterior algebra on three anticommuting generator families over XPoly
// coefficients:
//   dx_1..dx_d   spatial one-forms
//   w_0..w_30    formal differentials of declared invariant scalar atoms phi_s
//   e_1..e_d     auxiliary odd generators (Berezin integration slot)
// A key stores one bitmask per family; the represented monomial is the wedge
// of the dx block, then the w block, then the e block, each in ascending
// index order.

#include <cstdint>
#include <functional>

#include "equiforms/xpoly.hpp"

namespace equiforms {

// sign merging two disjoint ascending index blocks, or 0 on overlap
int epsilon_sign(uint32_t maskA, uint32_t maskB);

uint32_t mask_of(const std::vector<int>& indices_1based);
std::vector<int> indices_of(uint32_t mask);

struct FKey {
  uint32_t dx = 0;
  uint32_t w = 0;
  uint32_t e = 0;

  bool operator==(const FKey& o) const { return dx == o.dx && w == o.w && e == o.e; }
  bool operator<(const FKey& o) const {
    if (dx != o.dx) return dx < o.dx;
    if (w != o.w) return w < o.w;
    return e < o.e;
  }
  int degree() const;
  int parity() const { return degree() & 1; }
};

class Form {
 public:
  int d = 0;
  std::map<FKey, XPoly> terms;

  Form() = default;
  explicit Form(int dim) : d(dim) {}

  static Form zero(int d) { return Form(d); }
  static Form from_xpoly(const XPoly& p);
  static Form from_scalar(const ScalarExpr& s) { return from_xpoly(XPoly::from_scalar(s)); }
  static Form constant(int d, const ConstantScalar& c) {
    return from_xpoly(XPoly::constant(d, c));
  }
  static Form one(int d) { return constant(d, ConstantScalar(Rational(1))); }
  static Form dx(int d, int i);   // 1-based
  static Form e_gen(int d, int k);
  static Form w_gen(int d, int s);  // formal dphi_s, s in [0, 31)

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Form& o) const { return d == o.d && terms == o.terms; }
  bool operator!=(const Form& o) const { return !(*this == o); }

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form operator*(const Form& o) const;  // wedge
  Form& operator+=(const Form& o) { return *this = *this + o; }
  Form scaled(const ConstantScalar& c) const;
  Form scaled_expr(const ScalarExpr& s) const;
  Form scaled_xpoly(const XPoly& p) const;

  XPoly coefficient(const FKey& k) const;
  void add_term(const FKey& k, const XPoly& c);

  // multiplies each homogeneous term by (-1)^{its exterior parity}
  Form parity_twisted() const;
  // true iff every term has exterior parity p
  bool is_parity(int p) const;
  int max_degree() const;

  // exterior derivative: spatial partials, the chain rule through f(r^2)
  // and exp(-c(t) r^2) atoms, and dphi_s = w_s
  Form exterior_d() const;
  // interior product with coordinate vector field d/dx_i (dx block only)
  Form contract_dx(int i) const;
  // interior product with the linear rotation field of X
  Form contract_vx(const XMatrix& X) const;
  // odd derivation iota(e_k) on the e block
  Form contract_e(int k) const;
  // iota of sum_k x_k e_k
  Form contract_x_e() const;
  // Berezin integral: coefficient of the full e block, e dropped
  Form berezin() const;

  // coefficient lifts
  Form t_derivative() const;
  Form t_integrate() const;
  Form t_antiderivative() const;
  Form substitute_t(const Rational& t0) const;
  Form theta_limit0() const;
  Form substitute_X(const std::map<std::pair<int, int>, XPoly>& vals) const;
  Form restrict_origin() const;  // also drops all dx/w/e terms

  bool has_negative_rexp() const;
  bool has_w() const;
  bool has_e() const;

  std::string render() const;
};

// exp(a) for a = scalar + nilpotent: the scalar part must be zero, or of the
// form -c(t) * r^2 with rational polynomial c (it becomes a Gaussian atom)
Form super_exp_nilpotent(const Form& a);

// Pf(X_I) = coefficient of e_I in exp(sum_{k<l in I} X_kl e_k e_l)
XPoly pfaffian(const XMatrix& X, const std::vector<int>& I);

}  // namespace equiforms
