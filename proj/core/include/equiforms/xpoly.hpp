#pragma once
// Polynomials in the antisymmetric-matrix indeterminates X_{kl} (k < l,
// X_{lk} = -X_{kl}) with ScalarExpr coefficients, plus the antisymmetric
// matrix wrapper used to build vector fields and curvature terms.

#include "equiforms/scalar.hpp"

namespace equiforms {

// ordered-index storage: sorted vector of ((k,l), power), 1-based, k < l
struct XMono {
  std::vector<std::pair<std::pair<int, int>, int>> factors;

  bool operator==(const XMono& o) const { return factors == o.factors; }
  bool operator<(const XMono& o) const { return factors < o.factors; }
  int degree() const;
};

class XPoly {
 public:
  int d = 0;
  std::map<XMono, ScalarExpr> terms;

  XPoly() = default;
  explicit XPoly(int dim) : d(dim) {}

  static XPoly zero(int d) { return XPoly(d); }
  static XPoly from_scalar(const ScalarExpr& s);
  static XPoly constant(int d, const ConstantScalar& c);
  static XPoly one(int d) { return constant(d, ConstantScalar(Rational(1))); }
  // X_{kl}; k > l gives -X_{lk}; k == l is a domain error
  static XPoly indeterminate(int d, int k, int l);

  bool is_zero() const { return terms.empty(); }
  bool operator==(const XPoly& o) const { return d == o.d && terms == o.terms; }
  bool operator!=(const XPoly& o) const { return !(*this == o); }

  XPoly operator+(const XPoly& o) const;
  XPoly operator-(const XPoly& o) const;
  XPoly operator-() const;
  XPoly operator*(const XPoly& o) const;
  XPoly& operator+=(const XPoly& o) { return *this = *this + o; }
  XPoly scaled(const ConstantScalar& c) const;
  XPoly scaled_expr(const ScalarExpr& s) const;

  // lifts of the ScalarExpr operations, acting on coefficients
  XPoly partial(int i) const;
  XPoly t_derivative() const;
  XPoly t_integrate() const;
  XPoly t_antiderivative() const;
  XPoly substitute_t(const Rational& t0) const;
  XPoly theta_limit0() const;
  XPoly restrict_origin() const;
  std::map<int, XPoly> phi_differentials() const;

  // substitute X_{kl} := vals[(k,l)] (keys with k < l); missing keys stay
  // indeterminate
  XPoly substitute_X(const std::map<std::pair<int, int>, XPoly>& vals) const;

  bool has_negative_rexp() const;
  int max_xdegree() const;
  std::string render() const;

  void insert(const XMono& m, const ScalarExpr& s);
};

// antisymmetric d x d matrix of XPoly entries, stored upper-triangular
class XMatrix {
 public:
  int d = 0;
  std::map<std::pair<int, int>, XPoly> upper;  // keys k < l, 1-based

  XMatrix() = default;
  explicit XMatrix(int dim) : d(dim) {}

  static XMatrix zero(int d) { return XMatrix(d); }
  // the generic matrix of indeterminates X_{kl}
  static XMatrix indeterminates(int d);
  // d=2 with X_12 := theta (circle action identified with a rotation speed)
  static XMatrix theta_so2();
  // block-diagonal rotations: entry (2k-1, 2k) = lambda_k
  static XMatrix block_rational(int d, const std::vector<Rational>& lambdas);
  static XMatrix from_rational_entries(int d,
                                       const std::map<std::pair<int, int>, Rational>& entries);

  XPoly entry(int k, int l) const;  // 1-based, antisymmetric extension
  void set_entry(int k, int l, const XPoly& v);
  XMatrix scaled(const ConstantScalar& c) const;
};

}  // namespace equiforms
