#pragma once
// Radial-symbolic scalar ring on R^d.  A monomial is
//   x^a * r^e * exp(-c(t) r^2) * prod f^(n_j)(r^2) * prod phi_s^{p_s}
//     * t^k * theta^m * exp(i*theta*h/2)
// with exact ConstantScalar coefficients.  Canonical form keeps e <= 1 and,
// for e <= -1, an x-polynomial content not divisible by r^2 = sum x_i^2.

#include <optional>
#include <vector>

#include "equiforms/constant.hpp"

namespace equiforms {

struct SMono {
  std::vector<int> xpow;                  // size d
  int rexp = 0;                           // canonical window <= 1
  std::vector<Rational> gauss;            // c(t) = sum gauss[k] t^k; empty = no atom
  std::vector<int> forders;               // sorted multiset, f^(n)(r^2) factors
  std::vector<std::pair<int, int>> phis;  // sorted (atom id, power > 0)
  int tpow = 0;
  int thpow = 0;  // theta^thpow (may be negative)
  int eith2 = 0;  // exp(i*theta*eith2/2), half-integer exponents stored doubled

  bool operator==(const SMono& o) const;
  bool operator<(const SMono& o) const;
  int xdeg() const;
};

class ScalarExpr {
 public:
  int d = 0;
  std::map<SMono, ConstantScalar> terms;

  ScalarExpr() = default;
  explicit ScalarExpr(int dim) : d(dim) {}

  static ScalarExpr zero(int d) { return ScalarExpr(d); }
  static ScalarExpr constant(int d, const ConstantScalar& c);
  static ScalarExpr one(int d) { return constant(d, ConstantScalar(Rational(1))); }
  static ScalarExpr monomial(int d, const SMono& m, const ConstantScalar& c);
  static ScalarExpr coordinate(int d, int i);  // x_i, 1-based
  static ScalarExpr r_pow(int d, int e);
  static ScalarExpr rho(int d);                            // r^2 expanded
  static ScalarExpr gaussian(int d, const std::vector<Rational>& ct);  // exp(-c(t) r^2)
  static ScalarExpr f_order(int d, int n);                 // f^(n)(r^2)
  static ScalarExpr phi_atom(int d, int id);
  static ScalarExpr t_pow(int d, int k);
  static ScalarExpr theta_pow(int d, int m);
  static ScalarExpr eith_half(int d, int h2);  // exp(i*theta*h2/2)

  bool is_zero() const { return terms.empty(); }
  bool operator==(const ScalarExpr& o) const { return d == o.d && terms == o.terms; }
  bool operator!=(const ScalarExpr& o) const { return !(*this == o); }
  bool operator<(const ScalarExpr& o) const;

  ScalarExpr operator+(const ScalarExpr& o) const;
  ScalarExpr operator-(const ScalarExpr& o) const;
  ScalarExpr operator-() const;
  ScalarExpr operator*(const ScalarExpr& o) const;
  ScalarExpr scaled(const ConstantScalar& c) const;
  ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }

  // spatial derivative; phi atoms are treated as constants here (their
  // differentials are formal one-forms handled at the form level)
  ScalarExpr partial(int i) const;
  // d(phi_s^p) = p phi_s^{p-1} dphi_s: returns the coefficient of each dphi_s
  std::map<int, ScalarExpr> phi_differentials() const;
  // d/dt, treating x, r, f, phi, theta as t-independent
  ScalarExpr t_derivative() const;

  // int_0^inf (.) dt termwise via int_0^inf t^a exp(-q t^2 r^2) dt
  //   = 1/2 Gamma((a+1)/2) (q r^2)^{-(a+1)/2}; throws on divergent profiles
  ScalarExpr t_integrate() const;

  // definite antiderivative int_0^t, term by term; every term must carry an
  // odd t-power against exp(-q t^2 r^2), q > 0, so the result stays in ring
  ScalarExpr t_antiderivative() const;

  // substitute t := t0 (exact rational); gauss atoms become constant-coefficient
  ScalarExpr substitute_t(const Rational& t0) const;

  // limit theta -> 0 (requires the eith series to cancel all theta poles);
  // result has thpow = eith2 = 0 in every term
  ScalarExpr theta_limit0() const;

  // value at x = 0: positive x/r powers vanish, exp(-c r^2) -> 1, f(0) = 1,
  // f^(n)(0) = 0 for n >= 1 (the cutoff profile is constant 1 near 0);
  // throws on negative r-powers
  ScalarExpr restrict_origin() const;

  // complex conjugate: i -> -i in coefficients, exp(i theta h/2) -> exp(-i theta h/2);
  // every other atom is real
  ScalarExpr conjugated() const;

  bool has_negative_rexp() const;
  bool has_atoms() const;  // f or phi atoms present
  std::optional<ConstantScalar> as_constant() const;

  std::string render() const;

 private:
  friend ScalarExpr normalized(int d, std::map<SMono, ConstantScalar>&& raw);
};

// canonicalization entry point (window rewrite + rho-adic content extraction)
ScalarExpr normalized(int d, std::map<SMono, ConstantScalar>&& raw);

}  // namespace equiforms
