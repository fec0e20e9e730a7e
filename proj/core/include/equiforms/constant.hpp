#pragma once
// Exact constant ring: finite Q-linear combinations of i^a * pi^(b/2),
// a in {0,1}, b in Z.  Closed under +,-,*, and inversion of monomials.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace equiforms {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;
using CD = std::complex<double>;

inline Rational rat(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }
double to_double(const Rational& r);

// key = (i_power, half_pi_power): value of the monomial is i^first * pi^(second/2)
struct ConstantScalar {
  std::map<std::pair<int, int>, Rational> terms;

  ConstantScalar() = default;
  explicit ConstantScalar(const Rational& r) {
    if (r != Rational(0)) terms[{0, 0}] = r;
  }
  static ConstantScalar integer(long n) { return ConstantScalar(rat(n)); }
  static ConstantScalar rational(long n, long d) { return ConstantScalar(rat(n, d)); }
  // i^a * pi^(b/2) with rational coefficient
  static ConstantScalar monomial(const Rational& c, int ipow, int halfpi);
  static ConstantScalar unit_i() { return monomial(Rational(1), 1, 0); }
  static ConstantScalar pi_half_pow(int b) { return monomial(Rational(1), 0, b); }

  bool is_zero() const { return terms.empty(); }
  bool is_one() const;
  bool operator==(const ConstantScalar& o) const { return terms == o.terms; }
  bool operator!=(const ConstantScalar& o) const { return !(*this == o); }
  bool operator<(const ConstantScalar& o) const { return terms < o.terms; }

  ConstantScalar operator+(const ConstantScalar& o) const;
  ConstantScalar operator-(const ConstantScalar& o) const;
  ConstantScalar operator-() const;
  ConstantScalar operator*(const ConstantScalar& o) const;
  ConstantScalar& operator+=(const ConstantScalar& o) { return *this = *this + o; }
  ConstantScalar& operator*=(const ConstantScalar& o) { return *this = *this * o; }

  // defined only for single-term values; throws otherwise
  ConstantScalar inverse() const;

  ConstantScalar conjugated() const;  // i -> -i

  std::complex<double> to_complex() const;
  std::string render() const;
};

// epsilon_d = (-1)^{d(d-1)/2} pi^{d/2}
ConstantScalar eps_d(int d);

// Gamma(m/2) for m >= 1, exact: rational for even m, rational*sqrt(pi) for odd m.
ConstantScalar gamma_half(int m);

}  // namespace equiforms
