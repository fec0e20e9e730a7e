#include "equiforms/constant.hpp"

#include <cmath>
#include <sstream>

namespace equiforms {

double to_double(const Rational& r) {
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

ConstantScalar ConstantScalar::monomial(const Rational& c, int ipow, int halfpi) {
  ConstantScalar out;
  if (c == Rational(0)) return out;
  Rational cc = c;
  int a = ((ipow % 4) + 4) % 4;  // i^2 = -1, i^3 = -i
  if (a >= 2) {
    cc = -cc;
    a -= 2;
  }
  out.terms[{a, halfpi}] = cc;
  return out;
}

bool ConstantScalar::is_one() const {
  return terms.size() == 1 && terms.begin()->first == std::make_pair(0, 0) &&
         terms.begin()->second == Rational(1);
}

ConstantScalar ConstantScalar::operator+(const ConstantScalar& o) const {
  ConstantScalar out = *this;
  for (const auto& [k, v] : o.terms) {
    auto it = out.terms.find(k);
    if (it == out.terms.end()) {
      out.terms[k] = v;
    } else {
      it->second += v;
      if (it->second == Rational(0)) out.terms.erase(it);
    }
  }
  return out;
}

ConstantScalar ConstantScalar::operator-() const {
  ConstantScalar out = *this;
  for (auto& [k, v] : out.terms) v = -v;
  return out;
}

ConstantScalar ConstantScalar::operator-(const ConstantScalar& o) const { return *this + (-o); }

ConstantScalar ConstantScalar::operator*(const ConstantScalar& o) const {
  ConstantScalar out;
  for (const auto& [ka, va] : terms)
    for (const auto& [kb, vb] : o.terms)
      out += monomial(va * vb, ka.first + kb.first, ka.second + kb.second);
  return out;
}

ConstantScalar ConstantScalar::inverse() const {
  if (terms.size() != 1) throw std::domain_error("ConstantScalar::inverse: not a monomial");
  const auto& [k, v] = *terms.begin();
  // (c i^a pi^(b/2))^{-1} = c^{-1} i^{-a} pi^{-b/2}; i^{-1} = -i
  return monomial(Rational(1) / v, -k.first, -k.second);
}

ConstantScalar ConstantScalar::conjugated() const {
  ConstantScalar out;
  for (const auto& [k, v] : terms)
    out += monomial(k.first == 1 ? -v : v, k.first, k.second);
  return out;
}

std::complex<double> ConstantScalar::to_complex() const {
  std::complex<double> z(0.0, 0.0);
  for (const auto& [k, v] : terms) {
    double mag = to_double(v) * std::pow(M_PI, 0.5 * k.second);
    if (k.first == 0)
      z += std::complex<double>(mag, 0.0);
    else
      z += std::complex<double>(0.0, mag);
  }
  return z;
}

std::string ConstantScalar::render() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms) {
    Rational c = v;
    if (!first) {
      os << (c >= Rational(0) ? " + " : " - ");
      if (c < Rational(0)) c = -c;
    }
    first = false;
    os << c.numerator();
    if (c.denominator() != 1) os << "/" << c.denominator();
    if (k.first == 1) os << "*i";
    if (k.second != 0) {
      os << "*pi";
      if (k.second != 2) {
        if (k.second % 2 == 0)
          os << "^" << (k.second / 2);
        else
          os << "^(" << k.second << "/2)";
      }
    }
  }
  return os.str();
}

ConstantScalar eps_d(int d) {
  long s = ((static_cast<long>(d) * (d - 1) / 2) % 2 == 0) ? 1 : -1;
  return ConstantScalar::monomial(rat(s), 0, d);
}

ConstantScalar gamma_half(int m) {
  if (m < 1) throw std::domain_error("gamma_half: pole or undefined for m < 1");
  // Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(z+1) = z Gamma(z)
  Rational c(1);
  int mm = m;
  while (mm > 2) {
    mm -= 2;
    c *= Rational(BigInt(mm), BigInt(2));
  }
  return ConstantScalar::monomial(c, 0, (m % 2 == 1) ? 1 : 0);
}

}  // namespace equiforms
