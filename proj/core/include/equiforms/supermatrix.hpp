#pragma once
// Z2-graded matrix-valued forms.  A SuperForm stores, per dx-subset, one
// square matrix over S (complex double or ScalarExpr); the represented
// element is sum_J dx_J (x) M_J with the form factor on the left.  Products
// use the Koszul rule: a matrix of parity p crossing a form of degree q
// picks up (-1)^{pq}, realized by parity-splitting the left matrix.

#include <complex>
#include <functional>

#include "equiforms/form.hpp"

namespace equiforms {

inline bool sm_is_zero(const CD& v) { return v == CD(0.0, 0.0); }
inline bool sm_is_zero(const ScalarExpr& v) { return v.is_zero(); }

template <class S>
struct Mat {
  int n = 0;
  std::vector<S> a;

  Mat() = default;
  explicit Mat(int nn) : n(nn), a(static_cast<size_t>(nn) * nn) {}

  S& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const S& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  bool is_zero() const {
    for (const auto& v : a)
      if (!sm_is_zero(v)) return false;
    return true;
  }
  Mat operator+(const Mat& o) const {
    Mat out(n);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + o.a[i];
    return out;
  }
  Mat operator-(const Mat& o) const {
    Mat out(n);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] - o.a[i];
    return out;
  }
  Mat operator-() const {
    Mat out(n);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = -a[i];
    return out;
  }
  Mat operator*(const Mat& o) const {
    Mat out(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const S& v = at(i, k);
        if (sm_is_zero(v)) continue;
        for (int j = 0; j < n; ++j) out.at(i, j) += v * o.at(k, j);
      }
    return out;
  }
  Mat scale(const S& s) const {
    Mat out(n);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] * s;
    return out;
  }
  static Mat identity(int n, const S& one) {
    Mat out(n);
    for (int i = 0; i < n; ++i) out.at(i, i) = one;
    return out;
  }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
};

// parity-split: even part keeps entries with p(i) == p(j), odd the rest
template <class S>
void parity_split(const Mat<S>& m, const std::vector<int>& parity, Mat<S>& even, Mat<S>& odd) {
  even = Mat<S>(m.n);
  odd = Mat<S>(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      (parity[i] == parity[j] ? even : odd).at(i, j) = m.at(i, j);
}

template <class S>
struct SuperForm {
  int d = 0;
  int n = 0;
  std::vector<int> parity;
  std::map<uint32_t, Mat<S>> terms;

  SuperForm() = default;
  SuperForm(int dim, int nn, std::vector<int> par)
      : d(dim), n(nn), parity(std::move(par)) {}

  void add_term(uint32_t mask, const Mat<S>& m) {
    if (m.is_zero()) return;
    auto it = terms.find(mask);
    if (it == terms.end())
      terms[mask] = m;
    else {
      it->second = it->second + m;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  Mat<S> coefficient(uint32_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? Mat<S>(n) : it->second;
  }

  SuperForm operator+(const SuperForm& o) const {
    SuperForm out = *this;
    for (const auto& [k, m] : o.terms) out.add_term(k, m);
    return out;
  }
  SuperForm operator-(const SuperForm& o) const {
    SuperForm out = *this;
    for (const auto& [k, m] : o.terms) out.add_term(k, -m);
    return out;
  }
  SuperForm scale(const S& s) const {
    SuperForm out(d, n, parity);
    for (const auto& [k, m] : terms) out.add_term(k, m.scale(s));
    return out;
  }

  SuperForm operator*(const SuperForm& o) const {
    SuperForm out(d, n, parity);
    for (const auto& [ka, ma] : terms)
      for (const auto& [kb, mb] : o.terms) {
        int sgn = epsilon_sign(ka, kb);
        if (!sgn) continue;
        Mat<S> even(n), odd(n);
        parity_split(ma, parity, even, odd);
        int qb = std::popcount(kb);
        Mat<S> left = (qb & 1) ? even - odd : even + odd;
        Mat<S> prod = left * mb;
        if (sgn < 0) prod = -prod;
        out.add_term(ka | kb, prod);
      }
    return out;
  }

  std::map<uint32_t, S> supertrace() const {
    std::map<uint32_t, S> out;
    for (const auto& [k, m] : terms) {
      S tr{};
      for (int i = 0; i < n; ++i) {
        if (parity[i])
          tr = tr - m.at(i, i);
        else
          tr = tr + m.at(i, i);
      }
      if (!sm_is_zero(tr)) out[k] = tr;
    }
    return out;
  }
};

// enumerate ordered tuples of pairwise-disjoint nonempty letter masks;
// visitor receives (indices into letters, wedge sign of dx_{J_1}...dx_{J_k})
void for_each_letter_sequence(const std::vector<uint32_t>& letters,
                              const std::function<void(const std::vector<int>&, int)>& visit);

// exp by scaling-and-squaring on the degree-0 block plus Van Loan block
// matrices for the iterated form corrections; degree-0 block must be even
SuperForm<CD> super_exp_numeric(const SuperForm<CD>& m);

// same expansion with simplex integrals evaluated on the eigenbasis of the
// degree-0 block via divided differences of exp (independent of the matrix
// exponential used above)
SuperForm<CD> volterra_exp(const SuperForm<CD>& m);

// divided difference exp[mu_0, ..., mu_k] (symmetric, confluent-safe)
CD divided_difference_exp(std::vector<CD> nodes);

// exact theta-parameter Volterra expansion.  The degree-0 block must be
// diagonal with entries q_i * (i theta), q_i rational with 2 q_i integral;
// letters carry ScalarExpr entries.  Gaussian scalar factors are the
// caller's responsibility.
SuperForm<ScalarExpr> super_exp_theta(int d, const std::vector<Rational>& q_diag,
                                      const SuperForm<ScalarExpr>& letters);

ScalarExpr divided_difference_exp_theta(int d, std::vector<Rational> q_nodes);

}  // namespace equiforms
