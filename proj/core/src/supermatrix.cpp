#include "equiforms/supermatrix.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace equiforms {

namespace {

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const Mat<CD>& m) {
  EMat out(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out(i, j) = m.at(i, j);
  return out;
}

Mat<CD> from_eigen(const EMat& e) {
  Mat<CD> out(static_cast<int>(e.rows()));
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j) out.at(i, j) = e(i, j);
  return out;
}

void check_even_degree0(const SuperForm<CD>& m, const Mat<CD>& b) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.parity[i] != m.parity[j] && std::abs(b.at(i, j)) > 1e-12)
        throw std::domain_error("super_exp: degree-0 block has an odd part");
}

// letters of m: positive-degree terms, parity corrected for the forms they
// will later cross (suffix of the sequence), as plain matrices
struct LetterSet {
  std::vector<uint32_t> masks;
  std::vector<Mat<CD>> even, odd;
};

LetterSet split_letters(const SuperForm<CD>& m) {
  LetterSet ls;
  for (const auto& [k, mat] : m.terms) {
    if (k == 0) continue;
    Mat<CD> e(m.n), o(m.n);
    parity_split(mat, m.parity, e, o);
    ls.masks.push_back(k);
    ls.even.push_back(e);
    ls.odd.push_back(o);
  }
  return ls;
}

// matrices in sequence order with Koszul signs: letter m crosses the dx
// factors of all letters after it, so its odd part flips by the suffix degree
std::vector<Mat<CD>> signed_sequence(const LetterSet& ls, const std::vector<int>& seq) {
  int k = static_cast<int>(seq.size());
  std::vector<int> suffix(k, 0);
  for (int m = k - 2; m >= 0; --m)
    suffix[m] = suffix[m + 1] + std::popcount(ls.masks[seq[m + 1]]);
  std::vector<Mat<CD>> out;
  out.reserve(k);
  for (int m = 0; m < k; ++m) {
    if (suffix[m] & 1)
      out.push_back(ls.even[seq[m]] - ls.odd[seq[m]]);
    else
      out.push_back(ls.even[seq[m]] + ls.odd[seq[m]]);
  }
  return out;
}

}  // namespace

void for_each_letter_sequence(const std::vector<uint32_t>& letters,
                              const std::function<void(const std::vector<int>&, int)>& visit) {
  std::vector<int> seq;
  uint32_t used = 0;
  std::function<void(int)> rec = [&](int sign) {
    if (!seq.empty()) visit(seq, sign);
    for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
      if (used & letters[i]) continue;
      int s = epsilon_sign(used, letters[i]);
      if (!s) continue;
      seq.push_back(i);
      used |= letters[i];
      rec(sign * s);
      used &= ~letters[i];
      seq.pop_back();
    }
  };
  rec(1);
}

SuperForm<CD> super_exp_numeric(const SuperForm<CD>& m) {
  Mat<CD> b = m.coefficient(0);
  check_even_degree0(m, b);
  EMat B = to_eigen(b);
  int n = m.n;

  SuperForm<CD> out(m.d, n, m.parity);
  out.add_term(0, from_eigen(B.exp()));

  LetterSet ls = split_letters(m);
  for_each_letter_sequence(ls.masks, [&](const std::vector<int>& seq, int sign) {
    int k = static_cast<int>(seq.size());
    std::vector<Mat<CD>> as = signed_sequence(ls, seq);
    // Van Loan block-bidiagonal matrix: exp of it carries the simplex
    // integral int e^{u0 B} A_1 e^{u1 B} ... A_k e^{uk B} in its corner
    int N = (k + 1) * n;
    EMat big = EMat::Zero(N, N);
    for (int blk = 0; blk <= k; ++blk) big.block(blk * n, blk * n, n, n) = B;
    for (int blk = 0; blk < k; ++blk) big.block(blk * n, (blk + 1) * n, n, n) = to_eigen(as[blk]);
    EMat corner = big.exp().block(0, k * n, n, n);
    uint32_t mask = 0;
    for (int i : seq) mask |= ls.masks[i];
    if (sign < 0) corner = -corner;
    out.add_term(mask, from_eigen(corner));
  });
  return out;
}

CD divided_difference_exp(std::vector<CD> nodes) {
  if (nodes.empty()) return CD(0.0);
  std::sort(nodes.begin(), nodes.end(), [](const CD& a, const CD& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  size_t k = nodes.size() - 1;
  if (k == 0) return std::exp(nodes[0]);
  CD span = nodes.back() - nodes.front();
  if (std::abs(span) >= 0.25) {
    std::vector<CD> tail(nodes.begin() + 1, nodes.end());
    std::vector<CD> init(nodes.begin(), nodes.end() - 1);
    return (divided_difference_exp(std::move(tail)) - divided_difference_exp(std::move(init))) / span;
  }
  // clustered nodes: center and sum exp's Newton series,
  // dd[e^x] = e^c sum_j h_j(delta) / (j+k)!  with h_j complete homogeneous
  CD c(0.0);
  for (const CD& z : nodes) c += z;
  c /= static_cast<double>(nodes.size());
  std::vector<CD> delta(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) delta[i] = nodes[i] - c;
  std::vector<CD> h(1, CD(1.0));  // h[j] over vars processed so far
  const int JMAX = 40;
  h.resize(JMAX + 1, CD(0.0));
  for (size_t v = 0; v < delta.size(); ++v) {
    // multiply generating function by 1/(1 - delta_v t)
    for (int j = 1; j <= JMAX; ++j) h[j] += delta[v] * h[j - 1];
  }
  double fact = 1.0;
  for (size_t j = 2; j <= k; ++j) fact *= static_cast<double>(j);
  CD sum(0.0);
  double denom = fact;  // (j+k)! starting at j=0
  // no early exit: h_j vanishes identically on odd j for symmetric clusters,
  // so a single tiny term does not signal convergence
  for (int j = 0; j <= JMAX; ++j) {
    if (j > 0) denom *= static_cast<double>(j + k);
    sum += h[j] / denom;
  }
  return std::exp(c) * sum;
}

SuperForm<CD> volterra_exp(const SuperForm<CD>& m) {
  Mat<CD> b = m.coefficient(0);
  check_even_degree0(m, b);
  int n = m.n;
  Eigen::ComplexEigenSolver<EMat> es(to_eigen(b));
  if (es.info() != Eigen::Success) throw std::runtime_error("volterra_exp: eigensolve failed");
  EMat P = es.eigenvectors();
  Eigen::VectorXcd mu = es.eigenvalues();
  Eigen::PartialPivLU<EMat> lu(P);
  EMat Pinv = lu.solve(EMat::Identity(n, n));

  SuperForm<CD> out(m.d, n, m.parity);
  {
    EMat e0 = EMat::Zero(n, n);
    for (int i = 0; i < n; ++i) e0(i, i) = std::exp(mu(i));
    out.add_term(0, from_eigen(P * e0 * Pinv));
  }

  LetterSet ls = split_letters(m);
  for_each_letter_sequence(ls.masks, [&](const std::vector<int>& seq, int sign) {
    int k = static_cast<int>(seq.size());
    std::vector<Mat<CD>> as = signed_sequence(ls, seq);
    std::vector<EMat> at;
    at.reserve(k);
    for (const auto& a : as) at.push_back(Pinv * to_eigen(a) * P);
    // path sum over intermediate eigenindices with divided-difference weights
    EMat block = EMat::Zero(n, n);
    std::vector<int> path(k + 1, 0);
    std::function<void(int, CD)> walk = [&](int depth, CD prod) {
      if (prod == CD(0.0)) return;
      if (depth == k) {
        std::vector<CD> nodes(k + 1);
        for (int t = 0; t <= k; ++t) nodes[t] = mu(path[t]);
        block(path[0], path[k]) += prod * divided_difference_exp(std::move(nodes));
        return;
      }
      for (int next = 0; next < n; ++next) {
        path[depth + 1] = next;
        walk(depth + 1, prod * at[depth](path[depth], next));
      }
    };
    for (int start = 0; start < n; ++start) {
      path[0] = start;
      walk(0, CD(1.0));
    }
    EMat corner = P * block * Pinv;
    uint32_t mask = 0;
    for (int i : seq) mask |= ls.masks[i];
    if (sign < 0) corner = -corner;
    out.add_term(mask, from_eigen(corner));
  });
  return out;
}

ScalarExpr divided_difference_exp_theta(int d, std::vector<Rational> q_nodes) {
  if (q_nodes.empty()) return ScalarExpr::zero(d);
  std::sort(q_nodes.begin(), q_nodes.end());
  size_t k = q_nodes.size() - 1;
  if (q_nodes.front() == q_nodes.back()) {
    // all nodes equal q: e^{q i theta} / k!
    Rational q2 = q_nodes.front() * 2;
    if (q2.denominator() != 1)
      throw std::domain_error("theta exponential requires half-integer coefficients");
    BigInt fact = 1;
    for (size_t j = 2; j <= k; ++j) fact *= j;
    return ScalarExpr::eith_half(d, static_cast<int>(q2.numerator()))
        .scaled(ConstantScalar(Rational(BigInt(1), fact)));
  }
  std::vector<Rational> tail(q_nodes.begin() + 1, q_nodes.end());
  std::vector<Rational> init(q_nodes.begin(), q_nodes.end() - 1);
  ScalarExpr diff = divided_difference_exp_theta(d, std::move(tail)) -
                    divided_difference_exp_theta(d, std::move(init));
  // divide by (q_k - q_0) i theta;  1/i = -i
  Rational span = q_nodes.back() - q_nodes.front();
  ScalarExpr inv =
      ScalarExpr::theta_pow(d, -1).scaled(ConstantScalar::monomial(-(Rational(1) / span), 1, 0));
  return diff * inv;
}

SuperForm<ScalarExpr> super_exp_theta(int d, const std::vector<Rational>& q_diag,
                                      const SuperForm<ScalarExpr>& letters) {
  int n = letters.n;
  if (static_cast<int>(q_diag.size()) != n)
    throw std::invalid_argument("super_exp_theta: diagonal size mismatch");
  if (letters.terms.count(0))
    throw std::invalid_argument("super_exp_theta: letters must have positive degree");

  SuperForm<ScalarExpr> out(d, n, letters.parity);
  {
    Mat<ScalarExpr> e0(n);
    for (int i = 0; i < n; ++i)
      e0.at(i, i) = divided_difference_exp_theta(d, {q_diag[i]});
    out.add_term(0, e0);
  }

  std::vector<uint32_t> masks;
  std::vector<Mat<ScalarExpr>> even, odd;
  for (const auto& [k, mat] : letters.terms) {
    Mat<ScalarExpr> e(n), o(n);
    parity_split(mat, letters.parity, e, o);
    masks.push_back(k);
    even.push_back(e);
    odd.push_back(o);
  }

  for_each_letter_sequence(masks, [&](const std::vector<int>& seq, int sign) {
    int k = static_cast<int>(seq.size());
    std::vector<int> suffix(k, 0);
    for (int m = k - 2; m >= 0; --m)
      suffix[m] = suffix[m + 1] + std::popcount(masks[seq[m + 1]]);
    std::vector<Mat<ScalarExpr>> as;
    as.reserve(k);
    for (int m = 0; m < k; ++m)
      as.push_back((suffix[m] & 1) ? even[seq[m]] - odd[seq[m]] : even[seq[m]] + odd[seq[m]]);

    Mat<ScalarExpr> block(n);
    std::vector<int> path(k + 1, 0);
    std::function<void(int, ScalarExpr)> walk = [&](int depth, ScalarExpr prod) {
      if (prod.is_zero()) return;
      if (depth == k) {
        std::vector<Rational> nodes(k + 1);
        for (int t = 0; t <= k; ++t) nodes[t] = q_diag[path[t]];
        block.at(path[0], path[k]) +=
            prod * divided_difference_exp_theta(d, std::move(nodes));
        return;
      }
      for (int next = 0; next < n; ++next) {
        path[depth + 1] = next;
        walk(depth + 1, prod * as[depth].at(path[depth], next));
      }
    };
    for (int start = 0; start < n; ++start) {
      path[0] = start;
      walk(0, ScalarExpr::one(d));
    }
    uint32_t mask = 0;
    for (int i : seq) mask |= masks[i];
    if (sign < 0) block = -block;
    out.add_term(mask, block);
  });
  return out;
}

}  // namespace equiforms
