// Berezin-integral pfaffian against two independently coded oracles:
// recursive first-row expansion and the Leibniz permanent-with-sign
// determinant.
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "equiforms/form.hpp"

using namespace equiforms;

namespace {

XPoly det_leibniz(const XMatrix& X, const std::vector<int>& I) {
  int d = X.d;
  int n = static_cast<int>(I.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  XPoly out = XPoly::zero(d);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    bool vanishes = false;
    XPoly term = XPoly::constant(d, ConstantScalar::integer(inv % 2 ? -1 : 1));
    for (int i = 0; i < n; ++i) {
      if (perm[i] == i) {  // diagonal of an antisymmetric matrix
        vanishes = true;
        break;
      }
      term = term * X.entry(I[i], I[perm[i]]);
    }
    if (!vanishes) out += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

XPoly pf_recursive(const XMatrix& X, const std::vector<int>& I) {
  int d = X.d;
  if (I.empty()) return XPoly::one(d);
  if (I.size() % 2) return XPoly::zero(d);
  XPoly out = XPoly::zero(d);
  for (size_t j = 1; j < I.size(); ++j) {
    std::vector<int> rest;
    for (size_t k = 1; k < I.size(); ++k)
      if (k != j) rest.push_back(I[k]);
    XPoly term = X.entry(I[0], I[j]) * pf_recursive(X, rest);
    if (j % 2 == 0) term = -term;
    out += term;
  }
  return out;
}

std::vector<int> subset_of(uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 6; ++i)
    if (mask & (1u << i)) out.push_back(i + 1);
  return out;
}

}  // namespace

TEST(Pfaffian, MatchesRecursiveExpansionOnAllMinors) {
  for (int d = 1; d <= 6; ++d) {
    XMatrix X = XMatrix::indeterminates(d);
    for (uint32_t mask = 0; mask < (1u << d); ++mask) {
      std::vector<int> I = subset_of(mask);
      if (I.size() % 2) continue;
      EXPECT_EQ(pfaffian(X, I), pf_recursive(X, I)) << "d=" << d << " mask=" << mask;
    }
  }
}

TEST(Pfaffian, SquareIsLeibnizDeterminant) {
  for (int d : {2, 4, 6}) {
    XMatrix X = XMatrix::indeterminates(d);
    std::vector<int> I(d);
    std::iota(I.begin(), I.end(), 1);
    XPoly pf = pfaffian(X, I);
    EXPECT_EQ(pf * pf, det_leibniz(X, I)) << "d=" << d;
  }
}

TEST(Pfaffian, BlockRotationProduct) {
  XMatrix X = XMatrix::block_rational(6, {rat(2), rat(3), rat(5)});
  EXPECT_EQ(pfaffian(X, {1, 2, 3, 4, 5, 6}),
            XPoly::constant(6, ConstantScalar::integer(30)));
  EXPECT_EQ(pfaffian(X, {1, 2}), XPoly::constant(6, ConstantScalar::integer(2)));
  // a minor mixing two blocks has no matching: zero
  EXPECT_TRUE(pfaffian(X, {1, 3}).is_zero());
}

TEST(Pfaffian, SubstitutionCommutesWithEvaluation) {
  int d = 4;
  XMatrix X = XMatrix::indeterminates(d);
  std::map<std::pair<int, int>, Rational> rentries = {
      {{1, 2}, rat(1, 2)}, {{1, 3}, rat(-3)},   {{1, 4}, rat(2, 5)},
      {{2, 3}, rat(7)},    {{2, 4}, rat(-1, 3)}, {{3, 4}, rat(4)}};
  std::map<std::pair<int, int>, XPoly> vals;
  for (const auto& [kl, r] : rentries)
    vals[kl] = XPoly::constant(d, ConstantScalar(r));
  XMatrix Xr = XMatrix::from_rational_entries(d, rentries);
  std::vector<int> I = {1, 2, 3, 4};
  EXPECT_EQ(pfaffian(X, I).substitute_X(vals), pfaffian(Xr, I));
}
