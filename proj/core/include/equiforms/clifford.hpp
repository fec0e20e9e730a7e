#pragma once
// Clifford generators on the 2^n-dimensional spinor space, built from
// fermionic ladder operators on subset states.  Generators square to -1,
// anticommute, are skew-adjoint, and have entries in {0, +-1, +-i} exactly.

#include "equiforms/supermatrix.hpp"

namespace equiforms {

struct CliffordModule {
  int n = 0;                 // number of ladder modes; 2n generators
  int N = 0;                 // 2^n
  std::vector<int> parity;   // subset-size parity per basis state
  std::vector<Mat<CD>> gen;  // gen[m] is c_{m+1}, m in [0, 2n)

  const Mat<CD>& c(int m) const { return gen[m - 1]; }  // 1-based
  Mat<CD> pair_product(int k) const;                    // c_{2k-1} c_{2k}
  Mat<CD> vector_insert(const std::vector<double>& x) const;  // sum_m x_m c_m
  // sum_m x_m (x) c_m with symbolic coordinates on R^d, d = 2n
  Mat<ScalarExpr> vector_insert_symbolic() const;
};

CliffordModule build_clifford(int n);

// entries must lie in Z + iZ; converts exactly
Mat<ScalarExpr> to_exact(const Mat<CD>& m, int d);

// -t^2 |x|^2 + t sum_k dx_k c_k + sum_k lam_k c_{2k-1} c_{2k}
SuperForm<CD> curvature_spin(const CliffordModule& cm, double t,
                             const std::vector<double>& lam,
                             const std::vector<double>& x);

// closed-form exponential of the block letter t(dx_{2k-1} c_{2k-1} + dx_{2k} c_{2k})
// + lam c_{2k-1} c_{2k}; the scalar gaussian is not included
SuperForm<CD> exp_Bk_closed(const CliffordModule& cm, int k, double t, double lam);

// det^{1/2}((e^{A/2} - e^{-A/2})/A) on a real antisymmetric d x d matrix
// (row-major flat), principal branch with value 1 at A = 0; requires all
// angular eigenvalues inside (-2 pi, 2 pi)
double j_half(int d, const std::vector<double>& a_flat);

// block-diagonal antisymmetric matrix with A(2k-1, 2k) = w_k, flat row-major
std::vector<double> antisym_blocks(int d, const std::vector<double>& w);

}  // namespace equiforms
