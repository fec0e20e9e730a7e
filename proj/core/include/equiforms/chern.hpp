#pragma once
// Relative Chern characters of odd Hermitian symbols on R^d with circle
// weights: superconnection curvature, Quillen character Str(e^F), the
// transgression eta and its t-integral beta, the three representatives
// (relative pair, cutoff-supported, Gaussian), tensor products of symbols,
// and the comparison harnesses against the fiberwise Thom forms.

#include <random>

#include "equiforms/clifford.hpp"
#include "equiforms/equivariant.hpp"
#include "equiforms/numeval.hpp"
#include "equiforms/thom.hpp"

namespace equiforms {

// odd symbol with exact polynomial entries: v(x) = [[0, sigma*],[sigma, 0]]
// up to basis bookkeeping, with the circle acting diagonally on the bundle
// (weight w_i on basis vector i) and by plane rotations on the base
// (speed blocks[k] on the (2k-1, 2k) plane)
struct SymbolMorphism {
  std::string name;
  int d = 0;
  int N = 0;
  std::vector<int> parity;
  Mat<ScalarExpr> v;
  std::vector<Rational> weights;  // mu = diag(weights[i] * i theta)
  std::vector<Rational> blocks;   // base rotation speeds, may be empty (trivial)

  // mu as an exact matrix
  Mat<ScalarExpr> mu() const;
};

SymbolMorphism symbol_bott();
SymbolMorphism symbol_complex1();  // the rank-one complex case; same data as bott
// spinor symbol -i c(x) on R^{2n}; rotation speed nu_k on plane k gives
// bundle weights sum_k (nu_k/2)(2 n_k - 1) (half-integers for odd speeds)
SymbolMorphism symbol_spin(int n, const std::vector<Rational>& nu);
// spin twisted by a unit-weight circle factor: every bundle weight + 1
SymbolMorphism symbol_spinc(int n, const std::vector<Rational>& nu);
SymbolMorphism symbol_by_name(const std::string& name);  // "bott", "spin:n", "spinc:n", "complex:1"

// graded tensor product: v = v1 (x) Id + Id (x) v2, weights add, base
// coordinates of the second factor shifted past the first
SymbolMorphism odot_product(const SymbolMorphism& s1, const SymbolMorphism& s2);

// scale the symbol by a rational factor (v -> c v)
SymbolMorphism scaled_symbol(const SymbolMorphism& s, const Rational& c);

// random polynomial symbol on R^d with graded dims (p|q); exact rational
// coefficients, zero weights (numeric routes only)
SymbolMorphism random_polynomial_symbol(int d, int p, int q, int degree, std::mt19937_64& rng);

// base circle action as an antisymmetric matrix: entry (2k-1, 2k) = blocks[k] * theta
XMatrix theta_action(int d, const std::vector<Rational>& blocks);

// smallest eigenvalue of v(x)^2 at a numeric point (support detector)
double h_sigma(const SymbolMorphism& s, const std::vector<double>& x);

// curvature F(t) = -t^2 v^2 + i t [d, v] + mu, entries exact, t symbolic
SuperForm<ScalarExpr> curvature_sigma(const SymbolMorphism& s);

// e^{F(t)} in the theta-Laurent ring; requires v^2 = c r^2 Id (c > 0
// rational) and the diagonal weight structure
SuperForm<ScalarExpr> exp_curvature_theta(const SymbolMorphism& s);

Form ch_quillen_t(const SymbolMorphism& s);               // Str e^{F(t)}, t symbolic
Form ch_quillen(const SymbolMorphism& s, const Rational& t0);
Form transgression_eta(const SymbolMorphism& s);          // -Str(i v e^{F(t)})
Form beta_sigma(const SymbolMorphism& s);                 // int_0^infty eta dt

// all three representatives plus the transgression data; construction
// verifies the closedness, transgression, retarded, and boundary identities
// exactly and throws on any failure
struct ChernTriple {
  SymbolMorphism s;
  Form ch;      // Str e^{mu}, the t = 0 boundary
  Form eta;     // t symbolic
  Form beta;
  Form ch_sup;  // chi ch + dchi beta, radial cutoff
  Form ch_q;    // Str e^{F(1)}

  RelativePair rel() const { return {ch, beta}; }
};

ChernTriple ch_triple(const SymbolMorphism& s);

// numeric route for symbols without the exact shape
SuperForm<CD> curvature_numeric(const SymbolMorphism& s, double t,
                                const std::vector<double>& x, double theta);
NumericForm ch_quillen_numeric(const SymbolMorphism& s, double t,
                               const std::vector<double>& x, double theta);
NumericForm eta_numeric(const SymbolMorphism& s, double t,
                        const std::vector<double>& x, double theta);

// factor (2 i pi)^n as an exact constant
ConstantScalar two_i_pi_pow(int n);
// g(i theta) = (e^{i theta} - 1)/(i theta) in the theta-Laurent ring
ScalarExpr g_itheta(int d);
CD g_itheta_numeric(double theta);

struct DeviationReport {
  std::string name;
  int samples = 0;
  double max_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// spinor Chern forms against (-2i)^n j^{1/2}(Y^tau) times the fiberwise
// exponentials at Y^tau = 2 Y, both the character and the transgression
DeviationReport check_ch_wedge(int n, int samples, uint64_t seed, double tol = 1e-9);

// Ch_Q(sigma) vs (2 i pi)^n * factor * Th_MQ(Y^tau) at numeric samples
DeviationReport riemann_roch_check(const std::string& which, int n, int samples,
                                   uint64_t seed, double tol = 1e-9);

// integral of the compactly supported character of bott (x) bott over R^4
// against (2 i pi g(i theta))^2 at the given theta samples
DeviationReport multiplicativity_integral_check(const std::vector<double>& thetas,
                                                double tol = 1e-6);

}  // namespace equiforms
