#pragma once

// Floating-point cross-checks, independent of the exact series code: theta
// functions from their truncated products, the lattice transformation laws,
// double periodicity of the residue integrand, and genera as multivariate
// Cauchy coefficients computed by the trapezoidal rule on circles.

#include <complex>
#include <cstdint>
#include <vector>

#include "stringci/char_series.hpp"
#include "stringci/geometry.hpp"

namespace stringci::oracle {

using Complex = std::complex<double>;

struct ThetaParams {
  Complex tau;
  /// Base number of product factors; evaluation adds more when |w| is large.
  int product_terms;

  /// Chooses product_terms with |q|^{2J} < 1e-16. Requires Im(tau) > 0.
  static ThetaParams from_tau(Complex tau);
  /// tau = log(q) / (pi i) on the principal branch. Requires 0 < |q| < 1.
  static ThetaParams from_q(Complex q);

  Complex q() const;
  /// q^{1/4} = exp(pi i tau / 4).
  Complex q_quarter() const;
};

Complex theta_eval(ThetaKind kind, Complex v, const ThetaParams& params);
/// d/dv theta(v, tau) at v = 0, i.e. 2 pi q^{1/4} prod (1 - q^{2j})^3.
Complex theta_prime_zero(const ThetaParams& params);

struct LawReport {
  double max_residual = 0.0;
  int evaluations = 0;
};

/// Relative residual of the lattice laws for all four theta functions at
/// `trials` random points and every shift m + n tau with m, n in [-2, 2].
LawReport check_lattice_laws(const ThetaParams& params, int trials, std::uint64_t seed);

/// Relative residual of theta(v+m+n tau) against the predicted multiplier
/// for a single point and shift.
double lattice_law_residual(ThetaKind kind, Complex v, int m, int n, const ThetaParams& params);

/// The residue integrand g(x) / prod_q f_q(x_q) in the theta variables,
///   g = prod_p theta(l_p(x)) / theta'(0),  f_q = (theta(x_q) / theta'(0))^{n_q+1}.
Complex residue_integrand(const CompleteIntersection& ci, const std::vector<Complex>& x, const ThetaParams& params);

struct PeriodicityReport {
  double max_residual = 0.0;
  double max_residual_unit_shift = 0.0;
  double max_residual_tau_shift = 0.0;
  int evaluations = 0;
};

/// Max relative change of the integrand under x_q -> x_q + 1 and
/// x_q -> x_q + tau. Throws PreconditionError unless D^T D = diag(n_q + 1),
/// or `force` is set (negative controls).
PeriodicityReport check_integrand_periodicity(const CompleteIntersection& ci, const ThetaParams& params, int trials,
                                              std::uint64_t seed, bool force = false);

enum class NumericGenus { witten, ahat, lgenus };

const char* to_string(NumericGenus kind);

struct ContourSpec {
  /// Circle radii in the Chern-root variable y = 2 pi i v, one per factor.
  /// Empty means "pick automatically".
  std::vector<double> radii;
  /// Samples per circle; a power of two.
  int samples = 64;
  /// q = e^{pi i tau}; q = 0 evaluates the genus at q = 0 (the Ahat genus for witten).
  Complex q = 0.1;
};

/// Radius of convergence in y of the integrand's Q(y) factors.
double pole_distance(NumericGenus kind, Complex q);

/// Default radii: half the pole distance, clipped where l_p(y) must avoid the
/// poles of 1/Q (the L-genus case).
std::vector<double> default_radii(const CompleteIntersection& ci, NumericGenus kind, Complex q);

struct ResidueResult {
  Complex value;
  /// Same quadrature with twice the samples per circle.
  Complex refined;
  /// max |F| / prod r_q^{n_q} over the grid; the scale of rounding error.
  double scale = 0.0;
  std::vector<double> radii;
};

/// Coefficient of y^n in prod_q Q(y_q)^{n_q+1} prod_p l_p(y) / Q(l_p(y)), with
/// Q evaluated from theta quotients (witten), or the closed forms (ahat,
/// lgenus). Throws ConvergenceError when a circle reaches a pole of the
/// integrand or when doubling the sample count moves the result by more than
/// 1e-9 relative.
ResidueResult residue_genus(const CompleteIntersection& ci, NumericGenus kind, const ContourSpec& contour);

struct ResidueSumReport {
  Complex q;
  Complex residue;
  /// (1/2 pi i) times the integral of the integrand over the boundary of the
  /// period parallelogram in y_1 (circles in the other variables). Equals the
  /// sum of residues inside, and vanishes when the integrand is periodic.
  Complex boundary_integral;
};

/// For each q: the origin residue and the boundary integral around a
/// fundamental domain of the y_1-torus.
std::vector<ResidueSumReport> residue_sum_check(const CompleteIntersection& ci, const std::vector<Complex>& qs,
                                                int samples = 64);

}  // namespace stringci::oracle
