#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

/// Scale-invariant distortion factors of a (domain, weight) pair. Values are
/// >= 1 when defined; +infinity encodes a divergent factor (printed as
/// "inf"), NaN a factor the chosen route cannot compute (e.g. gamma for an
/// ellipse). finite() distinguishes the three states.
struct GeometricFactors {
  double g0 = std::numeric_limits<double>::quiet_NaN();
  double g1 = std::numeric_limits<double>::quiet_NaN();
  double g = std::numeric_limits<double>::quiet_NaN();
  double gamma1 = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();

  static bool finite(double v) { return std::isfinite(v); }
  static bool infinite(double v) { return std::isinf(v); }
  static bool available(double v) { return !std::isnan(v); }
};

struct DilatationCoeffs {
  double a0 = 1.0;
  double a1 = 1.0;
  double a2 = 0.0;
};

/// Quadratic-form coefficients of the Dirichlet integral pulled back through
/// a quasiconformal map with angular dilatation mu. Satisfies
/// a0*a1 - (a2/2)^2 == 1. Throws DegenerateDilatation when |mu| >= 1.
DilatationCoeffs dilatation_coeffs(const AngularDilatation& mu, double theta);

/// General-route factors of an angular dilatation and circle weight:
/// g0 = mean of a0(theta), g1 = mean of a1 p^2 over squared mean of p.
/// Their product is >= 1 for every admissible pair.
double g0_general(const AngularDilatation& mu);
double g1_general(const AngularDilatation& mu, const BoundaryWeight& p);

/// g0 = 1 + (1/2pi) int (log R)'^2 dtheta; equals 1 iff R is constant.
double g0_starlike(const StarlikeDomain& d);

/// g1 = mean of (R^2+R'^2) q^2 over the squared mean of sqrt(R^2+R'^2) q.
double g1_starlike(const StarlikeDomain& d, const BoundaryWeight& q);

/// Starlike-route factors: g0, g1 and g = sqrt(g0 g1). The conformal fields
/// are left unavailable on this route.
GeometricFactors g_factor(const StarlikeDomain& d, const BoundaryWeight& q);

/// gamma_1(p) = mean(p^2) / mean(p)^2; +infinity when p is not in L^2.
double gamma1(const BoundaryWeight& p);

/// gamma(p) = {mean(p^2)^2 - |mean(p^2 e^{i theta})|^2}^{1/4} / mean(p);
/// the Moebius-minimal value sqrt(gamma_*). +infinity when p is not in L^2.
double gamma_factor(const BoundaryWeight& p);

struct MobiusResult {
  std::complex<double> zeta_min;  // |zeta_min| < 1
  double A = 0.0;                 // int p^2 dtheta
  std::complex<double> B;         // int p^2 e^{i theta} dtheta
  double gamma_star = 0.0;        // min over Moebius maps of gamma_1
};

/// Minimizes gamma_1 of the pushforward weight over Moebius automorphisms of
/// the disk. The minimizer is zeta_min = -c/(1+sqrt(1-|c|^2)) with c = B/A,
/// and gamma_star = gamma(p)^2. Throws NotInL2 for non-square-integrable p.
MobiusResult mobius_optimize(const BoundaryWeight& p);

/// Weight of the reparametrized map f((z+zeta)/(1+z conj(zeta)) * e^{i phi});
/// mass is preserved, and at zeta_min the pushforward has center of mass of
/// p^2 dtheta at the origin.
BoundaryWeight mobius_pushforward(const BoundaryWeight& p,
                                  std::complex<double> zeta, double phi = 0.0);

/// Starlike factors of the fixed boundary curve about an alternative origin
/// point (unweighted case). Throws InfeasibleOrigin when the curve is not
/// starlike about omega.
GeometricFactors factors_about_origin(const StarlikeDomain& d,
                                      const std::array<double, 2>& omega);

struct OriginOptions {
  std::optional<std::array<double, 2>> seed;  // default: area centroid
  double simplex_tol = 1e-10;
  bool grid_scan = false;  // 21x21 feasible-grid sanity scan
  std::function<bool(const std::array<double, 2>&)> feasible;  // extra filter
};

struct OriginResult {
  std::array<double, 2> origin{0.0, 0.0};
  GeometricFactors factors;
  int evaluations = 0;
  std::optional<std::array<double, 2>> grid_best;
};

/// Minimizes g(omega) = sqrt(g0(omega) g1(omega)) over origins in the
/// Lipschitz kernel by simplex descent from the centroid followed by a
/// Newton polish on the analytic gradient. Requires q == 1.
OriginResult optimize_origin(const StarlikeDomain& d, const BoundaryWeight& q,
                             const OriginOptions& options = {});

/// Closed-form family factors; each agrees with the quadrature route.
GeometricFactors disk_factors();
GeometricFactors polygon_factors(int n_sides);   // gamma infinite for N<=4
GeometricFactors ellipse_factors(double eps);    // gamma unavailable
GeometricFactors hippopede_factors(double delta);  // L by quadrature

/// Closed-form factors when the family has them.
std::optional<GeometricFactors> family_factors(Family family, double param);

struct AsymptoticResiduals {
  double g_scaled;      // |g - (1 + pi^2/6N^2 + 7pi^4/72N^4)| * N^6
  double gamma_scaled;  // |gamma - (1 + pi^2/6N^2 + 6 zeta(3)/N^3
                        //           + 103 pi^4/360 N^4)| * N^5
};

/// Large-N expansion residuals for the regular polygon factors. N >= 5.
AsymptoticResiduals asymptotic_check(int n_sides);

/// Harmonic test functions (given by their polar derivatives) for checking
/// the Dirichlet-integral transformation rule.
struct HarmonicTestFunction {
  std::string name;
  std::function<double(double, double)> radial_deriv;   // h_r(r, theta)
  std::function<double(double, double)> angular_deriv;  // h_theta(r, theta)
};

const std::vector<HarmonicTestFunction>& dirichlet_test_functions();

/// Relative difference between the Dirichlet integral of h composed with the
/// inverse starlike stretch map, evaluated directly over the domain, and its
/// pullback form over the unit disk with coefficients a0, a1, a2.
double verify_dirichlet_transform(const StarlikeDomain& d,
                                  const HarmonicTestFunction& h);

}  // namespace steklov
