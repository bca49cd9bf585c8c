#pragma once

#include <functional>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

/// Samples of a 2pi-periodic function at the equispaced nodes
/// theta_k = 2*pi*k/n. At least 8 samples, all finite.
struct PeriodicSamples {
  std::vector<double> values;

  explicit PeriodicSamples(std::vector<double> v);
  std::size_t size() const { return values.size(); }
  double node(std::size_t k) const;
};

/// Power-law endpoint behaviour of an integrand: f ~ |t - t*|^exponent near
/// each tagged location. exponent <= -1 marks the integral as divergent.
struct SingularityTag {
  std::vector<double> locations;
  double exponent = 0.0;

  bool empty() const { return locations.empty(); }
};

/// (2pi/n) * sum of the samples. Spectrally accurate for smooth periodic
/// integrands; exact for trigonometric polynomials of degree < n/2.
double periodic_trapezoid(const PeriodicSamples& f);

struct QuadratureOptions {
  int initial_nodes = 2048;
  double rel_tol = 1e-11;
  long max_nodes = 1 << 20;
};

/// Trapezoid rule over [0,2pi) with node doubling until two successive
/// values agree to rel_tol (or max_nodes is reached).
double integrate_periodic(const std::function<double(double)>& f,
                          const QuadratureOptions& opts = {});

/// Integrates a piecewise-smooth periodic integrand over [0,2pi), splitting
/// at the given break angles. Break points are never evaluated (composite
/// Gauss panels have interior nodes only), so one-sided derivative jumps are
/// harmless. Falls back to integrate_periodic when breaks is empty.
double integrate_piecewise(const std::function<double(double)>& f,
                           const std::vector<double>& breaks,
                           const QuadratureOptions& opts = {});

/// Improper integral of f over (a,b) where f has power-law singularities at
/// the tagged locations. Geometrically graded meshes (ratio 1/4) feed Gauss
/// panels toward each singular point down to the resolution limit of double
/// precision; the remaining sliver is completed analytically from the tagged
/// exponent. Untagged calls use plain composite Gauss with node doubling
/// plus a divergence heuristic.
///
/// Throws DivergentIntegral when the tagged exponent is <= -1, and
/// PossiblyDivergent when an untagged integrand grows monotonically without
/// settling after five doublings.
double graded_quadrature(const std::function<double(double)>& f, double a,
                         double b, const SingularityTag& tags, int n = 4096);

/// Same over the full period (0, 2pi).
double graded_quadrature(const std::function<double(double)>& f,
                         const SingularityTag& tags, int n = 4096);

double gamma_fn(double x);
double beta_fn(double a, double b);

/// Complete elliptic integral of the second kind, modulus convention:
/// E(eps) = int_0^{pi/2} sqrt(1 - eps^2 sin^2 t) dt, eps in [0,1).
double elliptic_E(double eps);

}  // namespace steklov
