#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "steklov/numerics.hpp"

namespace steklov {

enum class Family { Disk, Polygon, Ellipse, Hippopede, Custom };

std::string family_name(Family f);

/// Planar starlike domain in polar form: boundary point at angle theta is
/// origin + R(theta) e^{i theta}. R is positive, 2pi-periodic and Lipschitz;
/// kinks lists the angles where R' jumps (empty for smooth boundaries).
/// Immutable after construction; safe to share across threads.
struct StarlikeDomain {
  std::function<double(double)> radius;
  std::function<double(double)> radius_deriv;
  std::array<double, 2> origin{0.0, 0.0};
  Family family = Family::Custom;
  double param = 0.0;  // N, eps or delta for the named families
  std::vector<double> kinks;

  double r(double theta) const { return radius(theta); }
  double dr(double theta) const { return radius_deriv(theta); }

  /// sqrt(R^2 + R'^2), the arclength density ds/dtheta.
  double arclength_density(double theta) const;

  /// Boundary point relative to the origin field.
  std::array<double, 2> boundary_point(double theta) const;

  /// Outward unit normal at the boundary point.
  std::array<double, 2> outward_normal(double theta) const;

  double max_radius() const;
};

/// Strictly positive 2pi-periodic boundary density. Plays two roles: the
/// weight q along Sigma (parametrized by the starlike angle) and the circle
/// weight p obtained from a conformal map.
struct BoundaryWeight {
  std::function<double(double)> density;
  bool l2_flag = true;
  SingularityTag singularity;  // empty when the density is smooth

  double operator()(double theta) const { return density(theta); }
  static BoundaryWeight constant(double c);
  bool is_constant() const;
};

/// Complex dilatation mu(theta) of a quasiconformal map whose dilatation
/// depends only on the angular variable. sup|mu| < 1.
struct AngularDilatation {
  std::function<std::complex<double>(double)> mu;
  double sup_norm = 0.0;
};

StarlikeDomain make_disk(double radius = 1.0);

/// Regular N-gon with inscribed circle of radius 1, one side midpoint on the
/// positive x-axis: R(theta) = sec(theta) on (-pi/N, pi/N), repeated.
StarlikeDomain make_polygon(int n_sides);

/// Ellipse with the longer semiaxis of length 1 along the horizontal axis
/// and eccentricity eps: R(theta) = sqrt(1-eps^2)/sqrt(1-eps^2 cos^2 theta).
StarlikeDomain make_ellipse(double eps);

/// Hippopede R(theta) = sqrt(sin^2 theta + delta^2 cos^2 theta), delta in
/// (0,1]. delta=1 is the unit disk; delta->0 pinches into two tangent disks.
StarlikeDomain make_hippopede(double delta);

/// Convex polygon from counterclockwise vertices; the origin must lie inside.
StarlikeDomain make_convex_polygon(
    const std::vector<std::array<double, 2>>& vertices);

/// Custom domain from analytic radius and derivative callables.
StarlikeDomain domain_from_function(std::function<double(double)> radius,
                                    std::function<double(double)> radius_deriv,
                                    std::vector<double> kinks = {});

/// Custom domain from radius samples at theta_k = 2 pi k / n. The derivative
/// is formed by 4th-order central differences on the grid; off-grid values
/// come from barycentric trigonometric interpolation of both sample sets.
StarlikeDomain domain_from_samples(const std::vector<double>& radius_samples);

/// q-weighted boundary length L(Sigma,q) = int sqrt(R^2+R'^2) q dtheta.
double weighted_perimeter(const StarlikeDomain& d, const BoundaryWeight& q);

/// Integrates f over [0,2pi) splitting at the domain's kinks.
double integrate_boundary(const StarlikeDomain& d,
                          const std::function<double(double)>& f);

/// Circle weight p = (q o f)|f'| for the family's unit-disk conformal map f,
/// scaled so that the mass of p equals the perimeter of the domain built by
/// the matching make_* constructor (q == 1). Supported: Disk, Polygon (with
/// its corner singularity tag; not square-integrable for N <= 4) and
/// Hippopede. Throws UnsupportedFamily for the ellipse, whose disk map has no
/// elementary form.
BoundaryWeight conformal_weight(Family family, double param = 0.0);

/// Complex dilatation of the starlike stretch map f(r e^{i theta}) =
/// R(theta) r e^{i theta}: mu = e^{2 i theta} i R' / (2R - i R').
AngularDilatation starlike_dilatation(const StarlikeDomain& d);

/// Loads {"family": "polygon|ellipse|hippopede|custom", "param": number,
/// "samples": optional array, "origin": [x,y]} from a JSON string or file.
/// "disk" is accepted as a convenience alias. Throws InvalidConfig.
StarlikeDomain domain_from_json(const std::string& json_text);
StarlikeDomain load_domain_file(const std::string& path);

}  // namespace steklov
