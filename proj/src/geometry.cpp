#include "steklov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace steklov {

namespace {

// Fold theta into [-pi/N, pi/N), the sector of one polygon side.
double fold_sector(double theta, int n_sides) {
  const double sector = two_pi / n_sides;
  return theta - sector * std::round(theta / sector);
}

std::vector<double> polygon_kinks(int n_sides) {
  std::vector<double> kinks(n_sides);
  const double sector = two_pi / n_sides;
  for (int k = 0; k < n_sides; ++k) {
    kinks[k] = 0.5 * sector + k * sector;
  }
  return kinks;
}

// Barycentric trigonometric interpolation on the equispaced periodic grid
// (Henrici's formula; even grids use cot, odd grids csc).
double trig_interpolate(const std::vector<double>& samples, double theta) {
  const std::size_t n = samples.size();
  const double h = two_pi / static_cast<double>(n);
  theta = std::fmod(theta, two_pi);
  if (theta < 0) theta += two_pi;

  const bool even = (n % 2 == 0);
  double num = 0.0;
  double den = 0.0;
  double sign = 1.0;
  for (std::size_t k = 0; k < n; ++k, sign = -sign) {
    double u = 0.5 * (theta - k * h);
    if (std::abs(std::sin(u)) < 1e-13) {
      return samples[k];
    }
    const double w = sign * (even ? std::cos(u) / std::sin(u) : 1.0 / std::sin(u));
    num += w * samples[k];
    den += w;
  }
  return num / den;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Disk: return "disk";
    case Family::Polygon: return "polygon";
    case Family::Ellipse: return "ellipse";
    case Family::Hippopede: return "hippopede";
    case Family::Custom: return "custom";
  }
  return "custom";
}

double StarlikeDomain::arclength_density(double theta) const {
  const double R = radius(theta);
  const double Rp = radius_deriv(theta);
  return std::sqrt(R * R + Rp * Rp);
}

std::array<double, 2> StarlikeDomain::boundary_point(double theta) const {
  const double R = radius(theta);
  return {R * std::cos(theta), R * std::sin(theta)};
}

std::array<double, 2> StarlikeDomain::outward_normal(double theta) const {
  const double R = radius(theta);
  const double Rp = radius_deriv(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Tangent (R' c - R s, R' s + R c); rotate by -pi/2 for the outward side.
  const double tx = Rp * c - R * s;
  const double ty = Rp * s + R * c;
  const double norm = std::sqrt(tx * tx + ty * ty);
  return {ty / norm, -tx / norm};
}

double StarlikeDomain::max_radius() const {
  double m = 0.0;
  const int samples = 4096;
  for (int k = 0; k < samples; ++k) {
    m = std::max(m, radius(two_pi * k / samples));
  }
  for (double kink : kinks) {
    m = std::max(m, radius(kink));
  }
  return m;
}

BoundaryWeight BoundaryWeight::constant(double c) {
  if (!(c > 0.0)) {
    throw DomainError("BoundaryWeight: density must be positive");
  }
  return BoundaryWeight{[c](double) { return c; }, true, {}};
}

bool BoundaryWeight::is_constant() const {
  const double ref = density(0.1234);
  for (int k = 0; k < 64; ++k) {
    if (std::abs(density(two_pi * k / 64) - ref) > 1e-12 * std::abs(ref)) {
      return false;
    }
  }
  return true;
}

StarlikeDomain make_disk(double radius) {
  if (!(radius > 0.0)) {
    throw DomainError("make_disk: radius must be positive");
  }
  StarlikeDomain d;
  d.radius = [radius](double) { return radius; };
  d.radius_deriv = [](double) { return 0.0; };
  d.family = Family::Disk;
  d.param = radius;
  return d;
}

StarlikeDomain make_polygon(int n_sides) {
  if (n_sides < 3) {
    throw DomainError("make_polygon: need at least 3 sides");
  }
  StarlikeDomain d;
  d.radius = [n_sides](double theta) {
    return 1.0 / std::cos(fold_sector(theta, n_sides));
  };
  d.radius_deriv = [n_sides](double theta) {
    const double u = fold_sector(theta, n_sides);
    return std::tan(u) / std::cos(u);
  };
  d.family = Family::Polygon;
  d.param = n_sides;
  d.kinks = polygon_kinks(n_sides);
  return d;
}

StarlikeDomain make_ellipse(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw DomainError("make_ellipse: eccentricity must lie in [0,1)");
  }
  const double e2 = eps * eps;
  const double b = std::sqrt(1.0 - e2);
  StarlikeDomain d;
  d.radius = [e2, b](double theta) {
    const double c = std::cos(theta);
    return b / std::sqrt(1.0 - e2 * c * c);
  };
  d.radius_deriv = [e2, b](double theta) {
    const double c = std::cos(theta);
    const double den = 1.0 - e2 * c * c;
    return -0.5 * b * e2 * std::sin(2.0 * theta) / (den * std::sqrt(den));
  };
  d.family = Family::Ellipse;
  d.param = eps;
  return d;
}

StarlikeDomain make_hippopede(double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw DomainError("make_hippopede: delta must lie in (0,1]");
  }
  const double d2 = delta * delta;
  StarlikeDomain d;
  d.radius = [d2](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return std::sqrt(s * s + d2 * c * c);
  };
  d.radius_deriv = [d2](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return (1.0 - d2) * s * c / std::sqrt(s * s + d2 * c * c);
  };
  d.family = Family::Hippopede;
  d.param = delta;
  return d;
}

StarlikeDomain make_convex_polygon(
    const std::vector<std::array<double, 2>>& vertices) {
  const std::size_t m = vertices.size();
  if (m < 3) {
    throw DomainError("make_convex_polygon: need at least 3 vertices");
  }
  struct Edge {
    double nx, ny, offset;  // points x with x.n == offset, origin side n.x < offset
  };
  std::vector<Edge> edges(m);
  std::vector<double> kinks(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % m];
    const double dx = b[0] - a[0];
    const double dy = b[1] - a[1];
    const double len = std::hypot(dx, dy);
    Edge e{dy / len, -dx / len, 0.0};
    e.offset = a[0] * e.nx + a[1] * e.ny;
    if (!(e.offset > 0.0)) {
      throw DomainError(
          "make_convex_polygon: vertices must be counterclockwise around the "
          "origin");
    }
    edges[i] = e;
    kinks[i] = std::atan2(a[1], a[0]);
  }
  auto radius = [edges](double theta) {
    const double ex = std::cos(theta);
    const double ey = std::sin(theta);
    double r = std::numeric_limits<double>::infinity();
    for (const Edge& e : edges) {
      const double proj = ex * e.nx + ey * e.ny;
      if (proj > 1e-15) r = std::min(r, e.offset / proj);
    }
    return r;
  };
  auto radius_deriv = [edges](double theta) {
    const double ex = std::cos(theta);
    const double ey = std::sin(theta);
    double r = std::numeric_limits<double>::infinity();
    const Edge* active = nullptr;
    for (const Edge& e : edges) {
      const double proj = ex * e.nx + ey * e.ny;
      if (proj > 1e-15 && e.offset / proj < r) {
        r = e.offset / proj;
        active = &e;
      }
    }
    // R = d / cos(theta - psi) on the active edge with normal angle psi,
    // so R' = R tan(theta - psi).
    const double u = theta - std::atan2(active->ny, active->nx);
    return r * std::tan(u);
  };
  StarlikeDomain d;
  d.radius = radius;
  d.radius_deriv = radius_deriv;
  d.family = Family::Custom;
  d.kinks = std::move(kinks);
  return d;
}

StarlikeDomain domain_from_function(std::function<double(double)> radius,
                                    std::function<double(double)> radius_deriv,
                                    std::vector<double> kinks) {
  StarlikeDomain d;
  d.radius = std::move(radius);
  d.radius_deriv = std::move(radius_deriv);
  d.family = Family::Custom;
  d.kinks = std::move(kinks);
  return d;
}

StarlikeDomain domain_from_samples(const std::vector<double>& radius_samples) {
  const std::size_t n = radius_samples.size();
  if (n < 8) {
    throw DomainError("domain_from_samples: need at least 8 samples");
  }
  for (double v : radius_samples) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("domain_from_samples: radius must be positive");
    }
  }
  const double h = two_pi / static_cast<double>(n);
  std::vector<double> deriv(n);
  auto at = [&](std::size_t k) { return radius_samples[k % n]; };
  for (std::size_t k = 0; k < n; ++k) {
    deriv[k] = (at(k + n - 2) - 8.0 * at(k + n - 1) + 8.0 * at(k + 1) -
                at(k + 2)) /
               (12.0 * h);
  }
  StarlikeDomain d;
  d.radius = [samples = radius_samples](double theta) {
    return trig_interpolate(samples, theta);
  };
  d.radius_deriv = [deriv = std::move(deriv)](double theta) {
    return trig_interpolate(deriv, theta);
  };
  d.family = Family::Custom;
  return d;
}

double integrate_boundary(const StarlikeDomain& d,
                          const std::function<double(double)>& f) {
  return integrate_piecewise(f, d.kinks);
}

double weighted_perimeter(const StarlikeDomain& d, const BoundaryWeight& q) {
  auto integrand = [&](double theta) {
    return d.arclength_density(theta) * q(theta);
  };
  if (!q.singularity.empty()) {
    return graded_quadrature(integrand, q.singularity);
  }
  return integrate_boundary(d, integrand);
}

BoundaryWeight conformal_weight(Family family, double param) {
  switch (family) {
    case Family::Disk:
      return BoundaryWeight::constant(param > 0.0 ? param : 1.0);
    case Family::Polygon: {
      const int n_sides = static_cast<int>(std::lround(param));
      if (n_sides < 3) {
        throw DomainError("conformal_weight: polygon needs N >= 3");
      }
      // |f'| of the Schwarz-Christoffel map, rescaled so the image is the
      // polygon with inscribed radius 1 built by make_polygon.
      const double mass0 = beta_fn(0.5 - 1.0 / n_sides, 0.5) / (two_pi / 2.0);
      const double scale = n_sides * std::tan(two_pi / 2.0 / n_sides) /
                           (two_pi / 2.0) / mass0;
      BoundaryWeight p;
      p.density = [n_sides, scale](double theta) {
        const double s = std::abs(std::sin(0.5 * n_sides * theta));
        return scale * std::pow(s, -2.0 / n_sides);
      };
      p.l2_flag = n_sides >= 5;
      p.singularity.exponent = -2.0 / n_sides;
      p.singularity.locations.resize(n_sides);
      for (int k = 0; k < n_sides; ++k) {
        p.singularity.locations[k] = two_pi * k / n_sides;
      }
      return p;
    }
    case Family::Hippopede: {
      const double delta = param;
      if (!(delta > 0.0) || delta > 1.0) {
        throw DomainError("conformal_weight: hippopede needs delta in (0,1]");
      }
      const double d2 = delta * delta;
      BoundaryWeight p;
      p.density = [delta, d2](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        return delta * std::sqrt(d2 * c * c + s * s) / (c * c + d2 * s * s);
      };
      return p;
    }
    case Family::Ellipse:
      throw UnsupportedFamily(
          "conformal_weight: no elementary disk-to-ellipse conformal map");
    case Family::Custom:
      throw UnsupportedFamily("conformal_weight: custom domains unsupported");
  }
  throw UnsupportedFamily("conformal_weight: unknown family");
}

AngularDilatation starlike_dilatation(const StarlikeDomain& d) {
  AngularDilatation result;
  result.mu = [radius = d.radius,
               radius_deriv = d.radius_deriv](double theta) {
    const double R = radius(theta);
    const double Rp = radius_deriv(theta);
    const std::complex<double> phase = std::polar(1.0, 2.0 * theta);
    return phase * (std::complex<double>(0.0, Rp) /
                    std::complex<double>(2.0 * R, -Rp));
  };
  double sup = 0.0;
  const int samples = 8192;
  for (int k = 0; k <= samples; ++k) {
    const double theta = two_pi * (k + 0.37) / samples;  // avoid kink nodes
    const double R = d.radius(theta);
    const double Rp = d.radius_deriv(theta);
    sup = std::max(sup, std::abs(Rp) / std::sqrt(4.0 * R * R + Rp * Rp));
  }
  result.sup_norm = sup;
  return result;
}

StarlikeDomain domain_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("domain config: ") + e.what());
  }
  if (!j.contains("family") || !j["family"].is_string()) {
    throw InvalidConfig("domain config: missing \"family\"");
  }
  const std::string fam = j["family"].get<std::string>();
  StarlikeDomain d;
  try {
    if (fam == "disk") {
      d = make_disk(j.value("param", 1.0));
    } else if (fam == "polygon") {
      d = make_polygon(static_cast<int>(j.at("param").get<double>()));
    } else if (fam == "ellipse") {
      d = make_ellipse(j.at("param").get<double>());
    } else if (fam == "hippopede") {
      d = make_hippopede(j.at("param").get<double>());
    } else if (fam == "custom") {
      if (!j.contains("samples") || !j["samples"].is_array()) {
        throw InvalidConfig("domain config: custom family needs \"samples\"");
      }
      d = domain_from_samples(j["samples"].get<std::vector<double>>());
    } else {
      throw InvalidConfig("domain config: unknown family \"" + fam + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("domain config: ") + e.what());
  } catch (const DomainError& e) {
    throw InvalidConfig(std::string("domain config: ") + e.what());
  }
  if (j.contains("origin")) {
    const auto& o = j["origin"];
    if (!o.is_array() || o.size() != 2) {
      throw InvalidConfig("domain config: \"origin\" must be [x,y]");
    }
    d.origin = {o[0].get<double>(), o[1].get<double>()};
  }
  return d;
}

StarlikeDomain load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidConfig("cannot open domain config: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return domain_from_json(buffer.str());
}

}  // namespace steklov
