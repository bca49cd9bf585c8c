#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "steklov/geometry.hpp"

using namespace steklov;

namespace {
const BoundaryWeight unit_weight = BoundaryWeight::constant(1.0);
constexpr double kPi = two_pi / 2.0;
}  // namespace

TEST_CASE("regular polygon radius function") {
  const StarlikeDomain square = make_polygon(4);
  CHECK(square.radius(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(square.radius(kPi / 4.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(square.radius_deriv(0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(make_polygon(2), DomainError);

  const StarlikeDomain hexagon = make_polygon(6);
  CHECK(weighted_perimeter(hexagon, unit_weight) ==
        doctest::Approx(12.0 * std::tan(kPi / 6.0)).epsilon(1e-12));
  CHECK(weighted_perimeter(square, unit_weight) ==
        doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("ellipse radius function and orientation") {
  CHECK(make_ellipse(0.0).radius(1.234) == doctest::Approx(1.0));

  // Long semiaxis 1 on the horizontal axis: R is largest where the
  // denominator 1 - eps^2 cos^2 is smallest.
  const StarlikeDomain e = make_ellipse(std::sqrt(0.75));
  CHECK(e.radius(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.radius(kPi / 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(make_ellipse(1.0), DomainError);

  // Perimeter equals 4 E(eps); quadrature oracle cross-check.
  const StarlikeDomain half = make_ellipse(std::sqrt(0.5));
  const double L = weighted_perimeter(half, unit_weight);
  CHECK(L == doctest::Approx(4.0 * elliptic_E(std::sqrt(0.5))).epsilon(1e-9));
  const double oracle = oracles::adaptive_simpson(
      [&](double t) { return half.arclength_density(t); }, 0.0, two_pi,
      1e-12);
  CHECK(L == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("hippopede radius identities") {
  CHECK(make_hippopede(1.0).radius(0.77) == doctest::Approx(1.0));
  CHECK(make_hippopede(0.5).radius(0.0) == doctest::Approx(0.5));

  const StarlikeDomain h = make_hippopede(std::sqrt(0.5));
  const double R = h.radius(kPi / 4.0);
  const double Rp = h.radius_deriv(kPi / 4.0);
  CHECK(R * R + Rp * Rp == doctest::Approx(5.0 / 6.0).epsilon(1e-14));

  // R^2 + R'^2 = (sin^2 + delta^4 cos^2)/(sin^2 + delta^2 cos^2) <= 1.
  for (double delta : {0.1, 0.25, std::sqrt(0.5), 0.9}) {
    const StarlikeDomain d = make_hippopede(delta);
    const double d2 = delta * delta;
    for (int i = 0; i < 64; ++i) {
      const double t = two_pi * i / 64.0;
      const double s2 = std::sin(t) * std::sin(t);
      const double c2 = 1.0 - s2;
      const double r = d.radius(t);
      const double rp = d.radius_deriv(t);
      const double expected = (s2 + d2 * d2 * c2) / (s2 + d2 * c2);
      CHECK(r * r + rp * rp == doctest::Approx(expected).epsilon(1e-13));
      CHECK(r * r + rp * rp <= 1.0 + 1e-13);
    }
    // Strictly below 1 somewhere unless delta is 0 or 1.
    double min_v = 1e30;
    for (int i = 0; i < 256; ++i) {
      const double t = two_pi * i / 256.0;
      const double r = d.radius(t);
      const double rp = d.radius_deriv(t);
      min_v = std::min(min_v, r * r + rp * rp);
    }
    CHECK(min_v < 1.0 - 1e-3);
  }
  {
    const StarlikeDomain disk_case = make_hippopede(1.0);
    for (int i = 0; i < 64; ++i) {
      const double t = two_pi * i / 64.0;
      const double r = disk_case.radius(t);
      const double rp = disk_case.radius_deriv(t);
      CHECK(r * r + rp * rp == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  CHECK(weighted_perimeter(make_hippopede(1.0), unit_weight) ==
        doctest::Approx(two_pi).epsilon(1e-12));
  CHECK_THROWS_AS(make_hippopede(0.0), DomainError);
  CHECK_THROWS_AS(make_hippopede(1.1), DomainError);
}

TEST_CASE("radius functions are periodic") {
  const StarlikeDomain domains[] = {make_polygon(5), make_ellipse(0.8),
                                    make_hippopede(0.4)};
  for (const auto& d : domains) {
    for (double t : {0.0, 0.31, 2.9, 5.5}) {
      CHECK(d.radius(t + two_pi) ==
            doctest::Approx(d.radius(t)).epsilon(1e-13));
      CHECK(d.radius(t - two_pi) ==
            doctest::Approx(d.radius(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("weighted perimeter of the unit disk") {
  CHECK(weighted_perimeter(make_disk(), unit_weight) ==
        doctest::Approx(two_pi).epsilon(1e-13));
  CHECK(weighted_perimeter(make_disk(), BoundaryWeight::constant(3.0)) ==
        doctest::Approx(3.0 * two_pi).epsilon(1e-13));
}

TEST_CASE("conformal weights") {
  const BoundaryWeight disk_p = conformal_weight(Family::Disk);
  CHECK(disk_p(0.4) == doctest::Approx(1.0));
  CHECK(disk_p.l2_flag);

  CHECK_FALSE(conformal_weight(Family::Polygon, 3).l2_flag);
  CHECK_FALSE(conformal_weight(Family::Polygon, 4).l2_flag);
  CHECK(conformal_weight(Family::Polygon, 5).l2_flag);
  CHECK(conformal_weight(Family::Polygon, 5).singularity.exponent ==
        doctest::Approx(-0.4));

  // delta = 1: the map degenerates to a rotation, p == 1.
  const BoundaryWeight round = conformal_weight(Family::Hippopede, 1.0);
  for (int i = 0; i < 16; ++i) {
    CHECK(round(two_pi * i / 16.0) == doctest::Approx(1.0).epsilon(1e-14));
  }

  CHECK_THROWS_AS(conformal_weight(Family::Ellipse, 0.5), UnsupportedFamily);
  CHECK_THROWS_AS(conformal_weight(Family::Custom), UnsupportedFamily);
}

TEST_CASE("conformal weight mass equals the boundary length") {
  for (int N : {5, 6, 8, 10}) {
    const BoundaryWeight p = conformal_weight(Family::Polygon, N);
    const double mass = graded_quadrature(p.density, p.singularity);
    const double L = weighted_perimeter(make_polygon(N), unit_weight);
    CHECK(mass == doctest::Approx(L).epsilon(1e-8));
  }
  for (double d2 : {0.0625, 0.25, 0.75, 1.0}) {
    const double delta = std::sqrt(d2);
    const BoundaryWeight p = conformal_weight(Family::Hippopede, delta);
    const double mass = integrate_periodic(p.density);
    const double L = weighted_perimeter(make_hippopede(delta), unit_weight);
    CHECK(mass == doctest::Approx(L).epsilon(1e-8));
  }
}

TEST_CASE("starlike dilatation") {
  const AngularDilatation disk_mu = starlike_dilatation(make_disk());
  CHECK(std::abs(disk_mu.mu(0.9)) == doctest::Approx(0.0));
  CHECK(disk_mu.sup_norm == doctest::Approx(0.0));

  // Symmetry axis of the hippopede: R'(0) = 0 so mu(0) = 0.
  const AngularDilatation mu_h = starlike_dilatation(make_hippopede(0.5));
  CHECK(std::abs(mu_h.mu(0.0)) == doctest::Approx(0.0).epsilon(1e-15));

  // |mu| against a real-arithmetic evaluation from the ellipse formulas.
  const double eps2 = 0.5;
  const AngularDilatation mu_e =
      starlike_dilatation(make_ellipse(std::sqrt(eps2)));
  const double theta = kPi / 4.0;
  const double den = 1.0 - eps2 * std::cos(theta) * std::cos(theta);
  const double R = std::sqrt(1.0 - eps2) / std::sqrt(den);
  const double Rp = -std::sqrt(1.0 - eps2) * eps2 * std::sin(2.0 * theta) /
                    (2.0 * den * std::sqrt(den));
  const double expected = std::abs(Rp) / std::sqrt(4.0 * R * R + Rp * Rp);
  CHECK(std::abs(mu_e.mu(theta)) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(mu_e.sup_norm < 1.0);

  // Scale invariance of the dilatation.
  const StarlikeDomain h = make_hippopede(0.5);
  const StarlikeDomain scaled = domain_from_function(
      [&](double t) { return 3.7 * h.radius(t); },
      [&](double t) { return 3.7 * h.radius_deriv(t); });
  const AngularDilatation mu_s = starlike_dilatation(scaled);
  for (int i = 0; i < 32; ++i) {
    const double t = two_pi * i / 32.0;
    CHECK(std::abs(mu_s.mu(t) - mu_h.mu(t)) < 1e-14);
  }
}

TEST_CASE("sampled custom domains") {
  const int n = 64;
  std::vector<double> samples(n);
  for (int k = 0; k < n; ++k) {
    samples[k] = 2.0 + std::cos(two_pi * k / n);
  }
  const StarlikeDomain d = domain_from_samples(samples);
  // Trigonometric interpolation is exact for this low-degree sample set;
  // the derivative carries the 4th-order finite-difference error.
  for (double t : {0.123, 1.9, 4.4}) {
    CHECK(d.radius(t) == doctest::Approx(2.0 + std::cos(t)).epsilon(1e-12));
    CHECK(d.radius_deriv(t) == doctest::Approx(-std::sin(t)).epsilon(1e-5));
  }
  CHECK_THROWS_AS(domain_from_samples(std::vector<double>(4, 1.0)),
                  DomainError);
  CHECK_THROWS_AS(domain_from_samples(std::vector<double>(16, -1.0)),
                  DomainError);
}

TEST_CASE("convex polygon from vertices matches the regular square") {
  const StarlikeDomain square = make_convex_polygon(
      {{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}});
  const StarlikeDomain reference = make_polygon(4);
  for (int i = 0; i < 128; ++i) {
    const double t = two_pi * (i + 0.5) / 128.0;
    CHECK(square.radius(t) ==
          doctest::Approx(reference.radius(t)).epsilon(1e-13));
  }
  CHECK(weighted_perimeter(square, unit_weight) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      make_convex_polygon({{1.0, 0.0}, {2.0, 0.0}, {1.5, 1.0}}),
      DomainError);  // origin outside
}

TEST_CASE("domain config JSON") {
  const StarlikeDomain e = domain_from_json(
      R"({"family": "ellipse", "param": 0.5, "origin": [0.1, -0.2]})");
  CHECK(e.family == Family::Ellipse);
  CHECK(e.param == doctest::Approx(0.5));
  CHECK(e.origin[0] == doctest::Approx(0.1));
  CHECK(e.origin[1] == doctest::Approx(-0.2));

  const StarlikeDomain p =
      domain_from_json(R"({"family":"polygon","param":6})");
  CHECK(p.family == Family::Polygon);

  std::string samples = R"({"family":"custom","samples":[)";
  for (int k = 0; k < 16; ++k) {
    samples += (k ? "," : "");
    samples += "1.5";
  }
  samples += "]}";
  CHECK(domain_from_json(samples).radius(0.3) == doctest::Approx(1.5));

  CHECK_THROWS_AS(domain_from_json("{"), InvalidConfig);
  CHECK_THROWS_AS(domain_from_json(R"({"param":3})"), InvalidConfig);
  CHECK_THROWS_AS(domain_from_json(R"({"family":"torus","param":3})"),
                  InvalidConfig);
  CHECK_THROWS_AS(domain_from_json(R"({"family":"ellipse","param":2})"),
                  InvalidConfig);
  CHECK_THROWS_AS(domain_from_json(R"({"family":"custom"})"), InvalidConfig);
  CHECK_THROWS_AS(
      domain_from_json(R"({"family":"ellipse","param":0.5,"origin":[1]})"),
      InvalidConfig);
  CHECK_THROWS_AS(load_domain_file("/nonexistent/domain.json"), InvalidConfig);
}
