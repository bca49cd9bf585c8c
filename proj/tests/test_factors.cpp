#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "steklov/factors.hpp"

using namespace steklov;
using complexd = std::complex<double>;

namespace {

const BoundaryWeight unit_weight = BoundaryWeight::constant(1.0);
constexpr double kPi = two_pi / 2.0;

AngularDilatation constant_rotation_mu(double amplitude) {
  AngularDilatation mu;
  mu.mu = [amplitude](double theta) {
    return amplitude * std::polar(1.0, theta);
  };
  mu.sup_norm = amplitude;
  return mu;
}

// Union of unit disks centered at the unit-circle points e^{i a_i}; each
// passes through the origin, so R = max_i 2 cos(theta - a_i) on its arc and
// R^2 + R'^2 == 4 wherever the max is smooth.
StarlikeDomain flower_domain(std::vector<double> petal_angles) {
  std::sort(petal_angles.begin(), petal_angles.end());
  auto active = [petal_angles](double theta) {
    double best = -1e30;
    double angle = 0.0;
    for (double a : petal_angles) {
      const double v = 2.0 * std::cos(theta - a);
      if (v > best) {
        best = v;
        angle = a;
      }
    }
    return std::pair<double, double>(best, angle);
  };
  std::vector<double> kinks;
  for (std::size_t i = 0; i < petal_angles.size(); ++i) {
    const double a = petal_angles[i];
    const double b = (i + 1 < petal_angles.size()) ? petal_angles[i + 1]
                                                   : petal_angles[0] + two_pi;
    kinks.push_back(0.5 * (a + b));
  }
  return domain_from_function(
      [active](double t) { return active(t).first; },
      [active](double t) {
        return -2.0 * std::sin(t - active(t).second);
      },
      kinks);
}

// Unit-radius disk centered at c, still parametrized from the origin.
StarlikeDomain offset_disk(double cx, double cy) {
  auto radius = [cx, cy](double t) {
    const double u = cx * std::cos(t) + cy * std::sin(t);
    return u + std::sqrt(1.0 - cx * cx - cy * cy + u * u);
  };
  auto deriv = [cx, cy, radius](double t) {
    const double u = cx * std::cos(t) + cy * std::sin(t);
    const double up = -cx * std::sin(t) + cy * std::cos(t);
    const double r = radius(t);
    return up * r / (r - u);
  };
  return domain_from_function(radius, deriv);
}

const std::vector<std::array<double, 2>> kQuadVertices = {
    {1.3, 0.1}, {-0.2, 0.9}, {-1.1, -0.3}, {0.4, -1.2}};

}  // namespace

TEST_CASE("dilatation coefficients of a conformal map") {
  AngularDilatation zero;
  zero.mu = [](double) { return complexd(0.0, 0.0); };
  const DilatationCoeffs c = dilatation_coeffs(zero, 1.1);
  CHECK(c.a0 == doctest::Approx(1.0));
  CHECK(c.a1 == doctest::Approx(1.0));
  CHECK(c.a2 == doctest::Approx(0.0));
}

TEST_CASE("dilatation coefficients against an independent expansion") {
  const AngularDilatation mu = constant_rotation_mu(0.3);
  const double theta = kPi / 3.0;
  const DilatationCoeffs c = dilatation_coeffs(mu, theta);

  // Expanded real-arithmetic route: |e^{2it} -+ mu|^2 = 1 -+ 2 Re(e^{-2it}mu)
  // + |mu|^2 and a2 = 4 Im(conj(mu) e^{2it}) / (1 - |mu|^2).
  const complexd m = mu.mu(theta);
  const double dot = std::real(std::polar(1.0, -2.0 * theta) * m);
  const double denom = 1.0 - std::norm(m);
  CHECK(c.a0 ==
        doctest::Approx((1.0 - 2.0 * dot + std::norm(m)) / denom).epsilon(1e-13));
  CHECK(c.a1 ==
        doctest::Approx((1.0 + 2.0 * dot + std::norm(m)) / denom).epsilon(1e-13));
  CHECK(c.a2 == doctest::Approx(4.0 *
                                std::imag(std::conj(m) *
                                          std::polar(1.0, 2.0 * theta)) /
                                denom)
                    .epsilon(1e-13));
}

TEST_CASE("starlike maps reproduce the closed dilatation coefficients") {
  for (const StarlikeDomain& d :
       {make_ellipse(std::sqrt(0.5)), make_hippopede(0.5)}) {
    const AngularDilatation mu = starlike_dilatation(d);
    for (int i = 0; i < 32; ++i) {
      const double t = two_pi * (i + 0.3) / 32.0;
      const DilatationCoeffs c = dilatation_coeffs(mu, t);
      const double log_deriv = d.radius_deriv(t) / d.radius(t);
      CHECK(c.a0 == doctest::Approx(1.0 + log_deriv * log_deriv).epsilon(1e-12));
      CHECK(c.a1 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(c.a2 == doctest::Approx(-2.0 * log_deriv).epsilon(1e-12));
    }
  }
}

TEST_CASE("a0 a1 - (a2/2)^2 == 1 on random dilatations") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> radius(0.0, 0.97);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  for (int trial = 0; trial < 1000; ++trial) {
    const complexd m = std::polar(radius(rng), angle(rng));
    AngularDilatation mu;
    mu.mu = [m](double) { return m; };
    const DilatationCoeffs c = dilatation_coeffs(mu, angle(rng));
    CHECK(c.a0 * c.a1 - 0.25 * c.a2 * c.a2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("degenerate dilatation is rejected") {
  AngularDilatation bad;
  bad.mu = [](double) { return complexd(1.0, 0.0); };
  CHECK_THROWS_AS(dilatation_coeffs(bad, 0.0), DegenerateDilatation);
}

TEST_CASE("g0 for the named families") {
  CHECK(g0_starlike(make_disk()) == doctest::Approx(1.0).epsilon(1e-14));
  for (int N : {3, 4, 5, 6, 8, 10}) {
    CHECK(g0_starlike(make_polygon(N)) ==
          doctest::Approx(N / kPi * std::tan(kPi / N)).epsilon(1e-12));
  }
  CHECK(g0_starlike(make_ellipse(std::sqrt(0.5))) ==
        doctest::Approx(0.75 / std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("g1 for the named families") {
  CHECK(g1_starlike(make_disk(), unit_weight) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g1_starlike(make_polygon(4), unit_weight) ==
        doctest::Approx(kPi / 3.0).epsilon(1e-12));

  // Combined with g0 this is the hippopede table anchor.
  const double delta = 0.5;
  const double L = weighted_perimeter(make_hippopede(delta), unit_weight);
  const double expected = 0.75 * std::pow(two_pi / L, 2);
  CHECK(g1_starlike(make_hippopede(delta), unit_weight) ==
        doctest::Approx(expected).epsilon(1e-10));
  const GeometricFactors f = g_factor(make_hippopede(delta), unit_weight);
  CHECK(f.g == doctest::Approx(1.1378).epsilon(5e-5));
}

TEST_CASE("g for the table families") {
  CHECK(g_factor(make_polygon(5), unit_weight).g ==
        doctest::Approx(1.0844).epsilon(5e-5));
  CHECK(g_factor(make_ellipse(std::sqrt(0.75)), unit_weight).g ==
        doctest::Approx(1.1607).epsilon(5e-5));
  CHECK(g_factor(make_hippopede(std::sqrt(0.5)), unit_weight).g ==
        doctest::Approx(1.0366).epsilon(5e-5));
}

TEST_CASE("scale invariance of the starlike factors") {
  const StarlikeDomain h = make_hippopede(0.4);
  const StarlikeDomain scaled = domain_from_function(
      [&](double t) { return 5.2 * h.radius(t); },
      [&](double t) { return 5.2 * h.radius_deriv(t); });
  CHECK(g0_starlike(scaled) ==
        doctest::Approx(g0_starlike(h)).epsilon(1e-12));
  CHECK(g1_starlike(scaled, unit_weight) ==
        doctest::Approx(g1_starlike(h, unit_weight)).epsilon(1e-12));
}

TEST_CASE("gamma1 and gamma of circle weights") {
  CHECK(gamma1(BoundaryWeight::constant(2.5)) == doctest::Approx(1.0));
  CHECK(gamma_factor(BoundaryWeight::constant(2.5)) == doctest::Approx(1.0));

  CHECK(std::isinf(gamma1(conformal_weight(Family::Polygon, 4))));
  CHECK(std::isinf(gamma_factor(conformal_weight(Family::Polygon, 3))));

  const double gamma6 = polygon_factors(6).gamma;
  CHECK(gamma6 == doctest::Approx(1.1374).epsilon(5e-5));
  CHECK(gamma1(conformal_weight(Family::Polygon, 6)) ==
        doctest::Approx(gamma6 * gamma6).epsilon(1e-8));

  CHECK(gamma_factor(conformal_weight(Family::Hippopede, 0.5)) ==
        doctest::Approx(1.2112).epsilon(5e-5));
}

TEST_CASE("gamma never exceeds sqrt(gamma1)") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    BoundaryWeight p;
    p.density = oracles::random_positive_weight(rng);
    const double bound = std::sqrt(gamma1(p));
    CHECK(gamma_factor(p) <= bound + 1e-12);
  }
  // Equality when the p^2 first moment vanishes (pi-periodic weight).
  BoundaryWeight sym;
  sym.density = [](double t) { return 1.0 + 0.3 * std::cos(2.0 * t); };
  CHECK(gamma_factor(sym) ==
        doctest::Approx(std::sqrt(gamma1(sym))).epsilon(1e-10));
}

TEST_CASE("g0 g1 >= 1 on random admissible pairs") {
  std::mt19937 rng(20240812);
  std::uniform_real_distribution<double> amp(0.0, 0.9);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  for (int trial = 0; trial < 50; ++trial) {
    const double a1 = amp(rng), a2 = 0.5 * amp(rng);
    const double ph1 = angle(rng), ph2 = angle(rng);
    const double level = amp(rng);
    const double scale = 0.95 * level / std::max(1e-9, a1 + a2);
    AngularDilatation mu;
    mu.mu = [=](double t) {
      return scale * (a1 * std::polar(1.0, t + ph1) +
                      a2 * std::polar(1.0, 3.0 * t + ph2));
    };
    BoundaryWeight p;
    p.density = oracles::random_positive_weight(rng);
    const double product = g0_general(mu) * g1_general(mu, p);
    CHECK(product >= 1.0 - 1e-10);
  }
}

TEST_CASE("general and starlike factor routes agree") {
  const StarlikeDomain h = make_hippopede(0.6);
  const AngularDilatation mu = starlike_dilatation(h);
  CHECK(g0_general(mu) == doctest::Approx(g0_starlike(h)).epsilon(1e-10));
}

TEST_CASE("flower union of disks has g1 == 1") {
  const StarlikeDomain flower = flower_domain({0.3, 2.5, 4.4});
  CHECK(g1_starlike(flower, unit_weight) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g0_starlike(flower) > 1.0);

  const StarlikeDomain irregular = flower_domain({0.0, 1.9, 3.4, 5.2});
  CHECK(g1_starlike(irregular, unit_weight) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Moebius optimization of a constant weight") {
  const MobiusResult r = mobius_optimize(BoundaryWeight::constant(1.0));
  CHECK(std::abs(r.zeta_min) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.gamma_star == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Moebius optimization respects k-fold symmetry") {
  const MobiusResult r = mobius_optimize(conformal_weight(Family::Polygon, 6));
  CHECK(std::abs(r.zeta_min) < 1e-8);
  const double gamma6 = polygon_factors(6).gamma;
  CHECK(r.gamma_star == doctest::Approx(gamma6 * gamma6).epsilon(1e-8));
}

TEST_CASE("Moebius optimization rejects non-L2 weights") {
  CHECK_THROWS_AS(mobius_optimize(conformal_weight(Family::Polygon, 4)),
                  NotInL2);
}

TEST_CASE("Moebius optimization of p = 1 + cos/2 against a grid search") {
  BoundaryWeight p;
  p.density = [](double t) { return 1.0 + 0.5 * std::cos(t); };
  const MobiusResult r = mobius_optimize(p);

  // Closed values: A = 2.25 pi, B = pi, zeta_min = -4/(9 + sqrt(65)).
  CHECK(r.A == doctest::Approx(2.25 * kPi).epsilon(1e-12));
  CHECK(std::real(r.B) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::abs(std::imag(r.B)) < 1e-12);
  CHECK(std::real(r.zeta_min) ==
        doctest::Approx(-0.234435562925363).epsilon(1e-12));
  CHECK(std::abs(std::imag(r.zeta_min)) < 1e-12);
  CHECK(std::real(r.zeta_min) < 0.0);
  CHECK(r.gamma_star == doctest::Approx(std::sqrt(65.0) / 8.0).epsilon(1e-12));
  CHECK(r.gamma_star ==
        doctest::Approx(std::pow(gamma_factor(p), 2)).epsilon(1e-12));

  // gamma_1 improves at the optimum.
  const double at_min = gamma1(mobius_pushforward(p, r.zeta_min));
  CHECK(at_min < gamma1(p));
  CHECK(at_min == doctest::Approx(r.gamma_star).epsilon(1e-10));

  // Refined brute-force grid search over the disk.
  complexd best_zeta = 0.0;
  double best_value = gamma1(p);
  double span = 0.9;
  for (int level = 0; level < 4; ++level) {
    complexd local_best = best_zeta;
    for (int i = -6; i <= 6; ++i) {
      for (int j = -6; j <= 6; ++j) {
        const complexd zeta =
            best_zeta + complexd(span * i / 6.0, span * j / 6.0);
        if (std::abs(zeta) > 0.95) continue;
        const double value = gamma1(mobius_pushforward(p, zeta));
        if (value < best_value) {
          best_value = value;
          local_best = zeta;
        }
      }
    }
    best_zeta = local_best;
    span /= 6.0;
  }
  CHECK(best_value == doctest::Approx(r.gamma_star).epsilon(1e-6));
  CHECK(std::abs(best_zeta - r.zeta_min) < 1e-3);
}

TEST_CASE("Moebius pushforward identities") {
  BoundaryWeight p;
  p.density = [](double t) { return 1.0 + 0.5 * std::cos(t); };

  const BoundaryWeight same = mobius_pushforward(p, 0.0, 0.0);
  for (int i = 0; i < 32; ++i) {
    const double t = two_pi * i / 32.0;
    CHECK(same(t) == doctest::Approx(p(t)).epsilon(1e-13));
  }

  const complexd zeta(0.3, 0.2);
  const BoundaryWeight moved = mobius_pushforward(p, zeta);
  const double mass0 = integrate_periodic(p.density);
  const double mass1 = integrate_periodic(moved.density);
  CHECK(mass1 == doctest::Approx(mass0).epsilon(1e-10));

  // int p~^2 = (A + 2 Re(conj(zeta) B) + |zeta|^2 A) / (1 - |zeta|^2).
  const double A =
      integrate_periodic([&](double t) { return p(t) * p(t); });
  const complexd B = {
      integrate_periodic([&](double t) { return p(t) * p(t) * std::cos(t); }),
      integrate_periodic([&](double t) { return p(t) * p(t) * std::sin(t); })};
  const double expected =
      (A + 2.0 * std::real(std::conj(zeta) * B) + std::norm(zeta) * A) /
      (1.0 - std::norm(zeta));
  const double actual =
      integrate_periodic([&](double t) { return moved(t) * moved(t); });
  CHECK(actual == doctest::Approx(expected).epsilon(1e-9));

  // Center of mass of p~^2 vanishes at the minimizer.
  const MobiusResult r = mobius_optimize(p);
  const BoundaryWeight opt = mobius_pushforward(p, r.zeta_min);
  const double cx =
      integrate_periodic([&](double t) { return opt(t) * opt(t) * std::cos(t); });
  const double cy =
      integrate_periodic([&](double t) { return opt(t) * opt(t) * std::sin(t); });
  const double sq = integrate_periodic([&](double t) { return opt(t) * opt(t); });
  CHECK(std::hypot(cx, cy) <= 1e-8 * sq);

  CHECK_THROWS_AS(mobius_pushforward(p, complexd(1.0, 0.2)), DomainError);
}

TEST_CASE("Moebius pushforward carries singularity tags correctly") {
  // For a weight with vanishing first moment of p^2 (6-fold symmetry),
  // the pushforward formula gives gamma_1 at zeta equal to
  // gamma_1(p) (1 + |zeta|^2) / (1 - |zeta|^2). The pushforward of the
  // polygon weight is singular at the mapped prevertices, so this exercises
  // the graded integration of a transformed tag.
  const BoundaryWeight p = conformal_weight(Family::Polygon, 6);
  const complexd zeta(0.3, 0.0);
  const BoundaryWeight moved = mobius_pushforward(p, zeta, 0.4);
  REQUIRE(moved.singularity.locations.size() == 6);
  const double expected = gamma1(p) * (1.0 + std::norm(zeta)) /
                          (1.0 - std::norm(zeta));
  CHECK(gamma1(moved) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("factors about a shifted origin: off-center disk closed forms") {
  const StarlikeDomain disk = make_disk();
  const double a = 0.3;
  const GeometricFactors f = factors_about_origin(disk, {a, 0.0});
  CHECK(f.g0 == doctest::Approx(1.0 / std::sqrt(1.0 - a * a)).epsilon(1e-10));
  CHECK(f.g1 == doctest::Approx(2.0 - std::sqrt(1.0 - a * a)).epsilon(1e-10));

  const GeometricFactors centered = factors_about_origin(disk, {0.0, 0.0});
  CHECK(centered.g == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(factors_about_origin(disk, {1.5, 0.0}), InfeasibleOrigin);
  CHECK_THROWS_AS(
      factors_about_origin(make_convex_polygon(kQuadVertices), {2.0, 2.0}),
      InfeasibleOrigin);
}

TEST_CASE("origin optimization finds symmetry centers") {
  const OriginResult e = optimize_origin(make_ellipse(std::sqrt(0.5)),
                                         unit_weight);
  CHECK(std::abs(e.origin[0]) < 1e-8);
  CHECK(std::abs(e.origin[1]) < 1e-8);

  const OriginResult h =
      optimize_origin(make_hippopede(std::sqrt(0.5)), unit_weight);
  CHECK(std::abs(h.origin[0]) < 1e-8);
  CHECK(std::abs(h.origin[1]) < 1e-8);

  CHECK_THROWS_AS(
      optimize_origin(make_disk(), BoundaryWeight{
                                       [](double t) { return 1.0 + 0.5 * std::sin(t); },
                                       true,
                                       {}}),
      DomainError);
}

TEST_CASE("origin optimization recovers the center of an offset disk") {
  const StarlikeDomain d = offset_disk(0.25, -0.15);
  const OriginResult r = optimize_origin(d, unit_weight);
  CHECK(r.origin[0] == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(r.origin[1] == doctest::Approx(-0.15).epsilon(1e-8));
  CHECK(r.factors.g == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("origin optimization beats a feasibility grid on a quadrilateral") {
  const StarlikeDomain quad = make_convex_polygon(kQuadVertices);
  OriginOptions options;
  options.grid_scan = true;
  const OriginResult r = optimize_origin(quad, unit_weight, options);

  double grid_best = 1e30;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const std::array<double, 2> omega{-1.1 + 2.4 * i / 49.0,
                                        -1.2 + 2.1 * j / 49.0};
      try {
        grid_best = std::min(grid_best, factors_about_origin(quad, omega).g);
      } catch (const InfeasibleOrigin&) {
      }
    }
  }
  CHECK(r.factors.g <= grid_best + 1e-9);
  CHECK(r.grid_best.has_value());
}

TEST_CASE("g0 and g1 are midpoint convex in the origin") {
  const StarlikeDomain quad = make_convex_polygon(kQuadVertices);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ux(-1.0, 1.2), uy(-1.1, 0.8);
  int tested = 0;
  while (tested < 20) {
    const std::array<double, 2> w1{ux(rng), uy(rng)};
    const std::array<double, 2> w2{ux(rng), uy(rng)};
    const std::array<double, 2> mid{0.5 * (w1[0] + w2[0]),
                                    0.5 * (w1[1] + w2[1])};
    try {
      const GeometricFactors f1 = factors_about_origin(quad, w1);
      const GeometricFactors f2 = factors_about_origin(quad, w2);
      const GeometricFactors fm = factors_about_origin(quad, mid);
      CHECK(fm.g0 <= 0.5 * (f1.g0 + f2.g0) + 1e-9);
      CHECK(fm.g1 <= 0.5 * (f1.g1 + f2.g1) + 1e-9);
      ++tested;
    } catch (const InfeasibleOrigin&) {
    }
  }
}

TEST_CASE("polygon factor asymptotics") {
  CHECK_THROWS_AS(asymptotic_check(4), DomainError);

  // Leading dropped terms: (101/2160) pi^6 / N^6 for g and
  // (90 zeta(5) + pi^2 zeta(3)) / N^5 for gamma.
  const double g_coeff = 101.0 / 2160.0 * std::pow(kPi, 6);
  const double gamma_coeff = 90.0 * 1.03692775514337 + kPi * kPi * 1.202056903159594;

  double prev_g = 1e30, prev_gamma = 1e30;
  for (int N : {8, 16, 32, 64, 128}) {
    const AsymptoticResiduals r = asymptotic_check(N);
    CHECK(r.g_scaled < prev_g + 1e-9);
    CHECK(r.gamma_scaled < prev_gamma + 1e-9);
    CHECK(r.g_scaled / g_coeff > 0.99);
    CHECK(r.g_scaled / g_coeff < 1.08);
    CHECK(r.gamma_scaled / gamma_coeff > 0.99);
    CHECK(r.gamma_scaled / gamma_coeff < 1.92);
    prev_g = r.g_scaled;
    prev_gamma = r.gamma_scaled;
  }

  // g -> 1 as the polygon rounds out.
  CHECK(polygon_factors(4096).g == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Dirichlet integral transformation rule") {
  const auto& fns = dirichlet_test_functions();
  REQUIRE(fns.size() == 3);

  // Disk: both sides equal the Dirichlet integral of x1, which is pi.
  CHECK(verify_dirichlet_transform(make_disk(), fns[0]) < 1e-12);

  CHECK(verify_dirichlet_transform(make_ellipse(std::sqrt(0.5)), fns[0]) <
        1e-6);
  CHECK(verify_dirichlet_transform(make_hippopede(std::sqrt(0.5)), fns[1]) <
        1e-6);
}
