#include "steklov/factors.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeta3 = 1.20205690315959428539973816151;  // zeta(3)

struct WeightMoments {
  double mass = 0.0;      // (1/2pi) int p
  double sq = 0.0;        // (1/2pi) int p^2
  std::complex<double> sq_first;  // (1/2pi) int p^2 e^{i theta}
  bool sq_finite = true;
};

WeightMoments weight_moments(const BoundaryWeight& p) {
  WeightMoments m;
  auto density = p.density;
  if (p.singularity.empty()) {
    m.mass = integrate_periodic([&](double t) { return density(t); }) / two_pi;
    if (!p.l2_flag) {
      m.sq_finite = false;
      return m;
    }
    m.sq =
        integrate_periodic([&](double t) { return density(t) * density(t); }) /
        two_pi;
    m.sq_first = {integrate_periodic([&](double t) {
                    return density(t) * density(t) * std::cos(t);
                  }) / two_pi,
                  integrate_periodic([&](double t) {
                    return density(t) * density(t) * std::sin(t);
                  }) / two_pi};
    return m;
  }

  m.mass = graded_quadrature([&](double t) { return density(t); },
                             p.singularity) /
           two_pi;
  SingularityTag sq_tag = p.singularity;
  sq_tag.exponent *= 2.0;
  if (!p.l2_flag || sq_tag.exponent <= -1.0) {
    m.sq_finite = false;
    return m;
  }
  m.sq = graded_quadrature([&](double t) { return density(t) * density(t); },
                           sq_tag) /
         two_pi;
  m.sq_first = {graded_quadrature(
                    [&](double t) {
                      return density(t) * density(t) * std::cos(t);
                    },
                    sq_tag) /
                    two_pi,
                graded_quadrature(
                    [&](double t) {
                      return density(t) * density(t) * std::sin(t);
                    },
                    sq_tag) /
                    two_pi};
  return m;
}

// Fixed boundary quadrature grid (kink-aware) used by the origin
// optimization; a frozen grid keeps g(omega) smooth in omega.
struct BoundaryGrid {
  std::vector<double> weight;                  // dtheta weights
  std::vector<std::array<double, 2>> point;    // x(theta)
  std::vector<std::array<double, 2>> normal;   // (T_y, -T_x), unnormalized
  std::vector<double> tangent_sq;              // |T|^2
  double length = 0.0;                         // boundary length
};

BoundaryGrid build_grid(const StarlikeDomain& d, int target_nodes = 8192) {
  BoundaryGrid grid;
  auto push = [&](double theta, double w) {
    const double R = d.radius(theta);
    const double Rp = d.radius_deriv(theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double tx = Rp * c - R * s;
    const double ty = Rp * s + R * c;
    grid.weight.push_back(w);
    grid.point.push_back({R * c, R * s});
    grid.normal.push_back({ty, -tx});
    grid.tangent_sq.push_back(tx * tx + ty * ty);
    grid.length += w * std::sqrt(tx * tx + ty * ty);
  };

  if (d.kinks.empty()) {
    const int n = target_nodes;
    for (int k = 0; k < n; ++k) {
      push(two_pi * k / n, two_pi / n);
    }
    return grid;
  }

  // Composite 16-point Gauss panels per smooth piece.
  static const double gx[8] = {
      0.0950125098376374401853193, 0.2816035507792589132304605,
      0.4580167776572273863424194, 0.6178762444026437484466718,
      0.7554044083550030338951012, 0.8656312023878317438804679,
      0.9445750230732325760779884, 0.9894009349916499325961542};
  static const double gw[8] = {
      0.1894506104550684962853967, 0.1826034150449235888667637,
      0.1691565193950025381893121, 0.1495959888165767320815017,
      0.1246289712555338720524763, 0.0951585116824927848099251,
      0.0622535239386478928628438, 0.0271524594117540948517806};
  std::vector<double> b = d.kinks;
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double lo = b[i];
    const double hi = (i + 1 < b.size()) ? b[i + 1] : b[0] + two_pi;
    const double len = hi - lo;
    const int panels =
        std::max(8, static_cast<int>(std::lround(target_nodes * len /
                                                 two_pi / 16.0)));
    const double h = len / panels;
    for (int k = 0; k < panels; ++k) {
      const double mid = lo + (k + 0.5) * h;
      for (int j = 0; j < 8; ++j) {
        push(mid - 0.5 * h * gx[j], 0.5 * h * gw[j]);
        push(mid + 0.5 * h * gx[j], 0.5 * h * gw[j]);
      }
    }
  }
  return grid;
}

struct OriginEvaluation {
  bool feasible = false;
  double g0 = kInf, g1num = kInf, g = kInf;
  std::array<double, 2> grad_g{0.0, 0.0};
};

// g0, g1 numerator and gradient of g about origin shift s (relative to the
// domain frame), from the boundary integral forms
//   2pi g0(s)  = int |T|^2 / W dtheta,   W = (x - s).(T_y, -T_x),
//   2pi g1num(s) = int |x-s|^2 |T|^2 / W dtheta.
OriginEvaluation evaluate_origin(const BoundaryGrid& grid,
                                 const std::array<double, 2>& s,
                                 bool with_gradient) {
  OriginEvaluation ev;
  const std::size_t n = grid.weight.size();
  double g0_acc = 0.0, g1_acc = 0.0;
  double g0_gx = 0.0, g0_gy = 0.0, g1_gx = 0.0, g1_gy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = grid.point[i][0] - s[0];
    const double dy = grid.point[i][1] - s[1];
    const double W = dx * grid.normal[i][0] + dy * grid.normal[i][1];
    if (!(W > 1e-12 * std::sqrt(grid.tangent_sq[i]))) {
      return ev;  // not starlike about s
    }
    const double w = grid.weight[i] * grid.tangent_sq[i];
    const double dist_sq = dx * dx + dy * dy;
    g0_acc += w / W;
    g1_acc += w * dist_sq / W;
    if (with_gradient) {
      const double invW2 = 1.0 / (W * W);
      g0_gx += w * grid.normal[i][0] * invW2;
      g0_gy += w * grid.normal[i][1] * invW2;
      g1_gx += w * (-2.0 * dx / W + dist_sq * grid.normal[i][0] * invW2);
      g1_gy += w * (-2.0 * dy / W + dist_sq * grid.normal[i][1] * invW2);
    }
  }
  ev.feasible = true;
  ev.g0 = g0_acc / two_pi;
  ev.g1num = g1_acc / two_pi;
  ev.g = std::sqrt(ev.g0 * ev.g1num) * two_pi / grid.length;
  if (with_gradient) {
    const double fx = 0.5 * (g0_gx / g0_acc + g1_gx / g1_acc);
    const double fy = 0.5 * (g0_gy / g0_acc + g1_gy / g1_acc);
    ev.grad_g = {ev.g * fx, ev.g * fy};
  }
  return ev;
}

std::array<double, 2> centroid(const StarlikeDomain& d) {
  const double area = integrate_boundary(d, [&](double t) {
                        const double R = d.radius(t);
                        return 0.5 * R * R;
                      });
  const double cx = integrate_boundary(d, [&](double t) {
                      const double R = d.radius(t);
                      return R * R * R * std::cos(t) / 3.0;
                    }) /
                    area;
  const double cy = integrate_boundary(d, [&](double t) {
                      const double R = d.radius(t);
                      return R * R * R * std::sin(t) / 3.0;
                    }) /
                    area;
  return {cx, cy};
}

double expansion_g(double n) {
  const double pi = two_pi / 2.0;
  return 1.0 + pi * pi / (6.0 * n * n) +
         7.0 * std::pow(pi, 4) / (72.0 * std::pow(n, 4));
}

double expansion_gamma(double n) {
  const double pi = two_pi / 2.0;
  return 1.0 + pi * pi / (6.0 * n * n) + 6.0 * kZeta3 / std::pow(n, 3) +
         103.0 * std::pow(pi, 4) / (360.0 * std::pow(n, 4));
}

// 32-point Gauss-Legendre on [0,1] for radial integrals.
void radial_rule(std::vector<double>& nodes, std::vector<double>& weights) {
  static const double gx[8] = {
      0.0950125098376374401853193, 0.2816035507792589132304605,
      0.4580167776572273863424194, 0.6178762444026437484466718,
      0.7554044083550030338951012, 0.8656312023878317438804679,
      0.9445750230732325760779884, 0.9894009349916499325961542};
  static const double gw[8] = {
      0.1894506104550684962853967, 0.1826034150449235888667637,
      0.1691565193950025381893121, 0.1495959888165767320815017,
      0.1246289712555338720524763, 0.0951585116824927848099251,
      0.0622535239386478928628438, 0.0271524594117540948517806};
  nodes.clear();
  weights.clear();
  for (int half = 0; half < 2; ++half) {
    for (int j = 0; j < 8; ++j) {
      const double x = half == 0 ? 0.25 - 0.25 * gx[j] : 0.25 + 0.25 * gx[j];
      nodes.push_back(x);
      weights.push_back(0.25 * gw[j]);
    }
  }
  for (int half = 0; half < 2; ++half) {
    for (int j = 0; j < 8; ++j) {
      const double x = half == 0 ? 0.75 - 0.25 * gx[j] : 0.75 + 0.25 * gx[j];
      nodes.push_back(x);
      weights.push_back(0.25 * gw[j]);
    }
  }
}

}  // namespace

DilatationCoeffs dilatation_coeffs(const AngularDilatation& mu, double theta) {
  const std::complex<double> m = mu.mu(theta);
  const double m_abs_sq = std::norm(m);
  if (!(m_abs_sq < 1.0)) {
    throw DegenerateDilatation("dilatation_coeffs: |mu| >= 1");
  }
  const std::complex<double> u = std::polar(1.0, 2.0 * theta);
  const double denom = 1.0 - m_abs_sq;
  DilatationCoeffs c;
  c.a0 = std::norm(u - m) / denom;
  c.a1 = std::norm(u + m) / denom;
  c.a2 = 2.0 * std::imag(std::conj(u + m) * (u - m)) / denom;
  return c;
}

double g0_general(const AngularDilatation& mu) {
  return integrate_periodic([&](double t) {
           return dilatation_coeffs(mu, t).a0;
         }) /
         two_pi;
}

double g1_general(const AngularDilatation& mu, const BoundaryWeight& p) {
  const double num = integrate_periodic([&](double t) {
                       const double pv = p(t);
                       return dilatation_coeffs(mu, t).a1 * pv * pv;
                     }) /
                     two_pi;
  const double mean = integrate_periodic([&](double t) { return p(t); }) /
                      two_pi;
  return num / (mean * mean);
}

double g0_starlike(const StarlikeDomain& d) {
  const double mean = integrate_boundary(d, [&](double t) {
                        const double lr = d.radius_deriv(t) / d.radius(t);
                        return lr * lr;
                      }) /
                      two_pi;
  return 1.0 + mean;
}

double g1_starlike(const StarlikeDomain& d, const BoundaryWeight& q) {
  double num, den;
  if (q.singularity.empty()) {
    num = integrate_boundary(d, [&](double t) {
            const double R = d.radius(t);
            const double Rp = d.radius_deriv(t);
            const double qv = q(t);
            return (R * R + Rp * Rp) * qv * qv;
          }) /
          two_pi;
    den = integrate_boundary(d, [&](double t) {
            return d.arclength_density(t) * q(t);
          }) /
          two_pi;
  } else {
    SingularityTag sq_tag = q.singularity;
    sq_tag.exponent *= 2.0;
    num = graded_quadrature(
              [&](double t) {
                const double R = d.radius(t);
                const double Rp = d.radius_deriv(t);
                const double qv = q(t);
                return (R * R + Rp * Rp) * qv * qv;
              },
              sq_tag) /
          two_pi;
    den = graded_quadrature(
              [&](double t) { return d.arclength_density(t) * q(t); },
              q.singularity) /
          two_pi;
  }
  return num / (den * den);
}

GeometricFactors g_factor(const StarlikeDomain& d, const BoundaryWeight& q) {
  GeometricFactors f;
  f.g0 = g0_starlike(d);
  f.g1 = g1_starlike(d, q);
  f.g = std::sqrt(f.g0 * f.g1);
  return f;
}

double gamma1(const BoundaryWeight& p) {
  const WeightMoments m = weight_moments(p);
  if (!m.sq_finite) return kInf;
  return m.sq / (m.mass * m.mass);
}

double gamma_factor(const BoundaryWeight& p) {
  const WeightMoments m = weight_moments(p);
  if (!m.sq_finite) return kInf;
  const double radicand =
      std::max(0.0, m.sq * m.sq - std::norm(m.sq_first));
  return std::pow(radicand, 0.25) / m.mass;
}

MobiusResult mobius_optimize(const BoundaryWeight& p) {
  const WeightMoments m = weight_moments(p);
  if (!m.sq_finite) {
    throw NotInL2("mobius_optimize: weight is not square integrable");
  }
  MobiusResult r;
  r.A = two_pi * m.sq;
  r.B = two_pi * m.sq_first;
  const std::complex<double> c = r.B / r.A;
  const double c_abs = std::abs(c);
  r.zeta_min = -c / (1.0 + std::sqrt(std::max(0.0, 1.0 - c_abs * c_abs)));
  r.gamma_star =
      std::sqrt(std::max(0.0, m.sq * m.sq - std::norm(m.sq_first))) /
      (m.mass * m.mass);
  return r;
}

BoundaryWeight mobius_pushforward(const BoundaryWeight& p,
                                  std::complex<double> zeta, double phi) {
  if (!(std::abs(zeta) < 1.0)) {
    throw DomainError("mobius_pushforward: |zeta| must be < 1");
  }
  BoundaryWeight out;
  out.l2_flag = p.l2_flag;
  const double one_minus = 1.0 - std::norm(zeta);
  out.density = [p_density = p.density, zeta, phi,
                 one_minus](double theta_w) {
    const std::complex<double> w = std::polar(1.0, theta_w - phi);
    const std::complex<double> z = (w - zeta) / (1.0 - std::conj(zeta) * w);
    // |dz/dw| = |1 + z conj(zeta)|^2 / (1 - |zeta|^2)
    const double dz_dw = std::norm(1.0 + z * std::conj(zeta)) / one_minus;
    return p_density(std::arg(z)) * dz_dw;
  };
  if (!p.singularity.empty()) {
    out.singularity.exponent = p.singularity.exponent;
    for (double loc : p.singularity.locations) {
      // Image angle of the singular point under w = e^{i phi} M(e^{i loc}).
      const std::complex<double> z = std::polar(1.0, loc);
      const std::complex<double> w = (z + zeta) / (1.0 + z * std::conj(zeta));
      double ang = std::arg(w) + phi;
      ang = std::fmod(ang, two_pi);
      if (ang < 0) ang += two_pi;
      out.singularity.locations.push_back(ang);
    }
  }
  return out;
}

GeometricFactors factors_about_origin(const StarlikeDomain& d,
                                      const std::array<double, 2>& omega) {
  const BoundaryGrid grid = build_grid(d);
  const std::array<double, 2> shift{omega[0] - d.origin[0],
                                    omega[1] - d.origin[1]};
  const OriginEvaluation ev = evaluate_origin(grid, shift, false);
  if (!ev.feasible) {
    throw InfeasibleOrigin("factors_about_origin: domain not starlike here");
  }
  GeometricFactors f;
  f.g0 = ev.g0;
  f.g1 = ev.g1num / std::pow(grid.length / two_pi, 2);
  f.g = std::sqrt(f.g0 * f.g1);
  return f;
}

OriginResult optimize_origin(const StarlikeDomain& d, const BoundaryWeight& q,
                             const OriginOptions& options) {
  if (!q.is_constant()) {
    throw DomainError("optimize_origin: requires a constant weight");
  }
  const BoundaryGrid grid = build_grid(d);
  int evaluations = 0;

  auto feasible_extra = [&](const std::array<double, 2>& s) {
    if (!options.feasible) return true;
    return options.feasible(
        {s[0] + d.origin[0], s[1] + d.origin[1]});
  };
  auto objective = [&](const std::array<double, 2>& s) {
    ++evaluations;
    if (!feasible_extra(s)) return kInf;
    return evaluate_origin(grid, s, false).g;
  };

  std::array<double, 2> seed{0.0, 0.0};
  if (options.seed) {
    seed = {(*options.seed)[0] - d.origin[0], (*options.seed)[1] - d.origin[1]};
  } else {
    seed = centroid(d);
  }
  if (!(objective(seed) < kInf)) {
    throw InfeasibleOrigin("optimize_origin: seed lies outside the kernel");
  }

  const double diam = 2.0 * d.max_radius();

  // Nelder-Mead simplex.
  std::array<std::array<double, 2>, 3> simplex{
      seed,
      std::array<double, 2>{seed[0] + 0.05 * diam, seed[1]},
      std::array<double, 2>{seed[0], seed[1] + 0.05 * diam}};
  std::array<double, 3> value{};
  for (int i = 0; i < 3; ++i) value[i] = objective(simplex[i]);

  for (int iter = 0; iter < 600; ++iter) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return value[a] < value[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    if (std::isfinite(value[worst]) &&
        value[worst] - value[best] <=
            options.simplex_tol * std::max(1.0, std::abs(value[best]))) {
      break;
    }
    const std::array<double, 2> center{
        0.5 * (simplex[best][0] + simplex[mid][0]),
        0.5 * (simplex[best][1] + simplex[mid][1])};
    auto blend = [&](double t) {
      return std::array<double, 2>{
          center[0] + t * (simplex[worst][0] - center[0]),
          center[1] + t * (simplex[worst][1] - center[1])};
    };
    const auto reflected = blend(-1.0);
    const double fr = objective(reflected);
    if (fr < value[best]) {
      const auto expanded = blend(-2.0);
      const double fe = objective(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        value[worst] = fe;
      } else {
        simplex[worst] = reflected;
        value[worst] = fr;
      }
    } else if (fr < value[mid]) {
      simplex[worst] = reflected;
      value[worst] = fr;
    } else {
      const auto contracted = blend(fr < value[worst] ? -0.5 : 0.5);
      const double fc = objective(contracted);
      if (fc < std::min(fr, value[worst])) {
        simplex[worst] = contracted;
        value[worst] = fc;
      } else {
        for (int i : {mid, worst}) {
          simplex[i] = {0.5 * (simplex[i][0] + simplex[best][0]),
                        0.5 * (simplex[i][1] + simplex[best][1])};
          value[i] = objective(simplex[i]);
        }
      }
    }
  }
  std::array<double, 2> current = simplex[0];
  double current_g = value[0];
  for (int i = 1; i < 3; ++i) {
    if (value[i] < current_g) {
      current = simplex[i];
      current_g = value[i];
    }
  }

  // Newton polish on the analytic gradient; the simplex alone cannot reach
  // coordinate accuracy much below sqrt(function tolerance).
  const double fd_step = 1e-6 * diam;
  for (int iter = 0; iter < 60; ++iter) {
    const OriginEvaluation ev = evaluate_origin(grid, current, true);
    if (!ev.feasible) break;
    const double grad_norm = std::hypot(ev.grad_g[0], ev.grad_g[1]);
    if (grad_norm <= 1e-13 * std::max(1.0, ev.g)) break;

    auto grad_at = [&](double x, double y) {
      ++evaluations;
      return evaluate_origin(grid, {x, y}, true).grad_g;
    };
    const auto gxp = grad_at(current[0] + fd_step, current[1]);
    const auto gxm = grad_at(current[0] - fd_step, current[1]);
    const auto gyp = grad_at(current[0], current[1] + fd_step);
    const auto gym = grad_at(current[0], current[1] - fd_step);
    const double hxx = (gxp[0] - gxm[0]) / (2.0 * fd_step);
    const double hxy = 0.5 * ((gxp[1] - gxm[1]) + (gyp[0] - gym[0])) /
                       (2.0 * fd_step);
    const double hyy = (gyp[1] - gym[1]) / (2.0 * fd_step);
    const double det = hxx * hyy - hxy * hxy;
    std::array<double, 2> step;
    if (det > 1e-14 && hxx > 0.0) {
      step = {-(hyy * ev.grad_g[0] - hxy * ev.grad_g[1]) / det,
              -(hxx * ev.grad_g[1] - hxy * ev.grad_g[0]) / det};
    } else {
      step = {-ev.grad_g[0] * diam, -ev.grad_g[1] * diam};
    }
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
      const std::array<double, 2> cand{current[0] + t * step[0],
                                       current[1] + t * step[1]};
      const double fc = objective(cand);
      if (fc <= current_g) {
        current = cand;
        current_g = fc;
        moved = true;
        break;
      }
    }
    if (!moved || std::hypot(step[0], step[1]) < 1e-14 * diam) break;
  }

  OriginResult result;
  result.origin = {current[0] + d.origin[0], current[1] + d.origin[1]};
  result.evaluations = evaluations;
  {
    const OriginEvaluation ev = evaluate_origin(grid, current, false);
    result.factors.g0 = ev.g0;
    result.factors.g1 = ev.g1num / std::pow(grid.length / two_pi, 2);
    result.factors.g = std::sqrt(result.factors.g0 * result.factors.g1);
  }

  if (options.grid_scan) {
    const double half = 0.6 * d.max_radius();
    double best_g = kInf;
    std::array<double, 2> best{current};
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        const std::array<double, 2> s{current[0] + half * (i - 10) / 10.0,
                                      current[1] + half * (j - 10) / 10.0};
        const OriginEvaluation ev = evaluate_origin(grid, s, false);
        if (ev.feasible && ev.g < best_g) {
          best_g = ev.g;
          best = s;
        }
      }
    }
    result.grid_best = {best[0] + d.origin[0], best[1] + d.origin[1]};
  }
  return result;
}

GeometricFactors disk_factors() {
  GeometricFactors f;
  f.g0 = f.g1 = f.g = f.gamma1 = f.gamma = 1.0;
  return f;
}

GeometricFactors polygon_factors(int n_sides) {
  if (n_sides < 3) {
    throw DomainError("polygon_factors: need at least 3 sides");
  }
  const double pi = two_pi / 2.0;
  const double t = std::tan(pi / n_sides);
  GeometricFactors f;
  f.g0 = n_sides / pi * t;
  f.g1 = pi / n_sides * (t / 3.0 + 1.0 / t);
  f.g = std::sqrt(1.0 + t * t / 3.0);
  if (n_sides <= 4) {
    f.gamma1 = kInf;
    f.gamma = kInf;
  } else {
    const double n = n_sides;
    f.gamma = std::sqrt(gamma_fn(1.0 - 4.0 / n)) *
              std::pow(gamma_fn(1.0 - 1.0 / n), 2) /
              std::pow(gamma_fn(1.0 - 2.0 / n), 2);
    f.gamma1 = f.gamma * f.gamma;
  }
  return f;
}

GeometricFactors ellipse_factors(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw DomainError("ellipse_factors: eccentricity must lie in [0,1)");
  }
  const double pi = two_pi / 2.0;
  const double e2 = eps * eps;
  const double root = std::sqrt(1.0 - e2);
  const double E = elliptic_E(eps);
  GeometricFactors f;
  f.g0 = (1.0 - 0.5 * e2) / root;
  f.g1 = (1.0 - e2 + e2 * e2 / 8.0) / root * pi * pi / (4.0 * E * E);
  f.g = std::sqrt(f.g0 * f.g1);
  return f;  // conformal fields unavailable
}

GeometricFactors hippopede_factors(double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw DomainError("hippopede_factors: delta must lie in (0,1]");
  }
  const double d2 = delta * delta;
  const double L = integrate_periodic([d2](double theta) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const double c2 = 1.0 - s2;
    return std::sqrt((s2 + d2 * d2 * c2) / (s2 + d2 * c2));
  });
  const double mean_ratio = two_pi / L;
  GeometricFactors f;
  f.g0 = (1.0 + d2) / (2.0 * delta);
  f.g1 = (1.0 - delta + d2) * mean_ratio * mean_ratio;
  f.g = std::sqrt(f.g0 * f.g1);
  f.gamma = std::sqrt((1.0 + d2 * d2) / (2.0 * delta)) * mean_ratio;
  f.gamma1 = f.gamma * f.gamma;
  return f;
}

std::optional<GeometricFactors> family_factors(Family family, double param) {
  switch (family) {
    case Family::Disk: return disk_factors();
    case Family::Polygon:
      return polygon_factors(static_cast<int>(std::lround(param)));
    case Family::Ellipse: return ellipse_factors(param);
    case Family::Hippopede: return hippopede_factors(param);
    case Family::Custom: return std::nullopt;
  }
  return std::nullopt;
}

AsymptoticResiduals asymptotic_check(int n_sides) {
  if (n_sides < 5) {
    throw DomainError("asymptotic_check: expansion needs N >= 5");
  }
  const GeometricFactors f = polygon_factors(n_sides);
  const double n = n_sides;
  AsymptoticResiduals r;
  r.g_scaled = std::abs(f.g - expansion_g(n)) * std::pow(n, 6);
  r.gamma_scaled = std::abs(f.gamma - expansion_gamma(n)) * std::pow(n, 5);
  return r;
}

const std::vector<HarmonicTestFunction>& dirichlet_test_functions() {
  static const std::vector<HarmonicTestFunction> fns = {
      {"r cos(theta)",
       [](double, double theta) { return std::cos(theta); },
       [](double r, double theta) { return -r * std::sin(theta); }},
      {"r^2 sin(2 theta)",
       [](double r, double theta) { return 2.0 * r * std::sin(2.0 * theta); },
       [](double r, double theta) {
         return 2.0 * r * r * std::cos(2.0 * theta);
       }},
      {"r^3 cos(3 theta)",
       [](double r, double theta) {
         return 3.0 * r * r * std::cos(3.0 * theta);
       },
       [](double r, double theta) {
         return -3.0 * r * r * r * std::sin(3.0 * theta);
       }}};
  return fns;
}

double verify_dirichlet_transform(const StarlikeDomain& d,
                                  const HarmonicTestFunction& h) {
  std::vector<double> rx, rw;
  radial_rule(rx, rw);

  // Left side: Dirichlet integral over the domain in its own polar
  // coordinates (s, phi), with H(s, phi) = h(s / R(phi), phi).
  auto lhs_slice = [&](double phi) {
    const double R = d.radius(phi);
    const double Rp = d.radius_deriv(phi);
    double acc = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double s = rx[i] * R;
      const double r = s / R;
      const double hr = h.radial_deriv(r, phi);
      const double ht = h.angular_deriv(r, phi);
      const double Hs = hr / R;
      const double Hphi = ht - hr * s * Rp / (R * R);
      acc += rw[i] * R * (Hs * Hs + Hphi * Hphi / (s * s)) * s;
    }
    return acc;
  };
  const double lhs = integrate_boundary(d, lhs_slice);

  // Right side: pullback over the unit disk with coefficients a0, a1, a2.
  const AngularDilatation mu = starlike_dilatation(d);
  auto rhs_slice = [&](double theta) {
    const DilatationCoeffs c = dilatation_coeffs(mu, theta);
    double acc = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double r = rx[i];
      const double hr = h.radial_deriv(r, theta);
      const double ht = h.angular_deriv(r, theta);
      acc += rw[i] * r *
             (c.a0 * hr * hr + c.a1 * ht * ht / (r * r) + c.a2 * hr * ht / r);
    }
    return acc;
  };
  const double rhs = integrate_boundary(d, rhs_slice);

  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

}  // namespace steklov
