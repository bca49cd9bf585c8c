#include "steklov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace steklov {

namespace {

// 16-point Gauss-Legendre rule on [-1,1], positive half; mirrored below.
constexpr int kGaussN = 16;
constexpr double kGaussX[kGaussN / 2] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr double kGaussW[kGaussN / 2] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double gauss_panel(const std::function<double(double)>& f, double a,
                   double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGaussN / 2; ++i) {
    acc += kGaussW[i] * (f(mid - half * kGaussX[i]) + f(mid + half * kGaussX[i]));
  }
  return acc * half;
}

double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels) {
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    acc += gauss_panel(f, a + k * h, a + (k + 1) * h);
  }
  return acc;
}

// Composite Gauss with panel doubling until two successive values agree.
double adaptive_gauss(const std::function<double(double)>& f, double a,
                      double b, double rel_tol, int max_panels) {
  int panels = 4;
  double prev = composite_gauss(f, a, b, panels);
  while (panels < max_panels) {
    panels *= 2;
    const double cur = composite_gauss(f, a, b, panels);
    if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-30)) {
      return cur;
    }
    prev = cur;
  }
  return prev;
}

// Integral over (s, s+len] approaching a power-law singularity at s from the
// direction sign (+1: singularity at the left end, -1: at the right end).
// Geometric grading with ratio 1/4 down to a distance where s + t is still
// resolvable in double precision; the remaining sliver is added back from the
// tagged exponent, with the local coefficient sampled at a distance large
// enough that the rounding of s + t cannot pollute it.
double graded_toward(const std::function<double(double)>& f, double s,
                     double len, int sign, double exponent) {
  constexpr double kRatio = 0.25;
  const double scale = std::max(1.0, std::abs(s));
  const double cut = 1e-10 * scale;

  double acc = 0.0;
  double outer = len;
  for (int level = 0; level < 60 && outer * kRatio > cut; ++level) {
    const double inner = outer * kRatio;
    const double lo = s + sign * inner;
    const double hi = s + sign * outer;
    acc += sign > 0 ? composite_gauss(f, lo, hi, 2)
                    : composite_gauss(f, hi, lo, 2);
    outer = inner;
  }
  // Tail over (s, s + sign*outer]: f(t) ~ c |t - s|^alpha.
  const double sample = std::min(std::max(1e-7 * scale, outer), 0.25 * len);
  const double c = f(s + sign * sample) / std::pow(sample, exponent);
  acc += c * std::pow(outer, exponent + 1.0) / (exponent + 1.0);
  return acc;
}

}  // namespace

PeriodicSamples::PeriodicSamples(std::vector<double> v) : values(std::move(v)) {
  if (values.size() < 8) {
    throw DomainError("PeriodicSamples: need at least 8 samples");
  }
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw DomainError("PeriodicSamples: samples must be finite");
    }
  }
}

double PeriodicSamples::node(std::size_t k) const {
  return two_pi * static_cast<double>(k) / static_cast<double>(values.size());
}

double periodic_trapezoid(const PeriodicSamples& f) {
  const double sum = std::accumulate(f.values.begin(), f.values.end(), 0.0);
  return sum * two_pi / static_cast<double>(f.values.size());
}

double integrate_periodic(const std::function<double(double)>& f,
                          const QuadratureOptions& opts) {
  long n = opts.initial_nodes;
  double sum = 0.0;
  double abs_sum = 0.0;
  for (long k = 0; k < n; ++k) {
    const double v = f(two_pi * k / n);
    sum += v;
    abs_sum += std::abs(v);
  }
  double value = sum * two_pi / n;

  while (n < opts.max_nodes) {
    // New midpoints interleave with the existing nodes.
    double mid_sum = 0.0;
    for (long k = 0; k < n; ++k) {
      const double v = f(two_pi * (2 * k + 1) / (2 * n));
      mid_sum += v;
      abs_sum += std::abs(v);
    }
    sum += mid_sum;
    n *= 2;
    const double next = sum * two_pi / n;
    const double scale = std::max(std::abs(next), 1e-30);
    const double floor = 1e-14 * (abs_sum * two_pi / n);
    if (std::abs(next - value) <= std::max(opts.rel_tol * scale, floor)) {
      return next;
    }
    value = next;
  }
  return value;
}

double integrate_piecewise(const std::function<double(double)>& f,
                           const std::vector<double>& breaks,
                           const QuadratureOptions& opts) {
  if (breaks.empty()) {
    return integrate_periodic(f, opts);
  }
  std::vector<double> b = breaks;
  for (double& x : b) {
    x = std::fmod(x, two_pi);
    if (x < 0) x += two_pi;
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());

  double acc = 0.0;
  const int max_panels = 1 << 12;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double lo = b[i];
    const double hi = (i + 1 < b.size()) ? b[i + 1] : b[0] + two_pi;
    if (hi - lo < 1e-14) continue;
    acc += adaptive_gauss(f, lo, hi, opts.rel_tol, max_panels);
  }
  return acc;
}

double graded_quadrature(const std::function<double(double)>& f, double a,
                         double b, const SingularityTag& tags, int n) {
  if (!(b > a)) {
    throw DomainError("graded_quadrature: empty interval");
  }

  if (tags.empty()) {
    // Plain composite Gauss with doubling; heuristic divergence check.
    int panels = 8;
    double prev = composite_gauss(f, a, b, panels);
    int doublings = 0;
    bool monotone_growth = true;
    while (panels < std::max(n, 64)) {
      panels *= 2;
      ++doublings;
      const double cur = composite_gauss(f, a, b, panels);
      const double change =
          std::abs(cur - prev) / std::max(std::abs(cur), 1e-30);
      if (std::abs(cur) < std::abs(prev)) monotone_growth = false;
      if (change <= 1e-11) return cur;
      if (doublings >= 5 && monotone_growth && change > 1e-3) {
        throw PossiblyDivergent(
            "graded_quadrature: untagged integrand keeps growing");
      }
      prev = cur;
    }
    return prev;
  }

  if (tags.exponent <= -1.0) {
    throw DivergentIntegral("graded_quadrature: exponent <= -1");
  }

  std::vector<double> pts;
  for (double loc : tags.locations) {
    if (loc > a - 1e-14 && loc < b + 1e-14) pts.push_back(loc);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-13; }),
            pts.end());
  if (pts.empty()) {
    return graded_quadrature(f, a, b, SingularityTag{}, n);
  }

  // Walls: endpoints plus midpoints between consecutive singular locations.
  std::vector<double> walls{a};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    walls.push_back(0.5 * (pts[i] + pts[i + 1]));
  }
  walls.push_back(b);

  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double s = pts[i];
    if (s - walls[i] > 1e-14) {
      acc += graded_toward(f, s, s - walls[i], -1, tags.exponent);
    }
    if (walls[i + 1] - s > 1e-14) {
      acc += graded_toward(f, s, walls[i + 1] - s, +1, tags.exponent);
    }
  }
  return acc;
}

double graded_quadrature(const std::function<double(double)>& f,
                         const SingularityTag& tags, int n) {
  // Over the full period, singular angles act modulo 2pi: a singularity at 0
  // is also one at 2pi.
  SingularityTag periodic = tags;
  for (double loc : tags.locations) {
    if (loc < 1e-12) periodic.locations.push_back(loc + two_pi);
    if (loc > two_pi - 1e-12) periodic.locations.push_back(loc - two_pi);
  }
  return graded_quadrature(f, 0.0, two_pi, periodic, n);
}

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma_fn: argument must be positive");
  }
  return std::tgamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("beta_fn: arguments must be positive");
  }
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double elliptic_E(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw DomainError("elliptic_E: modulus must lie in [0,1)");
  }
  return std::comp_ellint_2(eps);
}

}  // namespace steklov
