#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "steklov/factors.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

/// Concave increasing transforms applied to the normalized eigenvalues in
/// the sum bounds. NegPower/NegExp are the zeta- and heat-trace kinds whose
/// statements flip to minimality.
enum class FunctionalKind { Identity, Power, Log, NegPower, NegExp };

struct ConcaveFunctional {
  FunctionalKind kind = FunctionalKind::Identity;
  double param = 1.0;  // s for Power/NegPower, t for NegExp
};

/// 2 pi * factor * sum_{j<=n} ceil(j/2); equals (pi/2) * factor * n(n+2) for
/// even n and (pi/2) * factor * (n+1)^2 for odd n.
double theorem_sum_bound(double factor, int n);

/// sum_{j<=n} ceil(j/2).
long ceil_half_sum(int n);

struct HpsBounds {
  double sum = 0.0;        // pi n (n+1)
  double weinstock = 0.0;  // 2 pi
  double individual(int j) const { return two_pi * j; }
};

HpsBounds hps_bounds(int n);

struct FunctionalCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// Evaluates the sum-functional inequality for the first n eigenvalues.
/// Concave increasing kinds report sum C(sigma_j L) <= sum C(2 pi factor
/// ceil(j/2)); NegPower and NegExp report the flipped minimality statements
/// sum (sigma_j L / factor)^s >= disk value and sum exp(-t sigma_j L /
/// factor) >= disk value. Throws on nonpositive eigenvalues.
FunctionalCheck functional_bound(const SteklovSpectrum& spectrum,
                                 const ConcaveFunctional& C, double factor,
                                 int n, double tol = 1e-9);

/// rho_n = sum sigma_j L / (2 pi sum ceil(j/2)); equals 1 on the disk.
double rho(const SteklovSpectrum& spectrum, int n);

struct RhoMax {
  double value = 0.0;
  int argmax = 0;
};

RhoMax rho_max(const SteklovSpectrum& spectrum, int n_max);

struct BoundRow {
  int n = 0;
  double computed_sum = 0.0;   // sum of sigma_j L
  double bound_g = 0.0;        // 2 pi g sum ceil(j/2)
  double bound_gamma = 0.0;    // same with gamma; inf/NaN when not finite
  double hps = 0.0;            // pi n (n+1)
  double rho_n = 0.0;
  std::string tightest;        // "g" | "gamma" | "hps"
};

struct BoundReport {
  Family family = Family::Custom;
  double param = 0.0;
  double g = 0.0;
  double gamma = 0.0;  // +inf divergent, NaN unavailable
  double weighted_length = 0.0;
  std::vector<BoundRow> rows;
  RhoMax rho_max;
  SpectrumDiagnostics diagnostics;
};

/// Checks the proven inequalities on a computed spectrum: Weinstock, the
/// per-index HPS bound (both at indiv_tol) and for every n the summed HPS
/// and theorem bounds (at sum_tol). Throws BoundViolation on failure —
/// beyond tolerance these indicate a solver bug, not a sharp domain.
void verify_inequalities(const SteklovSpectrum& spectrum, double g,
                         double gamma, double sum_tol = 1e-4,
                         double indiv_tol = 1e-6);

/// Full per-n comparison of the computed eigenvalue sums against the
/// available bounds, with rho_n and rho_max. Hard-fails (BoundViolation) if
/// any proven inequality is violated beyond tolerance.
BoundReport comparison_report(const StarlikeDomain& d, const BoundaryWeight& q,
                              int n_max, const SolveOptions& options = {});

/// CSV with header n,sum,bound_g,bound_gamma,hps,rho_n. Deterministic:
/// identical inputs yield byte-identical text. Infinite entries print as
/// "inf", unavailable ones as "na".
std::string to_csv(const BoundReport& report);

nlohmann::json to_json(const BoundReport& report);
BoundReport report_from_json(const nlohmann::json& j);

}  // namespace steklov
