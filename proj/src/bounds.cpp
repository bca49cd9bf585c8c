#include "steklov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace steklov {

namespace {

constexpr double kPi = two_pi / 2.0;

double apply_concave(const ConcaveFunctional& C, double a) {
  switch (C.kind) {
    case FunctionalKind::Identity: return a;
    case FunctionalKind::Power: return std::pow(a, C.param);
    case FunctionalKind::Log: return std::log(a);
    case FunctionalKind::NegPower: return std::pow(a, C.param);
    case FunctionalKind::NegExp: return std::exp(-C.param * a);
  }
  return a;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "na";
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json json_value(double v) {
  if (std::isnan(v)) return "na";
  if (std::isinf(v)) return "inf";
  return v;
}

double value_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

Family family_from_name(const std::string& name) {
  if (name == "disk") return Family::Disk;
  if (name == "polygon") return Family::Polygon;
  if (name == "ellipse") return Family::Ellipse;
  if (name == "hippopede") return Family::Hippopede;
  return Family::Custom;
}

}  // namespace

long ceil_half_sum(int n) {
  long acc = 0;
  for (int j = 1; j <= n; ++j) acc += (j + 1) / 2;
  return acc;
}

double theorem_sum_bound(double factor, int n) {
  if (n < 1 || !(factor >= 1.0)) {
    throw DomainError("theorem_sum_bound: need n >= 1 and factor >= 1");
  }
  return two_pi * factor * static_cast<double>(ceil_half_sum(n));
}

HpsBounds hps_bounds(int n) {
  if (n < 1) {
    throw DomainError("hps_bounds: need n >= 1");
  }
  return {kPi * n * (n + 1.0), two_pi};
}

FunctionalCheck functional_bound(const SteklovSpectrum& spectrum,
                                 const ConcaveFunctional& C, double factor,
                                 int n, double tol) {
  if (spectrum.count() < n) {
    throw DomainError("functional_bound: spectrum too short");
  }
  for (int j = 1; j <= n; ++j) {
    if (!(spectrum.sigma(j) > 0.0)) {
      throw DomainError("functional_bound: nonpositive eigenvalue");
    }
  }
  const double L = spectrum.weighted_length;
  const bool flipped =
      C.kind == FunctionalKind::NegPower || C.kind == FunctionalKind::NegExp;

  FunctionalCheck check;
  for (int j = 1; j <= n; ++j) {
    const double disk_level = two_pi * ((j + 1) / 2);
    if (flipped) {
      check.lhs += apply_concave(C, spectrum.sigma(j) * L / factor);
      check.rhs += apply_concave(C, disk_level);
    } else {
      check.lhs += apply_concave(C, spectrum.sigma(j) * L);
      check.rhs += apply_concave(C, factor * disk_level);
    }
  }
  const double slack = tol * std::max(1.0, std::abs(check.rhs));
  check.satisfied = flipped ? check.lhs >= check.rhs - slack
                            : check.lhs <= check.rhs + slack;
  return check;
}

double rho(const SteklovSpectrum& spectrum, int n) {
  if (spectrum.count() < n || n < 1) {
    throw DomainError("rho: spectrum too short");
  }
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) sum += spectrum.sigma(j);
  return sum * spectrum.weighted_length /
         (two_pi * static_cast<double>(ceil_half_sum(n)));
}

RhoMax rho_max(const SteklovSpectrum& spectrum, int n_max) {
  RhoMax best;
  for (int n = 1; n <= n_max; ++n) {
    const double r = rho(spectrum, n);
    if (r > best.value) {
      best.value = r;
      best.argmax = n;
    }
  }
  return best;
}

void verify_inequalities(const SteklovSpectrum& spectrum, double g,
                         double gamma, double sum_tol, double indiv_tol) {
  const double L = spectrum.weighted_length;
  const int count = spectrum.count();
  double running_sum = 0.0;
  for (int j = 1; j <= count; ++j) {
    const double sigma_L = spectrum.sigma(j) * L;
    if (j == 1 && sigma_L > two_pi + indiv_tol) {
      throw BoundViolation("Weinstock inequality violated: sigma_1 L = " +
                           std::to_string(sigma_L));
    }
    if (sigma_L > two_pi * j + indiv_tol) {
      throw BoundViolation("HPS inequality violated at j = " +
                           std::to_string(j));
    }
    running_sum += sigma_L;
    const double hps_sum = kPi * j * (j + 1.0);
    if (running_sum > hps_sum + sum_tol) {
      throw BoundViolation("summed HPS violated at n = " + std::to_string(j));
    }
    const double disk_sum = two_pi * static_cast<double>(ceil_half_sum(j));
    if (std::isfinite(g) && running_sum > g * disk_sum + sum_tol) {
      throw BoundViolation("starlike sum bound violated at n = " +
                           std::to_string(j));
    }
    if (std::isfinite(gamma) && running_sum > gamma * disk_sum + sum_tol) {
      throw BoundViolation("conformal sum bound violated at n = " +
                           std::to_string(j));
    }
    const double rho_n = running_sum / disk_sum;
    if (std::isfinite(g) && rho_n > g + sum_tol) {
      throw BoundViolation("rho exceeds g at n = " + std::to_string(j));
    }
    if (std::isfinite(gamma) && rho_n > gamma + sum_tol) {
      throw BoundViolation("rho exceeds gamma at n = " + std::to_string(j));
    }
  }
}

BoundReport comparison_report(const StarlikeDomain& d, const BoundaryWeight& q,
                              int n_max, const SolveOptions& options) {
  BoundReport report;
  report.family = d.family;
  report.param = d.param;

  if (auto closed = family_factors(d.family, d.param)) {
    report.g = closed->g;
    report.gamma = closed->gamma;
  } else {
    report.g = g_factor(d, q).g;
    report.gamma = std::numeric_limits<double>::quiet_NaN();
  }

  const SteklovSpectrum spectrum = steklov_eigenvalues(d, q, n_max, options);
  report.weighted_length = spectrum.weighted_length;
  report.diagnostics = spectrum.diagnostics;

  verify_inequalities(spectrum, report.g, report.gamma);

  double running_sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    BoundRow row;
    row.n = n;
    running_sum += spectrum.sigma(n) * spectrum.weighted_length;
    row.computed_sum = running_sum;
    row.bound_g = theorem_sum_bound(std::isfinite(report.g) ? report.g : 1.0, n);
    if (!std::isfinite(report.g)) row.bound_g = report.g;
    row.bound_gamma = std::isfinite(report.gamma)
                          ? theorem_sum_bound(report.gamma, n)
                          : report.gamma;
    row.hps = hps_bounds(n).sum;
    row.rho_n = rho(spectrum, n);
    double tightest = row.hps;
    row.tightest = "hps";
    if (std::isfinite(row.bound_g) && row.bound_g < tightest) {
      tightest = row.bound_g;
      row.tightest = "g";
    }
    if (std::isfinite(row.bound_gamma) && row.bound_gamma < tightest) {
      tightest = row.bound_gamma;
      row.tightest = "gamma";
    }
    report.rows.push_back(row);
  }
  report.rho_max = rho_max(spectrum, n_max);
  return report;
}

std::string to_csv(const BoundReport& report) {
  std::ostringstream out;
  out << "n,sum,bound_g,bound_gamma,hps,rho_n\n";
  for (const BoundRow& row : report.rows) {
    out << row.n << ',' << format_value(row.computed_sum) << ','
        << format_value(row.bound_g) << ',' << format_value(row.bound_gamma)
        << ',' << format_value(row.hps) << ',' << format_value(row.rho_n)
        << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  j["family"] = family_name(report.family);
  j["param"] = report.param;
  j["g"] = json_value(report.g);
  j["gamma"] = json_value(report.gamma);
  j["weighted_length"] = report.weighted_length;
  j["rho_max"] = report.rho_max.value;
  j["rho_argmax"] = report.rho_max.argmax;
  j["diagnostics"] = {
      {"basis_degree", report.diagnostics.basis_degree},
      {"quadrature_nodes", report.diagnostics.quadrature_nodes},
      {"truncation_rank", report.diagnostics.truncation_rank},
      {"mass_condition", report.diagnostics.mass_condition},
      {"assembly_asymmetry", report.diagnostics.assembly_asymmetry},
      {"max_residual", report.diagnostics.max_residual},
      {"ill_conditioned", report.diagnostics.ill_conditioned},
      {"converged", report.diagnostics.converged}};
  j["rows"] = nlohmann::json::array();
  for (const BoundRow& row : report.rows) {
    j["rows"].push_back({{"n", row.n},
                         {"sum", row.computed_sum},
                         {"bound_g", json_value(row.bound_g)},
                         {"bound_gamma", json_value(row.bound_gamma)},
                         {"hps", row.hps},
                         {"rho_n", row.rho_n},
                         {"tightest", row.tightest}});
  }
  return j;
}

BoundReport report_from_json(const nlohmann::json& j) {
  BoundReport report;
  report.family = family_from_name(j.at("family").get<std::string>());
  report.param = j.at("param").get<double>();
  report.g = value_from_json(j.at("g"));
  report.gamma = value_from_json(j.at("gamma"));
  report.weighted_length = j.at("weighted_length").get<double>();
  report.rho_max.value = j.at("rho_max").get<double>();
  report.rho_max.argmax = j.at("rho_argmax").get<int>();
  const auto& diag = j.at("diagnostics");
  report.diagnostics.basis_degree = diag.at("basis_degree").get<int>();
  report.diagnostics.quadrature_nodes = diag.at("quadrature_nodes").get<int>();
  report.diagnostics.truncation_rank = diag.at("truncation_rank").get<int>();
  report.diagnostics.mass_condition = diag.at("mass_condition").get<double>();
  report.diagnostics.assembly_asymmetry =
      diag.at("assembly_asymmetry").get<double>();
  report.diagnostics.max_residual = diag.at("max_residual").get<double>();
  report.diagnostics.ill_conditioned = diag.at("ill_conditioned").get<bool>();
  report.diagnostics.converged = diag.at("converged").get<bool>();
  for (const auto& row_json : j.at("rows")) {
    BoundRow row;
    row.n = row_json.at("n").get<int>();
    row.computed_sum = row_json.at("sum").get<double>();
    row.bound_g = value_from_json(row_json.at("bound_g"));
    row.bound_gamma = value_from_json(row_json.at("bound_gamma"));
    row.hps = row_json.at("hps").get<double>();
    row.rho_n = row_json.at("rho_n").get<double>();
    row.tightest = row_json.at("tightest").get<std::string>();
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace steklov
