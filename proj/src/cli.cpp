#include "steklov/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "steklov/bounds.hpp"

namespace steklov {

namespace {

struct DomainArgs {
  std::string family;
  double param = -1.0;
  double param_sq = -1.0;
  std::string domain_file;
  std::string origin;
};

void add_domain_flags(CLI::App* cmd, DomainArgs* args) {
  cmd->add_option("--family", args->family,
                  "disk | polygon | ellipse | hippopede");
  cmd->add_option("--param", args->param,
                  "family parameter (N, eccentricity or delta)");
  cmd->add_option("--param-sq", args->param_sq,
                  "squared parameter, as the tables list it");
  cmd->add_option("--domain", args->domain_file, "JSON domain config file");
  cmd->add_option("--origin", args->origin,
                  "evaluate factors about the origin x,y");
}

double resolve_param(const DomainArgs& args) {
  if (args.param >= 0.0 && args.param_sq >= 0.0) {
    throw InvalidConfig("give either --param or --param-sq, not both");
  }
  if (args.param >= 0.0) return args.param;
  if (args.param_sq >= 0.0) return std::sqrt(args.param_sq);
  throw InvalidConfig("missing --param / --param-sq");
}

StarlikeDomain resolve_domain(const DomainArgs& args) {
  if (!args.domain_file.empty()) {
    return load_domain_file(args.domain_file);
  }
  if (args.family == "disk") return make_disk();
  if (args.family == "polygon") {
    const double p = resolve_param(args);
    if (args.param_sq >= 0.0) {
      throw InvalidConfig("--param-sq does not apply to polygons");
    }
    return make_polygon(static_cast<int>(std::lround(p)));
  }
  if (args.family == "ellipse") return make_ellipse(resolve_param(args));
  if (args.family == "hippopede") return make_hippopede(resolve_param(args));
  if (args.family.empty()) {
    throw InvalidConfig("missing --family or --domain");
  }
  throw InvalidConfig("unknown family: " + args.family);
}

std::optional<std::array<double, 2>> parse_origin(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::array<double, 2> origin{};
  char extra;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &origin[0], &origin[1], &extra) !=
      2) {
    throw InvalidConfig("--origin must be x,y");
  }
  return origin;
}

std::string fmt4(double v) {
  if (std::isnan(v)) return "n/a";
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt_full(double v) {
  if (std::isnan(v)) return "n/a";
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void print_factor_line(const std::string& label, const GeometricFactors& f) {
  std::printf("%-12s g0=%-13s g1=%-13s g=%-13s gamma1=%-13s gamma=%s\n",
              label.c_str(), fmt_full(f.g0).c_str(), fmt_full(f.g1).c_str(),
              fmt_full(f.g).c_str(), fmt_full(f.gamma1).c_str(),
              fmt_full(f.gamma).c_str());
}

GeometricFactors numeric_factors(const StarlikeDomain& d) {
  GeometricFactors f = g_factor(d, BoundaryWeight::constant(1.0));
  try {
    const BoundaryWeight p = conformal_weight(d.family, d.param);
    f.gamma1 = gamma1(p);
    f.gamma = gamma_factor(p);
  } catch (const UnsupportedFamily&) {
    // leave the conformal fields unavailable
  }
  return f;
}

int cmd_factors(const DomainArgs& args, const std::string& output) {
  const StarlikeDomain d = resolve_domain(args);
  const auto origin = parse_origin(args.origin);

  if (origin) {
    const GeometricFactors f = factors_about_origin(d, *origin);
    std::printf("factors about origin (%g, %g)\n", (*origin)[0], (*origin)[1]);
    print_factor_line("numeric", f);
    return 0;
  }

  const GeometricFactors numeric = numeric_factors(d);
  const auto closed = family_factors(d.family, d.param);
  if (output == "json") {
    nlohmann::json j;
    j["family"] = family_name(d.family);
    j["param"] = d.param;
    auto pack = [](const GeometricFactors& f) {
      auto enc = [](double v) -> nlohmann::json {
        if (std::isnan(v)) return "na";
        if (std::isinf(v)) return "inf";
        return v;
      };
      return nlohmann::json{{"g0", enc(f.g0)},
                            {"g1", enc(f.g1)},
                            {"g", enc(f.g)},
                            {"gamma1", enc(f.gamma1)},
                            {"gamma", enc(f.gamma)}};
    };
    j["numeric"] = pack(numeric);
    if (closed) j["closed_form"] = pack(*closed);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::printf("%s", family_name(d.family).c_str());
  if (d.family != Family::Custom && d.family != Family::Disk) {
    std::printf(" param=%g", d.param);
  }
  std::printf("\n");
  print_factor_line("numeric", numeric);
  if (closed) {
    print_factor_line("closed-form", *closed);
    auto gap = [](double a, double b) {
      if (!std::isfinite(a) || !std::isfinite(b)) return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2e", std::abs(a - b));
      return std::string(buf);
    };
    std::printf("%-12s g0=%-13s g1=%-13s g=%-13s gamma1=%-13s gamma=%s\n",
                "discrepancy", gap(numeric.g0, closed->g0).c_str(),
                gap(numeric.g1, closed->g1).c_str(),
                gap(numeric.g, closed->g).c_str(),
                gap(numeric.gamma1, closed->gamma1).c_str(),
                gap(numeric.gamma, closed->gamma).c_str());
  }
  return 0;
}

int cmd_spectrum(const DomainArgs& args, int n_max, const SolveOptions& opts,
                 const std::string& output) {
  const StarlikeDomain d = resolve_domain(args);
  const SteklovSpectrum spec =
      steklov_eigenvalues(d, BoundaryWeight::constant(1.0), n_max, opts);
  if (output == "json") {
    nlohmann::json j;
    j["family"] = family_name(d.family);
    j["param"] = d.param;
    j["L"] = spec.weighted_length;
    j["eigenvalues"] = spec.eigenvalues;
    j["degree"] = spec.diagnostics.basis_degree;
    j["converged"] = spec.diagnostics.converged;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("L = %.10g   (degree %d, %d quadrature nodes, rank %d%s)\n",
              spec.weighted_length, spec.diagnostics.basis_degree,
              spec.diagnostics.quadrature_nodes,
              spec.diagnostics.truncation_rank,
              spec.diagnostics.converged ? "" : ", NOT converged");
  std::printf("%4s %16s %16s\n", "j", "sigma_j", "sigma_j*L");
  for (int j = 1; j <= spec.count(); ++j) {
    std::printf("%4d %16.10f %16.10f\n", j, spec.sigma(j),
                spec.sigma(j) * spec.weighted_length);
  }
  return 0;
}

int cmd_bounds(const DomainArgs& args, int n_max, const SolveOptions& opts,
               const std::string& output) {
  const StarlikeDomain d = resolve_domain(args);
  const BoundReport report =
      comparison_report(d, BoundaryWeight::constant(1.0), n_max, opts);
  if (output == "csv") {
    std::cout << to_csv(report);
  } else if (output == "json") {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::printf("%s  g=%s  gamma=%s  L=%.8g  rho_max=%.4f at n=%d\n",
                family_name(report.family).c_str(), fmt4(report.g).c_str(),
                fmt4(report.gamma).c_str(), report.weighted_length,
                report.rho_max.value, report.rho_max.argmax);
    std::printf("%4s %14s %14s %14s %14s %10s %8s\n", "n", "sum", "bound_g",
                "bound_gamma", "hps", "rho_n", "tight");
    for (const BoundRow& row : report.rows) {
      std::printf("%4d %14.6f %14s %14s %14.6f %10.6f %8s\n", row.n,
                  row.computed_sum, fmt_full(row.bound_g).c_str(),
                  fmt_full(row.bound_gamma).c_str(), row.hps, row.rho_n,
                  row.tightest.c_str());
    }
  }
  return 0;
}

struct TableColumn {
  std::string header;
  double rho = 0.0;
  int rho_n = 0;
  bool converged = true;
  double g = 0.0;
  double gamma = 0.0;
  double param_sq = 0.0;
};

int cmd_tables(int which, int n_max, const std::string& csv_path,
               const SolveOptions& opts) {
  std::vector<TableColumn> cols;
  const BoundaryWeight unit = BoundaryWeight::constant(1.0);
  std::string title;
  std::string rho_label = "rho_max";
  const bool rho_is_rho2 = which == 3;

  auto solve_column = [&](const StarlikeDomain& d, TableColumn& col) {
    const SteklovSpectrum spec = steklov_eigenvalues(d, unit, n_max, opts);
    if (rho_is_rho2) {
      col.rho = rho(spec, 2);
      col.rho_n = 2;
    } else {
      const RhoMax rm = rho_max(spec, n_max);
      col.rho = rm.value;
      col.rho_n = rm.argmax;
    }
    col.converged = spec.diagnostics.converged;
  };

  if (which == 1) {
    title = "Regular polygons with N sides (inscribed radius 1)";
    for (int N : {3, 4, 5, 6, 8, 10}) {
      TableColumn col;
      col.header = std::to_string(N);
      col.param_sq = N;
      const GeometricFactors f = polygon_factors(N);
      col.g = f.g;
      col.gamma = f.gamma;
      solve_column(make_polygon(N), col);
      cols.push_back(col);
    }
  } else if (which == 2) {
    title = "Ellipses with squared eccentricity eps^2";
    const std::vector<std::pair<std::string, double>> params = {
        {"0", 0.0},        {"1/4", 0.25}, {"1/2", 0.5},
        {"3/4", 0.75},     {"8/9", 8.0 / 9.0}, {"99/100", 0.99}};
    for (const auto& [label, e2] : params) {
      TableColumn col;
      col.header = label;
      col.param_sq = e2;
      const GeometricFactors f = ellipse_factors(std::sqrt(e2));
      col.g = f.g;
      col.gamma = f.gamma;
      solve_column(make_ellipse(std::sqrt(e2)), col);
      cols.push_back(col);
    }
  } else if (which == 3) {
    title = "Hippopedes with squared parameter delta^2";
    rho_label = "rho_2";
    const std::vector<std::pair<std::string, double>> params = {
        {"1/100", 0.01},   {"1/16", 1.0 / 16.0}, {"1/9", 1.0 / 9.0},
        {"1/4", 0.25},     {"1/2", 0.5},         {"3/4", 0.75},
        {"1", 1.0}};
    for (const auto& [label, d2] : params) {
      TableColumn col;
      col.header = label;
      col.param_sq = d2;
      const GeometricFactors f = hippopede_factors(std::sqrt(d2));
      col.g = f.g;
      col.gamma = f.gamma;
      solve_column(make_hippopede(std::sqrt(d2)), col);
      cols.push_back(col);
    }
  } else {
    throw InvalidConfig("tables: argument must be 1, 2 or 3");
  }

  auto rho_cell = [&](const TableColumn& col) {
    std::string cell = fmt4(col.rho);
    if (!col.converged) cell = "~" + cell + "*";
    return cell;
  };

  std::printf("%s\n", title.c_str());
  std::printf("%-9s", which == 1 ? "N" : (which == 2 ? "eps^2" : "delta^2"));
  for (const auto& col : cols) std::printf(" %9s", col.header.c_str());
  std::printf("\n%-9s", rho_label.c_str());
  for (const auto& col : cols) std::printf(" %9s", rho_cell(col).c_str());
  std::printf("\n%-9s", "  at n");
  for (const auto& col : cols) std::printf(" %9d", col.rho_n);
  std::printf("\n%-9s", "g");
  for (const auto& col : cols) std::printf(" %9s", fmt4(col.g).c_str());
  if (which != 2) {
    std::printf("\n%-9s", "gamma");
    for (const auto& col : cols) std::printf(" %9s", fmt4(col.gamma).c_str());
  }
  std::printf("\n");

  const std::string path =
      csv_path.empty() ? "table" + std::to_string(which) + ".csv" : csv_path;
  std::ofstream csv(path);
  if (!csv) {
    throw InvalidConfig("cannot write CSV: " + path);
  }
  csv << (which == 1 ? "N" : "param_sq") << "," << rho_label
      << ",at_n,g,gamma,converged\n";
  for (const auto& col : cols) {
    csv << col.header << ',' << fmt_full(col.rho) << ',' << col.rho_n << ','
        << fmt_full(col.g) << ',' << fmt_full(col.gamma) << ','
        << (col.converged ? 1 : 0) << '\n';
  }
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Steklov eigenvalue sums: geometric factors, spectra and "
               "sharp bound reports for planar starlike domains"};
  app.require_subcommand(1);

  DomainArgs domain_args;
  int n_max = 8;
  int table_n_max = 16;
  int table_which = 1;
  std::string output = "text";
  std::string csv_path;
  SolveOptions solve_opts;
  int degree = 0;
  int quad_nodes = 0;

  CLI::App* factors_cmd =
      app.add_subcommand("factors", "geometric factors of a domain");
  add_domain_flags(factors_cmd, &domain_args);
  factors_cmd->add_option("--output", output, "text | json");

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Steklov eigenvalues of a domain");
  add_domain_flags(spectrum_cmd, &domain_args);
  spectrum_cmd->add_option("--n-max", n_max, "number of eigenvalues");
  spectrum_cmd->add_option("--degree", degree, "fixed basis degree");
  spectrum_cmd->add_option("--quad-nodes", quad_nodes, "quadrature nodes");
  spectrum_cmd->add_option("--output", output, "text | json");

  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "eigenvalue-sum bound comparison report");
  add_domain_flags(bounds_cmd, &domain_args);
  bounds_cmd->add_option("--n-max", n_max, "largest sum length");
  bounds_cmd->add_option("--degree", degree, "fixed basis degree");
  bounds_cmd->add_option("--quad-nodes", quad_nodes, "quadrature nodes");
  bounds_cmd->add_option("--output", output, "text | csv | json");

  CLI::App* tables_cmd =
      app.add_subcommand("tables", "regenerate a family table (1, 2 or 3)");
  tables_cmd->add_option("which", table_which, "1=polygons 2=ellipses 3=hippopedes")
      ->required();
  tables_cmd->add_option("--n-max", table_n_max, "largest sum length");
  tables_cmd->add_option("--csv-path", csv_path, "CSV output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  solve_opts.degree_override = degree;
  solve_opts.quadrature_override = quad_nodes;

  try {
    if (factors_cmd->parsed()) return cmd_factors(domain_args, output);
    if (spectrum_cmd->parsed()) {
      return cmd_spectrum(domain_args, n_max, solve_opts, output);
    }
    if (bounds_cmd->parsed()) {
      return cmd_bounds(domain_args, n_max, solve_opts, output);
    }
    if (tables_cmd->parsed()) {
      return cmd_tables(table_which, table_n_max, csv_path, solve_opts);
    }
  } catch (const BoundViolation& e) {
    std::cerr << "bound violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace steklov
