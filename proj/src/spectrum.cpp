#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

namespace {

struct QuadNode {
  double theta, weight;
};

// Boundary quadrature nodes: trapezoid for smooth boundaries, composite
// 16-point Gauss per smooth piece otherwise (nodes never land on kinks).
std::vector<QuadNode> boundary_nodes(const StarlikeDomain& d, int nq) {
  std::vector<QuadNode> nodes;
  nodes.reserve(nq + 64);
  if (d.kinks.empty()) {
    for (int k = 0; k < nq; ++k) {
      nodes.push_back({two_pi * k / nq, two_pi / nq});
    }
    return nodes;
  }
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
    const int panels = std::max(
        4, static_cast<int>(std::lround(nq * len / two_pi / 16.0)));
    const double h = len / panels;
    for (int k = 0; k < panels; ++k) {
      const double mid = lo + (k + 0.5) * h;
      for (int j = 0; j < 8; ++j) {
        nodes.push_back({mid - 0.5 * h * gx[j], 0.5 * h * gw[j]});
        nodes.push_back({mid + 0.5 * h * gx[j], 0.5 * h * gw[j]});
      }
    }
  }
  return nodes;
}

}  // namespace

void HarmonicBasis::values(double x, double y, double* out) const {
  out[0] = 1.0;
  const double zr = x / r_scale;
  const double zi = y / r_scale;
  double pr = 1.0, pi = 0.0;  // (z/r_scale)^k
  for (int k = 1; k <= degree; ++k) {
    const double nr = pr * zr - pi * zi;
    const double ni = pr * zi + pi * zr;
    pr = nr;
    pi = ni;
    out[2 * k - 1] = pr;
    out[2 * k] = pi;
  }
}

void HarmonicBasis::normal_derivs(double x, double y, double nx, double ny,
                                  double* out) const {
  out[0] = 0.0;
  const double zr = x / r_scale;
  const double zi = y / r_scale;
  double pr = 1.0, pi = 0.0;  // (z/r_scale)^{k-1}
  for (int k = 1; k <= degree; ++k) {
    // grad Re(w^k) = (k/r_scale)(Re w^{k-1}, -Im w^{k-1}),
    // grad Im(w^k) = (k/r_scale)(Im w^{k-1},  Re w^{k-1}).
    const double scale = k / r_scale;
    out[2 * k - 1] = scale * (pr * nx - pi * ny);
    out[2 * k] = scale * (pi * nx + pr * ny);
    const double nr = pr * zr - pi * zi;
    const double ni = pr * zi + pi * zr;
    pr = nr;
    pi = ni;
  }
}

AssembledSystem assemble(const StarlikeDomain& d, const BoundaryWeight& q,
                         int degree, int nq) {
  if (degree < 1) {
    throw DomainError("assemble: degree must be at least 1");
  }
  if (nq < 8 * degree) {
    throw DomainError("assemble: need at least 8*degree quadrature nodes");
  }
  const HarmonicBasis basis{degree, d.max_radius()};
  const int m = basis.size();
  const std::vector<QuadNode> nodes = boundary_nodes(d, nq);
  const int actual = static_cast<int>(nodes.size());

  Eigen::MatrixXd values(actual, m);
  Eigen::MatrixXd normal_derivs(actual, m);
  Eigen::VectorXd ds_weight(actual), q_weight(actual);
  std::vector<double> row(m);
  for (int i = 0; i < actual; ++i) {
    const double theta = nodes[i].theta;
    const double R = d.radius(theta);
    const double Rp = d.radius_deriv(theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double x = R * c;
    const double y = R * s;
    const double tx = Rp * c - R * s;
    const double ty = Rp * s + R * c;
    const double speed = std::sqrt(tx * tx + ty * ty);
    basis.values(x, y, row.data());
    for (int j = 0; j < m; ++j) values(i, j) = row[j];
    basis.normal_derivs(x, y, ty / speed, -tx / speed, row.data());
    for (int j = 0; j < m; ++j) normal_derivs(i, j) = row[j];
    ds_weight(i) = nodes[i].weight * speed;
    q_weight(i) = ds_weight(i) * q(theta);
  }

  AssembledSystem sys;
  sys.quadrature_nodes = actual;
  sys.stiffness = values.transpose() * ds_weight.asDiagonal() * normal_derivs;
  sys.mass = values.transpose() * q_weight.asDiagonal() * values;
  sys.asymmetry =
      (sys.stiffness - sys.stiffness.transpose()).cwiseAbs().maxCoeff();
  sys.stiffness = 0.5 * (sys.stiffness + sys.stiffness.transpose()).eval();
  sys.mass = 0.5 * (sys.mass + sys.mass.transpose()).eval();
  // The constant basis function has vanishing normal derivative.
  sys.stiffness.row(0).setZero();
  sys.stiffness.col(0).setZero();
  return sys;
}

SteklovSpectrum solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M,
                      int n, double svd_tol) {
  const int m = static_cast<int>(A.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mass_eig(M);
  const Eigen::VectorXd& lambda = mass_eig.eigenvalues();
  const double lambda_max = lambda(m - 1);
  int first_kept = 0;
  while (first_kept < m && lambda(first_kept) <= svd_tol * lambda_max) {
    ++first_kept;
  }
  const int rank = m - first_kept;
  if (rank < 1) {
    throw InsufficientBasis("solve: mass matrix is numerically zero");
  }

  Eigen::MatrixXd W(m, rank);
  for (int j = 0; j < rank; ++j) {
    W.col(j) = mass_eig.eigenvectors().col(first_kept + j) /
               std::sqrt(lambda(first_kept + j));
  }
  Eigen::MatrixXd reduced = W.transpose() * A * W;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);

  SteklovSpectrum spectrum;
  spectrum.diagnostics.truncation_rank = rank;
  spectrum.diagnostics.mass_condition =
      lambda_max / std::max(lambda(first_kept), 1e-300);
  const double full_condition =
      lambda_max / std::max(std::abs(lambda(0)), 1e-300);
  spectrum.diagnostics.ill_conditioned = full_condition > 1e14;

  const double sigma_max = std::max(std::abs(eig.eigenvalues()(rank - 1)),
                                    std::abs(eig.eigenvalues()(0)));
  const double zero_tol = 1e-9 * std::max(sigma_max, 1e-30);
  std::vector<int> kept;
  for (int j = 0; j < rank; ++j) {
    if (eig.eigenvalues()(j) > zero_tol) kept.push_back(j);
  }
  if (static_cast<int>(kept.size()) < n) {
    throw InsufficientBasis("solve: fewer positive eigenvalues than requested");
  }

  double max_residual = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const int j = kept[idx];
    const double sigma = eig.eigenvalues()(j);
    spectrum.eigenvalues.push_back(sigma);
    const Eigen::VectorXd v = W * eig.eigenvectors().col(j);
    const double res = (A * v - sigma * (M * v)).norm() /
                       std::max(1e-300, (A * v).norm() + sigma * (M * v).norm());
    max_residual = std::max(max_residual, res);
  }
  spectrum.diagnostics.max_residual = max_residual;
  return spectrum;
}

SteklovSpectrum steklov_eigenvalues(const StarlikeDomain& d,
                                    const BoundaryWeight& q, int n,
                                    const SolveOptions& options) {
  const double L = weighted_perimeter(d, q);

  auto run = [&](int degree) {
    const int nq = options.quadrature_override > 0
                       ? options.quadrature_override
                       : std::max(8 * degree, 2048);
    const AssembledSystem sys = assemble(d, q, degree, nq);
    SteklovSpectrum spec = solve(sys.stiffness, sys.mass, n, options.svd_tol);
    spec.weighted_length = L;
    spec.diagnostics.basis_degree = degree;
    spec.diagnostics.quadrature_nodes = sys.quadrature_nodes;
    spec.diagnostics.assembly_asymmetry = sys.asymmetry;
    return spec;
  };

  if (options.degree_override > 0) {
    return run(options.degree_override);
  }

  int degree = std::max(options.initial_degree, (n + 3) / 2);
  SteklovSpectrum current;
  bool have_current = false;
  try {
    current = run(degree);
    have_current = true;
  } catch (const InsufficientBasis&) {
    // Retry at a higher degree below.
  }

  while (degree < options.max_degree) {
    degree = std::min(2 * degree, options.max_degree);
    SteklovSpectrum next;
    try {
      next = run(degree);
    } catch (const InsufficientBasis&) {
      if (degree >= options.max_degree && !have_current) throw;
      continue;
    }
    if (have_current) {
      double change = 0.0;
      for (int j = 1; j <= n; ++j) {
        change = std::max(change, std::abs(next.sigma(j) - current.sigma(j)) /
                                      std::max(next.sigma(j), 1e-300));
      }
      if (change < options.rel_tol) {
        next.diagnostics.converged = true;
        return next;
      }
    }
    current = std::move(next);
    have_current = true;
  }
  if (!have_current) {
    throw InsufficientBasis("steklov_eigenvalues: basis cap reached");
  }
  current.diagnostics.converged = false;
  return current;
}

}  // namespace steklov
