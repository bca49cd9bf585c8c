#pragma once

#include <Eigen/Dense>

#include "steklov/geometry.hpp"

namespace steklov {

/// Harmonic polynomial trial space on the plane: the constant together with
/// (r/r_scale)^k cos(k theta), (r/r_scale)^k sin(k theta) for 1 <= k <= degree
/// (2*degree+1 functions). On the unit disk these are exactly the Steklov
/// eigenfunctions. r_scale keeps the high modes bounded on the boundary.
struct HarmonicBasis {
  int degree = 1;
  double r_scale = 1.0;

  int size() const { return 2 * degree + 1; }

  /// Values of all basis functions at the point (x, y), row-major into out.
  void values(double x, double y, double* out) const;

  /// Normal derivatives at (x, y) with unit normal (nx, ny).
  void normal_derivs(double x, double y, double nx, double ny,
                     double* out) const;
};

struct SpectrumDiagnostics {
  int basis_degree = 0;
  int quadrature_nodes = 0;
  int truncation_rank = 0;
  double mass_condition = 0.0;
  double assembly_asymmetry = 0.0;  // max |A - A^T| before symmetrizing
  double max_residual = 0.0;
  bool ill_conditioned = false;     // mass condition above 1e14
  bool converged = true;            // degree doubling settled below rel_tol
};

/// Sorted nonzero Steklov eigenvalues with the weighted perimeter and solver
/// diagnostics. sigma(j) is 1-based, matching sigma_1 <= sigma_2 <= ...
struct SteklovSpectrum {
  std::vector<double> eigenvalues;
  double weighted_length = 0.0;
  SpectrumDiagnostics diagnostics;

  double sigma(int j) const { return eigenvalues.at(j - 1); }
  int count() const { return static_cast<int>(eigenvalues.size()); }
};

struct AssembledSystem {
  Eigen::MatrixXd stiffness;  // A_ij = int_Sigma phi_i d_n phi_j ds
  Eigen::MatrixXd mass;       // M_ij = int_Sigma phi_i phi_j q ds
  double asymmetry = 0.0;
  int quadrature_nodes = 0;
};

/// Boundary Galerkin matrices for the harmonic basis of the given degree.
/// Harmonicity turns the Dirichlet inner product into the boundary integral
/// above; A is symmetrized and its measured asymmetry recorded. Requires
/// nq >= 8*degree boundary quadrature nodes.
AssembledSystem assemble(const StarlikeDomain& d, const BoundaryWeight& q,
                         int degree, int nq);

/// Solves A x = sigma M x on the numerically nonsingular subspace of M
/// (eigenvalues of M below svd_tol * max are dropped), discards sigma_0 = 0,
/// and returns the first n positive eigenvalues. Throws InsufficientBasis if
/// fewer than n survive. The weighted perimeter is not attached here.
SteklovSpectrum solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M,
                      int n, double svd_tol = 1e-12);

struct SolveOptions {
  int initial_degree = 16;
  int max_degree = 256;
  double rel_tol = 1e-6;    // settle tolerance for degree doubling
  double svd_tol = 1e-12;
  int quadrature_override = 0;  // 0 = automatic (max(8K, 2048))
  int degree_override = 0;      // 0 = automatic doubling
};

/// First n nonzero Steklov eigenvalues of (d, q). The basis degree doubles
/// from 16 until the eigenvalues settle or the cap of 256 is reached (the
/// unconverged case is flagged, not fatal). Attaches L(Sigma, q).
SteklovSpectrum steklov_eigenvalues(const StarlikeDomain& d,
                                    const BoundaryWeight& q, int n,
                                    const SolveOptions& options = {});

}  // namespace steklov
