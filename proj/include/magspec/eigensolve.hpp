#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "magspec/fem.hpp"

namespace magspec {

/// Ordered eigenvalues with residual certificates and provenance.
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ||Kx - lambda Mx|| / (||x||_M max(lambda,1))
  int k = 0;
  double beta = 0;
  std::string domain_id;
  std::string method;  // "fem" | "closedform-disk" | "closedform-circle"
  std::optional<double> mesh_h;

  // in-memory only (not serialized): M-orthonormal Ritz vectors
  Eigen::MatrixXcd eigenvectors;
};

struct EigOptions {
  double tol = 1e-8;
  unsigned seed = 42;
  int max_iter = 500;
  int block_extra = 8;  // extra vectors beyond k in the iteration block
  // vectors to deflate (projected out of the block every iteration)
  std::vector<Eigen::VectorXcd> deflate;
};

/// k smallest eigenpairs of the Hermitian pencil K x = lambda M x by
/// shift-invert block subspace iteration (sparse LU of K + sigma M, fixed
/// seeded starting block, Rayleigh-Ritz every step). Deterministic for a
/// fixed seed. Throws SolverError on non-convergence (message carries the
/// best residuals), ValidationError for k > n.
Spectrum smallest(const HermitianSystem& sys, int k, double tol,
                  const EigOptions& opt = {});

/// First positive Neumann eigenvalue of the (non-magnetic) Laplacian: the
/// beta = 0 pencil with the constant zero mode deflated.
double neumann_lambda2(const TriangleMesh& mesh);

/// Recompute residual certificates for a FEM spectrum against its system.
std::vector<double> recompute_residuals(const HermitianSystem& sys,
                                        const Spectrum& sp);

}  // namespace magspec
