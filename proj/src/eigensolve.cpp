#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "magspec/eigensolve.hpp"

namespace magspec {

namespace {

using Cplx = std::complex<double>;
using SpMatC = Eigen::SparseMatrix<Cplx>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

// M-inner-product Gram-Schmidt deflation of the given vectors from X
void deflate_block(MatC& X, const SpMatC& Mc,
                   const std::vector<VecC>& deflate) {
  for (const VecC& d : deflate) {
    VecC Md = Mc * d;
    Cplx dMd = d.adjoint() * Md;
    if (std::abs(dMd) == 0) continue;
    Eigen::RowVectorXcd coef = (Md.adjoint() * X) / dMd;
    X.noalias() -= d * coef;
  }
}

// B-orthonormalize the block via Cholesky of the M-Gram matrix
void orthonormalize(MatC& X, const SpMatC& Mc) {
  MatC G = X.adjoint() * (Mc * X);
  Eigen::LLT<MatC> llt(0.5 * (G + G.adjoint()));
  if (llt.info() != Eigen::Success) {
    // rank-deficient block: fall back to column-by-column Gram-Schmidt
    for (int j = 0; j < X.cols(); ++j) {
      for (int i = 0; i < j; ++i) {
        Cplx c = X.col(i).adjoint() * (Mc * X.col(j));
        X.col(j) -= c * X.col(i);
      }
      double nrm = std::sqrt(std::abs(Cplx(X.col(j).adjoint() * (Mc * X.col(j)))));
      if (nrm > 1e-300) X.col(j) /= nrm;
    }
    return;
  }
  X = llt.matrixL().solve(X.adjoint()).adjoint();
}

}  // namespace

Spectrum smallest(const HermitianSystem& sys, int k, double tol,
                  const EigOptions& opt) {
  const int n = sys.n;
  if (k < 1) throw ValidationError("eigensolve: k must be >= 1");
  if (k > n) throw ValidationError("eigensolve: k exceeds the DOF count");
  if (!(tol > 0)) throw ValidationError("eigensolve: tol must be > 0");

  const int p = std::min(n, k + std::max(2, opt.block_extra));
  SpMatC Mc = sys.M.cast<Cplx>();

  // Shift: zero when K is positive definite, otherwise a Weyl-scale lift so
  // the factorization stays nonsingular (zero modes handled by deflation).
  double sigma = 0.0;
  if (!sys.positive_definite) {
    double mass = sys.M.diagonal().sum();           // = area/2 for P1 meshes
    double area_est = std::max(2.0 * mass, 1e-12);  // total mass = area
    sigma = 4.0 * kPi / area_est;
  }

  SpMatC S = sys.K;
  if (sigma != 0.0) S = sys.K + SpMatC(sigma * Mc);
  Eigen::SparseLU<SpMatC> lu;
  lu.isSymmetric(true);
  lu.compute(S);
  if (lu.info() != Eigen::Success)
    throw SolverError("eigensolve: factorization of the shifted pencil failed");

  // deterministic seeded starting block
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  MatC X(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = Cplx(uni(rng), uni(rng));
  deflate_block(X, Mc, opt.deflate);
  orthonormalize(X, Mc);

  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd resid = Eigen::VectorXd::Constant(p, 1e300);
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    MatC Y = lu.solve(Mc * X);
    deflate_block(Y, Mc, opt.deflate);
    orthonormalize(Y, Mc);
    // Rayleigh-Ritz on (K, M) within the M-orthonormal block
    MatC H = Y.adjoint() * (sys.K * Y);
    Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (H + H.adjoint()));
    X = Y * es.eigenvectors();
    ritz = es.eigenvalues();

    bool done = true;
    for (int j = 0; j < k; ++j) {
      VecC r = sys.K * X.col(j) - Cplx(ritz[j]) * (Mc * X.col(j));
      resid[j] = r.norm() / std::max(std::abs(ritz[j]), 1.0);
      if (resid[j] > tol) done = false;
    }
    if (done) break;
  }
  if (it == opt.max_iter) {
    std::ostringstream msg;
    msg << "eigensolve: no convergence after " << opt.max_iter
        << " iterations; residuals:";
    for (int j = 0; j < k; ++j) msg << ' ' << resid[j];
    throw SolverError(msg.str());
  }

  // the pencil is positive semidefinite: zero modes may round to -eps
  for (int j = 0; j < k; ++j)
    if (ritz[j] < 0 && ritz[j] > -tol) ritz[j] = 0.0;

  Spectrum sp;
  sp.k = k;
  sp.method = "fem";
  sp.eigenvalues.assign(ritz.data(), ritz.data() + k);
  sp.residuals.assign(resid.data(), resid.data() + k);
  sp.eigenvectors = X.leftCols(k);
  return sp;
}

double neumann_lambda2(const TriangleMesh& mesh) {
  HermitianSystem sys = assemble_magnetic(mesh, standard_potential(0.0));
  EigOptions opt;
  opt.deflate.push_back(Eigen::VectorXcd::Constant(sys.n, Cplx(1.0, 0.0)));
  Spectrum sp = smallest(sys, 1, 1e-9, opt);
  return sp.eigenvalues[0];
}

std::vector<double> recompute_residuals(const HermitianSystem& sys,
                                        const Spectrum& sp) {
  std::vector<double> out;
  SpMatC Mc = sys.M.cast<Cplx>();
  for (int j = 0; j < sp.k; ++j) {
    VecC x = sp.eigenvectors.col(j);
    double lam = sp.eigenvalues[j];
    double xMx = std::sqrt(std::abs(Cplx(x.adjoint() * (Mc * x))));
    VecC r = sys.K * x - Cplx(lam) * (Mc * x);
    out.push_back(r.norm() / (xMx * std::max(std::abs(lam), 1.0)));
  }
  return out;
}

}  // namespace magspec
