#pragma once

#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>

#include "magspec/mesh.hpp"
#include "magspec/par.hpp"

namespace magspec {

/// Magnetic vector potential A(x). The standard potential is
/// A = (beta/2)(-x2, x1); torsion-derived potentials are piecewise constant
/// per triangle and used element-locally during assembly.
struct PotentialField {
  enum class Tag { standard, from_torsion, custom };
  Tag tag = Tag::standard;
  double beta = 0;  // field strength for the standard tag
  std::function<Vec2(const Vec2&)> eval;
  std::shared_ptr<const std::vector<Vec2>> per_triangle;  // from_torsion

  Vec2 at(const Vec2& x) const { return eval(x); }
};

PotentialField standard_potential(double beta);

/// Discrete magnetic Neumann form: complex Hermitian stiffness K and real
/// SPD mass M for the pencil K x = lambda M x.
struct HermitianSystem {
  Eigen::SparseMatrix<std::complex<double>> K;
  Eigen::SparseMatrix<double> M;
  int n = 0;
  std::vector<int> boundary_dofs;
  std::vector<int> dof_to_node;  // identity for Neumann, interior map for Dirichlet
  bool positive_definite = false;  // K is PD (potential not gauge-trivial)
};

/// P1 assembly of the magnetic sesquilinear form with natural (magnetic
/// Neumann) boundary conditions. A-dependent terms use 3-point edge-midpoint
/// quadrature; stiffness and mass are exact.
HermitianSystem assemble_magnetic(const TriangleMesh& mesh,
                                  const PotentialField& A,
                                  ExecMode mode = default_mode());

/// Same form with boundary DOFs eliminated (Dirichlet restriction).
HermitianSystem assemble_dirichlet(const TriangleMesh& mesh,
                                   const PotentialField& A,
                                   ExecMode mode = default_mode());

/// Nodal solution of (positive) Delta phi = beta, phi = 0 on the boundary.
struct TorsionField {
  std::vector<double> values;  // one per mesh node, zero on boundary
  double phi_star = 0;         // max |phi|
  double residual = 0;         // relative algebraic residual
};

TorsionField solve_torsion(const TriangleMesh& mesh,
                           const std::function<double(const Vec2&)>& beta_field);

/// Canonical potential A_can = (d phi/dx2, -d phi/dx1), piecewise constant
/// per triangle from the P1 torsion solution.
PotentialField potential_from_torsion(const TriangleMesh& mesh,
                                      const TorsionField& phi);

/// Rayleigh quotient (v*Kv)/(v*Mv). Throws on the zero vector.
double rayleigh(const HermitianSystem& sys, const Eigen::VectorXcd& v);

/// Debug export in "i j re im" coordinate format.
void write_coordinate(const Eigen::SparseMatrix<std::complex<double>>& K,
                      std::ostream& os);

}  // namespace magspec
