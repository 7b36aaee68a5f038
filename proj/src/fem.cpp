#include <Eigen/SparseCholesky>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "magspec/fem.hpp"

namespace magspec {

namespace {

using Cplx = std::complex<double>;

struct LocalMats {
  // local Hermitian 3x3: re[i][j] + i*im[i][j], im antisymmetric
  double re[3][3];
  double im[3][3];
  double mass[3][3];
};

// P1 element matrices with 3-point edge-midpoint quadrature for the
// A-dependent terms (exact for quadratics, O(h^2) for the |A|^2 term).
LocalMats element_matrices(const Vec2& p0, const Vec2& p1, const Vec2& p2,
                           const PotentialField& A, int tri_index) {
  LocalMats lm{};
  double a2 = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
              (p2.x() - p0.x()) * (p1.y() - p0.y());
  double area = 0.5 * a2;
  Vec2 grad[3] = {
      Vec2((p1.y() - p2.y()) / a2, (p2.x() - p1.x()) / a2),
      Vec2((p2.y() - p0.y()) / a2, (p0.x() - p2.x()) / a2),
      Vec2((p0.y() - p1.y()) / a2, (p1.x() - p0.x()) / a2),
  };
  Vec2 mid[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
  // phi_i at edge midpoints: 1/2 when i belongs to the edge
  static const double phim[3][3] = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};

  Vec2 Aq[3];
  if (A.per_triangle) {
    Aq[0] = Aq[1] = Aq[2] = (*A.per_triangle)[tri_index];
  } else {
    for (int q = 0; q < 3; ++q) Aq[q] = A.at(mid[q]);
  }

  const double w = area / 3.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double stiff = area * grad[i].dot(grad[j]);
      double absA = 0, b = 0;
      for (int q = 0; q < 3; ++q) {
        absA += w * Aq[q].squaredNorm() * phim[q][i] * phim[q][j];
        b += w * (Aq[q].x() * (phim[q][i] * grad[j].x() - phim[q][j] * grad[i].x()) +
                  Aq[q].y() * (phim[q][i] * grad[j].y() - phim[q][j] * grad[i].y()));
      }
      lm.re[i][j] = stiff + absA;
      lm.im[i][j] = b;
      lm.mass[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
    }
  }
  // enforce exact Hermitian symmetry of the local block
  for (int i = 0; i < 3; ++i) {
    lm.im[i][i] = 0;
    for (int j = i + 1; j < 3; ++j) {
      lm.re[j][i] = lm.re[i][j];
      lm.im[j][i] = -lm.im[i][j];
    }
  }
  return lm;
}

bool potential_is_zero(const PotentialField& A) {
  if (A.tag == PotentialField::Tag::standard) return A.beta == 0;
  if (A.per_triangle) {
    for (const Vec2& v : *A.per_triangle)
      if (v.squaredNorm() > 0) return false;
    return true;
  }
  return false;
}

HermitianSystem assemble(const TriangleMesh& mesh, const PotentialField& A,
                         ExecMode mode) {
  const int nt = static_cast<int>(mesh.triangles.size());
  const int n = static_cast<int>(mesh.nodes.size());

  // element loop writing each local block to a fixed 9-entry slot; the
  // layout (hence the summation order in setFromTriplets) is identical
  // across modes and thread counts, so assembled matrices match bit for bit
  std::vector<Eigen::Triplet<Cplx>> tk(9 * static_cast<size_t>(nt));
  std::vector<Eigen::Triplet<double>> tm(9 * static_cast<size_t>(nt));
  auto fill = [&](int t) {
    const auto& tri = mesh.triangles[t];
    LocalMats lm = element_matrices(mesh.nodes[tri[0]], mesh.nodes[tri[1]],
                                    mesh.nodes[tri[2]], A, t);
    size_t base = 9 * static_cast<size_t>(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        tk[base] = {tri[i], tri[j], Cplx(lm.re[i][j], lm.im[i][j])};
        tm[base] = {tri[i], tri[j], lm.mass[i][j]};
        ++base;
      }
    }
  };
  if (mode == ExecMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
    for (int t = 0; t < nt; ++t) fill(t);
  } else {
    for (int t = 0; t < nt; ++t) fill(t);
  }
  HermitianSystem sys;
  sys.n = n;
  sys.K.resize(n, n);
  sys.M.resize(n, n);
  sys.K.setFromTriplets(tk.begin(), tk.end());
  sys.M.setFromTriplets(tm.begin(), tm.end());
  std::vector<bool> isb(n, false);
  for (const auto& e : mesh.boundary_edges) isb[e.a] = isb[e.b] = true;
  for (int i = 0; i < n; ++i)
    if (isb[i]) sys.boundary_dofs.push_back(i);
  sys.dof_to_node.resize(n);
  for (int i = 0; i < n; ++i) sys.dof_to_node[i] = i;
  sys.positive_definite = !potential_is_zero(A);
  return sys;
}

}  // namespace

PotentialField standard_potential(double beta) {
  PotentialField f;
  f.tag = PotentialField::Tag::standard;
  f.beta = beta;
  f.eval = [beta](const Vec2& x) {
    return Vec2(-0.5 * beta * x.y(), 0.5 * beta * x.x());
  };
  return f;
}

HermitianSystem assemble_magnetic(const TriangleMesh& mesh,
                                  const PotentialField& A, ExecMode mode) {
  return assemble(mesh, A, mode);
}

HermitianSystem assemble_dirichlet(const TriangleMesh& mesh,
                                   const PotentialField& A, ExecMode mode) {
  HermitianSystem full = assemble(mesh, A, mode);
  const int n = full.n;
  std::vector<bool> isb(n, false);
  for (int i : full.boundary_dofs) isb[i] = true;
  std::vector<int> keep;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!isb[i]) {
      remap[i] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  }
  const int m = static_cast<int>(keep.size());
  std::vector<Eigen::Triplet<Cplx>> tk;
  std::vector<Eigen::Triplet<double>> tm;
  for (int col = 0; col < n; ++col) {
    if (remap[col] < 0) continue;
    for (Eigen::SparseMatrix<Cplx>::InnerIterator it(full.K, col); it; ++it) {
      if (remap[it.row()] < 0) continue;
      tk.emplace_back(remap[it.row()], remap[col], it.value());
    }
    for (Eigen::SparseMatrix<double>::InnerIterator it(full.M, col); it; ++it) {
      if (remap[it.row()] < 0) continue;
      tm.emplace_back(remap[it.row()], remap[col], it.value());
    }
  }
  HermitianSystem sys;
  sys.n = m;
  sys.K.resize(m, m);
  sys.M.resize(m, m);
  sys.K.setFromTriplets(tk.begin(), tk.end());
  sys.M.setFromTriplets(tm.begin(), tm.end());
  sys.dof_to_node = keep;
  sys.positive_definite = true;  // Dirichlet Laplacian is PD even for A = 0
  return sys;
}

TorsionField solve_torsion(const TriangleMesh& mesh,
                           const std::function<double(const Vec2&)>& beta_field) {
  const int n = static_cast<int>(mesh.nodes.size());
  std::vector<bool> isb(n, false);
  for (const auto& e : mesh.boundary_edges) isb[e.a] = isb[e.b] = true;
  std::vector<int> remap(n, -1);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    if (!isb[i]) {
      remap[i] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  }
  const int m = static_cast<int>(keep.size());
  if (m == 0) return {std::vector<double>(n, 0.0), 0.0, 0.0};

  std::vector<Eigen::Triplet<double>> ts;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.nodes[tri[0]];
    const Vec2& p1 = mesh.nodes[tri[1]];
    const Vec2& p2 = mesh.nodes[tri[2]];
    double a2 = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                (p2.x() - p0.x()) * (p1.y() - p0.y());
    double area = 0.5 * a2;
    Vec2 grad[3] = {
        Vec2((p1.y() - p2.y()) / a2, (p2.x() - p1.x()) / a2),
        Vec2((p2.y() - p0.y()) / a2, (p0.x() - p2.x()) / a2),
        Vec2((p0.y() - p1.y()) / a2, (p1.x() - p0.x()) / a2),
    };
    Vec2 mid[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
    static const double phim[3][3] = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    double bq[3] = {beta_field(mid[0]), beta_field(mid[1]), beta_field(mid[2])};
    for (int i = 0; i < 3; ++i) {
      int gi = remap[tri[i]];
      if (gi < 0) continue;
      double load = 0;
      for (int q = 0; q < 3; ++q) load += area / 3.0 * bq[q] * phim[q][i];
      rhs[gi] += load;
      for (int j = 0; j < 3; ++j) {
        int gj = remap[tri[j]];
        if (gj < 0) continue;
        ts.emplace_back(gi, gj, area * grad[i].dot(grad[j]));
      }
    }
  }
  Eigen::SparseMatrix<double> S(m, m);
  S.setFromTriplets(ts.begin(), ts.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(S);
  if (solver.info() != Eigen::Success)
    throw SolverError("torsion: factorization failed");
  Eigen::VectorXd phi = solver.solve(rhs);
  double rnorm = (S * phi - rhs).norm();
  double rel = rhs.norm() > 0 ? rnorm / rhs.norm() : rnorm;
  if (rel > 1e-10) throw SolverError("torsion: residual above 1e-10");

  TorsionField out;
  out.values.assign(n, 0.0);
  for (int i = 0; i < m; ++i) out.values[keep[i]] = phi[i];
  out.phi_star = 0;
  for (double v : out.values) out.phi_star = std::max(out.phi_star, std::abs(v));
  out.residual = rel;
  return out;
}

PotentialField potential_from_torsion(const TriangleMesh& mesh,
                                      const TorsionField& phi) {
  auto vals = std::make_shared<std::vector<Vec2>>();
  vals->reserve(mesh.triangles.size());
  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.nodes[tri[0]];
    const Vec2& p1 = mesh.nodes[tri[1]];
    const Vec2& p2 = mesh.nodes[tri[2]];
    double a2 = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                (p2.x() - p0.x()) * (p1.y() - p0.y());
    Vec2 grad[3] = {
        Vec2((p1.y() - p2.y()) / a2, (p2.x() - p1.x()) / a2),
        Vec2((p2.y() - p0.y()) / a2, (p0.x() - p2.x()) / a2),
        Vec2((p0.y() - p1.y()) / a2, (p1.x() - p0.x()) / a2),
    };
    Vec2 g = phi.values[tri[0]] * grad[0] + phi.values[tri[1]] * grad[1] +
             phi.values[tri[2]] * grad[2];
    vals->emplace_back(g.y(), -g.x());  // A_can = -*(d phi)
  }
  PotentialField f;
  f.tag = PotentialField::Tag::from_torsion;
  f.per_triangle = vals;
  f.eval = [](const Vec2&) { return Vec2::Zero(); };  // element-local only
  return f;
}

double rayleigh(const HermitianSystem& sys, const Eigen::VectorXcd& v) {
  if (v.size() != sys.n) throw ValidationError("rayleigh: size mismatch");
  double vMv = (v.adjoint() * (sys.M.cast<Cplx>() * v)).real()(0, 0);
  if (!(vMv > 0)) throw ValidationError("rayleigh: zero vector");
  double vKv = (v.adjoint() * (sys.K * v)).real()(0, 0);
  return vKv / vMv;
}

void write_coordinate(const Eigen::SparseMatrix<std::complex<double>>& K,
                      std::ostream& os) {
  char buf[128];
  for (int col = 0; col < K.outerSize(); ++col) {
    for (Eigen::SparseMatrix<Cplx>::InnerIterator it(K, col); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g %.17g\n",
                    static_cast<long>(it.row()), static_cast<long>(it.col()),
                    it.value().real(), it.value().imag());
      os << buf;
    }
  }
}

}  // namespace magspec
