#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "steklov/mesh.hpp"
#include "steklov/spd_matrix.hpp"
#include "steklov/spectrum.hpp"

// First-order finite elements on TriMesh: Dirichlet-to-Neumann (Steklov)
// spectra via an exact Schur complement, boundary-Laplacian spectra on the
// polygonal boundary curves, harmonic extensions/conjugates, and the witness
// matrices A, B whose eigenvalues bound Steklov eigenvalues from above.
//
// Boundary-indexed objects (the DtN matrix, boundary operators, boundary
// value vectors) always use the ordering of TriMesh::boundary_vertices():
// loop order, loops concatenated.
namespace steklov::fem {

// Default relative accuracy attached to FEM spectra at desk-scale refinement.
inline constexpr double kDefaultFemTolerance = 2e-2;

// P1 stiffness matrix over all vertices: symmetric positive semidefinite,
// row sums zero, kernel = constants.
Eigen::SparseMatrix<double> assemble_stiffness(const mesh::TriMesh& m);

// Consistent 1D boundary mass over all vertices (h/6 * [[2,1],[1,2]] per
// boundary edge); zero rows/columns at interior vertices.
Eigen::SparseMatrix<double> assemble_boundary_mass(const mesh::TriMesh& m);

// Dense boundary operators in boundary_vertices() order: the consistent mass
// and the periodic 1D stiffness (tangential Dirichlet form) of each loop.
// loop_ranges[i] = [begin, end) of loop i within that ordering.
struct BoundaryOperators {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> loop_ranges;
  Eigen::MatrixXd mass;
  Eigen::MatrixXd stiffness;
};
BoundaryOperators boundary_operators(const mesh::TriMesh& m);

// Discrete Dirichlet-to-Neumann matrix on boundary vertices: the Schur
// complement K_bb - K_bi K_ii^-1 K_ib.  Symmetric positive semidefinite with
// kernel = constants (connected mesh).
Eigen::MatrixXd dtn_matrix(const mesh::TriMesh& m);

// Smallest `count` Steklov eigenvalues of the mesh: the generalized problem
// DtN x = sigma M_b x with the constant kernel deflated explicitly, so the
// leading eigenvalue is an exact 0.  `tolerance` and `refinement` only
// annotate the spectrum's source metadata.
Spectrum steklov_spectrum(const mesh::TriMesh& m, int count,
                          double tolerance = kDefaultFemTolerance,
                          int refinement = 0);

// Smallest `count` eigenvalues of the boundary Laplacian: per-loop periodic
// 1D problems, each with its constant deflated (one exact 0 per loop),
// merged ascending.
Spectrum boundary_laplacian_spectrum(const mesh::TriMesh& m, int count,
                                     double tolerance = kDefaultFemTolerance,
                                     int refinement = 0);

// Discrete-harmonic extension: boundary_values in boundary_vertices() order;
// returns the full vertex function solving K_ii u_i = -K_ib u_b.
Eigen::VectorXd harmonic_extension(const mesh::TriMesh& m,
                                   const Eigen::VectorXd& boundary_values);

// Harmonic conjugate of a discrete-harmonic u on a simply connected mesh:
// solves the Neumann problem K v = g where g carries boundary flux equal to
// the tangential derivative of u, then normalizes v to zero boundary mean.
// Errors: b1 > 0 -> topology; u not discrete-harmonic -> precondition.
Eigen::VectorXd harmonic_conjugate(const mesh::TriMesh& m, const Eigen::VectorXd& u);

// Witness matrices of order m for shift parameters r, s (all >= 1): trial
// functions u_1..u_m are Dirichlet-orthonormal combinations of harmonic
// extensions of boundary-Laplacian eigenfunctions, constrained so that
//   - u_i is boundary-L2-orthogonal to Steklov eigenfunctions 2..r,
//   - the harmonic conjugate of u_i is orthogonal to Steklov eigenfunctions 2..s,
// and A^-1(i,j) = boundary L2 form, B(i,j) = boundary tangential form.
// diag_ratio_bounds[i-1] is the boundary-Laplacian eigenvalue lambda_{r+s+i-1},
// which bounds B(i,i)/A^-1(i,i) from above.
struct WitnessPair {
  SpdMatrix a;
  SpdMatrix b;
  int r = 1;
  int s = 1;
  int m = 1;
  std::vector<double> diag_ratio_bounds;
};
WitnessPair witness_matrices(const mesh::TriMesh& m, int r, int s, int m_count);

}  // namespace steklov::fem
