#include "steklov/fem.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov::fem {

namespace {

using SparseMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

std::string mesh_tag(const mesh::TriMesh& m) {
  return "mesh(V=" + std::to_string(m.vertex_count()) +
         ",T=" + std::to_string(m.triangle_count()) +
         ",loops=" + std::to_string(m.boundary_loops().size()) + ")";
}

// Positions of boundary vertices within boundary_vertices() order; -1 for
// interior vertices.
std::vector<int> boundary_positions(const mesh::TriMesh& m) {
  std::vector<int> pos(static_cast<size_t>(m.vertex_count()), -1);
  const auto& bv = m.boundary_vertices();
  for (size_t t = 0; t < bv.size(); ++t)
    pos[static_cast<size_t>(bv[t])] = static_cast<int>(t);
  return pos;
}

// Eigenpairs of the generalized problem A x = mu M x whose kernel is known to
// be exactly the constants: the constant direction is deflated with a
// Householder reflector, the reduced block is solved densely, and an exact 0
// is reported in front.  Eigenvector columns are M-orthonormal, column 0 is
// the normalized constant, and every column's largest-magnitude entry is made
// positive so results are reproducible.
struct EigenPairs {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};

EigenPairs deflated_constant_kernel_eigs(const Eigen::MatrixXd& a,
                                         const Eigen::MatrixXd& m_mass,
                                         const std::string& what) {
  const Eigen::Index n = a.rows();
  require(n >= 2, ErrorKind::Internal, what + ": operator order must be at least 2");

  Eigen::LLT<Eigen::MatrixXd> llt(m_mass);
  require(llt.info() == Eigen::Success, ErrorKind::Internal,
          what + ": mass matrix is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  const auto lower = l.triangularView<Eigen::Lower>();

  // S = L^-1 A L^-T, symmetrized against roundoff.
  Eigen::MatrixXd s = lower.solve(a);
  s = lower.solve(s.transpose().eval());
  s = ((s + s.transpose()) / 2.0).eval();

  // Transformed constant direction z = L^T * 1, normalized.
  Eigen::VectorXd z = l.transpose() * Eigen::VectorXd::Ones(n);
  z.normalize();

  // Householder vector w with (I - 2ww^T) z = -sign(z_0) e_1.
  Eigen::VectorXd w = z;
  const double sign0 = w(0) >= 0.0 ? 1.0 : -1.0;
  w(0) += sign0;
  w.normalize();

  auto reflect = [&w](Eigen::MatrixXd& x) {
    // x <- (I - 2 w w^T) x
    x.noalias() -= 2.0 * w * (w.transpose() * x).eval();
  };
  Eigen::MatrixXd t = s;
  reflect(t);                       // H * S
  t.transposeInPlace();             // (H S)^T = S H
  reflect(t);                       // H S H (symmetric)
  Eigen::MatrixXd block = t.bottomRightCorner(n - 1, n - 1);
  block = ((block + block.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
  require(es.info() == Eigen::Success, ErrorKind::Internal,
          what + ": dense eigensolve failed");

  EigenPairs out;
  out.values.resize(static_cast<size_t>(n));
  out.values[0] = 0.0;
  const double scale =
      std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    double mu = es.eigenvalues()(i);
    require(mu >= -1e-10 * scale, ErrorKind::Internal,
            what + ": deflated operator has a negative eigenvalue " +
                std::to_string(mu));
    out.values[static_cast<size_t>(i + 1)] = std::max(mu, 0.0);
  }

  out.vectors.resize(n, n);
  const Eigen::VectorXd mass_row_sums = m_mass * Eigen::VectorXd::Ones(n);
  const double csq = mass_row_sums.sum();
  out.vectors.col(0) = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(csq));
  Eigen::MatrixXd lifted = Eigen::MatrixXd::Zero(n, n - 1);
  lifted.bottomRows(n - 1) = es.eigenvectors();
  reflect(lifted);  // back from the reflected frame
  out.vectors.rightCols(n - 1) =
      l.transpose().triangularView<Eigen::Upper>().solve(lifted);

  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index imax = 0;
    out.vectors.col(c).cwiseAbs().maxCoeff(&imax);
    if (out.vectors(imax, c) < 0.0) out.vectors.col(c) *= -1.0;
  }
  return out;
}

// Ascending merge of per-loop eigenvalue lists.
std::vector<double> merge_ascending(const std::vector<std::vector<double>>& lists) {
  std::vector<double> all;
  for (const auto& v : lists) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  return all;
}

Eigen::VectorXd boundary_trace(const mesh::TriMesh& m, const Eigen::VectorXd& u) {
  const auto& bv = m.boundary_vertices();
  Eigen::VectorXd t(static_cast<Eigen::Index>(bv.size()));
  for (size_t i = 0; i < bv.size(); ++i)
    t(static_cast<Eigen::Index>(i)) = u(bv[i]);
  return t;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_stiffness(const mesh::TriMesh& m) {
  const int nv = m.vertex_count();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(m.triangle_count()) * 9);
  for (int t = 0; t < m.triangle_count(); ++t) {
    const auto& tri = m.triangles()[static_cast<size_t>(t)];
    const Eigen::Vector2d p0 = m.vertices()[static_cast<size_t>(tri[0])];
    const Eigen::Vector2d p1 = m.vertices()[static_cast<size_t>(tri[1])];
    const Eigen::Vector2d p2 = m.vertices()[static_cast<size_t>(tri[2])];
    const double area = m.triangle_area(t);
    require(area > 0.0, ErrorKind::Geometry,
            "degenerate triangle " + std::to_string(t) + " in stiffness assembly");
    // Edge vectors opposite each vertex; grad(lambda_i) = perp(e_i)/(2*area),
    // so the element matrix is (e_i . e_j) / (4*area).
    const Eigen::Vector2d e[3] = {p2 - p1, p0 - p2, p1 - p0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(tri[static_cast<size_t>(i)], tri[static_cast<size_t>(j)],
                           e[i].dot(e[j]) / (4.0 * area));
  }
  SparseMat k(nv, nv);
  k.setFromTriplets(trips.begin(), trips.end());
  return k;
}

Eigen::SparseMatrix<double> assemble_boundary_mass(const mesh::TriMesh& m) {
  const int nv = m.vertex_count();
  std::vector<Triplet> trips;
  for (const auto& loop : m.boundary_loops()) {
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % n];
      const double h = (m.vertices()[static_cast<size_t>(b)] -
                        m.vertices()[static_cast<size_t>(a)])
                           .norm();
      trips.emplace_back(a, a, h / 3.0);
      trips.emplace_back(b, b, h / 3.0);
      trips.emplace_back(a, b, h / 6.0);
      trips.emplace_back(b, a, h / 6.0);
    }
  }
  SparseMat mb(nv, nv);
  mb.setFromTriplets(trips.begin(), trips.end());
  return mb;
}

BoundaryOperators boundary_operators(const mesh::TriMesh& m) {
  const auto pos = boundary_positions(m);
  BoundaryOperators ops;
  ops.vertices = m.boundary_vertices();
  const Eigen::Index nb = static_cast<Eigen::Index>(ops.vertices.size());
  ops.mass = Eigen::MatrixXd::Zero(nb, nb);
  ops.stiffness = Eigen::MatrixXd::Zero(nb, nb);

  int offset = 0;
  for (const auto& loop : m.boundary_loops()) {
    const int n = static_cast<int>(loop.size());
    ops.loop_ranges.emplace_back(offset, offset + n);
    for (int i = 0; i < n; ++i) {
      const int a = pos[static_cast<size_t>(loop[static_cast<size_t>(i)])];
      const int b = pos[static_cast<size_t>(loop[static_cast<size_t>((i + 1) % n)])];
      const double h =
          (m.vertices()[static_cast<size_t>(loop[static_cast<size_t>((i + 1) % n)])] -
           m.vertices()[static_cast<size_t>(loop[static_cast<size_t>(i)])])
              .norm();
      ops.mass(a, a) += h / 3.0;
      ops.mass(b, b) += h / 3.0;
      ops.mass(a, b) += h / 6.0;
      ops.mass(b, a) += h / 6.0;
      ops.stiffness(a, a) += 1.0 / h;
      ops.stiffness(b, b) += 1.0 / h;
      ops.stiffness(a, b) -= 1.0 / h;
      ops.stiffness(b, a) -= 1.0 / h;
    }
    offset += n;
  }
  return ops;
}

Eigen::MatrixXd dtn_matrix(const mesh::TriMesh& m) {
  const SparseMat k = assemble_stiffness(m);
  const auto pos = boundary_positions(m);
  const int nb = static_cast<int>(m.boundary_vertices().size());
  const int ni = m.vertex_count() - nb;

  // Interior index map.
  std::vector<int> ipos(static_cast<size_t>(m.vertex_count()), -1);
  {
    int next = 0;
    for (int v = 0; v < m.vertex_count(); ++v)
      if (pos[static_cast<size_t>(v)] < 0) ipos[static_cast<size_t>(v)] = next++;
  }

  Eigen::MatrixXd k_bb = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::MatrixXd k_ib = Eigen::MatrixXd::Zero(std::max(ni, 1), nb);
  std::vector<Triplet> ii_trips;
  for (int col = 0; col < k.outerSize(); ++col) {
    for (SparseMat::InnerIterator it(k, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      const int rb = pos[static_cast<size_t>(r)];
      const int cb = pos[static_cast<size_t>(c)];
      if (rb >= 0 && cb >= 0)
        k_bb(rb, cb) += it.value();
      else if (rb < 0 && cb >= 0)
        k_ib(ipos[static_cast<size_t>(r)], cb) += it.value();
      else if (rb < 0 && cb < 0)
        ii_trips.emplace_back(ipos[static_cast<size_t>(r)], ipos[static_cast<size_t>(c)],
                              it.value());
      // boundary-row/interior-col entries are k_ib^T by symmetry.
    }
  }

  Eigen::MatrixXd lambda;
  if (ni == 0) {
    lambda = k_bb;
  } else {
    SparseMat k_ii(ni, ni);
    k_ii.setFromTriplets(ii_trips.begin(), ii_trips.end());
    Eigen::SimplicialLDLT<SparseMat> ldlt(k_ii);
    require(ldlt.info() == Eigen::Success, ErrorKind::Internal,
            "interior stiffness factorization failed (invariant violation)");
    const Eigen::MatrixXd x = ldlt.solve(k_ib);
    require(ldlt.info() == Eigen::Success, ErrorKind::Internal,
            "interior stiffness solve failed (invariant violation)");
    lambda = k_bb - k_ib.transpose() * x;
  }

  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const double asym = (lambda - lambda.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-10 * scale, ErrorKind::Internal,
          "DtN matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
  return ((lambda + lambda.transpose()) / 2.0).eval();
}

Spectrum steklov_spectrum(const mesh::TriMesh& m, int count, double tolerance,
                          int refinement) {
  const int nb = static_cast<int>(m.boundary_vertices().size());
  require(count >= 1, ErrorKind::Parameter, "eigenvalue count must be positive");
  require(count <= nb, ErrorKind::Parameter,
          "requested " + std::to_string(count) + " Steklov eigenvalues but the mesh has " +
              std::to_string(nb) + " boundary vertices");
  require(std::isfinite(tolerance) && tolerance > 0.0, ErrorKind::Parameter,
          "spectrum tolerance must be positive");

  const Eigen::MatrixXd lambda = dtn_matrix(m);
  const BoundaryOperators ops = boundary_operators(m);
  const EigenPairs pairs =
      deflated_constant_kernel_eigs(lambda, ops.mass, "Steklov eigenproblem");

  std::vector<double> values(pairs.values.begin(),
                             pairs.values.begin() + count);
  return Spectrum(SpectrumKind::Steklov, std::move(values),
                  SpectrumSource::fem(mesh_tag(m), refinement, tolerance));
}

Spectrum boundary_laplacian_spectrum(const mesh::TriMesh& m, int count,
                                     double tolerance, int refinement) {
  const int nb = static_cast<int>(m.boundary_vertices().size());
  require(count >= 1, ErrorKind::Parameter, "eigenvalue count must be positive");
  require(count <= nb, ErrorKind::Parameter,
          "requested " + std::to_string(count) +
              " boundary-Laplacian eigenvalues but the mesh has " + std::to_string(nb) +
              " boundary vertices");
  require(std::isfinite(tolerance) && tolerance > 0.0, ErrorKind::Parameter,
          "spectrum tolerance must be positive");

  const BoundaryOperators ops = boundary_operators(m);
  std::vector<std::vector<double>> per_loop;
  for (const auto& range : ops.loop_ranges) {
    const int n = range.second - range.first;
    const Eigen::MatrixXd a = ops.stiffness.block(range.first, range.first, n, n);
    const Eigen::MatrixXd mm = ops.mass.block(range.first, range.first, n, n);
    per_loop.push_back(
        deflated_constant_kernel_eigs(a, mm, "boundary Laplacian loop").values);
  }
  std::vector<double> all = merge_ascending(per_loop);
  all.resize(static_cast<size_t>(count));
  return Spectrum(SpectrumKind::BoundaryLaplacian, std::move(all),
                  SpectrumSource::fem(mesh_tag(m), refinement, tolerance));
}

Eigen::VectorXd harmonic_extension(const mesh::TriMesh& m,
                                   const Eigen::VectorXd& boundary_values) {
  const auto& bv = m.boundary_vertices();
  require(boundary_values.size() == static_cast<Eigen::Index>(bv.size()),
          ErrorKind::Parameter,
          "boundary data has " + std::to_string(boundary_values.size()) +
              " entries but the mesh has " + std::to_string(bv.size()) +
              " boundary vertices");
  for (Eigen::Index i = 0; i < boundary_values.size(); ++i)
    require(std::isfinite(boundary_values(i)), ErrorKind::Parameter,
            "boundary data must be finite");

  const SparseMat k = assemble_stiffness(m);
  const auto pos = boundary_positions(m);
  const int nb = static_cast<int>(bv.size());
  const int ni = m.vertex_count() - nb;

  Eigen::VectorXd u = Eigen::VectorXd::Zero(m.vertex_count());
  for (int t = 0; t < nb; ++t) u(bv[static_cast<size_t>(t)]) = boundary_values(t);
  if (ni == 0) return u;

  std::vector<int> ipos(static_cast<size_t>(m.vertex_count()), -1);
  std::vector<int> ivert;
  ivert.reserve(static_cast<size_t>(ni));
  for (int v = 0; v < m.vertex_count(); ++v)
    if (pos[static_cast<size_t>(v)] < 0) {
      ipos[static_cast<size_t>(v)] = static_cast<int>(ivert.size());
      ivert.push_back(v);
    }

  std::vector<Triplet> ii_trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
  for (int col = 0; col < k.outerSize(); ++col) {
    for (SparseMat::InnerIterator it(k, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (pos[static_cast<size_t>(r)] >= 0) continue;  // only interior rows
      if (pos[static_cast<size_t>(c)] >= 0)
        rhs(ipos[static_cast<size_t>(r)]) -= it.value() * u(c);
      else
        ii_trips.emplace_back(ipos[static_cast<size_t>(r)], ipos[static_cast<size_t>(c)],
                              it.value());
    }
  }
  SparseMat k_ii(ni, ni);
  k_ii.setFromTriplets(ii_trips.begin(), ii_trips.end());
  Eigen::SimplicialLDLT<SparseMat> ldlt(k_ii);
  require(ldlt.info() == Eigen::Success, ErrorKind::Internal,
          "interior stiffness factorization failed (invariant violation)");
  const Eigen::VectorXd ui = ldlt.solve(rhs);
  for (int i = 0; i < ni; ++i) u(ivert[static_cast<size_t>(i)]) = ui(i);
  return u;
}

Eigen::VectorXd harmonic_conjugate(const mesh::TriMesh& m, const Eigen::VectorXd& u) {
  require(u.size() == m.vertex_count(), ErrorKind::Parameter,
          "vertex function has " + std::to_string(u.size()) + " entries but the mesh has " +
              std::to_string(m.vertex_count()) + " vertices");
  for (Eigen::Index i = 0; i < u.size(); ++i)
    require(std::isfinite(u(i)), ErrorKind::Parameter, "vertex function must be finite");
  const mesh::DomainTopology topo = mesh::topology(m);
  require(topo.b1 == 0, ErrorKind::Topology,
          "harmonic conjugate requires a simply connected mesh (b1 = " +
              std::to_string(topo.b1) + "); the conjugate is not single-valued otherwise");

  const SparseMat k = assemble_stiffness(m);

  // Discrete harmonicity: interior rows of K u must vanish.
  double kdiag_max = 1.0;
  for (int v = 0; v < m.vertex_count(); ++v) kdiag_max = std::max(kdiag_max, k.coeff(v, v));
  const double res_tol = 1e-8 * kdiag_max * std::max(1.0, u.cwiseAbs().maxCoeff());
  const Eigen::VectorXd ku = k * u;
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (m.is_boundary_vertex(v)) continue;
    require(std::fabs(ku(v)) <= res_tol, ErrorKind::Precondition,
            "input is not discrete-harmonic: interior residual " +
                std::to_string(std::fabs(ku(v))) + " at vertex " + std::to_string(v));
  }

  // Neumann data g with flux equal to the tangential derivative of u:
  // per-edge differences with midpoint quadrature collapse to a centered
  // difference g_j = (u_{j+1} - u_{j-1}) / 2 along each loop.
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m.vertex_count());
  for (const auto& loop : m.boundary_loops()) {
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
      const int prev = loop[(i + n - 1) % n];
      const int next = loop[(i + 1) % n];
      g(loop[i]) = (u(next) - u(prev)) / 2.0;
    }
  }

  // Pin vertex 0 to make the singular Neumann system definite.
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(k.nonZeros()) + 1);
  for (int col = 0; col < k.outerSize(); ++col)
    for (SparseMat::InnerIterator it(k, col); it; ++it)
      if (it.row() != 0 && it.col() != 0)
        trips.emplace_back(it.row(), it.col(), it.value());
  trips.emplace_back(0, 0, 1.0);
  SparseMat kp(m.vertex_count(), m.vertex_count());
  kp.setFromTriplets(trips.begin(), trips.end());
  g(0) = 0.0;

  Eigen::SimplicialLDLT<SparseMat> ldlt(kp);
  require(ldlt.info() == Eigen::Success, ErrorKind::Internal,
          "pinned Neumann factorization failed (invariant violation)");
  Eigen::VectorXd v = ldlt.solve(g);

  // Normalize to zero boundary mean.
  const SparseMat mb = assemble_boundary_mass(m);
  const Eigen::VectorXd mb_row_sums = mb * Eigen::VectorXd::Ones(m.vertex_count());
  const double len = mb_row_sums.sum();
  const double mean = mb_row_sums.dot(v) / len;
  v.array() -= mean;
  return v;
}

WitnessPair witness_matrices(const mesh::TriMesh& m, int r, int s, int m_count) {
  require(r >= 1 && s >= 1 && m_count >= 1, ErrorKind::Parameter,
          "witness parameters r, s, m must all be positive");
  const mesh::DomainTopology topo = mesh::topology(m);
  require(topo.b1 == 0, ErrorKind::Topology,
          "witness construction requires a simply connected mesh (b1 = " +
              std::to_string(topo.b1) + ")");
  const int nb = static_cast<int>(m.boundary_vertices().size());
  const int k_max = r + s + m_count - 1;  // highest boundary-Laplacian index used
  require(k_max <= nb - 1, ErrorKind::Parameter,
          "witness construction needs boundary-Laplacian eigenfunctions up to index " +
              std::to_string(k_max) + " but the mesh only supports " +
              std::to_string(nb - 1));

  const BoundaryOperators ops = boundary_operators(m);
  const SparseMat k = assemble_stiffness(m);

  // Boundary-Laplacian eigenpairs (single loop since b1 = 0) and Steklov
  // eigenpairs on the same boundary ordering.
  const EigenPairs lap =
      deflated_constant_kernel_eigs(ops.stiffness, ops.mass, "boundary Laplacian");
  const Eigen::MatrixXd dtn = dtn_matrix(m);
  const EigenPairs stek =
      deflated_constant_kernel_eigs(dtn, ops.mass, "Steklov eigenproblem");

  // Basis: harmonic extensions of boundary-Laplacian eigenfunctions 2..k_max,
  // their stiffness images, and their conjugates' boundary traces.
  const int n_basis = k_max - 1;
  std::vector<Eigen::VectorXd> ext(static_cast<size_t>(n_basis));
  std::vector<Eigen::VectorXd> k_ext(static_cast<size_t>(n_basis));
  std::vector<Eigen::VectorXd> conj_trace(static_cast<size_t>(n_basis));
  for (int kk = 0; kk < n_basis; ++kk) {
    const Eigen::VectorXd trace = lap.vectors.col(kk + 1);  // eigenfunction kk+2
    ext[static_cast<size_t>(kk)] = harmonic_extension(m, trace);
    k_ext[static_cast<size_t>(kk)] = k * ext[static_cast<size_t>(kk)];
    if (s >= 2)
      conj_trace[static_cast<size_t>(kk)] =
          boundary_trace(m, harmonic_conjugate(m, ext[static_cast<size_t>(kk)]));
  }

  // Sequential constrained construction of u_1..u_m.
  std::vector<Eigen::VectorXd> u(static_cast<size_t>(m_count));
  std::vector<Eigen::VectorXd> ku(static_cast<size_t>(m_count));
  for (int i = 1; i <= m_count; ++i) {
    const int n_unknowns = r + s + i - 2;  // coefficients over ext[0..n_unknowns-1]
    const int n_rows = (r - 1) + (s - 1) + (i - 1);

    Eigen::VectorXd coeff;
    if (n_rows == 0) {
      coeff = Eigen::VectorXd::Zero(n_unknowns);
      coeff(0) = 1.0;
    } else {
      Eigen::MatrixXd c(n_rows, n_unknowns);
      int row = 0;
      for (int j = 2; j <= r; ++j, ++row) {
        const Eigen::VectorXd mw = ops.mass * stek.vectors.col(j - 1);
        for (int kk = 0; kk < n_unknowns; ++kk)
          c(row, kk) = mw.dot(lap.vectors.col(kk + 1));
      }
      for (int j = 2; j <= s; ++j, ++row) {
        const Eigen::VectorXd mw = ops.mass * stek.vectors.col(j - 1);
        for (int kk = 0; kk < n_unknowns; ++kk)
          c(row, kk) = mw.dot(conj_trace[static_cast<size_t>(kk)]);
      }
      for (int j = 1; j <= i - 1; ++j, ++row)
        for (int kk = 0; kk < n_unknowns; ++kk)
          c(row, kk) = u[static_cast<size_t>(j - 1)].dot(k_ext[static_cast<size_t>(kk)]);

      Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
      const Eigen::Index sv_count = svd.singularValues().size();
      const double sv_max = sv_count > 0 ? svd.singularValues()(0) : 0.0;
      const double threshold = 1e-10 * sv_max;
      int null_col = -1;
      for (int jcol = 0; jcol < n_unknowns; ++jcol) {
        if (jcol >= sv_count || svd.singularValues()(jcol) <= threshold) {
          null_col = jcol;
          break;
        }
      }
      require(null_col >= 0, ErrorKind::Construction,
              "witness constraint system for u_" + std::to_string(i) +
                  " has no null direction (" + std::to_string(n_rows) + " rows, " +
                  std::to_string(n_unknowns) + " unknowns, smallest singular value " +
                  std::to_string(svd.singularValues()(sv_count - 1)) + ")");
      coeff = svd.matrixV().col(null_col);
    }

    Eigen::Index imax = 0;
    coeff.cwiseAbs().maxCoeff(&imax);
    if (coeff(imax) < 0.0) coeff *= -1.0;

    Eigen::VectorXd ui = Eigen::VectorXd::Zero(m.vertex_count());
    for (int kk = 0; kk < n_unknowns; ++kk) ui += coeff(kk) * ext[static_cast<size_t>(kk)];
    Eigen::VectorXd kui = k * ui;
    const double energy = ui.dot(kui);
    require(energy > 1e-20, ErrorKind::Construction,
            "witness function u_" + std::to_string(i) + " collapsed to zero energy");
    ui /= std::sqrt(energy);
    kui /= std::sqrt(energy);
    u[static_cast<size_t>(i - 1)] = std::move(ui);
    ku[static_cast<size_t>(i - 1)] = std::move(kui);
  }

  // Dirichlet-orthonormalize through the symmetric inverse square root of the
  // Gram (a near-identity correction on top of the imposed constraints).
  Eigen::MatrixXd gram(m_count, m_count);
  for (int i = 0; i < m_count; ++i)
    for (int j = 0; j < m_count; ++j)
      gram(i, j) = u[static_cast<size_t>(i)].dot(ku[static_cast<size_t>(j)]);
  gram = ((gram + gram.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram);
  require(ges.info() == Eigen::Success, ErrorKind::Internal,
          "witness Gram eigensolve failed");
  require(ges.eigenvalues().minCoeff() > 1e-10, ErrorKind::Construction,
          "witness Dirichlet Gram is nearly singular (smallest eigenvalue " +
              std::to_string(ges.eigenvalues().minCoeff()) + ")");
  const Eigen::MatrixXd gram_inv_sqrt =
      ges.eigenvectors() *
      ges.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      ges.eigenvectors().transpose();

  std::vector<Eigen::VectorXd> traces(static_cast<size_t>(m_count));
  {
    std::vector<Eigen::VectorXd> u_orth(static_cast<size_t>(m_count));
    for (int i = 0; i < m_count; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(m.vertex_count());
      for (int j = 0; j < m_count; ++j)
        v += gram_inv_sqrt(j, i) * u[static_cast<size_t>(j)];
      u_orth[static_cast<size_t>(i)] = std::move(v);
    }
    u = std::move(u_orth);
    for (int i = 0; i < m_count; ++i)
      traces[static_cast<size_t>(i)] = boundary_trace(m, u[static_cast<size_t>(i)]);
  }

  // A^-1 = boundary L2 Gram, B = boundary tangential Gram.
  Eigen::MatrixXd p(m_count, m_count), b(m_count, m_count);
  for (int i = 0; i < m_count; ++i) {
    const Eigen::VectorXd mt = ops.mass * traces[static_cast<size_t>(i)];
    const Eigen::VectorXd st = ops.stiffness * traces[static_cast<size_t>(i)];
    for (int j = 0; j < m_count; ++j) {
      p(i, j) = mt.dot(traces[static_cast<size_t>(j)]);
      b(i, j) = st.dot(traces[static_cast<size_t>(j)]);
    }
  }
  p = ((p + p.transpose()) / 2.0).eval();
  b = ((b + b.transpose()) / 2.0).eval();

  Eigen::LLT<Eigen::MatrixXd> pllt(p);
  require(pllt.info() == Eigen::Success, ErrorKind::Construction,
          "witness boundary Gram is not positive definite");
  Eigen::MatrixXd a = pllt.solve(Eigen::MatrixXd::Identity(m_count, m_count));
  a = ((a + a.transpose()) / 2.0).eval();

  WitnessPair pair{SpdMatrix(a), SpdMatrix(b), r, s, m_count, {}};
  pair.diag_ratio_bounds.resize(static_cast<size_t>(m_count));
  for (int i = 1; i <= m_count; ++i) {
    const double bound = lap.values[static_cast<size_t>(r + s + i - 2)];  // lambda_{r+s+i-1}
    pair.diag_ratio_bounds[static_cast<size_t>(i - 1)] = bound;
    // Discrete invariant: the tangential energy of a combination of the first
    // K boundary-Laplacian eigenfunctions is at most lambda_K times its mass.
    require(b(i - 1, i - 1) <= p(i - 1, i - 1) * bound * (1.0 + 1e-8) + 1e-12,
            ErrorKind::Internal,
            "witness diagonal ratio bound violated at index " + std::to_string(i));
  }
  return pair;
}

}  // namespace steklov::fem
