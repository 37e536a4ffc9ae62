#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace steklov::mesh {

// Immutable planar triangle mesh.  Validation happens once in create():
// positive triangle areas, consistent orientation, manifold edges, edge
// connectivity, and closed boundary loops.  Boundary loops are derived from
// the triangles and cached; loop traversal keeps the domain on the left, so
// outer loops are counterclockwise and hole loops clockwise.
class TriMesh {
 public:
  static TriMesh create(std::vector<Eigen::Vector2d> vertices,
                        std::vector<std::array<int, 3>> triangles);

  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const { return edge_count_; }

  // All boundary vertices in loop order, loops concatenated.
  const std::vector<int>& boundary_vertices() const { return boundary_vertices_; }
  bool is_boundary_vertex(int v) const { return boundary_flag_[static_cast<std::size_t>(v)]; }

  double triangle_area(int t) const;
  double total_area() const;

 private:
  TriMesh() = default;

  std::vector<Eigen::Vector2d> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::vector<int>> boundary_loops_;
  std::vector<int> boundary_vertices_;
  std::vector<bool> boundary_flag_;
  int edge_count_ = 0;
};

struct DomainTopology {
  int genus = 0;
  int boundary_components = 0;
  int b0 = 1;  // connected components
  int b1 = 0;  // first Betti number: 2*genus + boundary_components - 1
};

// Shape descriptions for the built-in generators.
struct Disk {
  double radius = 1.0;
};

struct Annulus {
  double r_inner = 0.5;
  double r_outer = 1.0;
};

// Star-shaped perturbation of the disk with boundary curve
//   r(theta) = base_radius + sum_j cos_coeffs[j-1]*cos(j*theta)
//                          + sum_j sin_coeffs[j-1]*sin(j*theta),
// required to stay strictly positive.
struct PerturbedDisk {
  double base_radius = 1.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

struct FromFile {
  std::string path;
};

using DomainShape = std::variant<Disk, Annulus, PerturbedDisk, FromFile>;

// Structured mesh generators.  Boundary loops carry 8 * 2^refinement vertices
// each, which preserves the cosine/sine eigenfunction pairing of circular
// boundaries in the discrete spectra.  Boundary vertices lie exactly on the
// analytic boundary curve.
TriMesh generate(const DomainShape& shape, int refinement);

DomainTopology topology(const TriMesh& mesh);

struct BoundaryLength {
  std::vector<double> per_loop;
  double total = 0.0;
};

BoundaryLength boundary_length(const TriMesh& mesh);

// Self-describing text format; save/load round-trips vertex coordinates
// bit-exactly.  Only vertices and triangles are stored, boundary data is
// re-derived on load.
void save(const TriMesh& mesh, const std::filesystem::path& path);
TriMesh load(const std::filesystem::path& path);

// Canonical identifier used in spectrum provenance ("disk:r=1:ref=4", file
// stem for loaded meshes, ...).
std::string shape_id(const DomainShape& shape, int refinement);

}  // namespace steklov::mesh
