#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "steklov/errors.hpp"
#include "steklov/jsonw.hpp"

namespace steklov::mesh {

namespace {

constexpr double kPi = std::numbers::pi;

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

int boundary_count_for(int refinement) {
  require(refinement >= 1 && refinement <= 10, ErrorKind::Parameter,
          "refinement must be in [1,10], got " + std::to_string(refinement));
  return 8 * (1 << refinement);
}

// Triangulate the band between two concentric vertex rings.  Both rings list
// vertex ids counterclockwise starting at angle 0 with uniform spacing; the
// sweep advances whichever ring has the smaller next angle, so the band works
// for unequal ring sizes (disk) and equal ones (annulus) alike.
void merge_rings(const std::vector<int>& inner, const std::vector<int>& outer,
                 std::vector<std::array<int, 3>>& triangles) {
  const int n1 = static_cast<int>(inner.size());
  const int n2 = static_cast<int>(outer.size());
  int p = 0;
  int t = 0;
  while (p < n1 || t < n2) {
    bool advance_outer;
    if (t == n2) {
      advance_outer = false;
    } else if (p == n1) {
      advance_outer = true;
    } else {
      const double inner_next = static_cast<double>(p + 1) / n1;
      const double outer_next = static_cast<double>(t + 1) / n2;
      advance_outer = outer_next <= inner_next + 1e-12;
    }
    if (advance_outer) {
      triangles.push_back({outer[t % n2], outer[(t + 1) % n2], inner[p % n1]});
      ++t;
    } else {
      triangles.push_back({outer[t % n2], inner[(p + 1) % n1], inner[p % n1]});
      ++p;
    }
  }
}

TriMesh generate_disk(double radius, int refinement) {
  require(std::isfinite(radius) && radius > 0.0, ErrorKind::Parameter,
          "disk radius must be positive");
  const int boundary_count = boundary_count_for(refinement);
  const int rings = boundary_count / 8;  // ring j holds 8*j vertices

  std::vector<Eigen::Vector2d> vertices;
  vertices.emplace_back(0.0, 0.0);
  std::vector<std::vector<int>> ring_ids(static_cast<std::size_t>(rings) + 1);
  ring_ids[0] = {0};
  for (int j = 1; j <= rings; ++j) {
    const int n = 8 * j;
    const double r = radius * j / rings;
    for (int t = 0; t < n; ++t) {
      const double theta = 2.0 * kPi * t / n;
      ring_ids[static_cast<std::size_t>(j)].push_back(static_cast<int>(vertices.size()));
      vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }

  std::vector<std::array<int, 3>> triangles;
  const auto& first_ring = ring_ids[1];
  for (int t = 0; t < 8; ++t) {
    triangles.push_back({0, first_ring[static_cast<std::size_t>(t)],
                         first_ring[static_cast<std::size_t>((t + 1) % 8)]});
  }
  for (int j = 2; j <= rings; ++j) {
    merge_rings(ring_ids[static_cast<std::size_t>(j - 1)],
                ring_ids[static_cast<std::size_t>(j)], triangles);
  }
  return TriMesh::create(std::move(vertices), std::move(triangles));
}

TriMesh generate_annulus(double r_inner, double r_outer, int refinement) {
  require(std::isfinite(r_inner) && std::isfinite(r_outer) && r_inner > 0.0 &&
              r_inner < r_outer,
          ErrorKind::Parameter, "annulus radii must satisfy 0 < r_inner < r_outer");
  const int n = boundary_count_for(refinement);
  // Choose the layer count so radial spacing roughly matches the
  // circumferential spacing at the mid radius.
  const double circumferential = kPi * (r_inner + r_outer) / n;
  const int layers =
      std::max(1, static_cast<int>(std::lround((r_outer - r_inner) / circumferential)));

  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::vector<int>> ring_ids(static_cast<std::size_t>(layers) + 1);
  for (int i = 0; i <= layers; ++i) {
    const double r = r_inner + (r_outer - r_inner) * i / layers;
    for (int t = 0; t < n; ++t) {
      const double theta = 2.0 * kPi * t / n;
      ring_ids[static_cast<std::size_t>(i)].push_back(static_cast<int>(vertices.size()));
      vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }
  std::vector<std::array<int, 3>> triangles;
  for (int i = 0; i < layers; ++i) {
    merge_rings(ring_ids[static_cast<std::size_t>(i)],
                ring_ids[static_cast<std::size_t>(i + 1)], triangles);
  }
  return TriMesh::create(std::move(vertices), std::move(triangles));
}

double perturbed_radius(const PerturbedDisk& shape, double theta) {
  double r = shape.base_radius;
  for (std::size_t j = 0; j < shape.cos_coeffs.size(); ++j) {
    r += shape.cos_coeffs[j] * std::cos(static_cast<double>(j + 1) * theta);
  }
  for (std::size_t j = 0; j < shape.sin_coeffs.size(); ++j) {
    r += shape.sin_coeffs[j] * std::sin(static_cast<double>(j + 1) * theta);
  }
  return r;
}

TriMesh generate_perturbed(const PerturbedDisk& shape, int refinement) {
  require(std::isfinite(shape.base_radius) && shape.base_radius > 0.0,
          ErrorKind::Parameter, "perturbed disk base radius must be positive");
  for (double c : shape.cos_coeffs) {
    require(std::isfinite(c), ErrorKind::Parameter, "cosine coefficient must be finite");
  }
  for (double c : shape.sin_coeffs) {
    require(std::isfinite(c), ErrorKind::Parameter, "sine coefficient must be finite");
  }
  const int samples = 8192;
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * i / samples;
    require(perturbed_radius(shape, theta) > 1e-12, ErrorKind::Geometry,
            "perturbed radius is nonpositive near theta = " + std::to_string(theta));
  }

  TriMesh disk = generate_disk(1.0, refinement);
  std::vector<Eigen::Vector2d> vertices = disk.vertices();
  for (auto& v : vertices) {
    const double theta = std::atan2(v.y(), v.x());
    v *= perturbed_radius(shape, theta);
  }
  std::vector<std::array<int, 3>> triangles = disk.triangles();
  try {
    return TriMesh::create(std::move(vertices), std::move(triangles));
  } catch (const Error& e) {
    // A radial map that folds the mesh shows up as a nonpositive triangle area.
    fail(ErrorKind::Geometry,
         std::string("perturbation degenerates the mesh: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TriMesh TriMesh::create(std::vector<Eigen::Vector2d> vertices,
                        std::vector<std::array<int, 3>> triangles) {
  const int nv = static_cast<int>(vertices.size());
  const int nt = static_cast<int>(triangles.size());
  require(nv >= 3, ErrorKind::Geometry, "mesh needs at least 3 vertices");
  require(nt >= 1, ErrorKind::Geometry, "mesh needs at least 1 triangle");

  double scale = 1.0;
  for (const auto& v : vertices) {
    require(std::isfinite(v.x()) && std::isfinite(v.y()), ErrorKind::Geometry,
            "vertex coordinates must be finite");
    scale = std::max({scale, std::abs(v.x()), std::abs(v.y())});
  }
  const double area_tol = 1e-14 * scale * scale;

  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      require(tri[static_cast<std::size_t>(k)] >= 0 && tri[static_cast<std::size_t>(k)] < nv,
              ErrorKind::Geometry,
              "triangle " + std::to_string(t) + " references vertex " +
                  std::to_string(tri[static_cast<std::size_t>(k)]) + " outside [0," +
                  std::to_string(nv) + ")");
    }
    require(tri[0] != tri[1] && tri[1] != tri[2] && tri[0] != tri[2], ErrorKind::Geometry,
            "triangle " + std::to_string(t) + " repeats a vertex");
    const double area = signed_area(vertices[static_cast<std::size_t>(tri[0])],
                                    vertices[static_cast<std::size_t>(tri[1])],
                                    vertices[static_cast<std::size_t>(tri[2])]);
    require(area > area_tol, ErrorKind::Geometry,
            "triangle " + std::to_string(t) + " has nonpositive or degenerate area " +
                std::to_string(area));
  }

  // Undirected edge bookkeeping.  A directed edge may appear only once
  // (consistent orientation); an undirected edge in one or two triangles.
  std::map<std::pair<int, int>, int> directed_seen;          // edge -> triangle
  std::map<std::pair<int, int>, std::vector<int>> undirected;  // edge -> triangles
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[static_cast<std::size_t>(k)];
      const int b = tri[static_cast<std::size_t>((k + 1) % 3)];
      require(directed_seen.emplace(std::make_pair(a, b), t).second, ErrorKind::Geometry,
              "directed edge (" + std::to_string(a) + "," + std::to_string(b) +
                  ") appears twice: inconsistent orientation");
      undirected[std::minmax(a, b)].push_back(t);
    }
  }
  std::vector<bool> used(static_cast<std::size_t>(nv), false);
  for (const auto& tri : triangles) {
    for (int v : tri) used[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 0; v < nv; ++v) {
    require(used[static_cast<std::size_t>(v)], ErrorKind::Geometry,
            "vertex " + std::to_string(v) + " is not referenced by any triangle");
  }
  for (const auto& [edge, tris] : undirected) {
    require(tris.size() <= 2, ErrorKind::Geometry,
            "edge (" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
                ") is shared by " + std::to_string(tris.size()) + " triangles");
  }

  // Edge connectivity over triangles.
  std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(nt));
  for (const auto& [edge, tris] : undirected) {
    if (tris.size() == 2) {
      neighbors[static_cast<std::size_t>(tris[0])].push_back(tris[1]);
      neighbors[static_cast<std::size_t>(tris[1])].push_back(tris[0]);
    }
  }
  std::vector<bool> reached(static_cast<std::size_t>(nt), false);
  std::queue<int> queue;
  queue.push(0);
  reached[0] = true;
  int reached_count = 1;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop();
    for (int u : neighbors[static_cast<std::size_t>(t)]) {
      if (!reached[static_cast<std::size_t>(u)]) {
        reached[static_cast<std::size_t>(u)] = true;
        ++reached_count;
        queue.push(u);
      }
    }
  }
  require(reached_count == nt, ErrorKind::Geometry,
          "mesh is not edge-connected: reached " + std::to_string(reached_count) + " of " +
              std::to_string(nt) + " triangles");

  // Boundary loops from directed edges on one triangle only; traversal keeps
  // the domain on the left.
  std::map<int, int> next_on_boundary;
  for (const auto& [edge, t] : directed_seen) {
    if (undirected[std::minmax(edge.first, edge.second)].size() == 1) {
      require(next_on_boundary.emplace(edge.first, edge.second).second, ErrorKind::Geometry,
              "boundary is not a 1-manifold at vertex " + std::to_string(edge.first));
    }
  }
  std::vector<std::vector<int>> loops;
  std::map<int, int> remaining = next_on_boundary;
  while (!remaining.empty()) {
    const int start = remaining.begin()->first;
    std::vector<int> loop;
    int v = start;
    while (true) {
      loop.push_back(v);
      const auto it = remaining.find(v);
      require(it != remaining.end(), ErrorKind::Geometry,
              "boundary loop through vertex " + std::to_string(start) + " does not close");
      const int w = it->second;
      remaining.erase(it);
      if (w == start) break;
      v = w;
    }
    require(loop.size() >= 3, ErrorKind::Geometry,
            "boundary loop has fewer than 3 vertices");
    loops.push_back(std::move(loop));
  }
  require(!loops.empty(), ErrorKind::Geometry, "mesh has no boundary");

  TriMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  mesh.boundary_loops_ = std::move(loops);
  mesh.edge_count_ = static_cast<int>(undirected.size());
  mesh.boundary_flag_.assign(static_cast<std::size_t>(nv), false);
  for (const auto& loop : mesh.boundary_loops_) {
    for (int v : loop) {
      mesh.boundary_vertices_.push_back(v);
      mesh.boundary_flag_[static_cast<std::size_t>(v)] = true;
    }
  }
  return mesh;
}

double TriMesh::triangle_area(int t) const {
  const auto& tri = triangles_[static_cast<std::size_t>(t)];
  return signed_area(vertices_[static_cast<std::size_t>(tri[0])],
                     vertices_[static_cast<std::size_t>(tri[1])],
                     vertices_[static_cast<std::size_t>(tri[2])]);
}

double TriMesh::total_area() const {
  double area = 0.0;
  for (int t = 0; t < triangle_count(); ++t) area += triangle_area(t);
  return area;
}

TriMesh generate(const DomainShape& shape, int refinement) {
  return std::visit(
      [&](const auto& s) -> TriMesh {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return generate_disk(s.radius, refinement);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return generate_annulus(s.r_inner, s.r_outer, refinement);
        } else if constexpr (std::is_same_v<T, PerturbedDisk>) {
          return generate_perturbed(s, refinement);
        } else {
          return load(s.path);
        }
      },
      shape);
}

DomainTopology topology(const TriMesh& mesh) {
  const int chi = mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count();
  const int k = static_cast<int>(mesh.boundary_loops().size());
  const int two_genus = 2 - k - chi;
  require(two_genus >= 0 && two_genus % 2 == 0, ErrorKind::Topology,
          "Euler characteristic " + std::to_string(chi) + " with " + std::to_string(k) +
              " boundary loops does not describe an orientable surface");
  DomainTopology topo;
  topo.genus = two_genus / 2;
  topo.boundary_components = k;
  topo.b0 = 1;  // create() guarantees connectivity
  topo.b1 = 2 * topo.genus + k - 1;
  return topo;
}

BoundaryLength boundary_length(const TriMesh& mesh) {
  BoundaryLength result;
  for (const auto& loop : mesh.boundary_loops()) {
    double length = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto& a = mesh.vertices()[static_cast<std::size_t>(loop[i])];
      const auto& b = mesh.vertices()[static_cast<std::size_t>(loop[(i + 1) % loop.size()])];
      length += (b - a).norm();
    }
    result.per_loop.push_back(length);
    result.total += length;
  }
  return result;
}

void save(const TriMesh& mesh, const std::filesystem::path& path) {
  JsonWriter w;
  w.begin_object();
  w.key("format");
  w.value("trimesh");
  w.key("schema_version");
  w.value(1);
  w.key("vertices");
  w.begin_array();
  for (const auto& v : mesh.vertices()) {
    w.begin_array();
    w.value(v.x());
    w.value(v.y());
    w.end_array();
  }
  w.end_array();
  w.key("triangles");
  w.begin_array();
  for (const auto& tri : mesh.triangles()) {
    w.begin_array();
    w.value(tri[0]);
    w.value(tri[1]);
    w.value(tri[2]);
    w.end_array();
  }
  w.end_array();
  w.end_object();

  std::ofstream out(path);
  require(out.good(), ErrorKind::Parse, "cannot open " + path.string() + " for writing");
  out << w.take() << "\n";
  require(out.good(), ErrorKind::Parse, "failed writing " + path.string());
}

TriMesh load(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Parse, "cannot open mesh file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, "mesh file " + path.string() + ": " + e.what());
  }
  require(doc.is_object(), ErrorKind::Parse, path.string() + ": top level must be an object");
  require(doc.value("format", "") == std::string("trimesh"), ErrorKind::Parse,
          path.string() + ": missing or wrong \"format\" (expected \"trimesh\")");
  require(doc.value("schema_version", 0) == 1, ErrorKind::Parse,
          path.string() + ": unsupported schema_version");
  require(doc.contains("vertices") && doc["vertices"].is_array(), ErrorKind::Parse,
          path.string() + ": missing \"vertices\" array");
  require(doc.contains("triangles") && doc["triangles"].is_array(), ErrorKind::Parse,
          path.string() + ": missing \"triangles\" array");

  std::vector<Eigen::Vector2d> vertices;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const auto& v = doc["vertices"][i];
    require(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(),
            ErrorKind::Parse,
            path.string() + ": vertex " + std::to_string(i) + " must be [x, y]");
    vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  std::vector<std::array<int, 3>> triangles;
  for (std::size_t i = 0; i < doc["triangles"].size(); ++i) {
    const auto& t = doc["triangles"][i];
    require(t.is_array() && t.size() == 3 && t[0].is_number_integer() &&
                t[1].is_number_integer() && t[2].is_number_integer(),
            ErrorKind::Parse,
            path.string() + ": triangle " + std::to_string(i) + " must be [a, b, c]");
    triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  try {
    return TriMesh::create(std::move(vertices), std::move(triangles));
  } catch (const Error& e) {
    fail(e.kind() == ErrorKind::Geometry ? ErrorKind::Parse : e.kind(),
         path.string() + ": " + e.what());
  }
}

std::string shape_id(const DomainShape& shape, int refinement) {
  std::ostringstream id;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          id << "disk:r=" << format_double(s.radius);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          id << "annulus:r=" << format_double(s.r_inner) << "," << format_double(s.r_outer);
        } else if constexpr (std::is_same_v<T, PerturbedDisk>) {
          id << "perturbed:r0=" << format_double(s.base_radius);
          for (double c : s.cos_coeffs) id << ":c" << format_double(c);
          for (double c : s.sin_coeffs) id << ":s" << format_double(c);
        } else {
          id << "file:" << std::filesystem::path(s.path).stem().string();
        }
      },
      shape);
  id << ":ref=" << refinement;
  return id.str();
}

}  // namespace steklov::mesh
