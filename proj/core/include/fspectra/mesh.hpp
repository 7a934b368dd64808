#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <vector>

#include <Eigen/SparseCore>

#include "fspectra/immersion.hpp"
#include "fspectra/types.hpp"

namespace fspectra {

/// Closed oriented triangle mesh over a parameter domain. Edges are stored
/// with the fixed global orientation low index -> high index.
struct SurfaceMesh {
  ParamDomain domain = ParamDomain::kNone;
  std::vector<Vec> params;     // per vertex, in the parameter domain
  std::vector<Vec> positions;  // per vertex, images in R^d
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> face_edges;       // edge opposite each corner
  std::vector<std::array<int, 3>> face_edge_signs;  // +1 if the face traverses the edge low -> high

  int num_vertices() const { return static_cast<int>(params.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(triangles.size()); }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

  Vec face_barycenter_param(int f) const;
  Vec edge_midpoint_param(int e) const;
  double face_area(int f) const;
  double total_area() const;
};

/// Rebuilds edges and face-edge incidences, then checks closedness,
/// consistent orientation and non-degeneracy. Throws a topology error naming
/// offending edges.
void build_connectivity(SurfaceMesh& mesh);
void validate_mesh(const SurfaceMesh& mesh);

/// Icosahedron subdivided `subdiv` times; parameters are unit vectors and
/// positions lie on the sphere of the given radius.
SurfaceMesh icosphere(int subdiv, double radius = 1.0);

/// Regular n_u x n_v grid on the torus of angles, split into triangles;
/// positions are chart(u, v).
using TorusChart = std::function<Vec(double, double)>;
SurfaceMesh torus_grid(int n_u, int n_v, const TorusChart& chart);

/// Copy of `mesh` with positions replaced by the immersion's images.
SurfaceMesh attach(const SurfaceMesh& mesh, const Immersion& imm);

/// Sparse coboundaries: d0 (E x V) and d1 (F x E).
Eigen::SparseMatrix<double> coboundary0(const SurfaceMesh& mesh);
Eigen::SparseMatrix<double> coboundary1(const SurfaceMesh& mesh);

// I/O -----------------------------------------------------------------------

/// ASCII OFF reader; polygons are fan-triangulated. Parameters are set to the
/// vertex coordinates with domain kNone.
SurfaceMesh load_off(const std::filesystem::path& path);
SurfaceMesh parse_off(const std::string& text);
void save_off(const SurfaceMesh& mesh, const std::filesystem::path& path);

/// One value per line (vectors) or comma separated rows (matrices), written
/// with 17 significant digits so values round-trip exactly.
void save_csv(const Vec& values, const std::filesystem::path& path);
void save_csv(const Mat& values, const std::filesystem::path& path);
Mat load_csv(const std::filesystem::path& path);
/// Coordinate format: "row col value" per nonzero.
void save_coordinate(const Eigen::SparseMatrix<double>& m, const std::filesystem::path& path);

}  // namespace fspectra
