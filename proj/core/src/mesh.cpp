#include "fspectra/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "fspectra/error.hpp"

namespace fspectra {
namespace {

double wrap_near(double angle, double ref) {
  const double two_pi = 2.0 * std::numbers::pi;
  return angle - two_pi * std::round((angle - ref) / two_pi);
}

double triangle_area(const Vec& a, const Vec& b, const Vec& c) {
  const Vec e1 = b - a;
  const Vec e2 = c - a;
  const double g11 = e1.squaredNorm(), g22 = e2.squaredNorm(), g12 = e1.dot(e2);
  return 0.5 * std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));
}

}  // namespace

Vec SurfaceMesh::face_barycenter_param(int f) const {
  const auto& t = triangles[static_cast<std::size_t>(f)];
  switch (domain) {
    case ParamDomain::kUnitSphere:
      return sphere_param_barycenter({params[t[0]], params[t[1]], params[t[2]]});
    case ParamDomain::kTorus: {
      const Vec& a = params[t[0]];
      Vec sum = a;
      for (int i = 1; i < 3; ++i) {
        const Vec& p = params[t[i]];
        Vec w(2);
        w << wrap_near(p[0], a[0]), wrap_near(p[1], a[1]);
        sum += w;
      }
      return sum / 3.0;
    }
    case ParamDomain::kNone:
      return (params[t[0]] + params[t[1]] + params[t[2]]) / 3.0;
  }
  return params[t[0]];
}

Vec SurfaceMesh::edge_midpoint_param(int e) const {
  const auto& ed = edges[static_cast<std::size_t>(e)];
  const Vec& a = params[ed[0]];
  const Vec& b = params[ed[1]];
  switch (domain) {
    case ParamDomain::kUnitSphere:
      return (a + b).normalized();
    case ParamDomain::kTorus: {
      Vec w(2);
      w << wrap_near(b[0], a[0]), wrap_near(b[1], a[1]);
      return 0.5 * (a + w);
    }
    case ParamDomain::kNone:
      return 0.5 * (a + b);
  }
  return a;
}

double SurfaceMesh::face_area(int f) const {
  const auto& t = triangles[static_cast<std::size_t>(f)];
  return triangle_area(positions[t[0]], positions[t[1]], positions[t[2]]);
}

double SurfaceMesh::total_area() const {
  double a = 0.0;
  for (int f = 0; f < num_faces(); ++f) a += face_area(f);
  return a;
}

void build_connectivity(SurfaceMesh& mesh) {
  std::map<std::pair<int, int>, int> index;
  mesh.edges.clear();
  mesh.face_edges.assign(mesh.triangles.size(), {0, 0, 0});
  mesh.face_edge_signs.assign(mesh.triangles.size(), {0, 0, 0});
  for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
    const auto& t = mesh.triangles[f];
    for (int c = 0; c < 3; ++c) {
      // edge opposite corner c, traversed t[c+1] -> t[c+2]
      const int a = t[(c + 1) % 3];
      const int b = t[(c + 2) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = index.try_emplace({key.first, key.second}, static_cast<int>(mesh.edges.size()));
      if (inserted) mesh.edges.push_back({key.first, key.second});
      mesh.face_edges[f][c] = it->second;
      mesh.face_edge_signs[f][c] = a < b ? 1 : -1;
    }
  }
}

void validate_mesh(const SurfaceMesh& mesh) {
  if (mesh.triangles.empty()) throw Error(ErrorCode::kTopology, "mesh has no faces");
  std::vector<int> count(mesh.edges.size(), 0);
  std::vector<int> orient(mesh.edges.size(), 0);
  for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
    const auto& t = mesh.triangles[f];
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(ErrorCode::kTopology, "face " + std::to_string(f) + " repeats a vertex");
    }
    for (int c = 0; c < 3; ++c) {
      const int e = mesh.face_edges[f][c];
      ++count[static_cast<std::size_t>(e)];
      orient[static_cast<std::size_t>(e)] += mesh.face_edge_signs[f][c];
    }
  }
  std::ostringstream bad;
  int nbad = 0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    if (count[e] != 2 || orient[e] != 0) {
      if (nbad < 8) {
        bad << " (" << mesh.edges[e][0] << "," << mesh.edges[e][1] << ")"
            << (count[e] != 2 ? "[faces=" + std::to_string(count[e]) + "]" : "[orientation]");
      }
      ++nbad;
    }
  }
  if (nbad > 0) {
    throw Error(ErrorCode::kTopology, "mesh is not a closed oriented surface; " +
                                          std::to_string(nbad) + " offending edges:" + bad.str());
  }
  if (!mesh.positions.empty()) {
    const double mean = mesh.total_area() / mesh.num_faces();
    for (int f = 0; f < mesh.num_faces(); ++f) {
      if (!(mesh.face_area(f) > 1e-12 * mean)) {
        throw Error(ErrorCode::kTopology, "degenerate triangle " + std::to_string(f));
      }
    }
  }
}

SurfaceMesh icosphere(int subdiv, double radius) {
  if (subdiv < 0) throw Error(ErrorCode::kInvalidArgument, "subdivision level must be >= 0");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> verts;
  auto push = [&](double x, double y, double z) { verts.push_back(Vec3(x, y, z).normalized()); };
  push(-1, phi, 0); push(1, phi, 0); push(-1, -phi, 0); push(1, -phi, 0);
  push(0, -1, phi); push(0, 1, phi); push(0, -1, -phi); push(0, 1, -phi);
  push(phi, 0, -1); push(phi, 0, 1); push(-phi, 0, -1); push(-phi, 0, 1);
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int level = 0; level < subdiv; ++level) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find({key.first, key.second});
      if (it != mid.end()) return it->second;
      verts.push_back((verts[a] + verts[b]).normalized());
      const int id = static_cast<int>(verts.size()) - 1;
      mid[{key.first, key.second}] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& t : faces) {
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  SurfaceMesh mesh;
  mesh.domain = ParamDomain::kUnitSphere;
  mesh.params = verts;
  for (const Vec& v : verts) mesh.positions.push_back(radius * v);
  mesh.triangles = std::move(faces);
  build_connectivity(mesh);
  validate_mesh(mesh);
  return mesh;
}

SurfaceMesh torus_grid(int n_u, int n_v, const TorusChart& chart) {
  if (n_u < 3 || n_v < 3) throw Error(ErrorCode::kInvalidArgument, "torus grid needs n_u, n_v >= 3");
  SurfaceMesh mesh;
  mesh.domain = ParamDomain::kTorus;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int a = 0; a < n_u; ++a) {
    for (int b = 0; b < n_v; ++b) {
      Vec q(2);
      q << two_pi * a / n_u, two_pi * b / n_v;
      mesh.params.push_back(q);
      mesh.positions.push_back(chart(q[0], q[1]));
    }
  }
  auto id = [&](int a, int b) { return ((a + n_u) % n_u) * n_v + ((b + n_v) % n_v); };
  for (int a = 0; a < n_u; ++a) {
    for (int b = 0; b < n_v; ++b) {
      mesh.triangles.push_back({id(a, b), id(a + 1, b), id(a + 1, b + 1)});
      mesh.triangles.push_back({id(a, b), id(a + 1, b + 1), id(a, b + 1)});
    }
  }
  build_connectivity(mesh);
  validate_mesh(mesh);
  return mesh;
}

SurfaceMesh attach(const SurfaceMesh& mesh, const Immersion& imm) {
  SurfaceMesh out = mesh;
  for (std::size_t i = 0; i < out.params.size(); ++i) out.positions[i] = imm.jet(out.params[i]).position;
  validate_mesh(out);
  return out;
}

Eigen::SparseMatrix<double> coboundary0(const SurfaceMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    trips.emplace_back(e, mesh.edges[e][0], -1.0);
    trips.emplace_back(e, mesh.edges[e][1], 1.0);
  }
  Eigen::SparseMatrix<double> d0(mesh.num_edges(), mesh.num_vertices());
  d0.setFromTriplets(trips.begin(), trips.end());
  return d0;
}

Eigen::SparseMatrix<double> coboundary1(const SurfaceMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    for (int c = 0; c < 3; ++c) trips.emplace_back(f, mesh.face_edges[f][c], mesh.face_edge_signs[f][c]);
  }
  Eigen::SparseMatrix<double> d1(mesh.num_faces(), mesh.num_edges());
  d1.setFromTriplets(trips.begin(), trips.end());
  return d1;
}

}  // namespace fspectra
