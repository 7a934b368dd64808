#pragma once

#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "fspectra/immersion.hpp"
#include "fspectra/mesh.hpp"
#include "fspectra/types.hpp"

namespace fspectra {

using SpMat = Eigen::SparseMatrix<double>;

/// Lowest-order DEC operators on edge 1-forms with stars scaled by e^{-f}.
struct Hodge1 {
  SpMat d0;    // E x V
  SpMat d1;    // F x E
  Vec star0;   // per vertex
  Vec star1;   // per edge
  Vec star2;   // per face
  bool barycentric_dual = false;
  SpMat laplacian;  // star1 d0 star0^-1 d0^T star1 + d1^T star2 d1

  SpMat mass() const;
  /// delta_f omega as a vertex function.
  Vec codifferential(const Vec& omega) const;
  /// d omega as a face function.
  Vec exterior(const Vec& omega) const { return d1 * omega; }
  double inner0(const Vec& u, const Vec& v) const { return u.dot(star0.cwiseProduct(v)); }
  double inner1(const Vec& a, const Vec& b) const { return a.dot(star1.cwiseProduct(b)); }
  double inner2(const Vec& a, const Vec& b) const { return a.dot(star2.cwiseProduct(b)); }
};

struct OperatorAssembly {
  SurfaceMesh mesh;     // positions are the immersed images
  Vec face_weight;      // e^{-f} at barycenters
  Vec face_potential;   // Ric_f(N,N) + |A|^2 at barycenters
  std::vector<PointGeometry> face_geometry;  // empty for field-only assemblies
  std::optional<AmbientSpace> ambient;

  SpMat mass;       // M_f
  SpMat stiffness;  // S_f
  SpMat potential;  // P
  std::optional<Hodge1> hodge1;

  SpMat jacobi() const { return stiffness - potential; }
  double weighted_volume() const { return face_weight.dot(face_areas()); }
  Vec face_areas() const;
};

/// P1 assembly from per-face samples of e^{-f} and of the potential.
OperatorAssembly assemble_fields(const SurfaceMesh& mesh, const Vec& face_weight, const Vec& face_potential);
OperatorAssembly assemble(const SurfaceMesh& mesh, const Immersion& imm);

Hodge1 hodge_fields(const SurfaceMesh& mesh, const Vec& face_weight);
/// assemble() plus the 1-form blocks.
OperatorAssembly assemble_hodge1(const SurfaceMesh& mesh, const Immersion& imm);

/// Largest |A - A^T| entry relative to the largest |A| entry.
double symmetry_defect(const SpMat& a);

}  // namespace fspectra
