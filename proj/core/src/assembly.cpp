#include "fspectra/assembly.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "fspectra/error.hpp"
#include "fspectra/parallel.hpp"

namespace fspectra {
namespace {

struct LocalMatrices {
  Eigen::Matrix3d stiffness;
  Eigen::Matrix3d mass;
};

LocalMatrices p1_local(const Vec& p0, const Vec& p1, const Vec& p2, int face) {
  Eigen::MatrixXd g(p0.size(), 2);
  g.col(0) = p1 - p0;
  g.col(1) = p2 - p0;
  const Eigen::Matrix2d gram = g.transpose() * g;
  const double det = gram.determinant();
  const double scale = gram.trace();
  if (!(det > 1e-24 * scale * scale)) {
    throw Error(ErrorCode::kAssembly, "degenerate element " + std::to_string(face));
  }
  const double area = 0.5 * std::sqrt(det);
  Eigen::Matrix<double, 2, 3> b;
  b << -1, 1, 0, -1, 0, 1;
  LocalMatrices out;
  out.stiffness = area * b.transpose() * gram.inverse() * b;
  out.stiffness = 0.5 * (out.stiffness + out.stiffness.transpose()).eval();
  for (int i = 0; i < 3; ++i) {
    double off = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) off += out.stiffness(i, j);
    }
    out.stiffness(i, i) = -off;
  }
  out.mass = Eigen::Matrix3d::Constant(area / 12.0);
  out.mass.diagonal().array() = area / 6.0;
  return out;
}

}  // namespace

SpMat Hodge1::mass() const {
  SpMat m(star1.size(), star1.size());
  m.reserve(Eigen::VectorXi::Constant(star1.size(), 1));
  for (Eigen::Index e = 0; e < star1.size(); ++e) m.insert(e, e) = star1[e];
  m.makeCompressed();
  return m;
}

Vec Hodge1::codifferential(const Vec& omega) const {
  return (d0.transpose() * star1.cwiseProduct(omega)).cwiseQuotient(star0);
}

Vec OperatorAssembly::face_areas() const {
  Vec a(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f) a[f] = mesh.face_area(f);
  return a;
}

OperatorAssembly assemble_fields(const SurfaceMesh& mesh, const Vec& face_weight, const Vec& face_potential) {
  const int nf = mesh.num_faces();
  if (face_weight.size() != nf || face_potential.size() != nf) {
    throw Error(ErrorCode::kInvalidArgument, "per-face samples do not match the face count");
  }
  std::vector<LocalMatrices> local(static_cast<std::size_t>(nf));
  parallel_for(static_cast<std::size_t>(nf), [&](std::size_t f) {
    const auto& t = mesh.triangles[f];
    local[f] = p1_local(mesh.positions[t[0]], mesh.positions[t[1]], mesh.positions[t[2]], static_cast<int>(f));
  });

  std::vector<Eigen::Triplet<double>> ts, tm, tp;
  ts.reserve(9 * static_cast<std::size_t>(nf));
  tm.reserve(9 * static_cast<std::size_t>(nf));
  tp.reserve(9 * static_cast<std::size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    const auto& t = mesh.triangles[static_cast<std::size_t>(f)];
    const auto& lm = local[static_cast<std::size_t>(f)];
    const double w = face_weight[f];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ts.emplace_back(t[i], t[j], w * lm.stiffness(i, j));
        tm.emplace_back(t[i], t[j], w * lm.mass(i, j));
        tp.emplace_back(t[i], t[j], w * face_potential[f] * lm.mass(i, j));
      }
    }
  }
  const int nv = mesh.num_vertices();
  OperatorAssembly out;
  out.mesh = mesh;
  out.face_weight = face_weight;
  out.face_potential = face_potential;
  out.stiffness.resize(nv, nv);
  out.mass.resize(nv, nv);
  out.potential.resize(nv, nv);
  out.stiffness.setFromTriplets(ts.begin(), ts.end());
  out.mass.setFromTriplets(tm.begin(), tm.end());
  out.potential.setFromTriplets(tp.begin(), tp.end());
  return out;
}

OperatorAssembly assemble(const SurfaceMesh& mesh, const Immersion& imm) {
  SurfaceMesh placed = attach(mesh, imm);
  const int nf = placed.num_faces();
  std::vector<PointGeometry> geom(static_cast<std::size_t>(nf));
  parallel_for(static_cast<std::size_t>(nf), [&](std::size_t f) {
    try {
      geom[f] = point_geometry(imm, placed.face_barycenter_param(static_cast<int>(f)));
    } catch (const Error& e) {
      throw Error(ErrorCode::kAssembly, "element " + std::to_string(f) + ": " + e.what());
    }
  });
  Vec weight(nf), pot(nf);
  for (int f = 0; f < nf; ++f) {
    weight[f] = std::exp(-geom[static_cast<std::size_t>(f)].f_value);
    pot[f] = geom[static_cast<std::size_t>(f)].potential;
  }
  OperatorAssembly out = assemble_fields(placed, weight, pot);
  out.face_geometry = std::move(geom);
  out.ambient = imm.ambient();
  return out;
}

OperatorAssembly assemble_hodge1(const SurfaceMesh& mesh, const Immersion& imm) {
  OperatorAssembly out = assemble(mesh, imm);
  out.hodge1 = hodge_fields(out.mesh, out.face_weight);
  return out;
}

double symmetry_defect(const SpMat& a) {
  const SpMat diff = a - SpMat(a.transpose());
  double dmax = 0.0, amax = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SpMat::InnerIterator it(diff, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  }
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SpMat::InnerIterator it(a, k); it; ++it) amax = std::max(amax, std::abs(it.value()));
  }
  return amax > 0.0 ? dmax / amax : 0.0;
}

}  // namespace fspectra
