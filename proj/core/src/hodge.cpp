#include <cmath>

#include <Eigen/Dense>

#include "fspectra/assembly.hpp"
#include "fspectra/error.hpp"

namespace fspectra {

Hodge1 hodge_fields(const SurfaceMesh& mesh, const Vec& face_weight) {
  validate_mesh(mesh);
  const int nv = mesh.num_vertices();
  const int ne = mesh.num_edges();
  const int nf = mesh.num_faces();
  if (face_weight.size() != nf) throw Error(ErrorCode::kInvalidArgument, "per-face weights do not match the face count");

  Hodge1 h;
  h.d0 = coboundary0(mesh);
  h.d1 = coboundary1(mesh);
  h.star0 = Vec::Zero(nv);
  h.star2 = Vec::Zero(nf);
  Vec cot = Vec::Zero(ne);
  Vec bary = Vec::Zero(ne);

  for (int f = 0; f < nf; ++f) {
    const auto& t = mesh.triangles[static_cast<std::size_t>(f)];
    const double area = mesh.face_area(f);
    const double w = face_weight[f];
    h.star2[f] = w / area;
    const Vec center = (mesh.positions[t[0]] + mesh.positions[t[1]] + mesh.positions[t[2]]) / 3.0;
    for (int c = 0; c < 3; ++c) {
      h.star0[t[c]] += w * area / 3.0;
      const Vec& p = mesh.positions[t[c]];
      const Vec& a = mesh.positions[t[(c + 1) % 3]];
      const Vec& b = mesh.positions[t[(c + 2) % 3]];
      const int e = mesh.face_edges[static_cast<std::size_t>(f)][c];
      cot[e] += w * 0.5 * (a - p).dot(b - p) / (2.0 * area);
      bary[e] += w * (0.5 * (a + b) - center).norm() / (b - a).norm();
    }
  }
  const double floor = 1e-12 * cot.cwiseAbs().maxCoeff();
  h.barycentric_dual = (cot.array() <= floor).any();
  h.star1 = h.barycentric_dual ? bary : cot;

  SpMat s1 = h.mass();
  SpMat s0inv(nv, nv), s2(nf, nf);
  std::vector<Eigen::Triplet<double>> t0, t2;
  for (int i = 0; i < nv; ++i) t0.emplace_back(i, i, 1.0 / h.star0[i]);
  for (int f = 0; f < nf; ++f) t2.emplace_back(f, f, h.star2[f]);
  s0inv.setFromTriplets(t0.begin(), t0.end());
  s2.setFromTriplets(t2.begin(), t2.end());
  const SpMat a = s1 * h.d0;
  h.laplacian = SpMat(a * s0inv * a.transpose()) + SpMat(h.d1.transpose() * s2 * h.d1);
  h.laplacian = 0.5 * (h.laplacian + SpMat(h.laplacian.transpose()));
  return h;
}

}  // namespace fspectra
