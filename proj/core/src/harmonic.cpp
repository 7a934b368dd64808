#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "fspectra/error.hpp"
#include "fspectra/spectral.hpp"
#include "fspectra/warnings.hpp"

namespace fspectra {
namespace {

// Solves the singular symmetric system L x = b whose kernel is the constants,
// pinning the first unknown to zero.
Vec solve_pinned(const SpMat& l, const Vec& b) {
  const Eigen::Index n = l.rows();
  if (n <= 1) return Vec::Zero(n);
  const SpMat inner = l.bottomRightCorner(n - 1, n - 1);
  Eigen::SimplicialLDLT<SpMat> ldlt(inner);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::kInternal, "Hodge projection factorisation failed");
  Vec x = Vec::Zero(n);
  x.tail(n - 1) = ldlt.solve(b.tail(n - 1));
  return x;
}

}  // namespace

Vec whitney_sharp(const SurfaceMesh& mesh, const Vec& omega, int face) {
  const auto& t = mesh.triangles[static_cast<std::size_t>(face)];
  const Vec& p0 = mesh.positions[t[0]];
  Mat g(p0.size(), 2);
  g.col(0) = mesh.positions[t[1]] - p0;
  g.col(1) = mesh.positions[t[2]] - p0;
  Eigen::Matrix<double, 2, 3> b;
  b << -1, 1, 0, -1, 0, 1;
  const Mat grads = g * (g.transpose() * g).inverse() * b;  // d x 3, gradient of each barycentric coordinate
  Vec out = Vec::Zero(p0.size());
  for (int c = 0; c < 3; ++c) {
    const int e = mesh.face_edges[static_cast<std::size_t>(face)][c];
    const auto& ed = mesh.edges[static_cast<std::size_t>(e)];
    int li = -1, lj = -1;
    for (int k = 0; k < 3; ++k) {
      if (t[k] == ed[0]) li = k;
      if (t[k] == ed[1]) lj = k;
    }
    out += omega[e] * (grads.col(lj) - grads.col(li)) / 3.0;
  }
  return out;
}

Vec HarmonicBasis::sharp(const SurfaceMesh& mesh, int form, int face) const {
  return whitney_sharp(mesh, forms.col(form), face);
}

Mat HarmonicBasis::vertex_sharp(const SurfaceMesh& mesh, int form) const {
  const int d = static_cast<int>(mesh.positions.front().size());
  Mat out = Mat::Zero(mesh.num_vertices(), d);
  Vec acc = Vec::Zero(mesh.num_vertices());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Vec s = sharp(mesh, form, f);
    const double a = mesh.face_area(f);
    for (int v : mesh.triangles[static_cast<std::size_t>(f)]) {
      out.row(v) += a * s.transpose();
      acc[v] += a;
    }
  }
  for (int v = 0; v < mesh.num_vertices(); ++v) out.row(v) /= acc[v];
  return out;
}

HarmonicBasis harmonic_basis(const OperatorAssembly& assembly, int window, const SolverOptions& options) {
  if (!assembly.hodge1) throw Error(ErrorCode::kInvalidArgument, "assembly has no 1-form blocks");
  const Hodge1& h = *assembly.hodge1;
  SolverOptions opt = options;
  if (!opt.shift) opt.shift = -1.0 / assembly.mesh.total_area();
  const SpectralResult spec = solve_generalized(h.laplacian, h.mass(), window, opt);

  HarmonicBasis out;
  out.eigenvalues = spec.eigenvalues;
  out.threshold = kZeroTolerance * spec.eigenvalues.maxCoeff();
  int b1 = 0;
  while (b1 < spec.eigenvalues.size() && spec.eigenvalues[b1] < out.threshold) ++b1;
  if (b1 == spec.eigenvalues.size()) {
    throw Error(ErrorCode::kBracketNotEstablished, "every computed 1-form eigenvalue is below the kernel threshold");
  }
  const double last_kernel = b1 > 0 ? std::abs(spec.eigenvalues[b1 - 1]) : 0.0;
  out.gap_ratio = spec.eigenvalues[b1] / std::max(last_kernel, out.threshold);
  if (out.gap_ratio < 10.0) {
    out.warnings.push_back("ambiguous 1-form kernel: gap ratio " + std::to_string(out.gap_ratio));
    warn(out.warnings.back());
  }
  out.b1 = b1;
  if (b1 == 0) {
    out.forms = Mat(h.star1.size(), 0);
    return out;
  }

  // Remove exact and coexact residue left by the eigensolver.
  const SpMat s1 = h.mass();
  Vec inv1 = h.star1.cwiseInverse();
  SpMat s1inv(inv1.size(), inv1.size());
  s1inv.setIdentity();
  for (Eigen::Index e = 0; e < inv1.size(); ++e) s1inv.coeffRef(e, e) = inv1[e];
  const SpMat l0 = SpMat(h.d0.transpose()) * s1 * h.d0;
  const SpMat l2 = h.d1 * s1inv * SpMat(h.d1.transpose());
  Mat forms = spec.eigenvectors.leftCols(b1);
  for (int i = 0; i < b1; ++i) {
    Vec w = forms.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      w -= h.d0 * solve_pinned(l0, h.d0.transpose() * h.star1.cwiseProduct(w));
      w -= inv1.cwiseProduct(h.d1.transpose() * solve_pinned(l2, h.d1 * w));
    }
    forms.col(i) = w;
  }
  Mat gram = forms.transpose() * h.star1.asDiagonal() * forms;
  Eigen::SelfAdjointEigenSolver<Mat> gs(gram);
  out.gram_condition = gs.eigenvalues().maxCoeff() / gs.eigenvalues().minCoeff();
  Eigen::LLT<Mat> llt(gram);
  forms = llt.matrixU().solve<Eigen::OnTheRight>(forms);
  out.forms = forms;

  out.closed_residual.resize(b1);
  out.coclosed_residual.resize(b1);
  for (int i = 0; i < b1; ++i) {
    const Vec w = forms.col(i);
    const double norm = std::sqrt(h.inner1(w, w));
    const Vec dw = h.exterior(w);
    const Vec cw = h.codifferential(w);
    out.closed_residual[i] = std::sqrt(h.inner2(dw, dw)) / norm;
    out.coclosed_residual[i] = std::sqrt(h.inner0(cw, cw)) / norm;
  }
  return out;
}

}  // namespace fspectra
