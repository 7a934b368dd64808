#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "fspectra/error.hpp"
#include "fspectra/random.hpp"
#include "fspectra/spectral.hpp"

namespace fspectra {
namespace {

void fill_diagnostics(SpectralResult& r, const SpMat& a, const SpMat& m) {
  r.max_residual = 0.0;
  if (r.eigenvectors.cols() == 0) return;
  const Mat av = a * r.eigenvectors;
  const Mat mv = m * r.eigenvectors;
  for (Eigen::Index i = 0; i < r.eigenvectors.cols(); ++i) {
    const double res = (av.col(i) - r.eigenvalues[i] * mv.col(i)).norm();
    r.max_residual = std::max(r.max_residual, res);
  }
  const Mat gram = r.eigenvectors.transpose() * mv;
  r.orthonormality_defect = (gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

SpectralResult dense_solve(const SpMat& a, const SpMat& m, int count) {
  const Mat md = Mat(m);
  Eigen::LLT<Mat> llt(md);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kIllConditionedMass, "mass matrix is not positive definite");
  }
  const Mat& l = llt.matrixL();
  Mat c = llt.matrixL().solve(Mat(a));
  c = llt.matrixL().solve(c.transpose().eval());
  c = 0.5 * (c + c.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(c);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kInternal, "dense eigensolver did not converge");
  const int k = std::min<int>(count, static_cast<int>(a.rows()));
  SpectralResult r;
  r.method = "dense";
  r.eigenvalues = es.eigenvalues().head(k);
  r.eigenvectors = l.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors().leftCols(k));
  r.bracket_limit = k == a.rows() ? std::numeric_limits<double>::infinity() : es.eigenvalues()[k];
  return r;
}

// M-orthonormalises the columns of y, dropping numerically dependent ones.
Mat m_orthonormalize(const Mat& y, const SpMat& m) {
  Mat g = y.transpose() * (m * y);
  g = 0.5 * (g + g.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const Vec& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    if (ev[i] > 1e-13 * top) keep.push_back(i);
  }
  Mat out(y.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = y * es.eigenvectors().col(keep[j]) / std::sqrt(ev[keep[j]]);
  }
  return out;
}

SpectralResult shift_invert_solve(const SpMat& a, const SpMat& m, int count, const SolverOptions& opt) {
  const Eigen::Index n = a.rows();
  const double sigma = opt.shift.value_or(-1.0);
  SpMat k = a - sigma * m;
  Eigen::SimplicialLDLT<SpMat> ldlt(k);
  if (ldlt.info() != Eigen::Success) {
    throw Error(ErrorCode::kIllConditionedMass, "shifted operator could not be factorised");
  }
  if ((ldlt.vectorD().array() <= 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument, "shift is not below the spectrum");
  }
  const int block = static_cast<int>(std::min<Eigen::Index>(n, count + std::max(count, 8)));
  auto rng = sample_rng(opt.seed, 0);
  Mat x(n, block);
  for (int j = 0; j < block; ++j) x.col(j) = gaussian_vector(rng, n);
  x = m_orthonormalize(x, m);

  SpectralResult r;
  r.method = "shift-invert";
  Vec ritz;
  Mat vecs;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    Mat y = ldlt.solve(m * x);
    y = m_orthonormalize(y, m);
    Mat ar = y.transpose() * (a * y);
    ar = 0.5 * (ar + ar.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(ar);
    ritz = es.eigenvalues();
    vecs = y * es.eigenvectors();
    x = vecs;
    r.iterations = it;
    const int kk = std::min<int>(count, static_cast<int>(vecs.cols()));
    const Mat av = a * vecs.leftCols(kk);
    const Mat mv = m * vecs.leftCols(kk);
    bool done = true;
    for (int i = 0; i < kk && done; ++i) {
      const double res = (av.col(i) - ritz[i] * mv.col(i)).norm();
      done = res <= opt.tolerance * std::max(1.0, std::abs(ritz[i]));
    }
    if (done) break;
  }
  const int kk = std::min<int>(count, static_cast<int>(vecs.cols()));
  r.eigenvalues = ritz.head(kk);
  r.eigenvectors = vecs.leftCols(kk);
  // Ritz values of the converged window bound the next eigenvalue from above
  // only loosely; the count is trusted up to the last returned value.
  r.bracket_limit = kk == n ? std::numeric_limits<double>::infinity() : ritz[kk - 1];
  return r;
}

}  // namespace

void classify(SpectralResult& r) {
  const double scale = r.eigenvalues.size() ? r.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  r.threshold = kZeroTolerance * scale;
  r.neg_count = 0;
  r.zero_count = 0;
  for (double mu : r.eigenvalues) {
    if (mu < -r.threshold) ++r.neg_count;
    else if (mu <= r.threshold) ++r.zero_count;
  }
}

SpectralResult solve_generalized(const SpMat& a, const SpMat& m, int count, const SolverOptions& options) {
  if (a.rows() != a.cols() || m.rows() != a.rows() || m.cols() != a.cols()) {
    throw Error(ErrorCode::kInvalidDimension, "operator and mass sizes differ");
  }
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "eigenvalue count must be positive");
  const bool dense = options.method == SolverMethod::kDense ||
                     (options.method == SolverMethod::kAuto && a.rows() <= options.dense_limit);
  SpectralResult r = dense ? dense_solve(a, m, count) : shift_invert_solve(a, m, count, options);
  fill_diagnostics(r, a, m);
  classify(r);
  return r;
}

SpectralResult eigensolve(const OperatorAssembly& assembly, int count, const SolverOptions& options) {
  SolverOptions opt = options;
  if (!opt.shift) {
    const double top = assembly.face_potential.size() ? assembly.face_potential.maxCoeff() : 0.0;
    opt.shift = -std::max(top, 0.0) - 1.0;
  }
  return solve_generalized(assembly.jacobi(), assembly.mass, count, opt);
}

}  // namespace fspectra
