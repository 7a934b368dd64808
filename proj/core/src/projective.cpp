#include "fspectra/projective.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "fspectra/error.hpp"
#include "fspectra/random.hpp"

namespace fspectra {
namespace {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Complex 2x2 representation of a + bi + cj + dk.
Eigen::Matrix2cd quaternion_block(double a, double b, double c, double d) {
  Eigen::Matrix2cd q;
  q << cd(a, b), cd(c, d), cd(-c, d), cd(a, -b);
  return q;
}

}  // namespace

ProjectiveModel::ProjectiveModel(ProjectiveFamily family, int rank)
    : family_(family), rank_(rank) {
  if (rank < 1) {
    throw Error(ErrorCode::kInvalidDimension, "projective rank must be >= 1");
  }
  const int n1 = rank + 1;
  const double sqrt2 = std::sqrt(2.0);
  if (family == ProjectiveFamily::kComplex) {
    size_ = n1;
    eig_rank_ = 1;
    trace_scale_ = 0.5;
    for (int k = 0; k < n1; ++k) {
      CMat b = CMat::Zero(n1, n1);
      b(k, k) = sqrt2;
      basis_.push_back(b);
    }
    for (int k = 0; k < n1; ++k) {
      for (int l = k + 1; l < n1; ++l) {
        CMat re = CMat::Zero(n1, n1);
        re(k, l) = 1.0;
        re(l, k) = 1.0;
        basis_.push_back(re);
        CMat im = CMat::Zero(n1, n1);
        im(k, l) = cd(0, 1);
        im(l, k) = cd(0, -1);
        basis_.push_back(im);
      }
    }
  } else {
    size_ = 2 * n1;
    eig_rank_ = 2;
    trace_scale_ = 0.25;
    for (int k = 0; k < n1; ++k) {
      CMat b = CMat::Zero(size_, size_);
      b.block<2, 2>(2 * k, 2 * k) = sqrt2 * Eigen::Matrix2cd::Identity();
      basis_.push_back(b);
    }
    const double units[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int k = 0; k < n1; ++k) {
      for (int l = k + 1; l < n1; ++l) {
        for (const auto& u : units) {
          CMat b = CMat::Zero(size_, size_);
          const Eigen::Matrix2cd q = quaternion_block(u[0], u[1], u[2], u[3]);
          b.block<2, 2>(2 * k, 2 * l) = q;
          b.block<2, 2>(2 * l, 2 * k) = q.adjoint();
          basis_.push_back(b);
        }
      }
    }
  }
}

int ProjectiveModel::real_dim() const {
  return family_ == ProjectiveFamily::kComplex ? 2 * rank_ : 4 * rank_;
}

double ProjectiveModel::einstein_constant() const {
  const int k = real_dim();
  return family_ == ProjectiveFamily::kComplex ? k + 2.0 : k + 8.0;
}

CMat ProjectiveModel::to_matrix(const Vec& x) const {
  CMat m = CMat::Zero(size_, size_);
  for (std::size_t a = 0; a < basis_.size(); ++a) m += x[static_cast<Eigen::Index>(a)] * basis_[a];
  return m;
}

Vec ProjectiveModel::from_matrix(const CMat& m) const {
  Vec x(container_dim());
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    // Re tr(M B) without forming the product.
    x[static_cast<Eigen::Index>(a)] =
        trace_scale_ * (m.array() * basis_[a].transpose().array()).sum().real();
  }
  return x;
}

Vec ProjectiveModel::point_from_line(const Vec& v) const {
  const int n1 = rank_ + 1;
  if (family_ == ProjectiveFamily::kComplex) {
    if (v.size() != 2 * n1) throw Error(ErrorCode::kInvalidArgument, "line vector has wrong size");
    Eigen::VectorXcd z(n1);
    for (int k = 0; k < n1; ++k) z[k] = cd(v[2 * k], v[2 * k + 1]);
    const double nz = z.norm();
    if (nz < 1e-14) throw Error(ErrorCode::kInvalidArgument, "zero line vector");
    z /= nz;
    return from_matrix(z * z.adjoint());
  }
  if (v.size() != 4 * n1) throw Error(ErrorCode::kInvalidArgument, "line vector has wrong size");
  const double nv = v.norm();
  if (nv < 1e-14) throw Error(ErrorCode::kInternal, "quaternionic line vector vanishes");
  CMat col(size_, 2);
  for (int k = 0; k < n1; ++k) {
    col.block<2, 2>(2 * k, 0) =
        quaternion_block(v[4 * k], v[4 * k + 1], v[4 * k + 2], v[4 * k + 3]) / nv;
  }
  return from_matrix(col * col.adjoint());
}

Vec ProjectiveModel::random_point(std::mt19937_64& rng) const {
  const int n = family_ == ProjectiveFamily::kComplex ? 2 * (rank_ + 1) : 4 * (rank_ + 1);
  return point_from_line(gaussian_vector(rng, n));
}

Vec ProjectiveModel::retract(const Vec& x) const {
  const CMat m = to_matrix(x);
  Eigen::SelfAdjointEigenSolver<CMat> eig(m);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kInternal, "eigendecomposition failed in projective retraction");
  }
  // Eigenvalues ascend; the point is the projection onto the top eigenspace.
  const CMat top = eig.eigenvectors().rightCols(eig_rank_);
  return from_matrix(top * top.adjoint());
}

double ProjectiveModel::constraint_residual(const Vec& p) const {
  const CMat m = to_matrix(p);
  const double idem = (m * m - m).norm();
  const double tr = std::abs(m.trace().real() - eig_rank_);
  const double herm = (m - m.adjoint()).norm();
  return idem + tr + herm;
}

Mat ProjectiveModel::tangent_projector(const Vec& p) const {
  const CMat pm = to_matrix(p);
  const int q = container_dim();
  Mat proj(q, q);
  for (int a = 0; a < q; ++a) {
    const CMat& x = basis_[static_cast<std::size_t>(a)];
    const CMat px = pm * x;
    const CMat t = px + x * pm - 2.0 * px * pm;
    proj.col(a) = from_matrix(t);
  }
  return proj;
}

Vec ProjectiveModel::second_difference_vec(const Vec& p, const Vec& u, double h) const {
  const Vec plus = retract(p + h * u);
  const Vec minus = retract(p - h * u);
  return (plus - 2.0 * p + minus) / (h * h);
}

Vec ProjectiveModel::second_fundamental_diag(const Vec& p, const Vec& u) const {
  const double nu = u.norm();
  if (nu == 0.0) return Vec::Zero(p.size());
  const Vec dir = u / nu;
  const Vec coarse = second_difference_vec(p, dir, step_);
  const Vec fine = second_difference_vec(p, dir, 0.5 * step_);
  const Vec extrapolated = (4.0 * fine - coarse) / 3.0;
  const Vec normal = extrapolated - tangent_projector(p) * extrapolated;
  return nu * nu * normal;
}

Vec ProjectiveModel::second_fundamental(const Vec& p, const Vec& u, const Vec& v) const {
  return 0.25 * (second_fundamental_diag(p, u + v) - second_fundamental_diag(p, u - v));
}

Vec ProjectiveModel::complex_structure(const Vec& p, const Vec& u) const {
  if (family_ != ProjectiveFamily::kComplex) {
    throw Error(ErrorCode::kUnsupported, "complex structure requested on quaternionic model");
  }
  const CMat pm = to_matrix(p);
  const CMat x = to_matrix(u);
  const CMat j = cd(0, 1) * (x * pm - pm * x);
  return from_matrix(j);
}

}  // namespace fspectra
