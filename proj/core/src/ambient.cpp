#include "fspectra/ambient.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fspectra/error.hpp"
#include "fspectra/parallel.hpp"
#include "fspectra/random.hpp"
#include "fspectra/warnings.hpp"

namespace fspectra {
namespace {

Mat orthonormal_range(const Mat& projector) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (projector + projector.transpose()));
  int count = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()[i] > 0.5) ++count;
  }
  return eig.eigenvectors().rightCols(count);
}

}  // namespace

AmbientSpace AmbientSpace::gaussian(int n, double lambda) {
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "Gaussian space needs n >= 2");
  if (!(lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be positive");
  AmbientSpace a;
  a.kind_ = AmbientKind::kGaussianEuclidean;
  a.lambda_ = lambda;
  a.euclidean_dim_ = n;
  return a;
}

AmbientSpace AmbientSpace::sphere_cylinder(int k, int j, double lambda) {
  if (k < 2) throw Error(ErrorCode::kInvalidDimension, "sphere factor needs k >= 2");
  if (j < 1) throw Error(ErrorCode::kInvalidDimension, "Euclidean factor needs j >= 1");
  if (!(lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be positive");
  AmbientSpace a;
  a.kind_ = AmbientKind::kSphereCylinder;
  a.lambda_ = lambda;
  a.compact_dim_ = k;
  a.compact_block_ = k + 1;
  a.euclidean_dim_ = j;
  a.sphere_radius_ = std::sqrt((k - 1) / lambda);
  return a;
}

AmbientSpace AmbientSpace::projective_cylinder(ProjectiveFamily family, int rank, int j) {
  if (rank < 1) throw Error(ErrorCode::kInvalidDimension, "projective rank must be >= 1");
  if (j < 0) throw Error(ErrorCode::kInvalidDimension, "Euclidean factor needs j >= 0");
  AmbientSpace a;
  a.kind_ = AmbientKind::kProjectiveCylinder;
  a.projective_ = std::make_shared<const ProjectiveModel>(family, rank);
  a.lambda_ = a.projective_->einstein_constant();
  a.compact_dim_ = a.projective_->real_dim();
  a.compact_block_ = a.projective_->container_dim();
  a.euclidean_dim_ = j;
  return a;
}

std::string AmbientSpace::name() const {
  std::ostringstream os;
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      os << "gaussian(n=" << euclidean_dim_ << ", lambda=" << lambda_ << ")";
      break;
    case AmbientKind::kSphereCylinder:
      os << "sphere-cylinder(k=" << compact_dim_ << ", j=" << euclidean_dim_
         << ", lambda=" << lambda_ << ")";
      break;
    case AmbientKind::kProjectiveCylinder:
      os << (projective_->family() == ProjectiveFamily::kComplex ? "cpn-cylinder(n=" : "hpp-cylinder(p=")
         << projective_->rank() << ", j=" << euclidean_dim_ << ")";
      break;
  }
  return os.str();
}

std::optional<int> AmbientSpace::stated_embed_dim(int m) const {
  if (kind_ != AmbientKind::kProjectiveCylinder) return std::nullopt;
  const int r = projective_->rank();
  if (projective_->family() == ProjectiveFamily::kComplex) return m + 2 + 2 * r * r;
  return m + 2 + 2 * r * r - r;
}

Vec AmbientSpace::compact_part(const Vec& v) const {
  Vec out = Vec::Zero(v.size());
  out.head(compact_block_) = v.head(compact_block_);
  return out;
}

Vec AmbientSpace::euclidean_part(const Vec& v) const {
  Vec out = Vec::Zero(v.size());
  out.tail(euclidean_dim_) = v.tail(euclidean_dim_);
  return out;
}

double AmbientSpace::weight(const Vec& p) const {
  return 0.5 * lambda_ * p.tail(euclidean_dim_).squaredNorm();
}

Vec AmbientSpace::weight_gradient(const Vec& p) const {
  return lambda_ * euclidean_part(p);
}

double AmbientSpace::weight_hessian(const Vec&, const Vec& u, const Vec& v) const {
  return lambda_ * u.tail(euclidean_dim_).dot(v.tail(euclidean_dim_));
}

Vec AmbientSpace::retract(const Vec& x) const {
  Vec out = x;
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      break;
    case AmbientKind::kSphereCylinder: {
      const double r = x.head(compact_block_).norm();
      if (r < 1e-300) throw Error(ErrorCode::kInvalidArgument, "cannot retract the sphere center");
      out.head(compact_block_) *= sphere_radius_ / r;
      break;
    }
    case AmbientKind::kProjectiveCylinder:
      out.head(compact_block_) = projective_->retract(x.head(compact_block_));
      break;
  }
  return out;
}

double AmbientSpace::constraint_residual(const Vec& p) const {
  if (p.size() != embed_dim()) return INFINITY;
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      return 0.0;
    case AmbientKind::kSphereCylinder:
      return std::abs(p.head(compact_block_).norm() - sphere_radius_);
    case AmbientKind::kProjectiveCylinder:
      return projective_->constraint_residual(p.head(compact_block_));
  }
  return INFINITY;
}

Mat AmbientSpace::tangent_projector(const Vec& p) const {
  const int d = embed_dim();
  Mat proj = Mat::Identity(d, d);
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      break;
    case AmbientKind::kSphereCylinder: {
      const Vec nu = p.head(compact_block_).normalized();
      proj.topLeftCorner(compact_block_, compact_block_) -= nu * nu.transpose();
      break;
    }
    case AmbientKind::kProjectiveCylinder:
      proj.topLeftCorner(compact_block_, compact_block_) =
          projective_->tangent_projector(p.head(compact_block_));
      break;
  }
  return proj;
}

Mat AmbientSpace::tangent_frame(const Vec& p) const {
  if (kind_ == AmbientKind::kGaussianEuclidean) return Mat::Identity(embed_dim(), embed_dim());
  return orthonormal_range(tangent_projector(p));
}

Vec AmbientSpace::random_point(std::mt19937_64& rng) const {
  Vec p(embed_dim());
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      break;
    case AmbientKind::kSphereCylinder:
      p.head(compact_block_) = sphere_radius_ * unit_vector(rng, compact_block_);
      break;
    case AmbientKind::kProjectiveCylinder:
      p.head(compact_block_) = projective_->random_point(rng);
      break;
  }
  if (euclidean_dim_ > 0) p.tail(euclidean_dim_) = gaussian_vector(rng, euclidean_dim_);
  return p;
}

Vec AmbientSpace::random_tangent(const Vec& p, std::mt19937_64& rng) const {
  return tangent_projector(p) * gaussian_vector(rng, embed_dim());
}

Vec AmbientSpace::tangent_or_warn(const Vec& p, const Vec& v) const {
  const Vec t = tangent_projector(p) * v;
  if ((t - v).norm() > 1e-8 * std::max(1.0, v.norm())) {
    warn("non-tangent vector passed to a curvature oracle; projected onto T_pM");
  }
  return t;
}

Vec AmbientSpace::second_fundamental(const Vec& p, const Vec& u, const Vec& v) const {
  Vec out = Vec::Zero(embed_dim());
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      break;
    case AmbientKind::kSphereCylinder: {
      // Inward normal; a unit-speed great circle has acceleration -x / R^2.
      const Vec nu = -p.head(compact_block_) / sphere_radius_;
      const double uv = u.head(compact_block_).dot(v.head(compact_block_));
      out.head(compact_block_) = (uv / sphere_radius_) * nu;
      break;
    }
    case AmbientKind::kProjectiveCylinder:
      out.head(compact_block_) = projective_->second_fundamental(
          p.head(compact_block_), u.head(compact_block_), v.head(compact_block_));
      break;
  }
  return out;
}

double AmbientSpace::sectional_numerator_gauss(const Vec& p, const Vec& x, const Vec& y) const {
  const Vec xt = tangent_or_warn(p, x);
  const Vec yt = tangent_or_warn(p, y);
  if (kind_ == AmbientKind::kProjectiveCylinder) {
    const ProjectiveModel& pm = *projective_;
    const Vec pc = p.head(compact_block_);
    const Vec xc = xt.head(compact_block_);
    const Vec yc = yt.head(compact_block_);
    const Vec iixx = pm.second_fundamental_diag(pc, xc);
    const Vec iiyy = pm.second_fundamental_diag(pc, yc);
    const Vec iixy = pm.second_fundamental(pc, xc, yc);
    return iixx.dot(iiyy) - iixy.squaredNorm();
  }
  const Vec iixx = second_fundamental(p, xt, xt);
  const Vec iiyy = second_fundamental(p, yt, yt);
  const Vec iixy = second_fundamental(p, xt, yt);
  return iixx.dot(iiyy) - iixy.squaredNorm();
}

double AmbientSpace::sectional_numerator(const Vec& p, const Vec& x, const Vec& y) const {
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      return 0.0;
    case AmbientKind::kSphereCylinder: {
      const Vec xt = tangent_or_warn(p, x).head(compact_block_);
      const Vec yt = tangent_or_warn(p, y).head(compact_block_);
      const double xy = xt.dot(yt);
      return (xt.squaredNorm() * yt.squaredNorm() - xy * xy) / (sphere_radius_ * sphere_radius_);
    }
    case AmbientKind::kProjectiveCylinder:
      if (projective_->family() == ProjectiveFamily::kComplex) {
        // Holomorphic curvature 4: |X|^2|Y|^2 - <X,Y>^2 + 3 <JX, Y>^2.
        const Vec pc = p.head(compact_block_);
        const Vec xt = tangent_or_warn(p, x).head(compact_block_);
        const Vec yt = tangent_or_warn(p, y).head(compact_block_);
        const double xy = xt.dot(yt);
        const double jxy = projective_->complex_structure(pc, xt).dot(yt);
        return xt.squaredNorm() * yt.squaredNorm() - xy * xy + 3.0 * jxy * jxy;
      }
      return sectional_numerator_gauss(p, x, y);
  }
  return 0.0;
}

double AmbientSpace::ricci(const Vec& p, const Vec& u, const Vec& v) const {
  switch (kind_) {
    case AmbientKind::kGaussianEuclidean:
      return 0.0;
    case AmbientKind::kSphereCylinder: {
      const Vec ut = tangent_projector(p) * u;
      const Vec vt = tangent_projector(p) * v;
      return (compact_dim_ - 1) / (sphere_radius_ * sphere_radius_) *
             ut.head(compact_block_).dot(vt.head(compact_block_));
    }
    case AmbientKind::kProjectiveCylinder: {
      // Gauss equation traced over a frame of the projective factor:
      // Ric(u, v) = <II(u, v), H> - sum_a <II(u, E_a), II(v, E_a)>.
      const ProjectiveModel& pm = *projective_;
      const Vec pc = p.head(compact_block_);
      const Mat proj = pm.tangent_projector(pc);
      const Mat frame = orthonormal_range(proj);
      const Vec uc = proj * u.head(compact_block_);
      const Vec vc = proj * v.head(compact_block_);
      Vec mean = Vec::Zero(compact_block_);
      double cross = 0.0;
      for (Eigen::Index a = 0; a < frame.cols(); ++a) {
        const Vec e = frame.col(a);
        mean += pm.second_fundamental_diag(pc, e);
        cross += pm.second_fundamental(pc, uc, e).dot(pm.second_fundamental(pc, vc, e));
      }
      return pm.second_fundamental(pc, uc, vc).dot(mean) - cross;
    }
  }
  return 0.0;
}

double AmbientSpace::ricci_f(const Vec& p, const Vec& u, const Vec& v) const {
  return ricci(p, u, v) + weight_hessian(p, u, v);
}

SolitonReport ambient_report(const AmbientSpace& ambient, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  struct Row {
    double soliton, projector, gauss, constraint, symmetry;
  };
  std::vector<Row> rows(static_cast<std::size_t>(samples));
  parallel_for(rows.size(), [&](std::size_t i) {
    auto rng = sample_rng(seed, i);
    const Vec p = ambient.random_point(rng);
    const Vec u = ambient.random_tangent(p, rng).normalized();
    const Vec v = ambient.random_tangent(p, rng).normalized();
    const Mat proj = ambient.tangent_projector(p);
    Row r{};
    const double ruv = ambient.ricci_f(p, u, v);
    const double rvu = ambient.ricci_f(p, v, u);
    const double ruu = ambient.ricci_f(p, u, u);
    r.soliton = std::max(std::abs(ruv - ambient.lambda() * u.dot(v)),
                         std::abs(ruu - ambient.lambda()));
    r.projector = (proj * proj - proj).norm() + (proj - proj.transpose()).norm() +
                  std::abs(proj.trace() - ambient.dim());
    const double sec = ambient.sectional_numerator(p, u, v);
    r.gauss = std::abs(sec - ambient.sectional_numerator_gauss(p, u, v));
    r.constraint = ambient.constraint_residual(p);
    r.symmetry = std::max({std::abs(ruv - rvu),
                           std::abs(sec - ambient.sectional_numerator(p, v, u)),
                           (ambient.second_fundamental(p, u, v) -
                            ambient.second_fundamental(p, v, u)).norm()});
    rows[i] = r;
  });
  SolitonReport rep;
  rep.samples = samples;
  for (const Row& r : rows) {
    rep.soliton_residual = std::max(rep.soliton_residual, r.soliton);
    rep.projector_residual = std::max(rep.projector_residual, r.projector);
    rep.gauss_residual = std::max(rep.gauss_residual, r.gauss);
    rep.constraint_residual = std::max(rep.constraint_residual, r.constraint);
    rep.symmetry_residual = std::max(rep.symmetry_residual, r.symmetry);
  }
  return rep;
}

}  // namespace fspectra
