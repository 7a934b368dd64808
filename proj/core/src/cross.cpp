#include <cmath>

#include <Eigen/Dense>

#include "fspectra/error.hpp"
#include "fspectra/projective.hpp"
#include "fspectra/random.hpp"
#include "fspectra/theorem.hpp"

namespace fspectra {
namespace {

const ProjectiveModel& require_projective(const AmbientSpace& ambient) {
  if (ambient.kind() != AmbientKind::kProjectiveCylinder || !ambient.projective()) {
    throw Error(ErrorCode::kInvalidArgument, ambient.name() + " is not a projective cylinder");
  }
  return *ambient.projective();
}

// Unit tangent vector of the projective factor at p.
Vec random_projective_tangent(const AmbientSpace& ambient, const Vec& p, std::mt19937_64& rng) {
  for (;;) {
    const Vec v = ambient.compact_part(ambient.random_tangent(p, rng));
    if (v.norm() > 1e-6) return v.normalized();
  }
}

// Orthonormal basis of the tangent space of the projective factor at p.
Mat projective_frame(const AmbientSpace& ambient, const Vec& p) {
  const Mat t = ambient.tangent_frame(p);
  Mat c(t.rows(), t.cols());
  for (Eigen::Index i = 0; i < t.cols(); ++i) c.col(i) = ambient.compact_part(t.col(i));
  Eigen::SelfAdjointEigenSolver<Mat> es(c * c.transpose());
  const int k = ambient.compact_dim();
  return es.eigenvectors().rightCols(k);
}

// Orthonormal complement of the unit vector n inside T_pM.
Mat complement_frame(const AmbientSpace& ambient, const Vec& p, const Vec& n) {
  const Mat t = ambient.tangent_frame(p);
  Eigen::HouseholderQR<Mat> qr(Vec(t.transpose() * n));
  const Mat q = qr.householderQ();
  return t * q.rightCols(q.cols() - 1);
}

}  // namespace

CrossReport cross_identity_check(const AmbientSpace& ambient, int samples, std::uint64_t seed) {
  const ProjectiveModel& model = require_projective(ambient);
  CrossReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.einstein_constant = model.einstein_constant();
  rep.sectional_min = std::numeric_limits<double>::infinity();
  rep.sectional_max = -rep.sectional_min;
  const double k = ambient.compact_dim();
  for (int s = 0; s < samples; ++s) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(s));
    const Vec p = ambient.random_point(rng);
    const Vec x = random_projective_tangent(ambient, p, rng);
    Vec y = random_projective_tangent(ambient, p, rng);

    const Vec iixx = ambient.second_fundamental(p, x, x);
    const Vec iiyy = ambient.second_fundamental(p, y, y);
    const Vec iixy = ambient.second_fundamental(p, x, y);
    const double xy = x.dot(y);
    rep.ii_norm = std::max(rep.ii_norm, std::abs(iixx.squaredNorm() - 4.0));
    rep.ii_polarized = std::max(rep.ii_polarized, std::abs(iixx.dot(iiyy) + 2.0 * iixy.squaredNorm() - 4.0 * (1.0 + 2.0 * xy * xy)));
    const double rxy = ambient.sectional_numerator(p, x, y);
    rep.ii_mixed = std::max(rep.ii_mixed, std::abs(iixy.squaredNorm() - ((4.0 / 3.0) * (1.0 + 2.0 * xy * xy) - rxy / 3.0)));
    const double area = 1.0 - xy * xy;
    if (area > 1e-6) {
      rep.sectional_min = std::min(rep.sectional_min, rxy / area);
      rep.sectional_max = std::max(rep.sectional_max, rxy / area);
    }

    const Vec n = ambient.random_tangent(p, rng).normalized();
    const Vec u = ambient.random_tangent(p, rng).normalized();
    const Mat e = complement_frame(ambient, p, n);
    const Vec up = ambient.compact_part(u);
    const Vec np = ambient.compact_part(n);
    double lhs = 0.0, curv = 0.0;
    for (Eigen::Index h = 0; h < e.cols(); ++h) {
      lhs += ambient.second_fundamental(p, e.col(h), u).squaredNorm();
      curv += ambient.sectional_numerator(p, e.col(h), u);
    }
    const double upnp = up.dot(np);
    const double rhs = (4.0 / 3.0) * (up.squaredNorm() * (k + 2.0 - np.squaredNorm()) - 2.0 * upnp * upnp) - curv / 3.0;
    rep.frame_sum = std::max(rep.frame_sum, std::abs(lhs - rhs));

    const Mat f = projective_frame(ambient, p);
    for (Eigen::Index a = 0; a < f.cols(); ++a) {
      for (Eigen::Index b = a; b < f.cols(); ++b) {
        const double ric = ambient.ricci(p, f.col(a), f.col(b));
        rep.einstein_residual = std::max(rep.einstein_residual, std::abs(ric - (a == b ? rep.einstein_constant : 0.0)));
      }
    }
  }
  return rep;
}

CrossGapBound cross_gap_bound(const AmbientSpace& ambient, const Vec& p, const Vec& omega, const Vec& n) {
  const ProjectiveModel& model = require_projective(ambient);
  const double k = ambient.compact_dim();
  const double lambda = ambient.lambda();
  const Vec wp = ambient.compact_part(omega), wr = ambient.euclidean_part(omega);
  const Vec np = ambient.compact_part(n), nr = ambient.euclidean_part(n);
  const double w2 = omega.squaredNorm(), wp2 = wp.squaredNorm(), wr2 = wr.squaredNorm();
  const double np2 = np.squaredNorm(), nr2 = nr.squaredNorm();
  const double wn = wp.dot(np);
  const double curv = w2 > 0.0 ? ambient.sectional_numerator(p, omega, n) : 0.0;

  CrossGapBound out;
  out.value = (4.0 / 3.0) * (w2 * np2 * (k + 2.0 - 3.0 * np2) + wp2 * (k + 2.0 - np2) - 2.0 * wn * wn -
                             ambient.ricci(p, n, n) * w2 - ambient.ricci(p, omega, omega) + curv) -
              ambient.weight_hessian(p, n, n) * w2 - ambient.weight_hessian(p, omega, omega);
  out.definitional = definitional_gap(ambient, p, omega, n);
  out.first_bound = (4.0 / 3.0) * (w2 * np2 * (k + 2.0 - lambda - 3.0 * np2) + wp2 * (k + 2.0 - lambda - np2) -
                                   6.0 * wn * wn + 4.0 * wp2 * np2) -
                    lambda * nr2 * w2 - lambda * wr2;
  out.eta_remainder = 8.0 * wn * wn + lambda * nr2 * w2 + lambda * wr2;
  out.bound = (4.0 / 3.0) * (w2 * np2 * (k + 4.0 - lambda - 3.0 * np2) + wp2 * (k + 4.0 - lambda - np2)) - out.eta_remainder;
  const double tol = 1e-6 * (1.0 + std::abs(out.value) + std::abs(out.bound));
  out.bound_holds = out.value <= out.first_bound + tol && out.first_bound <= out.bound + tol;

  out.omega_euclid = std::sqrt(wr2);
  out.normal_euclid = std::sqrt(nr2);
  if (model.family() == ProjectiveFamily::kComplex) {
    const int cb = ambient.compact_block();
    const Vec jn = model.complex_structure(p.head(cb), np.head(cb));
    const Vec w = wp.head(cb);
    out.jn_deviation = jn.norm() > 1e-12 ? (w - w.dot(jn) / jn.squaredNorm() * jn).norm() : w.norm();
  } else {
    out.jn_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace fspectra
