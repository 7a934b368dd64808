#include <cmath>

#include <Eigen/Dense>

#include "fspectra/error.hpp"
#include "fspectra/random.hpp"
#include "fspectra/theorem.hpp"

namespace fspectra {

double cylinder_gap(int k, double lambda, const GapDecomposition& x) {
  if (k < 2) throw Error(ErrorCode::kInvalidDimension, "the sphere factor needs k >= 2");
  const double eps = 1e-12;
  const bool ok = x.x_norm >= 0.0 && x.x_euclid >= 0.0 && x.n_euclid >= 0.0 &&
                  x.x_euclid <= x.x_norm * (1.0 + eps) + eps && x.n_euclid <= 1.0 + eps &&
                  std::abs(x.n_dot_x_euclid) <= x.n_euclid * x.x_euclid * (1.0 + eps) + eps;
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "inconsistent decomposition of X and N");
  const double x2 = x.x_norm * x.x_norm;
  const double rx2 = x.x_euclid * x.x_euclid;
  const double rn2 = x.n_euclid * x.n_euclid;
  const double c = lambda / (k - 1.0);
  return -2.0 * c * (k - 2.0) * x2 - c * (x2 * rn2 * rn2 + rx2 * (2.0 - rn2) + 2.0 * x.n_dot_x_euclid * x.n_dot_x_euclid);
}

double definitional_gap(const AmbientSpace& ambient, const Vec& p, const Vec& x, const Vec& n) {
  const Mat t = ambient.tangent_frame(p);
  const Vec nc = t.transpose() * n;
  // Orthonormal complement of N inside T_pM.
  Eigen::HouseholderQR<Mat> qr(nc);
  const Mat q = qr.householderQ();
  PointGeometry g;
  g.position = p;
  g.normal = n;
  g.frame = t * q.rightCols(q.cols() - 1);
  g.shape = Mat::Zero(g.frame.cols(), g.frame.cols());
  return form_point_terms(ambient, g, x).gap();
}

GapCrossCheck cylinder_gap_crosscheck(int k, int j, double lambda, int samples, std::uint64_t seed) {
  const AmbientSpace amb = AmbientSpace::sphere_cylinder(k, j, lambda);
  GapCrossCheck out;
  out.samples = samples;
  out.max_value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(s));
    const Vec p = amb.random_point(rng);
    const Vec n = amb.random_tangent(p, rng).normalized();
    Vec x = amb.random_tangent(p, rng);
    x -= x.dot(n) * n;
    std::uniform_real_distribution<double> scale(0.1, 2.0);
    x *= scale(rng) / x.norm();
    GapDecomposition dec;
    dec.x_norm = x.norm();
    dec.x_euclid = amb.euclidean_part(x).norm();
    dec.n_euclid = amb.euclidean_part(n).norm();
    dec.n_dot_x_euclid = amb.euclidean_part(n).dot(amb.euclidean_part(x));
    const double closed = cylinder_gap(k, lambda, dec);
    const double direct = definitional_gap(amb, p, x, n);
    out.max_difference = std::max(out.max_difference, std::abs(closed - direct));
    out.max_value = std::max(out.max_value, closed);
  }
  return out;
}

}  // namespace fspectra
