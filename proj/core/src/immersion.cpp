#include "fspectra/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "fspectra/error.hpp"

namespace fspectra {

PointGeometry point_geometry(const Immersion& imm, const Vec& q) {
  const AmbientSpace& amb = imm.ambient();
  const ChartJet jet = imm.jet(q);
  const int m = imm.dim();
  if (jet.tangents.cols() != m) {
    throw Error(ErrorCode::kDegenerateImmersion, "chart returned the wrong number of tangents");
  }

  Eigen::HouseholderQR<Mat> qr(jet.tangents);
  const Mat r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  double rmax = 0.0;
  double rmin = INFINITY;
  for (int i = 0; i < m; ++i) {
    rmax = std::max(rmax, std::abs(r(i, i)));
    rmin = std::min(rmin, std::abs(r(i, i)));
  }
  if (!(rmin > 1e-10 * std::max(rmax, 1.0))) {
    throw Error(ErrorCode::kDegenerateImmersion, "differential is rank deficient at a chart point");
  }
  // tangents = Q R, so the orthonormal frame is tangents R^{-1}.
  const Mat rinv = r.triangularView<Eigen::Upper>().solve(Mat::Identity(m, m));

  PointGeometry g;
  g.position = jet.position;
  g.frame = jet.tangents * rinv;
  g.normal = jet.normal;
  g.normal_derivative = jet.normal_derivative * rinv;

  const Mat proj = amb.tangent_projector(g.position);
  const Mat dn_tangent = proj * g.normal_derivative;
  g.shape = -(g.frame.transpose() * dn_tangent).transpose();
  g.mean_curvature = g.shape.trace();
  g.f_value = amb.weight(g.position);
  g.f_mean_curvature = g.mean_curvature + amb.weight_gradient(g.position).dot(g.normal);
  g.potential = amb.ricci_f(g.position, g.normal, g.normal) + g.shape.squaredNorm();
  return g;
}

double f_minimality_residual(const Immersion& imm, int resolution) {
  double worst = 0.0;
  for (const Vec& q : imm.sample_params(resolution)) {
    worst = std::max(worst, std::abs(point_geometry(imm, q).f_mean_curvature));
  }
  return worst;
}

// ---------------------------------------------------------------------------

TorusOfRevolution::TorusOfRevolution(AmbientSpace gaussian3, double major, double minor)
    : Immersion(std::move(gaussian3)), major_(major), minor_(minor) {
  if (ambient().kind() != AmbientKind::kGaussianEuclidean || ambient().embed_dim() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "torus of revolution lives in Gaussian R^3");
  }
  if (!(minor > 0.0 && major > minor)) {
    throw Error(ErrorCode::kInvalidArgument, "torus radii must satisfy R > r > 0");
  }
}

Vec TorusOfRevolution::position(double u, double v) const {
  const double rho = major_ + minor_ * std::cos(v);
  return Vec3(rho * std::cos(u), rho * std::sin(u), minor_ * std::sin(v));
}

ChartJet TorusOfRevolution::jet(const Vec& q) const {
  const double u = q[0];
  const double v = q[1];
  const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
  const double rho = major_ + minor_ * cv;
  ChartJet j;
  j.position = position(u, v);
  j.tangents.resize(3, 2);
  j.tangents.col(0) = Vec3(-rho * su, rho * cu, 0.0);
  j.tangents.col(1) = Vec3(-minor_ * sv * cu, -minor_ * sv * su, minor_ * cv);
  j.normal = Vec3(cv * cu, cv * su, sv);
  j.normal_derivative.resize(3, 2);
  j.normal_derivative.col(0) = Vec3(-cv * su, cv * cu, 0.0);
  j.normal_derivative.col(1) = Vec3(-sv * cu, -sv * su, cv);
  return j;
}

std::string TorusOfRevolution::name() const {
  std::ostringstream os;
  os << "torus-of-revolution(R=" << major_ << ", r=" << minor_ << ")";
  return os.str();
}

std::vector<Vec> TorusOfRevolution::sample_params(int resolution) const {
  const int n = 4 * (resolution + 1);
  std::vector<Vec> out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Vec q(2);
      q << 2.0 * std::numbers::pi * (a + 0.5) / n, 2.0 * std::numbers::pi * (b + 0.5) / n;
      out.push_back(q);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ChartImmersion::ChartImmersion(AmbientSpace gaussian3, ParamDomain domain, PositionFn position,
                               std::string label, double step)
    : Immersion(std::move(gaussian3)),
      domain_(domain),
      position_(std::move(position)),
      label_(std::move(label)),
      step_(step) {
  if (ambient().kind() != AmbientKind::kGaussianEuclidean || ambient().embed_dim() != 3) {
    throw Error(ErrorCode::kUnsupported, "user charts are supported in Gaussian R^3 only");
  }
  if (domain != ParamDomain::kUnitSphere && domain != ParamDomain::kTorus) {
    throw Error(ErrorCode::kUnsupported, "user charts need a sphere or torus parameter domain");
  }
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be positive");
}

Mat ChartImmersion::directions(const Vec& q) const {
  if (domain_ == ParamDomain::kUnitSphere) return sphere_param_basis(q);
  return Mat::Identity(2, 2);
}

Vec ChartImmersion::displaced(const Vec& q, const Vec& dir, double h) const {
  if (domain_ == ParamDomain::kUnitSphere) return (q + h * dir).normalized();
  return q + h * dir;
}

Vec3 ChartImmersion::normal_at(const Vec& q) const {
  const Mat dirs = directions(q);
  const double h = step_ * std::max(1.0, q.norm());
  Vec3 d[2];
  for (int a = 0; a < 2; ++a) {
    d[a] = (position_(displaced(q, dirs.col(a), h)) - position_(displaced(q, dirs.col(a), -h))) / (2 * h);
  }
  Vec3 n = d[0].cross(d[1]);
  const double len = n.norm();
  if (!(len > 0.0)) throw Error(ErrorCode::kDegenerateImmersion, "user chart has a singular point");
  return n / len;
}

ChartJet ChartImmersion::jet(const Vec& q) const {
  const Mat dirs = directions(q);
  const double h = step_ * std::max(1.0, q.norm());
  // N already carries an O(eps / h) error, so its own difference uses a
  // wider step balanced against that noise.
  const double outer = std::cbrt(std::numeric_limits<double>::epsilon() / step_) * std::max(1.0, q.norm());
  ChartJet j;
  j.position = position_(q);
  j.tangents.resize(3, 2);
  j.normal_derivative.resize(3, 2);
  for (int a = 0; a < 2; ++a) {
    const Vec qp = displaced(q, dirs.col(a), h);
    const Vec qm = displaced(q, dirs.col(a), -h);
    j.tangents.col(a) = (position_(qp) - position_(qm)) / (2 * h);
    j.normal_derivative.col(a) =
        (normal_at(displaced(q, dirs.col(a), outer)) - normal_at(displaced(q, dirs.col(a), -outer))) / (2 * outer);
  }
  j.normal = normal_at(q);
  return j;
}

std::vector<Vec> ChartImmersion::sample_params(int resolution) const {
  if (domain_ == ParamDomain::kUnitSphere) {
    return full_sphere_factor(2, 1.0)->sample_params(resolution);
  }
  const int n = 4 * (resolution + 1);
  std::vector<Vec> out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Vec q(2);
      q << 2.0 * std::numbers::pi * (a + 0.5) / n, 2.0 * std::numbers::pi * (b + 0.5) / n;
      out.push_back(q);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double solve_radius(const RadiusFamily& family, double lambda) {
  std::function<double(double)> hf;
  Vec q;
  switch (family.kind) {
    case RadiusFamilyKind::kSphereInGaussian: {
      const AmbientSpace amb = AmbientSpace::gaussian(family.dim, lambda);
      q = Vec::Unit(family.dim, 0);
      hf = [amb, q](double r) { return point_geometry(*shrinker_sphere(amb, r), q).f_mean_curvature; };
      break;
    }
    case RadiusFamilyKind::kSliceOffset: {
      const AmbientSpace amb = AmbientSpace::sphere_cylinder(family.dim, 1, lambda);
      q = Vec::Unit(family.dim + 1, 0);
      hf = [amb, q](double t0) { return point_geometry(*slice_sphere(amb, t0), q).f_mean_curvature; };
      break;
    }
  }

  double a = family.lo, b = family.hi;
  double fa = hf(a), fb = hf(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) {
    throw Error(ErrorCode::kNoRoot, "H_f has no sign change on the search bracket");
  }
  // Illinois regula falsi, with bisection while the bracket is wide.
  double x = 0.5 * (a + b);
  int side = 0;
  for (int it = 0; it < 400; ++it) {
    double cand = b - fb * (b - a) / (fb - fa);
    if (std::abs(b - a) > 1.0 || !(cand > std::min(a, b) && cand < std::max(a, b))) cand = 0.5 * (a + b);
    x = cand;
    const double fx = hf(x);
    if (std::abs(fx) < 1e-12) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (std::abs(b - a) < 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  if (std::abs(hf(x)) >= 1e-12) {
    throw Error(ErrorCode::kNoRoot, "root finder did not reach |H_f| < 1e-12");
  }
  return x;
}

}  // namespace fspectra
