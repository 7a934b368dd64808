#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "support.hpp"

#include "fspectra/immersion.hpp"
#include "fspectra/random.hpp"

using namespace fspectra;

namespace {

// Round sphere in Gaussian R^3 in polar angles, independent of the built-in
// unit-vector chart.
class PolarSphere final : public Immersion {
 public:
  PolarSphere(AmbientSpace a, double r, bool flip) : Immersion(std::move(a)), r_(r), sign_(flip ? -1.0 : 1.0) {}

  ChartJet jet(const Vec& q) const override {
    const double th = q(0), ph = q(1);
    ChartJet j;
    j.position = r_ * Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    j.tangents.resize(3, 2);
    j.tangents.col(0) = r_ * Vec3(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
    j.tangents.col(1) = r_ * Vec3(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
    j.normal = sign_ * j.position / r_;
    j.normal_derivative = sign_ * j.tangents / r_;
    return j;
  }
  std::string name() const override { return "polar-sphere"; }
  std::vector<Vec> sample_params(int) const override { return {Eigen::Vector2d(0.7, 0.3)}; }

 private:
  double r_;
  double sign_;
};

Vec unit(double x, double y, double z) { return Vec3(x, y, z).normalized(); }

void check_geometry_invariants(const AmbientSpace& a, const PointGeometry& g) {
  CHECK(std::abs(g.normal.norm() - 1.0) < 1e-9);
  CHECK((g.frame.transpose() * g.normal).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((a.tangent_projector(g.position) * g.normal - g.normal).norm() < 1e-9);
  CHECK((g.shape - g.shape.transpose()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(g.mean_curvature == doctest::Approx(g.shape.trace()).epsilon(1e-12));
  CHECK(a.constraint_residual(g.position) < 1e-10);
}

}  // namespace

TEST_CASE("shrinker sphere is f-minimal with H = -2/r") {
  const auto a = AmbientSpace::gaussian(3, 1.0);
  const auto s = shrinker_sphere(a, std::sqrt(2.0));
  for (const Vec& q : s->sample_params(3)) {
    const PointGeometry g = point_geometry(*s, q);
    check_geometry_invariants(a, g);
    CHECK(g.mean_curvature == doctest::Approx(-2.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(g.f_mean_curvature) < 1e-12);
    CHECK(g.potential == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK(f_minimality_residual(*s) < 1e-10);
  const auto wrong = shrinker_sphere(a, 1.5);
  CHECK(f_minimality_residual(*wrong) == doctest::Approx(1.5 - 2.0 / 1.5).epsilon(1e-9));
}

TEST_CASE("slice sphere is totally geodesic with potential lambda") {
  const auto a = AmbientSpace::sphere_cylinder(2, 1, 1.0);
  const auto s = slice_sphere(a, 0.0);
  const PointGeometry g = point_geometry(*s, unit(0.2, -0.4, 0.9));
  check_geometry_invariants(a, g);
  CHECK(g.shape.norm() < 1e-12);
  CHECK(std::abs(g.f_mean_curvature) < 1e-14);
  CHECK(g.potential == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(g.normal(3)) == doctest::Approx(1.0));
  CHECK(f_minimality_residual(*s) == 0.0);
}

TEST_CASE("S2 x S1 product has constant potential 2") {
  const auto a = AmbientSpace::sphere_cylinder(2, 2, 1.0);
  const auto p = sphere_round_product(a, 1.0);
  CHECK(p->dim() == 3);
  for (const Vec& q : p->sample_params(2)) {
    const PointGeometry g = point_geometry(*p, q);
    check_geometry_invariants(a, g);
    CHECK(g.potential == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(g.f_mean_curvature) < 1e-12);
  }
}

TEST_CASE("solve_radius families") {
  CHECK(solve_radius(RadiusFamily::sphere_in_gaussian(2), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(solve_radius(RadiusFamily::sphere_in_gaussian(3), 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(solve_radius(RadiusFamily::sphere_in_gaussian(3), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(solve_radius(RadiusFamily::slice_offset(2), 1.0)) < 1e-12);
  RadiusFamily no_root = RadiusFamily::sphere_in_gaussian(3);
  no_root.lo = 5.0;
  check_error(ErrorCode::kNoRoot, [&] { solve_radius(no_root, 1.0); });
}

TEST_CASE("products with two normal factors are rejected") {
  const auto a = AmbientSpace::sphere_cylinder(2, 2, 1.0);
  check_error(ErrorCode::kInvalidProduct, [&] {
    product_immersion(a, {full_sphere_factor(2, 1.0), slice_factor(0.0), slice_factor(0.0)});
  });
  const auto single = shrinker_sphere(AmbientSpace::gaussian(3, 1.0), 2.0);
  CHECK(single->factors().size() == 1);
}

TEST_CASE("property: potential and f-minimality do not depend on the chart") {
  const auto a = AmbientSpace::gaussian(3, 1.0);
  const auto builtin = shrinker_sphere(a, 1.7);
  const PolarSphere polar(a, 1.7, false);
  const PolarSphere flipped(a, 1.7, true);
  auto rng = sample_rng(2, 0);
  for (int s = 0; s < 10; ++s) {
    const Eigen::Vector2d q(0.2 + 2.7 * std::uniform_real_distribution<double>()(rng),
                            2 * std::numbers::pi * std::uniform_real_distribution<double>()(rng));
    const PointGeometry gp = point_geometry(polar, q);
    const PointGeometry gb = point_geometry(*builtin, gp.position.normalized());
    const PointGeometry gf = point_geometry(flipped, q);
    CHECK((gp.position - gb.position).norm() < 1e-12);
    CHECK(gp.potential == doctest::Approx(gb.potential).epsilon(1e-9));
    CHECK(gp.f_mean_curvature == doctest::Approx(gb.f_mean_curvature).epsilon(1e-9));
    // flipping N flips H_f but not its size, and leaves the potential alone
    CHECK(gf.f_mean_curvature == doctest::Approx(-gp.f_mean_curvature).epsilon(1e-12));
    CHECK(gf.potential == doctest::Approx(gp.potential).epsilon(1e-12));
  }
}

TEST_CASE("property: finite-difference shape operator converges at second order") {
  const auto a = AmbientSpace::gaussian(3, 1.0);
  const TorusOfRevolution torus(a, 2.0, 0.7);
  const Eigen::Vector2d q(0.4, 1.1);
  const PointGeometry g = point_geometry(torus, q);
  Eigen::SelfAdjointEigenSolver<Mat> exact_es(g.shape);
  const Vec exact = exact_es.eigenvalues();

  auto principal_fd = [&](double h) {
    Mat t(3, 2), dn(3, 2);
    for (int k = 0; k < 2; ++k) {
      // diagonal directions; along coordinate lines the truncation errors of
      // position and normal cancel exactly
      const Vec e = Eigen::Vector2d(1.0, k == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
      const ChartJet plus = torus.jet(q + h * e), minus = torus.jet(q - h * e);
      t.col(k) = (plus.position - minus.position) / (2 * h);
      dn.col(k) = (plus.normal - minus.normal) / (2 * h);
    }
    const Mat s = (t.transpose() * t).ldlt().solve(-t.transpose() * dn);
    Eigen::EigenSolver<Mat> es(s);
    Vec ev = es.eigenvalues().real();
    std::sort(ev.data(), ev.data() + ev.size());
    return ev;
  };
  const double e1 = (principal_fd(1e-2) - exact).cwiseAbs().maxCoeff();
  const double e2 = (principal_fd(5e-3) - exact).cwiseAbs().maxCoeff();
  CHECK(e1 < 1e-3);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("user chart geometry from finite differences") {
  const auto a = AmbientSpace::gaussian(3, 1.0);
  const ChartImmersion chart(
      a, ParamDomain::kUnitSphere, [](const Vec& q) { return Vec3(std::sqrt(2.0) * q.head<3>()); }, "sphere");
  CHECK_FALSE(chart.analytic());
  const PointGeometry g = point_geometry(chart, unit(0.3, 0.4, -0.5));
  CHECK(g.potential == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(std::abs(g.f_mean_curvature) < 1e-5);
  CHECK(f_minimality_residual(chart) < 1e-5);

  const ChartImmersion collapsed(a, ParamDomain::kUnitSphere, [](const Vec&) { return Vec3(1, 0, 0); }, "point");
  check_error(ErrorCode::kDegenerateImmersion, [&] { point_geometry(collapsed, unit(0, 0, 1)); });
  check_error(ErrorCode::kUnsupported, [] {
    ChartImmersion(AmbientSpace::sphere_cylinder(2, 1, 1.0), ParamDomain::kUnitSphere,
                   [](const Vec& q) { return Vec3(q.head<3>()); }, "x");
  });
}
