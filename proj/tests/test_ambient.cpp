#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "fspectra/ambient.hpp"
#include "fspectra/random.hpp"
#include "fspectra/warnings.hpp"

using namespace fspectra;

namespace {

// Two orthonormal tangent vectors at p, drawn from the tangent frame.
std::pair<Vec, Vec> orthonormal_pair(const AmbientSpace& a, const Vec& p, std::mt19937_64& rng) {
  const Mat frame = a.tangent_frame(p);
  Vec x = frame * unit_vector(rng, frame.cols());
  Vec y = frame * unit_vector(rng, frame.cols());
  y -= y.dot(x) * x;
  return {x, y.normalized()};
}

}  // namespace

TEST_CASE("gaussian space is flat with hessian lambda") {
  const auto a = AmbientSpace::gaussian(3, 1.0);
  CHECK(a.dim() == 3);
  CHECK(a.embed_dim() == 3);
  auto rng = sample_rng(11, 0);
  for (int s = 0; s < 20; ++s) {
    const Vec p = a.random_point(rng);
    const Vec u = a.random_tangent(p, rng);
    const Vec v = a.random_tangent(p, rng);
    CHECK(a.ricci_f(p, u, u) == doctest::Approx(u.squaredNorm()).epsilon(1e-14));
    CHECK(std::abs(a.sectional_numerator(p, u, v)) < 1e-14);
    CHECK(a.second_fundamental(p, u, v).norm() < 1e-14);
    CHECK(a.weight_hessian(p, u, v) == doctest::Approx(u.dot(v)).epsilon(1e-14));
  }
  const auto a2 = AmbientSpace::gaussian(3, 2.0);
  CHECK(a2.weight(Vec3(1, 0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("constructors reject bad dimensions") {
  check_error(ErrorCode::kInvalidDimension, [] { AmbientSpace::gaussian(1, 1.0); });
  check_error(ErrorCode::kInvalidArgument, [] { AmbientSpace::gaussian(3, -1.0); });
  check_error(ErrorCode::kInvalidDimension, [] { AmbientSpace::sphere_cylinder(1, 1, 1.0); });
  check_error(ErrorCode::kInvalidDimension, [] { AmbientSpace::sphere_cylinder(2, 0, 1.0); });
  check_error(ErrorCode::kInvalidDimension,
              [] { AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 0, 0); });
}

TEST_CASE("sphere cylinder radius, dimension and curvature") {
  const auto a = AmbientSpace::sphere_cylinder(2, 1, 1.0);
  CHECK(a.sphere_radius() == doctest::Approx(1.0));
  CHECK(a.embed_dim() == 4);
  CHECK(AmbientSpace::sphere_cylinder(3, 2, 0.5).sphere_radius() == doctest::Approx(2.0));

  Vec p = Vec::Zero(4);
  p << 0, 0, 1, 0.3;
  const Vec e1 = Vec::Unit(4, 0), e2 = Vec::Unit(4, 1);
  CHECK(a.ricci_f(p, e1, e1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.sectional_numerator(p, e1, e2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.ricci_f(p, Vec::Unit(4, 3), Vec::Unit(4, 3)) == doctest::Approx(1.0).epsilon(1e-12));

  const auto b = AmbientSpace::sphere_cylinder(3, 2, 1.0);
  Vec q = Vec::Zero(6);
  q(3) = b.sphere_radius();
  const Vec v = Vec::Unit(6, 0);
  CHECK(b.second_fundamental(q, v, v).norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("projective cylinders: container sizes and lambda") {
  const auto cp1 = AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 1, 0);
  CHECK(cp1.projective()->container_dim() == 4);
  CHECK(cp1.lambda() == doctest::Approx(4.0));
  const auto cp2 = AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 2, 1);
  CHECK(cp2.lambda() == doctest::Approx(6.0));
  CHECK(cp2.embed_dim() == 9 + 1);
  const auto hp1 = AmbientSpace::projective_cylinder(ProjectiveFamily::kQuaternionic, 1, 0);
  CHECK(hp1.projective()->container_dim() == 6);
  CHECK(hp1.lambda() == doctest::Approx(12.0));
}

TEST_CASE("CP1 has constant sectional curvature 4, CP2 lies in [1, 4]") {
  const auto cp1 = AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 1, 0);
  const auto cp2 = AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 2, 0);
  auto rng = sample_rng(5, 0);
  for (int s = 0; s < 10; ++s) {
    const Vec p = cp1.random_point(rng);
    auto [x, y] = orthonormal_pair(cp1, p, rng);
    CHECK(cp1.sectional_numerator(p, x, y) == doctest::Approx(4.0).epsilon(1e-5));
    const Vec q = cp2.random_point(rng);
    auto [u, v] = orthonormal_pair(cp2, q, rng);
    const double k = cp2.sectional_numerator(q, u, v);
    CHECK(k >= 1.0 - 1e-5);
    CHECK(k <= 4.0 + 1e-5);
  }
}

TEST_CASE("ambient report residuals per kind") {
  const auto g = ambient_report(AmbientSpace::gaussian(3, 1.0), 100, 0);
  CHECK(g.soliton_residual < 1e-12);
  CHECK(g.projector_residual < 1e-12);
  CHECK(g.gauss_residual < 1e-12);
  const auto c = ambient_report(AmbientSpace::sphere_cylinder(2, 1, 1.0), 100, 0);
  CHECK(c.soliton_residual < 1e-10);
  CHECK(c.gauss_residual < 1e-10);
  const auto p = ambient_report(AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 2, 1), 50, 0);
  CHECK(p.soliton_residual < 1e-5);
  CHECK(p.gauss_residual < 1e-5);
  CHECK(p.constraint_residual < 1e-10);
  CHECK(p.symmetry_residual < 1e-6);
}

TEST_CASE("property: tangent projector is a symmetric idempotent of rank m+1") {
  for (const auto& a : {AmbientSpace::gaussian(4, 1.0), AmbientSpace::sphere_cylinder(3, 2, 0.7),
                        AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 2, 1),
                        AmbientSpace::projective_cylinder(ProjectiveFamily::kQuaternionic, 1, 1)}) {
    auto rng = sample_rng(3, 0);
    for (int s = 0; s < 5; ++s) {
      const Vec p = a.random_point(rng);
      CHECK(a.constraint_residual(p) < 1e-10);
      const Mat proj = a.tangent_projector(p);
      CHECK((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((proj - proj.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(proj.trace() == doctest::Approx(a.dim()).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: symmetries of Ric_f, the sectional numerator and II") {
  for (const auto& a : {AmbientSpace::sphere_cylinder(2, 2, 1.0),
                        AmbientSpace::projective_cylinder(ProjectiveFamily::kComplex, 1, 1)}) {
    const double tol = a.closed_form() ? 1e-10 : 1e-6;
    auto rng = sample_rng(8, 0);
    for (int s = 0; s < 10; ++s) {
      const Vec p = a.random_point(rng);
      const Vec u = a.random_tangent(p, rng), v = a.random_tangent(p, rng);
      CHECK(std::abs(a.ricci_f(p, u, v) - a.ricci_f(p, v, u)) < tol);
      CHECK(std::abs(a.sectional_numerator(p, u, v) - a.sectional_numerator(p, v, u)) < tol);
      CHECK((a.second_fundamental(p, u, v) - a.second_fundamental(p, v, u)).norm() < tol);
      CHECK(std::abs(a.sectional_numerator(p, u, v) - a.sectional_numerator_gauss(p, u, v)) < 1e-5);
    }
  }
}

TEST_CASE("property: weight gradient matches a central difference to second order") {
  const auto a = AmbientSpace::sphere_cylinder(2, 2, 1.3);
  auto rng = sample_rng(21, 0);
  const Vec p = a.random_point(rng);
  const Vec v = a.random_tangent(p, rng);
  const double exact = a.weight_gradient(p).dot(v);
  auto fd = [&](double h) { return (a.weight(p + h * v) - a.weight(p - h * v)) / (2 * h); };
  // f is quadratic, so the central difference is exact up to round-off
  CHECK(std::abs(fd(1e-3) - exact) < 1e-9);
  CHECK(std::abs(fd(1e-2) - exact) < 1e-9);
}

TEST_CASE("non-tangent input is projected with a warning") {
  const auto a = AmbientSpace::sphere_cylinder(2, 1, 1.0);
  int warnings = 0;
  auto previous = set_warning_handler([&](std::string_view) { ++warnings; });
  Vec p = Vec::Zero(4);
  p(2) = 1.0;
  const Vec x = Vec::Unit(4, 0) + 0.5 * Vec::Unit(4, 2);
  const double k = a.sectional_numerator(p, x, Vec::Unit(4, 1));
  set_warning_handler(previous);
  CHECK(warnings >= 1);
  CHECK(k == doctest::Approx(1.0).epsilon(1e-12));
}
