#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "doctest.h"
#include "support.hpp"

#include "fspectra/assembly.hpp"
#include "fspectra/immersion.hpp"
#include "fspectra/mesh.hpp"
#include "fspectra/spectral.hpp"

using namespace fspectra;

namespace {

constexpr double kPi = std::numbers::pi;

const OperatorAssembly& shrinker_s4() {
  static const OperatorAssembly as = [] {
    const auto g = AmbientSpace::gaussian(3, 1.0);
    const auto s = shrinker_sphere(g, std::sqrt(2.0));
    return assemble(attach(icosphere(4), *s), *s);
  }();
  return as;
}

const OperatorAssembly& slice_s4() {
  static const OperatorAssembly as = [] {
    const auto cyl = AmbientSpace::sphere_cylinder(2, 1, 1.0);
    const auto s = slice_sphere(cyl);
    return assemble_hodge1(attach(icosphere(4), *s), *s);
  }();
  return as;
}

SpectralResult listed(std::initializer_list<double> values) {
  SpectralResult r;
  r.eigenvalues = Eigen::Map<const Vec>(values.begin(), static_cast<Eigen::Index>(values.size()));
  classify(r);
  return r;
}

void check_sorted_within(const Vec& got, const std::vector<double>& want, double rel) {
  REQUIRE(got.size() >= static_cast<Eigen::Index>(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) {
    const double w = want[i];
    CHECK(std::abs(got[static_cast<Eigen::Index>(i)] - w) <= rel * std::max(1.0, std::abs(w)));
  }
}

}  // namespace

TEST_CASE("unit sphere Laplacian: 0, 2 and 6") {
  const SurfaceMesh m = icosphere(4);
  const OperatorAssembly as =
      assemble_fields(m, Vec::Ones(m.num_faces()), Vec::Zero(m.num_faces()));
  const SpectralResult r = eigensolve(as, 9);
  CHECK(std::abs(r.eigenvalues[0]) < 1e-10);
  check_sorted_within(r.eigenvalues, {0, 2, 2, 2, 6, 6, 6, 6, 6}, 2e-2);
  CHECK(r.zero_count == 1);
  CHECK(r.neg_count == 0);
}

TEST_CASE("shrinker and slice spectra, index and counts") {
  const SpectralResult a = eigensolve(shrinker_s4(), 8);
  check_sorted_within(a.eigenvalues, {-2, -1, -1, -1, 1, 1, 1, 1}, 2e-2);
  CHECK(f_index(a) == 4);

  const SpectralResult b = eigensolve(slice_s4(), 8);
  check_sorted_within(b.eigenvalues, {-1, 1, 1, 1}, 2e-2);
  CHECK(f_index(b) == 1);
  CHECK(count_below(b, 1.5) == 4);
  const CountReport rep = count_below_report(b, 1.5);
  CHECK(rep.distance == doctest::Approx(0.5).epsilon(2e-2));
}

TEST_CASE("property: eigenpair residuals and M-orthonormality") {
  for (const OperatorAssembly* as : {&shrinker_s4(), &slice_s4()}) {
    const SpectralResult r = eigensolve(*as, 10);
    const SpMat a = as->jacobi();
    for (int i = 0; i < r.eigenvalues.size(); ++i) {
      const Vec v = r.eigenvectors.col(i);
      const double mnorm = std::sqrt(v.dot(as->mass * v));
      const double res = (a * v - r.eigenvalues[i] * (as->mass * v)).norm() / mnorm;
      CHECK(res < 1e-8);
    }
    const Mat gram = r.eigenvectors.transpose() * (as->mass * r.eigenvectors);
    CHECK((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(r.max_residual < 1e-8);
    CHECK(r.orthonormality_defect < 1e-10);
    for (int i = 1; i < r.eigenvalues.size(); ++i) CHECK(r.eigenvalues[i - 1] <= r.eigenvalues[i]);
  }
}

TEST_CASE("dense and shift-invert paths agree") {
  SolverOptions dense, iter;
  dense.method = SolverMethod::kDense;
  iter.method = SolverMethod::kShiftInvert;
  iter.seed = 7;
  const SpectralResult a = eigensolve(slice_s4(), 10, dense);
  const SpectralResult b = eigensolve(slice_s4(), 10, iter);
  CHECK(a.method != b.method);
  REQUIRE(b.eigenvalues.size() >= 8);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-8);
  CHECK(b.max_residual < 1e-8);
  CHECK(f_index(a) == f_index(b));
}

TEST_CASE("property: rescaling the weight leaves the spectrum unchanged") {
  const OperatorAssembly& base = shrinker_s4();
  const SpectralResult r0 = eigensolve(base, 10);
  for (double c : {-3.0, 0.5, 7.0}) {
    const OperatorAssembly shifted =
        assemble_fields(base.mesh, std::exp(-c) * base.face_weight, base.face_potential);
    const SpectralResult r = eigensolve(shifted, 10);
    CHECK((r.eigenvalues - r0.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(f_index(r) == f_index(r0));
  }
}

TEST_CASE("property: count_below is monotone in eta") {
  const SpectralResult r = eigensolve(slice_s4(), 16);
  int prev = -1;
  for (double eta = -3.0; eta < r.bracket_limit - 0.1; eta += 0.05) {
    const int c = count_below(r, eta);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev >= 4);
}

TEST_CASE("window too small raises bracket-not-established") {
  const SpectralResult r = eigensolve(slice_s4(), 2);
  CHECK(std::isfinite(r.bracket_limit));
  check_error(ErrorCode::kBracketNotEstablished, [&] { count_below(r, 10.0); });
  CHECK_NOTHROW(f_index(r));
}

TEST_CASE("compose_product closed-form example") {
  SpectralResult sphere = listed({0, 2, 2, 2, 6, 6, 6, 6, 6});
  sphere.bracket_limit = 12.0;
  SpectralResult circle = listed({0, 1, 1, 4, 4, 9, 9, 16, 16});
  circle.bracket_limit = 25.0;
  const ProductSpectrum p = compose_product({sphere, circle}, {0, 1}, 2.0);
  check_sorted_within(p.spectrum.eigenvalues, {-2, -1, -1, 0, 0, 0}, 1e-15);
  CHECK(p.spectrum.neg_count == 3);
  CHECK(p.b1 == 1);
  CHECK(p.spectrum.bracket_limit == doctest::Approx(10.0));
  CHECK(p.spectrum.eigenvalues.maxCoeff() <= 10.0 + 1e-9);
  CHECK(p.spectrum.eigenvectors.size() == 0);

  const ProductSpectrum single = compose_product({circle}, {1}, 0.0);
  CHECK(single.spectrum.eigenvalues == circle.eigenvalues);
  CHECK(single.b1 == 1);

  check_error(ErrorCode::kInvalidArgument, [&] { compose_product({}, {}, 0.0); });
  check_error(ErrorCode::kInvalidArgument, [&] { compose_product({sphere}, {0, 1}, 0.0); });
}

TEST_CASE("compose_product matches direct FEM on a degenerate product") {
  const SurfaceMesh m = icosphere(3);
  const Vec ones = Vec::Ones(m.num_faces());
  const double potential = 2.0;
  SolverOptions dense;
  dense.method = SolverMethod::kDense;
  const SpectralResult lap = eigensolve(assemble_fields(m, ones, Vec::Zero(m.num_faces())), 12, dense);
  const SpectralResult direct = eigensolve(assemble_fields(m, ones, potential * ones), 12, dense);
  SpectralResult point = listed({0.0});
  const ProductSpectrum composed = compose_product({lap, point}, {0, 0}, potential);
  REQUIRE(composed.spectrum.eigenvalues.size() == direct.eigenvalues.size());
  CHECK((composed.spectrum.eigenvalues - direct.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(composed.spectrum.neg_count == direct.neg_count);
}

TEST_CASE("circle factor spectrum and b1") {
  const ProductSpectrum c = circle_factor(256, 1.0, 9);
  check_sorted_within(c.spectrum.eigenvalues, {0, 1, 1, 4, 4, 9, 9, 16, 16}, 2e-3);
  CHECK(c.b1 == 1);
  const ProductSpectrum big = circle_factor(128, 2.0, 3);
  CHECK(big.spectrum.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-3));
  check_error(ErrorCode::kInvalidArgument, [] { circle_factor(2, 1.0, 2); });
  check_error(ErrorCode::kInvalidArgument, [] { circle_factor(16, 0.0, 2); });
}

TEST_CASE("constant potential is required for composition") {
  const auto g = AmbientSpace::gaussian(3, 1.0);
  const auto s = shrinker_sphere(g, std::sqrt(2.0));
  CHECK(constant_potential(*s) == doctest::Approx(2.0).epsilon(1e-12));
  const TorusOfRevolution torus(g, 2.0, 0.7);
  check_error(ErrorCode::kCompositionNotApplicable, [&] { constant_potential(torus); });
}

TEST_CASE("harmonic bases: sphere and torus") {
  const HarmonicBasis sphere = harmonic_basis(slice_s4());
  CHECK(sphere.b1 == 0);
  CHECK(sphere.forms.cols() == 0);

  const auto g = AmbientSpace::gaussian(3, 1.0);
  const TorusOfRevolution torus(g, 2.0, 0.7);
  const SurfaceMesh mesh = torus_grid(32, 16, [&](double u, double v) { return torus.position(u, v); });
  const OperatorAssembly as = assemble_hodge1(mesh, torus);
  const HarmonicBasis h = harmonic_basis(as);
  CHECK(h.b1 == 2);
  CHECK(h.gap_ratio >= 10.0);
  CHECK(h.warnings.empty());
  for (int i = 0; i < h.b1; ++i) {
    CHECK(h.closed_residual[i] < 1e-6);
    CHECK(h.coclosed_residual[i] < 1e-6);
  }
  const Mat gram = h.forms.transpose() * as.hodge1->star1.asDiagonal() * h.forms;
  CHECK((gram - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(h.gram_condition < 1e3);

  // sharp values are tangent to the surface
  for (int f = 0; f < mesh.num_faces(); f += 37) {
    const Vec s = h.sharp(as.mesh, 0, f);
    const auto& t = as.mesh.triangles[f];
    const Vec3 e1 = (as.mesh.positions[t[1]] - as.mesh.positions[t[0]]).head<3>();
    const Vec3 e2 = (as.mesh.positions[t[2]] - as.mesh.positions[t[0]]).head<3>();
    const Vec3 n = e1.cross(e2).normalized();
    CHECK(std::abs(n.dot(s.head<3>())) < 1e-10 * std::max(1.0, s.norm()));
  }
}

TEST_CASE("property: b1 of the torus does not depend on the weight") {
  const SurfaceMesh mesh = torus_grid(24, 12, [](double u, double v) {
    return Vec(Vec3((2 + 0.7 * std::cos(v)) * std::cos(u), (2 + 0.7 * std::cos(v)) * std::sin(u), 0.7 * std::sin(v)));
  });
  for (double s : {0.0, 0.3, 1.0}) {
    Vec w(mesh.num_faces());
    for (int f = 0; f < mesh.num_faces(); ++f) {
      const auto& t = mesh.triangles[f];
      const Vec c = (mesh.positions[t[0]] + mesh.positions[t[1]] + mesh.positions[t[2]]) / 3.0;
      w(f) = std::exp(-s * c.squaredNorm() / 2.0 + s * c(0));
    }
    OperatorAssembly as = assemble_fields(mesh, w, Vec::Zero(mesh.num_faces()));
    as.hodge1 = hodge_fields(mesh, w);
    CHECK(harmonic_basis(as).b1 == 2);
  }
}

TEST_CASE("property: low eigenvalues converge under refinement") {
  const auto cyl = AmbientSpace::sphere_cylinder(2, 1, 1.0);
  const auto s = slice_sphere(cyl);
  const SpectralResult coarse = eigensolve(assemble(attach(icosphere(4), *s), *s), 10);
  const SpectralResult fine = eigensolve(assemble(attach(icosphere(5), *s), *s), 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(fine.eigenvalues[i] - coarse.eigenvalues[i]) < 1e-2 * std::max(1.0, std::abs(fine.eigenvalues[i])));
  }
  CHECK(std::abs(fine.eigenvalues[1] - 1.0) < std::abs(coarse.eigenvalues[1] - 1.0));
}
