#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "fspectra/assembly.hpp"
#include "fspectra/mesh.hpp"
#include "fspectra/random.hpp"

using namespace fspectra;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fspectra_tests";
  fs::create_directories(dir);
  return dir / name;
}

double max_abs(const SpMat& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMat::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

// Clifford torus: the flat square torus of side 2 pi, isometric in R^4.
SurfaceMesh clifford(int n) {
  return torus_grid(n, n, [](double u, double v) {
    Vec p(4);
    p << std::cos(u), std::sin(u), std::cos(v), std::sin(v);
    return p;
  });
}

// Edge values of the closed form du (k = 0) or dv (k = 1) on a torus grid.
Vec coordinate_form(const SurfaceMesh& m, int k) {
  Vec w(m.num_edges());
  for (int e = 0; e < m.num_edges(); ++e) {
    double d = m.params[m.edges[e][1]](k) - m.params[m.edges[e][0]](k);
    d = std::remainder(d, 2 * kPi);
    w(e) = d;
  }
  return w;
}


}  // namespace

TEST_CASE("icosphere counts, Euler characteristic and area") {
  const SurfaceMesh m0 = icosphere(0);
  CHECK(m0.num_vertices() == 12);
  CHECK(m0.num_faces() == 20);
  CHECK(m0.euler_characteristic() == 2);
  const SurfaceMesh m3 = icosphere(3, std::sqrt(2.0));
  CHECK(m3.num_vertices() == 642);
  CHECK(m3.total_area() == doctest::Approx(8 * kPi).epsilon(5e-3));
  const SurfaceMesh m4 = icosphere(4);
  CHECK(m4.num_vertices() == 10 * 256 + 2);
  CHECK(m4.euler_characteristic() == 2);
  for (const auto& p : m4.positions) CHECK(std::abs(p.norm() - 1.0) < 1e-14);
}

TEST_CASE("torus grid counts") {
  const auto flat = [](double u, double v) { return Vec(Eigen::Vector2d(u, v)); };
  auto chart3 = [](double u, double v) {
    return Vec(Vec3((2 + std::cos(v)) * std::cos(u), (2 + std::cos(v)) * std::sin(u), std::sin(v)));
  };
  const SurfaceMesh a = torus_grid(3, 3, chart3);
  CHECK(a.num_vertices() == 9);
  CHECK(a.num_faces() == 18);
  CHECK(a.euler_characteristic() == 0);
  const SurfaceMesh b = torus_grid(4, 3, chart3);
  CHECK(b.num_vertices() == 12);
  CHECK(b.euler_characteristic() == 0);
  check_error(ErrorCode::kInvalidArgument, [&] { torus_grid(2, 5, flat); });
}

TEST_CASE("assembly examples: constants, weighted volume") {
  const auto cyl = AmbientSpace::sphere_cylinder(2, 1, 1.0);
  const auto slice = slice_sphere(cyl);
  const OperatorAssembly as = assemble(attach(icosphere(4), *slice), *slice);
  const Vec one = Vec::Ones(as.mass.rows());
  CHECK(one.dot(as.jacobi() * one) == doctest::Approx(-4 * kPi).epsilon(1e-2));

  const auto g = AmbientSpace::gaussian(3, 1.0);
  const auto shrinker = shrinker_sphere(g, std::sqrt(2.0));
  const OperatorAssembly bs = assemble(attach(icosphere(4), *shrinker), *shrinker);
  const Vec ones = Vec::Ones(bs.mass.rows());
  CHECK(ones.dot(bs.mass * ones) == doctest::Approx(8 * kPi * std::exp(-1.0)).epsilon(1e-2));
  CHECK(bs.weighted_volume() == doctest::Approx(ones.dot(bs.mass * ones)).epsilon(1e-12));
}

TEST_CASE("property: Galerkin symmetry and constants in the stiffness kernel") {
  const auto g = AmbientSpace::gaussian(3, 1.0);
  const TorusOfRevolution torus(g, 2.0, 0.7);
  const SurfaceMesh mesh = torus_grid(24, 12, [&](double u, double v) { return torus.position(u, v); });
  const OperatorAssembly as = assemble(mesh, torus);
  for (const SpMat* m : {&as.mass, &as.stiffness, &as.potential}) {
    CHECK(symmetry_defect(*m) <= 1e-12 * max_abs(*m));
  }
  const Vec row = as.stiffness * Vec::Ones(as.stiffness.cols());
  CHECK(row.cwiseAbs().maxCoeff() <= 1e-12 * max_abs(as.stiffness));
}

TEST_CASE("property: d and delta_f are adjoint in the weighted inner products") {
  const auto g = AmbientSpace::gaussian(3, 1.0);
  const TorusOfRevolution torus(g, 2.0, 0.7);
  const SurfaceMesh mesh = torus_grid(20, 10, [&](double u, double v) { return torus.position(u, v); });
  const OperatorAssembly as = assemble_hodge1(mesh, torus);
  const Hodge1& h = *as.hodge1;
  auto rng = sample_rng(4, 0);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 5; ++trial) {
    Vec u(mesh.num_vertices()), w(mesh.num_edges());
    for (auto& x : u) x = n01(rng);
    for (auto& x : w) x = n01(rng);
    const double lhs = h.inner1(h.d0 * u, w);
    const double rhs = h.inner0(u, h.codifferential(w));
    const double scale = std::sqrt(h.inner1(h.d0 * u, h.d0 * u) * h.inner1(w, w));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
  }
  CHECK((h.d1 * h.d0).norm() == 0.0);
}

TEST_CASE("flat square torus: constant coordinate forms are harmonic") {
  const SurfaceMesh mesh = clifford(32);
  const Vec w = Vec::Ones(mesh.num_faces());
  const Hodge1 h = hodge_fields(mesh, w);
  for (int k = 0; k < 2; ++k) {
    const Vec form = coordinate_form(mesh, k);
    const double norm = std::sqrt(h.inner1(form, form));
    CHECK(h.exterior(form).norm() < 1e-10 * norm);
    CHECK(std::sqrt(h.inner0(h.codifferential(form), h.codifferential(form))) < 1e-10 * norm);
    CHECK((h.laplacian * form).norm() < 1e-10 * norm * max_abs(h.laplacian));
  }
}

TEST_CASE("OFF input: icosahedron, boundary edges, parse errors") {
  save_off(icosphere(0), scratch("ico0.off"));
  std::ifstream src(scratch("ico0.off"));
  std::stringstream buf;
  buf << src.rdbuf();
  const std::string text = buf.str();
  const SurfaceMesh m = parse_off(text);
  CHECK(m.num_vertices() == 12);
  CHECK(m.num_faces() == 20);
  CHECK(m.euler_characteristic() == 2);

  // drop the last face
  std::string open_mesh = text.substr(0, text.rfind("\n3 ") + 1);
  const auto counts = open_mesh.find("12 20");
  REQUIRE(counts != std::string::npos);
  open_mesh.replace(counts, 5, "12 19");
  bool named = false;
  try {
    parse_off(open_mesh);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTopology);
    named = std::string(e.what()).find("edge") != std::string::npos;
  }
  CHECK(named);

  try {
    parse_off("OFF\n3 1 0\n0 0 0\n1 0 x\n0 1 0\n3 0 1 2\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("OFF and CSV round trips") {
  const SurfaceMesh m = icosphere(2);
  save_off(m, scratch("ico2.off"));
  const SurfaceMesh back = load_off(scratch("ico2.off"));
  REQUIRE(back.num_vertices() == m.num_vertices());
  CHECK(back.triangles == m.triangles);
  for (int i = 0; i < m.num_vertices(); ++i) CHECK((back.positions[i] - m.positions[i]).norm() == 0.0);

  Vec spectrum(5);
  spectrum << -2.0, -1.0 / 3.0, std::sqrt(2.0), 1e-300, 6.02214076e23;
  save_csv(spectrum, scratch("spectrum.csv"));
  std::ifstream in(scratch("spectrum.csv"));
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 5);
  const Mat loaded = load_csv(scratch("spectrum.csv"));
  REQUIRE(loaded.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(loaded(i) == spectrum(i));

  Mat table = Mat::Random(4, 3);
  save_csv(table, scratch("table.csv"));
  CHECK(load_csv(scratch("table.csv")) == table);
}

TEST_CASE("coordinate export lists every nonzero") {
  const SurfaceMesh m = icosphere(0);
  const SpMat d0 = coboundary0(m);
  save_coordinate(d0, scratch("d0.txt"));
  std::ifstream in(scratch("d0.txt"));
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("%", 0) == 0);
  int rows = 0;
  double sum = 0.0;
  int r = 0, c = 0;
  double v = 0.0;
  while (in >> r >> c >> v) {
    ++rows;
    sum += v;
    CHECK(d0.coeff(r, c) == v);
  }
  CHECK(rows == d0.nonZeros());
  CHECK(sum == 0.0);
}

TEST_CASE("per-face sample size mismatch is rejected") {
  const SurfaceMesh m = icosphere(1);
  check_error(ErrorCode::kInvalidArgument,
              [&] { assemble_fields(m, Vec::Ones(3), Vec::Zero(m.num_faces())); });
  check_error(ErrorCode::kInvalidArgument, [&] { hodge_fields(m, Vec::Ones(3)); });
}
