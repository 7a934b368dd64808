#include "fspectra/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "fspectra/assembly.hpp"
#include "fspectra/error.hpp"
#include "fspectra/mesh.hpp"
#include "fspectra/random.hpp"
#include "fspectra/spectral.hpp"
#include "fspectra/theorem.hpp"
#include "fspectra/warnings.hpp"

#ifndef FSPECTRA_VERSION
#define FSPECTRA_VERSION "0.0.0"
#endif

namespace fspectra::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kEigenResidualTol = 1e-8;
constexpr double kOrthonormalityTol = 1e-10;
constexpr double kHarmonicResidualTol = 1e-6;
constexpr double kClosedFormTol = 1e-10;
constexpr double kFiniteDifferenceTol = 1e-5;
constexpr double kWedgeGradientTol = 1e-8;
constexpr double kBochnerTol = 1e-6;
constexpr double kGapTol = 1e-8;
constexpr double kCrossTol = 1e-4;
constexpr double kIINormTol = 1e-5;
constexpr double kSectionalSlack = 1e-3;
constexpr int kIdentityPoints = 100;
constexpr int kAmbientSamples = 20;

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

const char* status(bool ok) { return ok ? "pass" : "fail"; }

bool failing(const json& check) {
  const std::string s = check.at("status").get<std::string>();
  return s == "fail" || s == "inconclusive" || s == "error";
}

class Stopwatch {
 public:
  explicit Stopwatch(json& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& key, F&& body) {
    const auto start = Clock::now();
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      record(key, start);
    } else {
      auto out = body();
      record(key, start);
      return out;
    }
  }

 private:
  void record(const std::string& key, Clock::time_point start) {
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    sink_[key] = sink_.value(key, 0.0) + s;
  }
  json& sink_;
};

SolverOptions solver_options(const SceneConfig& c) {
  SolverOptions o;
  if (c.solver.method == "dense") o.method = SolverMethod::kDense;
  if (c.solver.method == "shift-invert") o.method = SolverMethod::kShiftInvert;
  o.dense_limit = c.solver.dense_limit;
  o.seed = c.solver.seed;
  o.tolerance = c.solver.tolerance;
  return o;
}

json spectrum_json(const SpectralResult& r) {
  return {{"eigenvalues", vec_json(r.eigenvalues)},
          {"neg_count", r.neg_count},
          {"zero_count", r.zero_count},
          {"threshold", r.threshold},
          {"bracket_limit", std::isfinite(r.bracket_limit) ? json(r.bracket_limit) : json("inf")},
          {"max_residual", r.max_residual},
          {"orthonormality_defect", r.orthonormality_defect},
          {"iterations", r.iterations},
          {"method", r.method}};
}

json basis_json(const HarmonicBasis& b) {
  return {{"b1", b.b1},
          {"closed_residual", vec_json(b.closed_residual)},
          {"coclosed_residual", vec_json(b.coclosed_residual)},
          {"gram_condition", b.gram_condition},
          {"eigenvalues", vec_json(b.eigenvalues)},
          {"threshold", b.threshold},
          {"gap_ratio", std::isfinite(b.gap_ratio) ? json(b.gap_ratio) : json("inf")},
          {"warnings", b.warnings}};
}

json ambient_json(const AmbientSpace& a, int m) {
  json j = {{"name", a.name()},
            {"dim", a.dim()},
            {"embed_dim", a.embed_dim()},
            {"lambda", a.lambda()},
            {"compact_dim", a.compact_dim()},
            {"euclidean_dim", a.euclidean_dim()},
            {"closed_form", a.closed_form()}};
  if (auto s = a.stated_embed_dim(m)) j["stated_embed_dim"] = *s;
  return j;
}

json mesh_json(const SurfaceMesh& m) {
  return {{"vertices", m.num_vertices()},
          {"edges", m.num_edges()},
          {"faces", m.num_faces()},
          {"euler_characteristic", m.euler_characteristic()},
          {"area", m.total_area()}};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::kUnsupported, msg);
}

bool is_gaussian3(const AmbientSpace& a) { return a.kind() == AmbientKind::kGaussianEuclidean && a.dim() == 3; }

Vec3 chart_position(const ChartSpec& chart, const Vec& q) {
  if (chart.family == "ellipsoid") return Vec3(chart.a * q(0), chart.b * q(1), chart.c * q(2));
  return chart.radius * Vec3(q(0), q(1), q(2));
}

// Everything the checks need, for either pipeline.
struct Built {
  std::shared_ptr<const Immersion> imm;
  std::shared_ptr<const ProductImmersion> product;
  std::optional<OperatorAssembly> assembly;
  SpectralResult spectrum;
  int b1 = 0;
  std::optional<HarmonicBasis> basis;
  std::vector<std::shared_ptr<FormField>> analytic_forms;  // harmonic forms with closed-form jets
  json pipeline = json::object();
};

std::vector<Vec> identity_points(const Immersion& imm) {
  std::vector<Vec> all = imm.sample_params(4);
  if (static_cast<int>(all.size()) <= kIdentityPoints) return all;
  std::vector<Vec> out;
  const double stride = static_cast<double>(all.size()) / kIdentityPoints;
  for (int i = 0; i < kIdentityPoints; ++i) out.push_back(all[static_cast<std::size_t>(i * stride)]);
  return out;
}

Built build_surface(const SceneConfig& c, const AmbientSpace& a, const SolverOptions& opts, Stopwatch& clock) {
  Built b;
  const std::string& key = c.immersion.key;
  SurfaceMesh base;
  if (key == "shrinker-sphere") {
    require(is_gaussian3(a), "shrinker-sphere needs the ambient gaussian:3");
    const double r = c.immersion.radius.value_or(solve_radius(RadiusFamily::sphere_in_gaussian(3), a.lambda()));
    b.product = shrinker_sphere(a, r);
    b.imm = b.product;
    b.pipeline["radius"] = r;
    base = icosphere(c.mesh.subdiv);
  } else if (key == "slice-sphere") {
    require(a.kind() == AmbientKind::kSphereCylinder && a.compact_dim() == 2 && a.euclidean_dim() == 1,
            "slice-sphere needs the ambient sphere-cylinder:k=2,j=1");
    b.product = slice_sphere(a, c.immersion.t0);
    b.imm = b.product;
    base = icosphere(c.mesh.subdiv);
  } else if (key == "torus-of-revolution") {
    require(is_gaussian3(a), "torus-of-revolution needs the ambient gaussian:3");
    auto torus = std::make_shared<TorusOfRevolution>(a, c.immersion.major, c.immersion.minor);
    b.imm = torus;
    base = torus_grid(c.mesh.n_u, c.mesh.n_v, [&](double u, double v) { return torus->position(u, v); });
  } else {
    require(is_gaussian3(a), "user charts need the ambient gaussian:3");
    std::filesystem::path path = c.immersion.off;
    if (path.is_relative()) path = c.base_dir / path;
    base = load_off(path);
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : base.positions) centroid += p.head<3>();
    centroid /= std::max(1, base.num_vertices());
    base.domain = ParamDomain::kUnitSphere;
    for (int i = 0; i < base.num_vertices(); ++i) {
      const Vec3 d = base.positions[i].head<3>() - centroid;
      if (d.norm() == 0.0) throw Error(ErrorCode::kDegenerateImmersion, "OFF vertex at the centroid");
      base.params[i] = d.normalized();
    }
    const ChartSpec chart = c.immersion.chart;
    b.imm = std::make_shared<ChartImmersion>(
        a, ParamDomain::kUnitSphere, [chart](const Vec& q) { return chart_position(chart, q); },
        "user-chart(" + chart.family + ")");
  }

  const SurfaceMesh mesh = attach(base, *b.imm);
  b.pipeline["mesh"] = mesh_json(mesh);
  b.assembly = clock.time("assembly", [&] { return assemble_hodge1(mesh, *b.imm); });
  b.pipeline["symmetry_defect"] = symmetry_defect(b.assembly->jacobi());
  b.pipeline["weighted_volume"] = b.assembly->weighted_volume();
  b.pipeline["barycentric_dual"] = b.assembly->hodge1->barycentric_dual;
  b.spectrum = clock.time("eigensolve", [&] { return eigensolve(*b.assembly, c.solver.eigen_count, opts); });
  b.basis = clock.time("hodge", [&] { return harmonic_basis(*b.assembly, c.solver.hodge_window, opts); });
  b.b1 = b.basis->b1;
  return b;
}

Built build_product(const SceneConfig& c, const AmbientSpace& a, const SolverOptions& opts, Stopwatch& clock) {
  require(a.kind() == AmbientKind::kSphereCylinder && a.compact_dim() == 2 && a.euclidean_dim() == 2,
          "product(sphere, circle) needs the ambient sphere-cylinder:k=2,j=2");
  Built b;
  const double r = c.immersion.radius.value_or(solve_radius(RadiusFamily::sphere_in_gaussian(2), a.lambda()));
  b.product = sphere_round_product(a, r);
  b.imm = b.product;
  b.pipeline["circle_radius"] = r;

  const SurfaceMesh sphere = icosphere(c.mesh.subdiv, a.sphere_radius());
  OperatorAssembly factor = clock.time("assembly", [&] {
    const Vec w = Vec::Ones(sphere.num_faces());
    OperatorAssembly f = assemble_fields(sphere, w, Vec::Zero(sphere.num_faces()));
    f.hodge1 = hodge_fields(sphere, w);
    return f;
  });
  const SpectralResult sphere_spec =
      clock.time("eigensolve", [&] { return solve_generalized(factor.stiffness, factor.mass, c.solver.eigen_count, opts); });
  const HarmonicBasis sphere_basis =
      clock.time("hodge", [&] { return harmonic_basis(factor, c.solver.hodge_window, opts); });
  const ProductSpectrum circle = circle_factor(c.mesh.segments, r, c.solver.eigen_count);
  const double potential = constant_potential(*b.product);
  const ProductSpectrum composed = compose_product({sphere_spec, circle.spectrum}, {sphere_basis.b1, circle.b1}, potential);

  b.spectrum = composed.spectrum;
  b.b1 = composed.b1;
  b.analytic_forms.push_back(circle_form(b.product));
  b.pipeline["constant_potential"] = potential;
  b.pipeline["factors"] = json::array(
      {{{"name", "sphere"}, {"mesh", mesh_json(sphere)}, {"spectrum", spectrum_json(sphere_spec)}, {"harmonic", basis_json(sphere_basis)}},
       {{"name", "circle"}, {"segments", c.mesh.segments}, {"spectrum", spectrum_json(circle.spectrum)}, {"b1", circle.b1}}});
  return b;
}

json check_index(const SceneConfig& c, const Built& b) {
  json j;
  const CountReport rep = count_below_report(b.spectrum, 0.0);
  j["ind_f"] = rep.count;
  j["distance_to_zero"] = rep.distance;
  bool ok = true;
  if (b.spectrum.eigenvectors.size() > 0) {
    j["residual_ok"] = b.spectrum.max_residual < kEigenResidualTol;
    j["orthonormality_ok"] = b.spectrum.orthonormality_defect < kOrthonormalityTol;
    ok = j["residual_ok"].get<bool>() && j["orthonormality_ok"].get<bool>();
  }
  if (c.expect.index) {
    j["expected"] = *c.expect.index;
    ok = ok && rep.count == *c.expect.index;
  }
  j["status"] = status(ok);
  return j;
}

json check_betti(const SceneConfig& c, const Built& b) {
  json j;
  j["b1"] = b.b1;
  bool ok = true;
  if (b.basis) {
    double worst = 0.0;
    if (b.basis->b1 > 0) worst = std::max(b.basis->closed_residual.maxCoeff(), b.basis->coclosed_residual.maxCoeff());
    j["max_residual"] = worst;
    ok = worst < kHarmonicResidualTol;
  }
  if (c.expect.b1) {
    j["expected"] = *c.expect.b1;
    ok = ok && b.b1 == *c.expect.b1;
  }
  j["status"] = status(ok);
  return j;
}

json bound_json(const AmbientSpace& a, const Built& b, int ind_f) {
  const double tol = b.imm->analytic() ? kWedgeGradientTol : kFiniteDifferenceTol;
  const double fmin = f_minimality_residual(*b.imm);
  const int d = a.embed_dim();
  const IndexBound ib = index_lower_bound(d, b.b1);
  json j = {{"d", d},
            {"b1", b.b1},
            {"ind_f", ind_f},
            {"numerator", ib.numerator},
            {"denominator", ib.denominator},
            {"value", ib.value()},
            {"ceiling", ib.ceiling},
            {"f_minimality_residual", fmin},
            {"f_minimality_tolerance", tol},
            {"applicable", fmin < tol},
            {"bound_satisfied", ind_f >= ib.ceiling}};
  if (auto s = a.stated_embed_dim(b.imm->dim())) {
    const IndexBound sb = index_lower_bound(*s, b.b1);
    j["stated"] = {{"d", *s}, {"ceiling", sb.ceiling}, {"value", sb.value()}, {"bound_satisfied", ind_f >= sb.ceiling}};
  }
  return j;
}

json check_hypothesis(const SceneConfig& c, const AmbientSpace& a, const Built& b, std::uint64_t seed) {
  HypothesisInput input;
  if (b.assembly) {
    input = hypothesis_input(*b.assembly, *b.basis);
  } else {
    const Quadrature quad =
        product_quadrature(*b.product, c.hypothesis.quadrature_subdiv, c.hypothesis.quadrature_segments);
    input = hypothesis_input(*b.imm, b.analytic_forms, quad);
  }
  const GapReport rep = hypothesis_check(input, c.hypothesis.eta, seed, c.hypothesis.combinations);
  json j = {{"eta", rep.eta_threshold},
            {"seed", rep.seed},
            {"basis_size", rep.basis_size},
            {"combinations", rep.combinations},
            {"sampling", "each basis form plus seeded random unit combinations"},
            {"margin", rep.margin},
            {"combination_margin", rep.combination_margin},
            {"worst_normalized_margin", rep.worst_normalized_margin},
            {"inconclusive_tolerance", kInconclusiveTolerance},
            {"status", to_string(rep.status)}};
  json samples = json::array();
  for (const auto& s : rep.samples) {
    samples.push_back({{"label", s.label},
                       {"lhs", s.lhs},
                       {"rhs", s.rhs},
                       {"norm_sq", s.norm_sq},
                       {"margin", s.margin()},
                       {"status", to_string(s.status)}});
  }
  j["samples"] = samples;
  if (rep.status == CheckStatus::kPass) {
    const int needed = index_lower_bound(a.embed_dim(), rep.basis_size).ceiling;
    const int count = count_below(b.spectrum, c.hypothesis.eta);
    j["conclusion"] = {{"count_below_eta", count}, {"required", needed}, {"holds", count >= needed}};
    if (count < needed) j["status"] = "fail";
  }
  return j;
}

json soliton_json(const AmbientSpace& a, const SolitonReport& r, bool& ok) {
  const double tol = a.closed_form() ? kClosedFormTol : kFiniteDifferenceTol;
  const double geom_tol = a.closed_form() ? kClosedFormTol : kCrossTol;
  const double geom = std::max({r.projector_residual, r.gauss_residual, r.constraint_residual, r.symmetry_residual});
  ok = r.soliton_residual < tol && geom < geom_tol;
  return {{"samples", r.samples},
          {"soliton_residual", r.soliton_residual},
          {"projector_residual", r.projector_residual},
          {"gauss_residual", r.gauss_residual},
          {"constraint_residual", r.constraint_residual},
          {"symmetry_residual", r.symmetry_residual},
          {"soliton_tolerance", tol},
          {"geometry_tolerance", geom_tol},
          {"status", status(ok)}};
}

json check_identities(const SceneConfig& c, const AmbientSpace& a, const Built& b, std::uint64_t seed) {
  json j;
  bool ok = true;
  bool part = true;
  j["ambient"] = soliton_json(a, ambient_report(a, kAmbientSamples, seed), part);
  ok = ok && part;

  std::shared_ptr<FormField> form;
  if (!b.analytic_forms.empty()) {
    form = b.analytic_forms.front();
  } else if (a.kind() == AmbientKind::kGaussianEuclidean && b.imm->analytic()) {
    form = gradient_form(b.imm, Vec3(0.3, -0.5, 0.8).normalized());
  }
  if (!b.imm->analytic()) {
    j["wedge_gradient"] = {{"status", "skipped"}, {"reason", "unsupported for user chart"}};
  } else if (!form) {
    j["wedge_gradient"] = {{"status", "skipped"}, {"reason", "no analytic 1-form for this immersion"}};
  } else {
    double worst = 0.0;
    const auto points = identity_points(*b.imm);
    for (const auto& q : points) worst = std::max(worst, wedge_gradient_residual(*b.imm, *form, q));
    part = worst < kWedgeGradientTol;
    ok = ok && part;
    j["wedge_gradient"] = {{"form", form->name()},
                      {"points", points.size()},
                      {"max_residual", worst},
                      {"tolerance", kWedgeGradientTol},
                      {"status", status(part)}};
  }

  json bochner = json::array();
  if (!b.analytic_forms.empty()) {
    const Quadrature quad =
        product_quadrature(*b.product, c.hypothesis.quadrature_subdiv, c.hypothesis.quadrature_segments);
    for (const auto& f : b.analytic_forms) {
      const BochnerReport r = bochner_residual(*b.imm, *f, quad);
      part = r.residual() < kBochnerTol;
      ok = ok && part;
      bochner.push_back({{"form", f->name()},
                         {"route", "oracle"},
                         {"integral", r.integral},
                         {"norm_sq", r.norm_sq},
                         {"residual", r.residual()},
                         {"status", status(part)}});
    }
  } else if (b.basis) {
    for (int i = 0; i < b.basis->b1; ++i) {
      try {
        const BochnerReport r = bochner_residual(*b.assembly, *b.basis, i);
        part = r.residual() < kBochnerTol;
        ok = ok && part;
        bochner.push_back({{"form", i},
                           {"route", "intrinsic"},
                           {"integral", r.integral},
                           {"norm_sq", r.norm_sq},
                           {"residual", r.residual()},
                           {"status", status(part)}});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kUnsupported) throw;
        bochner.push_back({{"form", i}, {"status", "skipped"}, {"reason", e.what()}});
      }
    }
  }
  j["bochner"] = bochner;
  j["status"] = status(ok);
  return j;
}

json gap_projective(const AmbientSpace& a, int samples, std::uint64_t seed) {
  double worst_diff = 0.0;
  bool holds = true;
  for (int s = 0; s < samples; ++s) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(s));
    const Vec p = a.random_point(rng);
    const Vec n = a.random_tangent(p, rng).normalized();
    Vec w = a.random_tangent(p, rng);
    w -= w.dot(n) * n;
    const CrossGapBound g = cross_gap_bound(a, p, w, n);
    worst_diff = std::max(worst_diff, std::abs(g.value - g.definitional) / std::max(1.0, std::abs(g.value)));
    holds = holds && g.bound_holds;
  }
  const bool ok = holds && worst_diff < kCrossTol;
  return {{"samples", samples},
          {"max_relative_difference", worst_diff},
          {"bound_holds", holds},
          {"status", status(ok)}};
}

json check_gap(const AmbientSpace& a, std::uint64_t seed) {
  if (a.kind() == AmbientKind::kSphereCylinder) {
    const GapCrossCheck g = cylinder_gap_crosscheck(a.compact_dim(), a.euclidean_dim(), a.lambda(), kIdentityPoints, seed);
    const bool strict = a.compact_dim() >= 3;
    const bool ok = g.max_difference < kGapTol && (!strict || g.max_value < 0.0);
    return {{"samples", g.samples},
            {"max_difference", g.max_difference},
            {"max_value", g.max_value},
            {"tolerance", kGapTol},
            {"strict_negativity_required", strict},
            {"status", status(ok)}};
  }
  if (a.kind() == AmbientKind::kProjectiveCylinder) return gap_projective(a, kAmbientSamples, seed);
  return {{"status", "not-applicable"}, {"reason", "flat ambient"}};
}

void write_artifacts(const std::filesystem::path& out, const Built& b, json& report) {
  const std::filesystem::path dir = out.parent_path();
  const std::string stem = out.stem().string();
  json files = json::array();
  auto emit = [&](const std::string& suffix, const auto& values) {
    const std::string name = stem + suffix;
    save_csv(values, dir / name);
    files.push_back(name);
  };
  emit(".spectrum.csv", b.spectrum.eigenvalues);
  if (b.basis && b.basis->b1 > 0) {
    emit(".harmonic_edges.csv", b.basis->forms);
    const SurfaceMesh& mesh = b.assembly->mesh;
    const int d = static_cast<int>(mesh.positions.front().size());
    Mat vertex(mesh.num_vertices(), d * b.basis->b1);
    for (int i = 0; i < b.basis->b1; ++i) vertex.middleCols(i * d, d) = b.basis->vertex_sharp(mesh, i);
    emit(".harmonic_vertices.csv", vertex);
  }
  report["artifacts"] = files;
}

}  // namespace

std::string version() { return FSPECTRA_VERSION; }

RunResult run_scene(SceneConfig config, const RunOptions& options) {
  if (options.seed) config.solver.seed = *options.seed;
  std::vector<std::string> warnings;
  auto previous = set_warning_handler([&](std::string_view w) { warnings.emplace_back(w); });
  struct Restore {
    WarningHandler h;
    ~Restore() { set_warning_handler(std::move(h)); }
  } restore{previous};

  json timings = json::object();
  Stopwatch clock(timings);
  const auto start = Clock::now();

  const AmbientSpace ambient = parse_ambient(config.ambient);
  const SolverOptions opts = solver_options(config);
  const std::uint64_t seed = config.solver.seed;
  const bool product = config.immersion.key == "product(sphere, circle)";
  Built b = product ? build_product(config, ambient, opts, clock) : build_surface(config, ambient, opts, clock);

  json report;
  report["tool"] = {{"name", "fspectra"}, {"version", version()}};
  report["config"] = to_json(config);
  report["ambient"] = ambient_json(ambient, b.imm->dim());
  report["immersion"] = {{"name", b.imm->name()}, {"analytic", b.imm->analytic()}, {"dim", b.imm->dim()}};
  report["pipeline"] = b.pipeline;
  report["pipeline"]["composed"] = product;
  report["spectrum"] = spectrum_json(b.spectrum);
  if (b.basis) report["harmonic"] = basis_json(*b.basis);

  const int ind_f = f_index(b.spectrum);
  report["ind_f"] = ind_f;
  report["b1"] = b.b1;
  report["bound"] = bound_json(ambient, b, ind_f);

  json checks = json::object();
  auto wants = [&](const std::string& name) {
    return std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    if (!wants(name)) return;
    try {
      checks[name] = clock.time("check_" + name, body);
    } catch (const Error& e) {
      checks[name] = {{"status", "error"}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
  };
  guarded("index", [&] { return check_index(config, b); });
  guarded("betti", [&] { return check_betti(config, b); });
  guarded("bound", [&] {
    json j = report["bound"];
    if (!j["applicable"].get<bool>()) {
      j["status"] = "not-applicable";
      j["reason"] = "hypersurface is not f-minimal";
    } else {
      j["status"] = status(j["bound_satisfied"].get<bool>());
    }
    return j;
  });
  guarded("hypothesis", [&] { return check_hypothesis(config, ambient, b, seed); });
  guarded("identities", [&] { return check_identities(config, ambient, b, seed); });
  guarded("gap", [&] { return check_gap(ambient, seed); });
  report["checks"] = checks;

  bool passed = true;
  for (const auto& [name, check] : checks.items()) passed = passed && !failing(check);
  report["passed"] = passed;
  report["warnings"] = warnings;
  if (options.out) write_artifacts(*options.out, b, report);
  timings["total"] = std::chrono::duration<double>(Clock::now() - start).count();
  if (options.timings) report["timings"] = timings;
  return {report, passed};
}

RunResult identities(const std::string& spec, int samples, std::uint64_t seed) {
  if (samples <= 0) throw Error(ErrorCode::kInvalidArgument, "samples must be positive");
  const AmbientSpace a = parse_ambient(spec);
  json report;
  report["tool"] = {{"name", "fspectra"}, {"version", version()}};
  report["ambient"] = ambient_json(a, a.dim() - 1);
  report["samples"] = samples;
  report["seed"] = seed;
  bool ok = true;
  report["soliton"] = soliton_json(a, ambient_report(a, samples, seed), ok);
  if (a.kind() == AmbientKind::kProjectiveCylinder) {
    const CrossReport r = cross_identity_check(a, samples, seed);
    const bool cross_ok = r.ii_norm < kIINormTol && r.ii_polarized < kCrossTol && r.ii_mixed < kCrossTol && r.frame_sum < kCrossTol &&
                          r.sectional_min >= 1.0 - kSectionalSlack && r.sectional_max <= 4.0 + kSectionalSlack &&
                          r.einstein_residual < kCrossTol;
    report["cross"] = {{"ii_norm", r.ii_norm},
                       {"ii_polarized", r.ii_polarized},
                       {"ii_mixed", r.ii_mixed},
                       {"frame_sum", r.frame_sum},
                       {"sectional_min", r.sectional_min},
                       {"sectional_max", r.sectional_max},
                       {"einstein_constant", r.einstein_constant},
                       {"einstein_residual", r.einstein_residual},
                       {"status", status(cross_ok)}};
    ok = ok && cross_ok;
  }
  report["passed"] = ok;
  return {report, ok};
}

}  // namespace fspectra::cli
