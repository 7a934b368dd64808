#include <cmath>

#include <Eigen/Dense>

#include "fspectra/error.hpp"
#include "fspectra/parallel.hpp"
#include "fspectra/random.hpp"
#include "fspectra/theorem.hpp"

namespace fspectra {
namespace {

struct PointBlocks {
  Mat lhs, rhs, gram;
};

PointBlocks point_blocks(const AmbientSpace& ambient, const PointGeometry& g, const Mat& omega) {
  const Eigen::Index q = omega.cols();
  const Vec& p = g.position;
  const Vec& n = g.normal;
  const Eigen::Index m = g.frame.cols();
  const Eigen::Index d = p.size();
  Mat ii(d * m, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) ii.block(k * d, i, d, 1) = ambient.second_fundamental(p, g.frame.col(k), omega.col(i));
  }
  double ii_normal = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) ii_normal += ambient.second_fundamental(p, g.frame.col(k), n).squaredNorm();
  const double ricf_n = ambient.ricci_f(p, n, n);
  Vec curv(q);
  for (Eigen::Index i = 0; i < q; ++i) curv[i] = ambient.sectional_numerator(p, omega.col(i), n);

  PointBlocks b;
  b.gram = omega.transpose() * omega;
  b.lhs = ii.transpose() * ii + ii_normal * b.gram;
  b.rhs = ricf_n * b.gram;
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = i; j < q; ++j) {
      double r = ambient.ricci_f(p, omega.col(i), omega.col(j));
      if (i == j) {
        r -= curv[i];
      } else {
        r -= 0.5 * (ambient.sectional_numerator(p, omega.col(i) + omega.col(j), n) - curv[i] - curv[j]);
      }
      b.rhs(i, j) += r;
      if (i != j) b.rhs(j, i) += r;
    }
  }
  return b;
}

CheckStatus classify_margin(const GapSample& s) {
  const double tol = kInconclusiveTolerance * (std::abs(s.lhs) + std::abs(s.rhs) + s.norm_sq);
  if (s.margin() > tol) return CheckStatus::kPass;
  if (s.margin() < -tol) return CheckStatus::kFail;
  return CheckStatus::kInconclusive;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInconclusive: return "inconclusive";
    case CheckStatus::kVacuous: return "vacuous";
  }
  return "unknown";
}

HypothesisInput hypothesis_input(const OperatorAssembly& assembly, const HarmonicBasis& basis) {
  if (!assembly.ambient || assembly.face_geometry.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "assembly carries no immersion geometry");
  }
  HypothesisInput in;
  in.ambient = assembly.ambient;
  in.geometry = assembly.face_geometry;
  const int nf = assembly.mesh.num_faces();
  in.measure = assembly.face_areas().cwiseProduct(assembly.face_weight);
  in.omega.resize(static_cast<std::size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    const Mat& e = in.geometry[static_cast<std::size_t>(f)].frame;
    Mat w(e.rows(), basis.b1);
    for (int i = 0; i < basis.b1; ++i) w.col(i) = e * (e.transpose() * basis.sharp(assembly.mesh, i, f));
    in.omega[static_cast<std::size_t>(f)] = w;
  }
  return in;
}

HypothesisInput hypothesis_input(const Immersion& imm, const std::vector<std::shared_ptr<FormField>>& forms,
                                 const Quadrature& quad) {
  HypothesisInput in;
  in.ambient = imm.ambient();
  const std::size_t n = quad.params.size();
  in.geometry.resize(n);
  in.omega.resize(n);
  in.measure.resize(static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t i) {
    in.geometry[i] = point_geometry(imm, quad.params[i]);
    Mat w(imm.ambient().embed_dim(), static_cast<Eigen::Index>(forms.size()));
    for (std::size_t k = 0; k < forms.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = forms[k]->jet(quad.params[i]).value;
    in.omega[i] = w;
    in.measure[static_cast<Eigen::Index>(i)] = quad.measure[static_cast<Eigen::Index>(i)] * std::exp(-in.geometry[i].f_value);
  });
  return in;
}

GapReport hypothesis_check(const HypothesisInput& input, double eta, std::uint64_t seed, int combinations) {
  GapReport rep;
  rep.eta_threshold = eta;
  rep.seed = seed;
  const int q = input.forms();
  rep.basis_size = q;
  if (q == 0) {
    rep.status = CheckStatus::kVacuous;
    rep.margin = std::numeric_limits<double>::quiet_NaN();
    rep.combination_margin = rep.margin;
    rep.worst_normalized_margin = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  if (!input.ambient) throw Error(ErrorCode::kInvalidArgument, "hypothesis input has no ambient");
  const std::size_t n = input.geometry.size();
  std::vector<PointBlocks> blocks(n);
  parallel_for(n, [&](std::size_t i) { blocks[i] = point_blocks(*input.ambient, input.geometry[i], input.omega[i]); });

  Mat lhs = Mat::Zero(q, q), rhs = Mat::Zero(q, q), gram = Mat::Zero(q, q);
  rep.point_gap.resize(static_cast<Eigen::Index>(n), q);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = input.measure[static_cast<Eigen::Index>(i)];
    lhs += w * blocks[i].lhs;
    rhs += w * blocks[i].rhs;
    gram += w * blocks[i].gram;
    rep.point_gap.row(static_cast<Eigen::Index>(i)) = (blocks[i].lhs - blocks[i].rhs).diagonal().transpose();
  }
  const Mat rhs_eta = rhs + eta * gram;

  auto make = [&](std::string label, const Vec& c) {
    GapSample s;
    s.label = std::move(label);
    s.coefficients = c;
    s.lhs = c.dot(lhs * c);
    s.rhs = c.dot(rhs_eta * c);
    s.norm_sq = c.dot(gram * c);
    s.status = classify_margin(s);
    return s;
  };
  for (int i = 0; i < q; ++i) rep.samples.push_back(make("basis " + std::to_string(i), Vec::Unit(q, i)));
  for (int k = 0; k < combinations; ++k) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(k));
    Vec c = gaussian_vector(rng, q);
    c /= std::sqrt(c.dot(gram * c));
    rep.samples.push_back(make("combination " + std::to_string(k), c));
  }
  rep.combinations = combinations;

  rep.margin = std::numeric_limits<double>::infinity();
  rep.combination_margin = std::numeric_limits<double>::infinity();
  bool fail = false, unsure = false;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const GapSample& s = rep.samples[i];
    double& slot = i < static_cast<std::size_t>(q) ? rep.margin : rep.combination_margin;
    slot = std::min(slot, s.margin());
    fail = fail || s.status == CheckStatus::kFail;
    unsure = unsure || s.status == CheckStatus::kInconclusive;
  }
  rep.status = fail ? CheckStatus::kFail : unsure ? CheckStatus::kInconclusive : CheckStatus::kPass;

  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(0.5 * (rhs_eta - lhs + (rhs_eta - lhs).transpose()), gram);
  rep.worst_normalized_margin = ges.eigenvalues().minCoeff();
  return rep;
}

GapReport hypothesis_check(const OperatorAssembly& assembly, const HarmonicBasis& basis, double eta,
                           std::uint64_t seed) {
  return hypothesis_check(hypothesis_input(assembly, basis), eta, seed);
}

}  // namespace fspectra
