#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fspectra/assembly.hpp"
#include "fspectra/immersion.hpp"
#include "fspectra/spectral.hpp"
#include "fspectra/types.hpp"

namespace fspectra {

// Analytic 1-forms ------------------------------------------------------------

/// omega-sharp in R^d and its R^d derivatives along the chart's parameter
/// directions (the columns of ChartJet::tangents).
struct FormJet {
  Vec value;
  Mat derivative;
};

class FormField {
 public:
  virtual ~FormField() = default;
  virtual FormJet jet(const Vec& q) const = 0;
  virtual std::string name() const = 0;
};

/// Unit angular form of the circle factor of a product immersion.
std::shared_ptr<FormField> circle_form(std::shared_ptr<const ProductImmersion> imm);
/// Tangential part of a constant vector; Gaussian (flat) ambients only.
std::shared_ptr<FormField> gradient_form(std::shared_ptr<const Immersion> imm, Vec direction);

/// Geometry plus form value and frame derivatives D_{e_k} omega at q.
struct FramedForm {
  PointGeometry geometry;
  Vec omega;
  Mat d_omega;  // d x m
};
FramedForm framed_form(const Immersion& imm, const FormField& form, const Vec& q);

// Quadrature -----------------------------------------------------------------

/// Parameter points with Riemannian volume weights (no e^{-f}).
struct Quadrature {
  std::vector<Vec> params;
  Vec measure;
};

/// Face barycenters and face areas of the assembly's mesh.
Quadrature mesh_quadrature(const OperatorAssembly& assembly);
/// Tensor quadrature for products of a round 2-sphere (icosphere faces
/// weighted by spherical area), circles (arc midpoints) and slice points.
Quadrature product_quadrature(const ProductImmersion& imm, int subdiv, int segments);

// Pointwise curvature terms ----------------------------------------------------

struct FormPointTerms {
  double omega_sq = 0.0;
  double ii_omega = 0.0;       // sum_k |II(e_k, omega)|^2
  double ii_normal = 0.0;      // sum_k |II(e_k, N)|^2
  double ricf_normal = 0.0;    // Ric_f(N, N)
  double ricf_omega = 0.0;     // Ric_f(omega, omega)
  double curvature = 0.0;      // <R(omega, N) omega, N>
  double a_omega_sq = 0.0;     // |A omega|^2
  double a_sq = 0.0;           // |A|^2
  double hf_a_omega = 0.0;     // H_f <A omega, omega>
  std::optional<double> grad_omega_sq;  // |nabla omega|^2

  double gap() const { return ii_omega + ii_normal * omega_sq + curvature - ricf_normal * omega_sq - ricf_omega; }
  double hypothesis_lhs() const { return ii_omega + ii_normal * omega_sq; }
  double hypothesis_rhs() const { return ricf_normal * omega_sq + ricf_omega - curvature; }
  /// Integrand of the pointwise expansion of sum Q_f(u_ij, u_ij).
  double proof_chain() const;
  /// |nabla omega|^2 + Ric_f of the hypersurface, through the Gauss equation.
  double bochner() const;
};

FormPointTerms form_point_terms(const AmbientSpace& ambient, const PointGeometry& g, const Vec& omega,
                                const Mat* d_omega = nullptr);

// Test functions -----------------------------------------------------------------

struct TestFunctionFamily {
  int d = 0;
  std::vector<std::pair<int, int>> pairs;  // (i, j), i < j
  Mat values;                              // points x pairs
  double lagrange_defect = 0.0;            // max |sum u^2 - |omega|^2|
};

/// u_ij = N_i w_j - N_j w_i for each sample; N must be unit.
TestFunctionFamily wedge_test_functions(const std::vector<Vec>& normals, const std::vector<Vec>& omegas);

/// u^T (S_f - P) u.
double q_form(const OperatorAssembly& assembly, const Vec& u);
/// Q_f on a tensor-product P1 space with constant weight and potential;
/// u is (n_a x n_b).
double kronecker_q_form(const SpMat& k_a, const SpMat& m_a, const SpMat& k_b, const SpMat& m_b, double weight,
                        double potential, const Mat& u);

// Gradient of the wedge test functions ---------------------------------------------

struct WedgeGradientTerms {
  double lhs = 0.0;  // sum_{i<j} |nabla u_ij|^2 from the R^d derivatives
  double rhs = 0.0;  // the same sum expanded through A, II and |nabla omega|
  double residual() const { return std::abs(lhs - rhs); }
};

WedgeGradientTerms wedge_gradient_terms(const AmbientSpace& ambient, const PointGeometry& g, const Vec& omega,
                                        const Mat& d_omega);
/// Requires an analytic immersion.
double wedge_gradient_residual(const Immersion& imm, const FormField& form, const Vec& q);

// Bochner ------------------------------------------------------------------------

struct BochnerReport {
  double integral = 0.0;  // int (|nabla w|^2 + Ric_f(w, w)) e^{-f}
  double norm_sq = 0.0;   // int |w|^2 e^{-f}
  double residual() const { return norm_sq > 0.0 ? std::abs(integral) / norm_sq : 0.0; }
};

/// Oracle route over a quadrature, for analytic forms.
BochnerReport bochner_residual(const Immersion& imm, const FormField& form, const Quadrature& quad);
/// Discrete intrinsic route for a mesh form with constant weight: angle
/// defects for the curvature and face-to-face jumps of the sharp, transported
/// across hinges, for the covariant derivative.
BochnerReport bochner_residual(const OperatorAssembly& assembly, const HarmonicBasis& basis, int form);

// Hypothesis check ----------------------------------------------------------------

enum class CheckStatus { kPass, kFail, kInconclusive, kVacuous };
std::string to_string(CheckStatus s);

struct HypothesisInput {
  std::optional<AmbientSpace> ambient;
  std::vector<PointGeometry> geometry;
  Vec measure;             // dvol * e^{-f}
  std::vector<Mat> omega;  // per point, d x q
  int forms() const { return omega.empty() ? 0 : static_cast<int>(omega.front().cols()); }
};

HypothesisInput hypothesis_input(const OperatorAssembly& assembly, const HarmonicBasis& basis);
HypothesisInput hypothesis_input(const Immersion& imm, const std::vector<std::shared_ptr<FormField>>& forms,
                                 const Quadrature& quad);

struct GapSample {
  std::string label;
  Vec coefficients;
  double lhs = 0.0;
  double rhs = 0.0;  // includes eta * norm_sq
  double norm_sq = 0.0;
  double margin() const { return rhs - lhs; }
  CheckStatus status = CheckStatus::kVacuous;
};

struct GapReport {
  double eta_threshold = 0.0;
  std::uint64_t seed = 0;
  int basis_size = 0;
  int combinations = 0;
  std::vector<GapSample> samples;
  Mat point_gap;  // points x basis forms
  double margin = 0.0;              // smallest margin over the basis forms
  double combination_margin = 0.0;  // smallest margin over unit combinations
  /// Smallest eigenvalue of (RHS - LHS) relative to the weighted Gram
  /// matrix; covers every combination at once.
  double worst_normalized_margin = 0.0;
  CheckStatus status = CheckStatus::kVacuous;
};

inline constexpr double kInconclusiveTolerance = 1e-8;
inline constexpr int kHypothesisCombinations = 64;

GapReport hypothesis_check(const HypothesisInput& input, double eta, std::uint64_t seed = 0,
                           int combinations = kHypothesisCombinations);
GapReport hypothesis_check(const OperatorAssembly& assembly, const HarmonicBasis& basis, double eta,
                           std::uint64_t seed = 0);

// Curvature gap on S^k x R^j ------------------------------------------------------

struct GapDecomposition {
  double x_norm = 0.0;        // |X|
  double x_euclid = 0.0;      // |pi_R X|
  double n_euclid = 0.0;      // |pi_R N|
  double n_dot_x_euclid = 0.0;  // <pi_R N, pi_R X>
};

double cylinder_gap(int k, double lambda, const GapDecomposition& x);
/// The gap assembled from the II, curvature and Ric_f oracles with a frame of
/// the orthogonal complement of N in T_pM.
double definitional_gap(const AmbientSpace& ambient, const Vec& p, const Vec& x, const Vec& n);

struct GapCrossCheck {
  int samples = 0;
  double max_difference = 0.0;
  double max_value = 0.0;  // largest gap among nonzero X
};
GapCrossCheck cylinder_gap_crosscheck(int k, int j, double lambda, int samples, std::uint64_t seed);

// Projective cylinders --------------------------------------------------------------

struct CrossReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double ii_norm = 0.0;       // max | |II(X,X)|^2 - 4|X|^4 |
  double ii_polarized = 0.0;  // <II(X,X),II(Y,Y)> + 2|II(X,Y)|^2 = 4(|X|^2|Y|^2 + 2<X,Y>^2)
  double ii_mixed = 0.0;      // |II(X,Y)|^2 through the sectional numerator
  double frame_sum = 0.0;     // frame-summed form of the above
  double sectional_min = 0.0;
  double sectional_max = 0.0;
  double einstein_constant = 0.0;
  double einstein_residual = 0.0;
};
CrossReport cross_identity_check(const AmbientSpace& ambient, int samples, std::uint64_t seed);

struct CrossGapBound {
  double value = 0.0;        // closed-form expansion of the gap
  double definitional = 0.0; // the same quantity from oracles
  double first_bound = 0.0;
  double bound = 0.0;
  double eta_remainder = 0.0;
  bool bound_holds = true;
  // Equality-case diagnostics (complex family only; NaN otherwise)
  double omega_euclid = 0.0;
  double normal_euclid = 0.0;
  double jn_deviation = 0.0;
};
CrossGapBound cross_gap_bound(const AmbientSpace& ambient, const Vec& p, const Vec& omega, const Vec& n);

// Index bounds ---------------------------------------------------------------------

struct IndexBound {
  long numerator = 0;
  long denominator = 1;
  int ceiling = 0;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};
IndexBound index_lower_bound(int d, int b1);

struct PinchingResult {
  bool pass = false;
  double ratio = 0.0;
  double threshold = 0.0;
  std::string reason;
};
PinchingResult pinching_check(const std::vector<double>& principal_curvatures, int m);

}  // namespace fspectra
