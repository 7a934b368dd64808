#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fspectra/assembly.hpp"
#include "fspectra/types.hpp"

namespace fspectra {

enum class SolverMethod { kAuto, kDense, kShiftInvert };

struct SolverOptions {
  SolverMethod method = SolverMethod::kAuto;
  /// kAuto uses the dense path up to this size.
  int dense_limit = 1200;
  std::uint64_t seed = 0;
  /// Absolute residual target for the iterative path, scaled by max(1, |mu|).
  double tolerance = 1e-10;
  int max_iterations = 500;
  std::optional<double> shift;
};

/// Relative zero threshold for eigenvalue counts.
inline constexpr double kZeroTolerance = 1e-8;

struct SpectralResult {
  Vec eigenvalues;   // ascending
  Mat eigenvectors;  // M-orthonormal columns; empty for composed spectra
  int neg_count = 0;
  int zero_count = 0;
  double threshold = 0.0;  // |mu| <= threshold counts as zero
  /// Every eigenvalue of the operator below this value is in the list.
  double bracket_limit = std::numeric_limits<double>::infinity();
  double max_residual = 0.0;
  double orthonormality_defect = 0.0;
  int iterations = 0;
  std::string method;
};

/// The `count` smallest eigenpairs of A v = mu M v for symmetric A and
/// positive definite M.
SpectralResult solve_generalized(const SpMat& a, const SpMat& m, int count, const SolverOptions& options = {});

/// Spectrum of the Jacobi matrix S_f - P against M_f.
SpectralResult eigensolve(const OperatorAssembly& assembly, int count, const SolverOptions& options = {});

struct CountReport {
  int count = 0;
  double level = 0.0;
  /// Distance from `level` to the nearest computed eigenvalue.
  double distance = 0.0;
};

/// Eigenvalues below `level`, treating those within the zero threshold of
/// `level` as not below. Throws when the window does not reach past `level`.
CountReport count_below_report(const SpectralResult& result, double level);
int count_below(const SpectralResult& result, double eta);
int f_index(const SpectralResult& result);

/// Re-derives neg/zero counts and the threshold from the eigenvalues.
void classify(SpectralResult& result);

// Products -------------------------------------------------------------------

struct ProductSpectrum {
  SpectralResult spectrum;
  int b1 = 0;
};

/// All sums of factor eigenvalues minus the constant potential, with
/// multiplicities, truncated at the bracket the factor windows guarantee.
ProductSpectrum compose_product(const std::vector<SpectralResult>& factor_spectra, const std::vector<int>& factor_b1,
                                double constant_potential);

/// Potential of the immersion sampled on its parameter grid; throws a
/// composition-not-applicable error unless it is constant to 1e-9.
double constant_potential(const Immersion& imm, int resolution = 4);

/// P1 Laplacian spectrum and b1 of a regular n-gon inscribed in the circle of
/// the given radius.
ProductSpectrum circle_factor(int segments, double radius, int count);

// Harmonic forms -------------------------------------------------------------

struct HarmonicBasis {
  Mat forms;               // E x b1, star1-orthonormal edge values
  int b1 = 0;
  Vec closed_residual;     // |d omega| / |omega| per form
  Vec coclosed_residual;   // |delta_f omega| / |omega| per form
  double gram_condition = 1.0;
  Vec eigenvalues;         // computed window of the 1-form Laplacian
  double threshold = 0.0;
  double gap_ratio = std::numeric_limits<double>::infinity();
  std::vector<std::string> warnings;

  /// Sharp of form i at the barycenter of face f, as a vector in R^d.
  Vec sharp(const SurfaceMesh& mesh, int form, int face) const;
  /// Per-vertex averages of the face values of the sharp (V x d).
  Mat vertex_sharp(const SurfaceMesh& mesh, int form) const;
};

HarmonicBasis harmonic_basis(const OperatorAssembly& assembly, int window = 12, const SolverOptions& options = {});

/// Whitney reconstruction of an edge 1-form at the barycenter of a face.
Vec whitney_sharp(const SurfaceMesh& mesh, const Vec& omega, int face);

}  // namespace fspectra
