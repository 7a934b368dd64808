#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>

#include "fspectra/projective.hpp"
#include "fspectra/types.hpp"

namespace fspectra {

enum class AmbientKind { kGaussianEuclidean, kSphereCylinder, kProjectiveCylinder };

/// A weighted manifold M_f embedded in R^d as a product (compact factor) x R^j
/// with weight f = lambda |t|^2 / 2 on the Euclidean coordinates t. The
/// compact block comes first in R^d coordinates, the j Euclidean ones last.
///
/// Immutable after construction; every oracle is a pure function of its
/// arguments and may be called concurrently.
class AmbientSpace {
 public:
  static AmbientSpace gaussian(int n, double lambda);
  static AmbientSpace sphere_cylinder(int k, int j, double lambda);
  /// Lambda is forced to the Einstein constant of the projective factor.
  static AmbientSpace projective_cylinder(ProjectiveFamily family, int rank, int j);

  AmbientKind kind() const { return kind_; }
  std::string name() const;

  /// m + 1
  int dim() const { return compact_dim_ + euclidean_dim_; }
  /// d
  int embed_dim() const { return compact_block_ + euclidean_dim_; }
  double lambda() const { return lambda_; }
  /// k: dimension of the sphere or projective factor, 0 for Gaussian space.
  int compact_dim() const { return compact_dim_; }
  /// Number of leading R^d coordinates carrying the compact factor.
  int compact_block() const { return compact_block_; }
  int euclidean_dim() const { return euclidean_dim_; }
  double sphere_radius() const { return sphere_radius_; }
  bool closed_form() const { return kind_ != AmbientKind::kProjectiveCylinder; }
  const ProjectiveModel* projective() const { return projective_.get(); }
  /// Embedding dimension from the quoted closed-form count for projective cylinders
  /// for a hypersurface of dimension m; differs from embed_dim() for CP^n.
  std::optional<int> stated_embed_dim(int m) const;

  double weight(const Vec& p) const;
  Vec weight_gradient(const Vec& p) const;
  double weight_hessian(const Vec& p, const Vec& u, const Vec& v) const;

  Vec retract(const Vec& x) const;
  double constraint_residual(const Vec& p) const;
  Mat tangent_projector(const Vec& p) const;
  /// Orthonormal basis of T_pM as columns (d x (m+1)).
  Mat tangent_frame(const Vec& p) const;
  Vec random_point(std::mt19937_64& rng) const;
  Vec random_tangent(const Vec& p, std::mt19937_64& rng) const;

  Vec compact_part(const Vec& v) const;
  Vec euclidean_part(const Vec& v) const;

  /// Second fundamental form of M in R^d.
  Vec second_fundamental(const Vec& p, const Vec& u, const Vec& v) const;
  /// <R(x, y) x, y>, positive on 2-planes of a round sphere. Inputs that are
  /// not tangent are projected and a warning is emitted.
  double sectional_numerator(const Vec& p, const Vec& x, const Vec& y) const;
  /// Same quantity from the Gauss equation and the II oracle.
  double sectional_numerator_gauss(const Vec& p, const Vec& x, const Vec& y) const;
  double ricci(const Vec& p, const Vec& u, const Vec& v) const;
  /// Bakry-Emery tensor Ric + Hess f.
  double ricci_f(const Vec& p, const Vec& u, const Vec& v) const;

 private:
  AmbientSpace() = default;
  Vec tangent_or_warn(const Vec& p, const Vec& v) const;

  AmbientKind kind_ = AmbientKind::kGaussianEuclidean;
  double lambda_ = 1.0;
  int compact_dim_ = 0;
  int compact_block_ = 0;
  int euclidean_dim_ = 0;
  double sphere_radius_ = 0.0;
  std::shared_ptr<const ProjectiveModel> projective_;
};

struct SolitonReport {
  int samples = 0;
  double soliton_residual = 0.0;    // max |Ric_f(u,v) - lambda g(u,v)|
  double projector_residual = 0.0;  // max |P^2 - P| + |P - P^T| + |rank - (m+1)|
  double gauss_residual = 0.0;      // Riemann oracle vs Gauss equation
  double constraint_residual = 0.0;
  double symmetry_residual = 0.0;
};

SolitonReport ambient_report(const AmbientSpace& ambient, int samples, std::uint64_t seed);

}  // namespace fspectra
