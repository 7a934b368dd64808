#pragma once

#include <random>
#include <vector>

#include <Eigen/Core>

#include "fspectra/types.hpp"

namespace fspectra {

enum class ProjectiveFamily { kComplex, kQuaternionic };

/// Projective space as the set of rank-one Hermitian projections, realised in
/// the real vector space of Hermitian matrices with inner product
/// <A, B> = Re tr(AB) / 2. With this scaling sectional curvatures lie in
/// [1, 4] and |II(X, X)|^2 = 4 |X|^4.
///
/// Quaternionic matrices are stored in their complex 2x2-block
/// representation, so every computation reduces to complex Hermitian linear
/// algebra; a rank-one quaternionic projection is a rank-two complex one.
class ProjectiveModel {
 public:
  ProjectiveModel(ProjectiveFamily family, int rank);

  ProjectiveFamily family() const { return family_; }
  int rank() const { return rank_; }
  /// Real dimension k (2n or 4p).
  int real_dim() const;
  /// Dimension q of the Hermitian-matrix container.
  int container_dim() const { return static_cast<int>(basis_.size()); }
  /// Einstein constant of the normalised metric (k + 2 or k + 8).
  double einstein_constant() const;

  Eigen::MatrixXcd to_matrix(const Vec& x) const;
  Vec from_matrix(const Eigen::MatrixXcd& m) const;

  /// Projection onto the line spanned by `v`; for the quaternionic family `v`
  /// holds p+1 quaternions as 4-tuples (a, b, c, d).
  Vec point_from_line(const Vec& v) const;
  Vec random_point(std::mt19937_64& rng) const;
  Vec retract(const Vec& x) const;
  double constraint_residual(const Vec& p) const;

  Mat tangent_projector(const Vec& p) const;

  /// Second fundamental form of the embedding by central second differences
  /// along retracted lines, one Richardson level.
  Vec second_fundamental(const Vec& p, const Vec& u, const Vec& v) const;
  Vec second_fundamental_diag(const Vec& p, const Vec& u) const;

  /// Complex structure J on T_p CP^n; throws for the quaternionic family.
  Vec complex_structure(const Vec& p, const Vec& u) const;

  void set_step(double h) { step_ = h; }
  double step() const { return step_; }

 private:
  Vec second_difference_vec(const Vec& p, const Vec& u, double h) const;

  ProjectiveFamily family_;
  int rank_;
  int size_;        // complex matrix size
  int eig_rank_;    // complex rank of a point
  double trace_scale_;
  std::vector<Eigen::MatrixXcd> basis_;
  double step_ = 1e-4;
};

}  // namespace fspectra
