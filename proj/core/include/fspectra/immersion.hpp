#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fspectra/ambient.hpp"
#include "fspectra/types.hpp"

namespace fspectra {

/// Parameter domains a chart can be defined on. Unit-sphere parameters are
/// unit vectors in R^{k+1}; torus parameters are two angles.
enum class ParamDomain { kNone, kUnitSphere, kTorus };

/// First-order data of a chart at a parameter point. Derivatives are taken
/// along an arbitrary basis of parameter directions; consumers orthonormalise.
struct ChartJet {
  Vec position;           // point of M in R^d
  Mat tangents;           // d x m
  Vec normal;             // unit, tangent to M, orthogonal to the tangents
  Mat normal_derivative;  // d x m, derivative of N along the same directions
};

struct PointGeometry {
  Vec position;
  Mat frame;             // d x m orthonormal e_k
  Vec normal;            // N
  Mat normal_derivative; // d x m, D_{e_k} N in R^d
  Mat shape;             // A, m x m, A e_k = -nabla_{e_k} N
  double mean_curvature = 0.0;    // H = tr A
  double f_mean_curvature = 0.0;  // H_f = H + <grad f, N>
  double f_value = 0.0;
  double potential = 0.0;         // Ric_f(N, N) + |A|^2
};

/// A closed hypersurface of an ambient weighted manifold given by a chart.
class Immersion {
 public:
  explicit Immersion(AmbientSpace ambient) : ambient_(std::move(ambient)) {}
  virtual ~Immersion() = default;

  const AmbientSpace& ambient() const { return ambient_; }
  /// Hypersurface dimension m.
  int dim() const { return ambient_.dim() - 1; }

  virtual ChartJet jet(const Vec& q) const = 0;
  virtual std::string name() const = 0;
  /// True when jets come from closed-form derivatives.
  virtual bool analytic() const { return true; }
  /// Deterministic sample of parameter points covering the domain.
  virtual std::vector<Vec> sample_params(int resolution) const = 0;

 private:
  AmbientSpace ambient_;
};

PointGeometry point_geometry(const Immersion& imm, const Vec& q);

/// Largest |H_f| over the sampled parameter points.
double f_minimality_residual(const Immersion& imm, int resolution = 3);

// ---------------------------------------------------------------------------
// Product immersions

/// One factor of a product hypersurface. Codimension-one factors carry the
/// normal; the others are whole compact factors.
class FactorImmersion {
 public:
  virtual ~FactorImmersion() = default;
  virtual int param_dim() const = 0;
  /// Number of R^d coordinates of the factor.
  virtual int block_dim() const = 0;
  virtual int intrinsic_dim() const = 0;
  virtual bool codim_one() const = 0;
  virtual ParamDomain domain() const = 0;
  virtual ChartJet jet(const Vec& q) const = 0;
  virtual std::vector<Vec> sample_params(int resolution) const = 0;
  virtual std::string name() const = 0;
};

/// The full round sphere S^k(radius) as a factor; parameters are unit vectors.
std::shared_ptr<FactorImmersion> full_sphere_factor(int k, double radius);
/// Round sphere S^{j-1}(radius) inside R^j with outward normal (j = 2 is a
/// circle).
std::shared_ptr<FactorImmersion> round_hypersurface_factor(int j, double radius);
/// The point {t0} inside R^1 with normal +d/dt.
std::shared_ptr<FactorImmersion> slice_factor(double t0);

class ProductImmersion final : public Immersion {
 public:
  ProductImmersion(AmbientSpace ambient, std::vector<std::shared_ptr<FactorImmersion>> factors);

  ChartJet jet(const Vec& q) const override;
  std::string name() const override;
  std::vector<Vec> sample_params(int resolution) const override;

  const std::vector<std::shared_ptr<FactorImmersion>>& factors() const { return factors_; }
  std::size_t normal_factor() const { return normal_factor_; }
  /// Splits a product parameter into per-factor parameters.
  std::vector<Vec> split(const Vec& q) const;
  Vec join(const std::vector<Vec>& parts) const;
  /// Domain of the single factor with positive intrinsic dimension, if the
  /// product is meshable as a surface; kNone otherwise.
  ParamDomain mesh_domain() const;

 private:
  std::vector<std::shared_ptr<FactorImmersion>> factors_;
  std::size_t normal_factor_ = 0;
};

std::shared_ptr<ProductImmersion> product_immersion(
    const AmbientSpace& ambient, std::vector<std::shared_ptr<FactorImmersion>> factors);

/// Round sphere S^{n-1}(radius) in Gaussian R^n; radius = sqrt((n-1)/lambda)
/// is the shrinker.
std::shared_ptr<ProductImmersion> shrinker_sphere(const AmbientSpace& gaussian, double radius);
/// S^k x {t0} in S^k x R.
std::shared_ptr<ProductImmersion> slice_sphere(const AmbientSpace& cylinder, double t0 = 0.0);
/// S^k x S^{j-1}(radius) in S^k x R^j.
std::shared_ptr<ProductImmersion> sphere_round_product(const AmbientSpace& cylinder, double radius);

// ---------------------------------------------------------------------------
// Other charts

/// Torus of revolution with radii R > r > 0 in Gaussian R^3; params (u, v).
class TorusOfRevolution final : public Immersion {
 public:
  TorusOfRevolution(AmbientSpace gaussian3, double major, double minor);
  ChartJet jet(const Vec& q) const override;
  std::string name() const override;
  std::vector<Vec> sample_params(int resolution) const override;

  Vec position(double u, double v) const;

 private:
  double major_;
  double minor_;
};

/// User-supplied surface in Gaussian R^3 given only by positions. Derivatives
/// come from central differences with relative step `step`; the normal is
/// the cross product of the two parameter derivatives, oriented by the
/// parameter domain. Its derivative is differenced again with the wider step
/// cbrt(eps / step).
class ChartImmersion final : public Immersion {
 public:
  using PositionFn = std::function<Vec3(const Vec&)>;

  ChartImmersion(AmbientSpace gaussian3, ParamDomain domain, PositionFn position,
                 std::string label, double step = 1e-6);

  ChartJet jet(const Vec& q) const override;
  std::string name() const override { return label_; }
  bool analytic() const override { return false; }
  std::vector<Vec> sample_params(int resolution) const override;
  ParamDomain domain() const { return domain_; }
  double step() const { return step_; }

 private:
  Vec3 normal_at(const Vec& q) const;
  Mat directions(const Vec& q) const;
  Vec displaced(const Vec& q, const Vec& dir, double h) const;

  ParamDomain domain_;
  PositionFn position_;
  std::string label_;
  double step_;
};

// ---------------------------------------------------------------------------
// Root finding within one-parameter families

enum class RadiusFamilyKind {
  kSphereInGaussian,  // S^{n-1}(r) in Gaussian R^n (n = 2 is the circle)
  kSliceOffset,       // S^k x {t0} in S^k x R
};

struct RadiusFamily {
  RadiusFamilyKind kind = RadiusFamilyKind::kSphereInGaussian;
  int dim = 3;  // n for spheres, k for slices
  double lo = 1e-3;
  double hi = 1e3;

  static RadiusFamily sphere_in_gaussian(int n) { return {RadiusFamilyKind::kSphereInGaussian, n, 1e-3, 1e3}; }
  static RadiusFamily slice_offset(int k) { return {RadiusFamilyKind::kSliceOffset, k, -10.0, 10.0}; }
};

/// Zero of H_f within the family, evaluated through point_geometry.
double solve_radius(const RadiusFamily& family, double lambda);

/// Parameter-basis helpers shared by charts on the unit sphere.
Mat sphere_param_basis(const Vec& q);
Vec sphere_param_barycenter(const std::vector<Vec>& qs);

}  // namespace fspectra
