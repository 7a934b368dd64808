#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "fspectra/error.hpp"
#include "fspectra/immersion.hpp"
#include "fspectra/random.hpp"

namespace fspectra {

Mat sphere_param_basis(const Vec& q) {
  const Eigen::Index n = q.size();
  Eigen::HouseholderQR<Mat> qr(q);
  Mat full = qr.householderQ() * Mat::Identity(n, n);
  Mat basis = full.rightCols(n - 1);
  Mat oriented(n, n);
  oriented.col(0) = q;
  oriented.rightCols(n - 1) = basis;
  if (oriented.determinant() < 0.0) basis.col(n - 2) *= -1.0;
  return basis;
}

Vec sphere_param_barycenter(const std::vector<Vec>& qs) {
  Vec sum = Vec::Zero(qs.front().size());
  for (const Vec& q : qs) sum += q;
  return sum.normalized();
}

namespace {

std::vector<Vec> sphere_samples(int n, int resolution) {
  std::vector<Vec> out;
  const int count = 8 * (resolution + 1) * (resolution + 1);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * std::numbers::pi * (i + 0.5) / count;
      Vec q(2);
      q << std::cos(t), std::sin(t);
      out.push_back(q);
    }
  } else if (n == 3) {
    // Fibonacci lattice
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rho = std::sqrt(1.0 - z * z);
      Vec q(3);
      q << rho * std::cos(golden * i), rho * std::sin(golden * i), z;
      out.push_back(q);
    }
  } else {
    for (int i = 0; i < count; ++i) {
      auto rng = sample_rng(0x5eed, static_cast<std::uint64_t>(i));
      out.push_back(unit_vector(rng, n));
    }
  }
  return out;
}

class FullSphereFactor final : public FactorImmersion {
 public:
  FullSphereFactor(int k, double radius) : k_(k), radius_(radius) {
    if (k < 1) throw Error(ErrorCode::kInvalidDimension, "sphere factor needs k >= 1");
    if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  }
  int param_dim() const override { return k_ + 1; }
  int block_dim() const override { return k_ + 1; }
  int intrinsic_dim() const override { return k_; }
  bool codim_one() const override { return false; }
  ParamDomain domain() const override { return ParamDomain::kUnitSphere; }
  ChartJet jet(const Vec& q) const override {
    ChartJet j;
    j.position = radius_ * q;
    j.tangents = radius_ * sphere_param_basis(q);
    j.normal = Vec::Zero(k_ + 1);
    j.normal_derivative = Mat::Zero(k_ + 1, k_);
    return j;
  }
  std::vector<Vec> sample_params(int resolution) const override {
    return sphere_samples(k_ + 1, resolution);
  }
  std::string name() const override {
    std::ostringstream os;
    os << "S^" << k_ << "(" << radius_ << ")";
    return os.str();
  }

 private:
  int k_;
  double radius_;
};

class RoundHypersurfaceFactor final : public FactorImmersion {
 public:
  RoundHypersurfaceFactor(int j, double radius) : j_(j), radius_(radius) {
    if (j < 2) throw Error(ErrorCode::kInvalidDimension, "round hypersurface needs j >= 2");
    if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  }
  int param_dim() const override { return j_; }
  int block_dim() const override { return j_; }
  int intrinsic_dim() const override { return j_ - 1; }
  bool codim_one() const override { return true; }
  ParamDomain domain() const override { return ParamDomain::kUnitSphere; }
  ChartJet jet(const Vec& q) const override {
    ChartJet jt;
    const Mat basis = sphere_param_basis(q);
    jt.position = radius_ * q;
    jt.tangents = radius_ * basis;
    jt.normal = q;
    jt.normal_derivative = basis;
    return jt;
  }
  std::vector<Vec> sample_params(int resolution) const override {
    return sphere_samples(j_, resolution);
  }
  std::string name() const override {
    std::ostringstream os;
    os << "S^" << (j_ - 1) << "(" << radius_ << ")";
    return os.str();
  }

 private:
  int j_;
  double radius_;
};

class SliceFactor final : public FactorImmersion {
 public:
  explicit SliceFactor(double t0) : t0_(t0) {}
  int param_dim() const override { return 0; }
  int block_dim() const override { return 1; }
  int intrinsic_dim() const override { return 0; }
  bool codim_one() const override { return true; }
  ParamDomain domain() const override { return ParamDomain::kNone; }
  ChartJet jet(const Vec&) const override {
    ChartJet j;
    j.position = Vec::Constant(1, t0_);
    j.tangents = Mat::Zero(1, 0);
    j.normal = Vec::Ones(1);
    j.normal_derivative = Mat::Zero(1, 0);
    return j;
  }
  std::vector<Vec> sample_params(int) const override { return {Vec(0)}; }
  std::string name() const override {
    std::ostringstream os;
    os << "{" << t0_ << "}";
    return os.str();
  }

 private:
  double t0_;
};

}  // namespace

std::shared_ptr<FactorImmersion> full_sphere_factor(int k, double radius) {
  return std::make_shared<FullSphereFactor>(k, radius);
}

std::shared_ptr<FactorImmersion> round_hypersurface_factor(int j, double radius) {
  return std::make_shared<RoundHypersurfaceFactor>(j, radius);
}

std::shared_ptr<FactorImmersion> slice_factor(double t0) {
  return std::make_shared<SliceFactor>(t0);
}

ProductImmersion::ProductImmersion(AmbientSpace ambient,
                                   std::vector<std::shared_ptr<FactorImmersion>> factors)
    : Immersion(std::move(ambient)), factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::kInvalidProduct, "product needs at least one factor");
  int codim_one = 0;
  int block = 0;
  int intrinsic = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i]->codim_one()) {
      ++codim_one;
      normal_factor_ = i;
    }
    block += factors_[i]->block_dim();
    intrinsic += factors_[i]->intrinsic_dim();
  }
  if (codim_one != 1) {
    throw Error(ErrorCode::kInvalidProduct,
                "exactly one factor must carry the normal direction, got " + std::to_string(codim_one));
  }
  const AmbientSpace& amb = this->ambient();
  if (block != amb.embed_dim()) {
    throw Error(ErrorCode::kInvalidProduct, "factor blocks do not fill R^d of " + amb.name());
  }
  if (intrinsic != dim()) {
    throw Error(ErrorCode::kInvalidProduct, "factor dimensions do not add up to a hypersurface");
  }
  if (amb.kind() != AmbientKind::kGaussianEuclidean &&
      factors_.front()->block_dim() != amb.compact_block()) {
    throw Error(ErrorCode::kInvalidProduct, "first factor must cover the compact factor");
  }
  const Vec q = join([&] {
    std::vector<Vec> parts;
    for (const auto& f : factors_) parts.push_back(f->sample_params(0).front());
    return parts;
  }());
  const Vec x = jet(q).position;
  if (amb.constraint_residual(x) > 1e-10) {
    throw Error(ErrorCode::kInvalidProduct, "factor images do not lie on " + amb.name());
  }
}

std::vector<Vec> ProductImmersion::split(const Vec& q) const {
  std::vector<Vec> parts;
  Eigen::Index offset = 0;
  for (const auto& f : factors_) {
    parts.push_back(q.segment(offset, f->param_dim()));
    offset += f->param_dim();
  }
  if (offset != q.size()) throw Error(ErrorCode::kInvalidArgument, "product parameter has wrong size");
  return parts;
}

Vec ProductImmersion::join(const std::vector<Vec>& parts) const {
  Eigen::Index total = 0;
  for (const Vec& p : parts) total += p.size();
  Vec q(total);
  Eigen::Index offset = 0;
  for (const Vec& p : parts) {
    q.segment(offset, p.size()) = p;
    offset += p.size();
  }
  return q;
}

ChartJet ProductImmersion::jet(const Vec& q) const {
  const std::vector<Vec> parts = split(q);
  const int d = ambient().embed_dim();
  const int m = dim();
  ChartJet out;
  out.position = Vec::Zero(d);
  out.tangents = Mat::Zero(d, m);
  out.normal = Vec::Zero(d);
  out.normal_derivative = Mat::Zero(d, m);
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const FactorImmersion& f = *factors_[i];
    const ChartJet fj = f.jet(parts[i]);
    const int b = f.block_dim();
    const int c = f.intrinsic_dim();
    out.position.segment(row, b) = fj.position;
    out.tangents.block(row, col, b, c) = fj.tangents;
    if (i == normal_factor_) {
      out.normal.segment(row, b) = fj.normal;
      out.normal_derivative.block(row, col, b, c) = fj.normal_derivative;
    }
    row += b;
    col += c;
  }
  return out;
}

std::string ProductImmersion::name() const {
  std::string s = "product(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " x ";
    s += factors_[i]->name();
  }
  return s + ")";
}

std::vector<Vec> ProductImmersion::sample_params(int resolution) const {
  std::vector<std::vector<Vec>> per;
  for (const auto& f : factors_) per.push_back(f->sample_params(resolution));
  std::vector<Vec> out;
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    std::vector<Vec> parts;
    for (std::size_t i = 0; i < per.size(); ++i) parts.push_back(per[i][idx[i]]);
    out.push_back(join(parts));
    std::size_t i = 0;
    for (; i < per.size(); ++i) {
      if (++idx[i] < per[i].size()) break;
      idx[i] = 0;
    }
    if (i == per.size()) break;
  }
  return out;
}

ParamDomain ProductImmersion::mesh_domain() const {
  ParamDomain domain = ParamDomain::kNone;
  int positive = 0;
  for (const auto& f : factors_) {
    if (f->intrinsic_dim() > 0) {
      ++positive;
      if (f->intrinsic_dim() == 2) domain = f->domain();
    }
  }
  return positive == 1 ? domain : ParamDomain::kNone;
}

std::shared_ptr<ProductImmersion> product_immersion(
    const AmbientSpace& ambient, std::vector<std::shared_ptr<FactorImmersion>> factors) {
  return std::make_shared<ProductImmersion>(ambient, std::move(factors));
}

std::shared_ptr<ProductImmersion> shrinker_sphere(const AmbientSpace& gaussian, double radius) {
  if (gaussian.kind() != AmbientKind::kGaussianEuclidean) {
    throw Error(ErrorCode::kInvalidArgument, "shrinker sphere lives in Gaussian space");
  }
  return product_immersion(gaussian, {round_hypersurface_factor(gaussian.embed_dim(), radius)});
}

std::shared_ptr<ProductImmersion> slice_sphere(const AmbientSpace& cylinder, double t0) {
  if (cylinder.kind() != AmbientKind::kSphereCylinder || cylinder.euclidean_dim() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "slice sphere needs a sphere cylinder with j = 1");
  }
  return product_immersion(cylinder, {full_sphere_factor(cylinder.compact_dim(), cylinder.sphere_radius()),
                                      slice_factor(t0)});
}

std::shared_ptr<ProductImmersion> sphere_round_product(const AmbientSpace& cylinder, double radius) {
  if (cylinder.kind() != AmbientKind::kSphereCylinder || cylinder.euclidean_dim() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sphere x round product needs a sphere cylinder with j >= 2");
  }
  return product_immersion(cylinder,
                           {full_sphere_factor(cylinder.compact_dim(), cylinder.sphere_radius()),
                            round_hypersurface_factor(cylinder.euclidean_dim(), radius)});
}

}  // namespace fspectra
