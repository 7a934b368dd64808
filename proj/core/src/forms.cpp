#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "fspectra/error.hpp"
#include "fspectra/theorem.hpp"

namespace fspectra {
namespace {

class CircleForm final : public FormField {
 public:
  explicit CircleForm(std::shared_ptr<const ProductImmersion> imm) : imm_(std::move(imm)) {
    Eigen::Index row = 0, col = 0;
    bool found = false;
    for (std::size_t i = 0; i < imm_->factors().size(); ++i) {
      const auto& f = *imm_->factors()[i];
      if (f.intrinsic_dim() == 1 && f.block_dim() == 2 && f.param_dim() == 2) {
        factor_ = i;
        row_ = row;
        col_ = col;
        found = true;
        break;
      }
      row += f.block_dim();
      col += f.intrinsic_dim();
    }
    if (!found) throw Error(ErrorCode::kInvalidArgument, imm_->name() + " has no circle factor");
  }

  FormJet jet(const Vec& q) const override {
    const Vec part = imm_->split(q)[factor_];
    const int d = imm_->ambient().embed_dim();
    FormJet out;
    out.value = Vec::Zero(d);
    out.derivative = Mat::Zero(d, imm_->dim());
    out.value.segment(row_, 2) = sphere_param_basis(part).col(0);
    out.derivative.block(row_, col_, 2, 1) = -part;
    return out;
  }
  std::string name() const override { return "circle-form"; }

 private:
  std::shared_ptr<const ProductImmersion> imm_;
  std::size_t factor_ = 0;
  Eigen::Index row_ = 0;
  Eigen::Index col_ = 0;
};

class GradientForm final : public FormField {
 public:
  GradientForm(std::shared_ptr<const Immersion> imm, Vec a) : imm_(std::move(imm)), a_(std::move(a)) {
    if (imm_->ambient().kind() != AmbientKind::kGaussianEuclidean) {
      throw Error(ErrorCode::kUnsupported, "gradient forms need a Euclidean ambient");
    }
    if (a_.size() != imm_->ambient().embed_dim()) throw Error(ErrorCode::kInvalidDimension, "direction has the wrong size");
  }
  FormJet jet(const Vec& q) const override {
    const ChartJet j = imm_->jet(q);
    const double an = a_.dot(j.normal);
    FormJet out;
    out.value = a_ - an * j.normal;
    out.derivative = -j.normal * (a_.transpose() * j.normal_derivative) - an * j.normal_derivative;
    return out;
  }
  std::string name() const override { return "gradient-form"; }

 private:
  std::shared_ptr<const Immersion> imm_;
  Vec a_;
};

}  // namespace

std::shared_ptr<FormField> circle_form(std::shared_ptr<const ProductImmersion> imm) {
  return std::make_shared<CircleForm>(std::move(imm));
}

std::shared_ptr<FormField> gradient_form(std::shared_ptr<const Immersion> imm, Vec direction) {
  return std::make_shared<GradientForm>(std::move(imm), std::move(direction));
}

FramedForm framed_form(const Immersion& imm, const FormField& form, const Vec& q) {
  FramedForm out;
  out.geometry = point_geometry(imm, q);
  const ChartJet cj = imm.jet(q);
  const Mat c = cj.tangents.colPivHouseholderQr().solve(out.geometry.frame);
  const FormJet fj = form.jet(q);
  out.omega = fj.value;
  out.d_omega = fj.derivative * c;
  return out;
}

Quadrature mesh_quadrature(const OperatorAssembly& assembly) {
  Quadrature q;
  const auto& mesh = assembly.mesh;
  q.measure.resize(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    q.params.push_back(mesh.face_barycenter_param(f));
    q.measure[f] = mesh.face_area(f);
  }
  return q;
}

Quadrature product_quadrature(const ProductImmersion& imm, int subdiv, int segments) {
  std::vector<std::vector<Vec>> pts;
  std::vector<std::vector<double>> wts;
  for (const auto& fp : imm.factors()) {
    const FactorImmersion& f = *fp;
    std::vector<Vec> p;
    std::vector<double> w;
    if (f.intrinsic_dim() == 0) {
      p.push_back(Vec(0));
      w.push_back(1.0);
    } else if (f.intrinsic_dim() == 2 && f.param_dim() == 3) {
      const SurfaceMesh mesh = icosphere(subdiv);
      const double r = f.jet(Vec3::UnitZ()).position.norm();
      for (int t = 0; t < mesh.num_faces(); ++t) {
        // spherical triangle area, so the weights sum to the exact sphere area
        const auto& tri = mesh.triangles[t];
        const Vec3 a = mesh.params[tri[0]], b = mesh.params[tri[1]], c = mesh.params[tri[2]];
        const double excess = 2.0 * std::atan2(std::abs(a.dot(b.cross(c))), 1.0 + a.dot(b) + b.dot(c) + c.dot(a));
        p.push_back(mesh.face_barycenter_param(t));
        w.push_back(r * r * excess);
      }
    } else if (f.intrinsic_dim() == 1 && f.param_dim() == 2) {
      const double r = f.jet(Eigen::Vector2d::UnitX()).position.norm();
      for (int s = 0; s < segments; ++s) {
        const double th = 2.0 * std::numbers::pi * (s + 0.5) / segments;
        p.push_back(Eigen::Vector2d(std::cos(th), std::sin(th)));
        w.push_back(2.0 * std::numbers::pi * r / segments);
      }
    } else {
      throw Error(ErrorCode::kUnsupported, "no tensor quadrature for factor " + f.name());
    }
    pts.push_back(std::move(p));
    wts.push_back(std::move(w));
  }
  Quadrature q;
  std::vector<double> measure;
  std::vector<std::size_t> idx(pts.size(), 0);
  while (true) {
    std::vector<Vec> parts;
    double w = 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      parts.push_back(pts[i][idx[i]]);
      w *= wts[i][idx[i]];
    }
    q.params.push_back(imm.join(parts));
    measure.push_back(w);
    std::size_t i = pts.size();
    while (i > 0) {
      --i;
      if (++idx[i] < pts[i].size()) break;
      idx[i] = 0;
      if (i == 0) {
        q.measure = Eigen::Map<Vec>(measure.data(), static_cast<Eigen::Index>(measure.size()));
        return q;
      }
    }
    if (pts.empty()) break;
  }
  q.measure = Eigen::Map<Vec>(measure.data(), static_cast<Eigen::Index>(measure.size()));
  return q;
}

}  // namespace fspectra
