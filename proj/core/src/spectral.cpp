#include "fspectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fspectra/error.hpp"

namespace fspectra {

CountReport count_below_report(const SpectralResult& result, double level) {
  if (!(result.bracket_limit > level + result.threshold)) {
    throw Error(ErrorCode::kBracketNotEstablished,
                "computed eigenvalues do not reach past " + std::to_string(level) + "; request more eigenvalues");
  }
  CountReport rep;
  rep.level = level;
  rep.distance = std::numeric_limits<double>::infinity();
  for (double mu : result.eigenvalues) {
    if (mu < level - result.threshold) ++rep.count;
    rep.distance = std::min(rep.distance, std::abs(mu - level));
  }
  return rep;
}

int count_below(const SpectralResult& result, double eta) { return count_below_report(result, eta).count; }

int f_index(const SpectralResult& result) { return count_below_report(result, 0.0).count; }

ProductSpectrum compose_product(const std::vector<SpectralResult>& factor_spectra, const std::vector<int>& factor_b1,
                                double constant_potential) {
  if (factor_spectra.empty()) throw Error(ErrorCode::kInvalidArgument, "no factor spectra");
  if (factor_b1.size() != factor_spectra.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one b1 value per factor is required");
  }
  const std::size_t nf = factor_spectra.size();
  std::vector<double> lowest(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (factor_spectra[i].eigenvalues.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty factor spectrum");
    lowest[i] = factor_spectra[i].eigenvalues.minCoeff();
  }
  double limit = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nf; ++i) {
    double others = 0.0;
    for (std::size_t j = 0; j < nf; ++j) {
      if (j != i) others += lowest[j];
    }
    limit = std::min(limit, factor_spectra[i].bracket_limit + others);
  }
  const double keep = std::isfinite(limit) ? limit + 1e-12 * std::max(1.0, std::abs(limit)) : limit;

  std::vector<double> sums = {0.0};
  double rest = 0.0;
  for (double l : lowest) rest += l;
  for (std::size_t i = 0; i < nf; ++i) {
    rest -= lowest[i];
    std::vector<double> next;
    for (double s : sums) {
      for (double mu : factor_spectra[i].eigenvalues) {
        if (s + mu + rest <= keep) next.push_back(s + mu);
      }
    }
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());

  ProductSpectrum out;
  out.spectrum.method = "composed";
  out.spectrum.eigenvalues.resize(static_cast<Eigen::Index>(sums.size()));
  for (std::size_t i = 0; i < sums.size(); ++i) out.spectrum.eigenvalues[static_cast<Eigen::Index>(i)] = sums[i] - constant_potential;
  out.spectrum.bracket_limit = limit - constant_potential;
  for (const auto& f : factor_spectra) out.spectrum.max_residual = std::max(out.spectrum.max_residual, f.max_residual);
  classify(out.spectrum);
  for (int b : factor_b1) out.b1 += b;
  return out;
}

double constant_potential(const Immersion& imm, int resolution) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vec& q : imm.sample_params(resolution)) {
    const double p = point_geometry(imm, q).potential;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (hi - lo > 1e-9 * std::max(1.0, std::abs(hi))) {
    throw Error(ErrorCode::kCompositionNotApplicable,
                "Jacobi potential varies by " + std::to_string(hi - lo) + " over " + imm.name());
  }
  return 0.5 * (lo + hi);
}

ProductSpectrum circle_factor(int segments, double radius, int count) {
  if (segments < 3 || !(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "circle needs >= 3 segments and radius > 0");
  const int n = segments;
  const double h = 2.0 * radius * std::sin(std::numbers::pi / n);
  std::vector<Eigen::Triplet<double>> tk, tm, td;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    tk.emplace_back(i, i, 1.0 / h);
    tk.emplace_back(j, j, 1.0 / h);
    tk.emplace_back(i, j, -1.0 / h);
    tk.emplace_back(j, i, -1.0 / h);
    tm.emplace_back(i, i, h / 3.0);
    tm.emplace_back(j, j, h / 3.0);
    tm.emplace_back(i, j, h / 6.0);
    tm.emplace_back(j, i, h / 6.0);
    td.emplace_back(i, i, -1.0);
    td.emplace_back(i, j, 1.0);
  }
  SpMat k(n, n), m(n, n), d0(n, n);
  k.setFromTriplets(tk.begin(), tk.end());
  m.setFromTriplets(tm.begin(), tm.end());
  d0.setFromTriplets(td.begin(), td.end());

  SolverOptions dense;
  dense.method = SolverMethod::kDense;
  ProductSpectrum out;
  out.spectrum = solve_generalized(k, m, std::min(count, n), dense);

  // Edge forms: star0 = dual length h at vertices, star1 = 1/h on edges.
  const SpMat lap = (1.0 / h) * d0 * (1.0 / h) * SpMat(d0.transpose()) * (1.0 / h);
  SpMat s1(n, n);
  s1.setIdentity();
  s1 *= 1.0 / h;
  const SpectralResult forms = solve_generalized(lap, s1, n, dense);
  out.b1 = forms.zero_count;
  return out;
}

}  // namespace fspectra
