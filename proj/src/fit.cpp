#include "arago/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arago/csv.hpp"
#include "arago/decoherent.hpp"
#include "arago/numeric.hpp"
#include "arago/parallel.hpp"

namespace arago {

namespace {

// Longest grid the model pipeline will evaluate on.
constexpr std::size_t kMaxModelGrid = 4'000'000;

std::vector<double> model_values_at(const IntensityProfile& model,
                                    const std::vector<double>& xs) {
  if (model.xs.size() == xs.size()) {
    bool same = true;
    const double span = xs.back() - xs.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (std::abs(model.xs[i] - xs[i]) > 1e-12 * span) {
        same = false;
        break;
      }
    }
    if (same) return model.values;
  }
  PchipInterpolant interp(model.xs, model.values);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = interp(xs[i]);
  return out;
}

}  // namespace

FitResult affine_fit(const IntensityProfile& model, const DataSet& data) {
  data.validate();
  validate_grid(model.xs);
  const std::vector<double> m = model_values_at(model, data.xs);
  const std::size_t n = data.xs.size();
  if (n < 2) throw std::invalid_argument("affine_fit: need at least 2 points");

  const bool weighted = data.has_errors();
  double sw = 0, swm = 0, swy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weighted ? 1.0 / (data.errors[i] * data.errors[i]) : 1.0;
    sw += w;
    swm += w * m[i];
    swy += w * data.counts[i];
  }
  const double mbar = swm / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weighted ? 1.0 / (data.errors[i] * data.errors[i]) : 1.0;
    sxx += w * (m[i] - mbar) * (m[i] - mbar);
    sxy += w * (m[i] - mbar) * (data.counts[i] - ybar);
  }
  const auto [mlo, mhi] = std::minmax_element(m.begin(), m.end());
  if (!(sxx > 0) || !((*mhi - *mlo) > 1e-12 * (std::abs(*mhi) + std::abs(*mlo) +
                                               std::numeric_limits<double>::min()))) {
    throw std::invalid_argument(
        "affine_fit: model is constant across the data abscissae (rank-deficient)");
  }

  FitResult r;
  r.b = sxy / sxx;
  r.a = ybar - r.b * mbar;
  r.residuals.resize(n);
  double rss = 0, chi2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = data.counts[i] - (r.a + r.b * m[i]);
    r.residuals[i] = res;
    rss += res * res;
    if (weighted) {
      const double z = res / data.errors[i];
      chi2 += z * z;
    }
  }
  r.residual_norm = std::sqrt(rss);
  if (weighted) {
    r.chi2 = chi2;
    r.chi2_valid = true;
    r.b_stderr = std::sqrt(1.0 / sxx);
    r.a_stderr = std::sqrt(1.0 / sw + mbar * mbar / sxx);
  } else if (n > 2) {
    const double s2 = rss / static_cast<double>(n - 2);
    r.b_stderr = std::sqrt(s2 / sxx);
    r.a_stderr = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mbar * mbar / sxx));
  }
  r.meta = weighted ? "weighted least squares, counts space"
                    : "unweighted least squares, counts space";
  r.model_evals = 1;
  return r;
}

std::vector<double> model_shape(const PhysicalConfig& cfg, double ell,
                                double sigma_d, const std::vector<double>& xs) {
  cfg.validate();
  validate_grid(xs);
  if (sigma_d < 0 || !std::isfinite(sigma_d)) {
    throw std::invalid_argument("model_shape: sigma_d must be >= 0");
  }

  // Evaluation grid: extend 6 sigma_d past the data so convolution edges see
  // only Gaussian-dead model, resolve the kernel, the beam widths and the
  // quadratic interference fringes.
  const double pad = 6.0 * sigma_d;
  const double lo = xs.front() - pad;
  const double hi = xs.back() + pad;
  const DecoherentParams dp = decoherent_params(cfg, ell);
  const double width_scale = std::min(
      2.0 * cfg.hbar * cfg.tau * std::sqrt(dp.eta) / cfg.mass,
      2.0 * cfg.hbar * cfg.tau * std::sqrt(dp.eta_prime) / cfg.mass);
  const double x_absmax = std::max(std::abs(lo), std::abs(hi));
  double h = width_scale / 24.0;
  if (sigma_d > 0) h = std::min(h, sigma_d / 6.0);
  if (dp.delta * x_absmax > 0) {
    h = std::min(h, M_PI / (8.0 * dp.delta * x_absmax));
  }
  std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
  n = std::max<std::size_t>(n, 64);
  if (n > kMaxModelGrid) {
    throw std::runtime_error("model_shape: evaluation grid would need " +
                             std::to_string(n) + " points");
  }

  IntensityProfile prof = decoherent_profile(cfg, ell, linspace(lo, hi, n),
                                             /*include_gouy=*/true,
                                             Normalization::raw);
  if (sigma_d > 0) prof = convolve_detector(prof, DetectorSpec{sigma_d});
  apply_normalization(prof, Normalization::peak_one);
  return model_values_at(prof, xs);
}

namespace {

// (ell, sigma_d) candidate in linear units; fixed coordinates keep the exact
// caller-supplied values.
struct Candidate {
  double ell = 0;
  double sd = 0;
};

class Objective {
 public:
  Objective(const PhysicalConfig& cfg, const DataSet& data)
      : cfg_(cfg), data_(data) {}

  // Reentrant; the grid search calls it from worker threads.
  FitResult fit_at(const Candidate& c) {
    ++evals_;
    IntensityProfile model;
    model.xs = data_.xs;
    model.values = model_shape(cfg_, c.ell, c.sd, data_.xs);
    model.norm = Normalization::peak_one;
    FitResult r = affine_fit(model, data_);
    r.ell = c.ell;
    r.sigma_d = c.sd;
    return r;
  }

  double residual(const Candidate& c) { return fit_at(c).residual_norm; }

  std::size_t evals() const { return evals_; }

 private:
  const PhysicalConfig& cfg_;
  const DataSet& data_;
  std::atomic<std::size_t> evals_ = 0;
};

std::vector<double> log_grid_values(const ParamBounds& b, int points_per_decade) {
  if (!(b.lo > 0) || !(b.hi > b.lo) || !std::isfinite(b.hi)) {
    throw std::invalid_argument("nonlinear_fit: bounds must be finite, positive, lo < hi");
  }
  const double decades = std::log10(b.hi / b.lo);
  const std::size_t n = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::round(points_per_decade * decades)) + 1);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = b.lo * std::pow(b.hi / b.lo,
                           static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return g;
}

}  // namespace

FitResult nonlinear_fit(const PhysicalConfig& cfg, const DataSet& data,
                        const NonlinearFitSpec& spec) {
  data.validate();
  Objective obj(cfg, data);

  if (!spec.free_ell && !spec.free_sigma_d) {
    FitResult r = obj.fit_at({spec.ell, spec.sigma_d});
    r.model_evals = obj.evals();
    r.meta += "; no free parameters";
    return r;
  }

  const std::vector<double> ell_values =
      spec.free_ell ? log_grid_values(spec.ell_bounds, spec.points_per_decade)
                    : std::vector<double>{spec.ell};
  const std::vector<double> sd_values =
      spec.free_sigma_d
          ? log_grid_values(spec.sigma_d_bounds, spec.points_per_decade)
          : std::vector<double>{spec.sigma_d};

  // Coarse scan: candidates evaluated in parallel, winner chosen in index
  // order so the result is independent of the thread count.
  std::vector<Candidate> candidates;
  candidates.reserve(ell_values.size() * sd_values.size());
  for (double ell : ell_values) {
    for (double sd : sd_values) candidates.push_back({ell, sd});
  }
  std::vector<double> scan(candidates.size());
  parallel_index_for(candidates.size(),
                     [&](std::size_t i) { scan[i] = obj.residual(candidates[i]); });
  std::size_t best_index = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (scan[i] < scan[best_index]) best_index = i;
  }
  const Candidate best = candidates[best_index];
  const double best_val = scan[best_index];

  // Simplex refinement in log10 space of the free coordinates only; fixed
  // coordinates keep their exact values.
  struct Axis {
    bool ell;
    double lo, hi, step;
  };
  std::vector<Axis> axes;
  if (spec.free_ell) {
    axes.push_back({true, std::log10(spec.ell_bounds.lo),
                    std::log10(spec.ell_bounds.hi),
                    ell_values.size() > 1
                        ? 0.5 * std::log10(ell_values[1] / ell_values[0])
                        : 0.1});
  }
  if (spec.free_sigma_d) {
    axes.push_back({false, std::log10(spec.sigma_d_bounds.lo),
                    std::log10(spec.sigma_d_bounds.hi),
                    sd_values.size() > 1
                        ? 0.5 * std::log10(sd_values[1] / sd_values[0])
                        : 0.1});
  }
  const std::size_t dim = axes.size();

  auto clamp_point = [&](std::vector<double>& p) {
    for (std::size_t d = 0; d < dim; ++d) p[d] = std::clamp(p[d], axes[d].lo, axes[d].hi);
  };
  auto to_candidate = [&](const std::vector<double>& p) {
    Candidate c{spec.ell, spec.sigma_d};
    for (std::size_t d = 0; d < dim; ++d) {
      (axes[d].ell ? c.ell : c.sd) = std::pow(10.0, p[d]);
    }
    return c;
  };

  std::vector<std::vector<double>> verts(dim + 1, std::vector<double>(dim));
  std::vector<double> fvals(dim + 1);
  for (std::size_t d = 0; d < dim; ++d) {
    verts[0][d] = std::log10(axes[d].ell ? best.ell : best.sd);
  }
  fvals[0] = best_val;
  for (std::size_t v = 1; v <= dim; ++v) {
    verts[v] = verts[0];
    verts[v][v - 1] += axes[v - 1].step;
    clamp_point(verts[v]);
    fvals[v] = obj.residual(to_candidate(verts[v]));
  }

  int iter = 0;
  for (; iter < spec.simplex_max_iter; ++iter) {
    // order vertices, best first
    std::vector<std::size_t> idx(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    std::vector<std::vector<double>> vs(dim + 1);
    std::vector<double> fs(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
      vs[i] = verts[idx[i]];
      fs[i] = fvals[idx[i]];
    }
    verts = vs;
    fvals = fs;

    double spread = 0;
    for (std::size_t d = 0; d < dim; ++d) {
      spread = std::max(spread, std::abs(verts[dim][d] - verts[0][d]));
    }
    if (fvals[dim] - fvals[0] <= 1e-12 * (1.0 + std::abs(fvals[0])) &&
        spread < 1e-9) {
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v < dim; ++v) {
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += verts[v][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto affine_pt = [&](double coef) {
      std::vector<double> p(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = centroid[d] + coef * (centroid[d] - verts[dim][d]);
      }
      clamp_point(p);
      return p;
    };

    const std::vector<double> refl = affine_pt(1.0);
    const double f_refl = obj.residual(to_candidate(refl));
    if (f_refl < fvals[0]) {
      const std::vector<double> expd = affine_pt(2.0);
      const double f_expd = obj.residual(to_candidate(expd));
      if (f_expd < f_refl) {
        verts[dim] = expd;
        fvals[dim] = f_expd;
      } else {
        verts[dim] = refl;
        fvals[dim] = f_refl;
      }
    } else if (f_refl < fvals[dim - 1]) {
      verts[dim] = refl;
      fvals[dim] = f_refl;
    } else {
      const std::vector<double> contr = affine_pt(-0.5);
      const double f_contr = obj.residual(to_candidate(contr));
      if (f_contr < fvals[dim]) {
        verts[dim] = contr;
        fvals[dim] = f_contr;
      } else {
        for (std::size_t v = 1; v <= dim; ++v) {
          for (std::size_t d = 0; d < dim; ++d) {
            verts[v][d] = verts[0][d] + 0.5 * (verts[v][d] - verts[0][d]);
          }
          fvals[v] = obj.residual(to_candidate(verts[v]));
        }
      }
    }
  }

  std::size_t best_vert = 0;
  for (std::size_t v = 1; v <= dim; ++v) {
    if (fvals[v] < fvals[best_vert]) best_vert = v;
  }

  FitResult r = obj.fit_at(to_candidate(verts[best_vert]));
  r.ell_fitted = spec.free_ell;
  r.sigma_d_fitted = spec.free_sigma_d;
  for (std::size_t d = 0; d < dim; ++d) {
    const double v = verts[best_vert][d];
    const double span = axes[d].hi - axes[d].lo;
    if (v - axes[d].lo < 1e-6 * span || axes[d].hi - v < 1e-6 * span) {
      r.hit_bounds = true;
    }
  }
  r.model_evals = obj.evals();
  r.meta += "; grid " + std::to_string(ell_values.size()) + "x" +
            std::to_string(sd_values.size()) + ", simplex " +
            std::to_string(iter) + " iterations" +
            (r.hit_bounds ? "; ended on a bound" : "");
  return r;
}

}  // namespace arago
