#include "arago/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "arago/csv.hpp"
#include "arago/parallel.hpp"

namespace arago {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_spec(const QuadratureSpec& q) {
  if (q.half_width_sigmas < 6.0) {
    throw std::invalid_argument("QuadratureSpec: half_width_sigmas must be >= 6");
  }
  if (q.points_per_oscillation < 8.0) {
    throw std::invalid_argument("QuadratureSpec: points_per_oscillation must be >= 8");
  }
  if (q.max_points < 513) {
    throw std::invalid_argument("QuadratureSpec: max_points too small");
  }
}

// Odd node count resolving both the fastest local oscillation (fmax in rad/m
// over `span`) and the finest Gaussian feature.
std::size_t required_nodes(double fmax, double span, double finest_feature,
                           const QuadratureSpec& q, const char* what) {
  const double osc = q.points_per_oscillation * fmax * span / kTwoPi;
  const double env = 24.0 * span / finest_feature;
  double n = std::max({osc, env, 513.0});
  std::size_t count = static_cast<std::size_t>(std::ceil(n));
  if (count % 2 == 0) ++count;
  if (count > q.max_points) {
    throw std::runtime_error(std::string("oracle: ") + what + " needs " +
                             std::to_string(count) + " nodes, cap is " +
                             std::to_string(q.max_points));
  }
  return count;
}

struct Nodes {
  std::vector<double> x;
  double h = 0;
};

Nodes make_nodes(double half_width, std::size_t n) {
  Nodes nodes;
  nodes.x = linspace(-half_width, half_width, n);
  nodes.h = 2.0 * half_width / static_cast<double>(n - 1);
  return nodes;
}

// Composite Simpson; node count must be odd.
template <typename T>
T simpson(const std::vector<T>& f, double h) {
  T acc = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < f.size(); i += 2) acc += 4.0 * f[i];
  for (std::size_t i = 2; i + 1 < f.size(); i += 2) acc += 2.0 * f[i];
  return acc * (h / 3.0);
}

ComplexAmplitude psi_initial(const PhysicalConfig& cfg, double x) {
  return ComplexAmplitude(
      std::exp(-x * x / (2.0 * cfg.sigma0 * cfg.sigma0)) /
          std::sqrt(cfg.sigma0 * std::sqrt(M_PI)),
      0.0);
}

// Free kernel prefactor sqrt(m / (2 pi i hbar T)) = sqrt(m / (2 pi hbar T))
// exp(-i pi/4).
ComplexAmplitude kernel_prefactor(const PhysicalConfig& cfg, double T) {
  return std::polar(std::sqrt(cfg.mass / (kTwoPi * cfg.hbar * T)), -0.25 * M_PI);
}

// Wave arriving at the slit plane, sampled on quadrature nodes. The node
// budget covers the fastest kernel phase for |screen x| <= x_absmax so one
// plane serves a whole profile.
struct SlitPlane {
  Nodes nodes;                         // slit-plane abscissae
  std::vector<ComplexAmplitude> psi;   // unmasked wave at the plane
  std::vector<double> mask;            // Gaussian transmission at the nodes
};

SlitPlane build_slit_plane(const PhysicalConfig& cfg, const QuadratureSpec& q,
                           double x_absmax) {
  const FreeBeamParams fb = free_params(cfg, cfg.t);
  const double w_plane = q.half_width_sigmas * fb.b;
  const double w_source = q.half_width_sigmas * cfg.sigma0;
  const double m_over_hbar = cfg.mass / cfg.hbar;

  const double b0 = obstacle_plane_params(cfg).B;
  const double f_out = m_over_hbar * (x_absmax + w_plane) / cfg.tau +
                       m_over_hbar * w_plane / fb.r;
  const std::size_t n_out =
      required_nodes(f_out, 2.0 * w_plane, std::min(b0, cfg.sigma0), q,
                     "slit-plane integral");

  const double f_in = m_over_hbar * (w_plane + w_source) / cfg.t;
  const std::size_t n_in = required_nodes(f_in, 2.0 * w_source, cfg.sigma0, q,
                                          "source integral");

  SlitPlane plane;
  plane.nodes = make_nodes(w_plane, n_out);
  plane.psi.resize(n_out);
  plane.mask.resize(n_out);

  const Nodes src = make_nodes(w_source, n_in);
  std::vector<double> psi0(n_in);
  for (std::size_t i = 0; i < n_in; ++i) psi0[i] = psi_initial(cfg, src.x[i]).real();

  const ComplexAmplitude pref = kernel_prefactor(cfg, cfg.t);
  const double phase_scale = 0.5 * m_over_hbar / cfg.t;
  // rows are independent: each j fills only its own slot
  parallel_index_for(n_out, [&](std::size_t j) {
    const double xj = plane.nodes.x[j];
    std::vector<ComplexAmplitude> integrand(n_in);
    for (std::size_t i = 0; i < n_in; ++i) {
      const double d = xj - src.x[i];
      integrand[i] = std::polar(psi0[i], phase_scale * d * d);
    }
    plane.psi[j] = pref * simpson(integrand, src.h);
    plane.mask[j] = std::exp(-xj * xj / (2.0 * cfg.beta * cfg.beta));
  });
  return plane;
}

// Propagate mask-weighted plane values to the screen points.
std::vector<ComplexAmplitude> propagate_plane(const PhysicalConfig& cfg,
                                              const SlitPlane& plane,
                                              const std::vector<double>& mask,
                                              const std::vector<double>& xs) {
  const std::size_t n = plane.nodes.x.size();
  std::vector<ComplexAmplitude> masked(n);
  for (std::size_t j = 0; j < n; ++j) {
    masked[j] = plane.psi[j] * mask[j];
  }
  const ComplexAmplitude pref = kernel_prefactor(cfg, cfg.tau);
  const double phase_scale = 0.5 * cfg.mass / (cfg.hbar * cfg.tau);
  std::vector<ComplexAmplitude> out(xs.size());
  parallel_index_for(xs.size(), [&](std::size_t k) {
    std::vector<ComplexAmplitude> integrand(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = xs[k] - plane.nodes.x[j];
      integrand[j] = masked[j] * std::polar(1.0, phase_scale * d * d);
    }
    out[k] = pref * simpson(integrand, plane.nodes.h);
  });
  return out;
}

double plane_norm(const SlitPlane& plane, const std::vector<double>& mask) {
  std::vector<double> density(plane.psi.size());
  for (std::size_t j = 0; j < density.size(); ++j) {
    density[j] = std::norm(plane.psi[j] * mask[j]);
  }
  return std::sqrt(simpson(density, plane.nodes.h));
}

}  // namespace

void QuadratureSpec::validate() const { check_spec(*this); }

ComplexAmplitude oracle_psi_free(const PhysicalConfig& cfg, double x,
                                 double elapsed, const QuadratureSpec& q) {
  return oracle_psi_free_grid(cfg, {x}, elapsed, q).front();
}

std::vector<ComplexAmplitude> oracle_psi_free_grid(const PhysicalConfig& cfg,
                                                   const std::vector<double>& xs,
                                                   double elapsed,
                                                   const QuadratureSpec& q) {
  cfg.validate();
  check_spec(q);
  if (xs.empty()) throw std::invalid_argument("oracle_psi_free: empty grid");
  if (elapsed < 0) throw std::invalid_argument("oracle_psi_free: elapsed < 0");
  if (elapsed == 0) {
    std::vector<ComplexAmplitude> out(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = psi_initial(cfg, xs[k]);
    return out;
  }

  double x_absmax = 0;
  for (double x : xs) x_absmax = std::max(x_absmax, std::abs(x));
  const double w = q.half_width_sigmas * cfg.sigma0;
  const double fmax = cfg.mass * (x_absmax + w) / (cfg.hbar * elapsed);
  const std::size_t n =
      required_nodes(fmax, 2.0 * w, cfg.sigma0, q, "free integral");

  const Nodes src = make_nodes(w, n);
  std::vector<double> psi0(n);
  for (std::size_t i = 0; i < n; ++i) psi0[i] = psi_initial(cfg, src.x[i]).real();

  const ComplexAmplitude pref = kernel_prefactor(cfg, elapsed);
  const double phase_scale = 0.5 * cfg.mass / (cfg.hbar * elapsed);
  std::vector<ComplexAmplitude> out(xs.size());
  parallel_index_for(xs.size(), [&](std::size_t k) {
    std::vector<ComplexAmplitude> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = xs[k] - src.x[i];
      integrand[i] = std::polar(psi0[i], phase_scale * d * d);
    }
    out[k] = pref * simpson(integrand, src.h);
  });
  return out;
}

ComplexAmplitude oracle_psi_slit(const PhysicalConfig& cfg, double x,
                                 const QuadratureSpec& q,
                                 bool physical_transmission) {
  return oracle_psi_slit_grid(cfg, {x}, q, physical_transmission).front();
}

std::vector<ComplexAmplitude> oracle_psi_slit_grid(const PhysicalConfig& cfg,
                                                   const std::vector<double>& xs,
                                                   const QuadratureSpec& q,
                                                   bool physical_transmission) {
  cfg.validate();
  check_spec(q);
  if (xs.empty()) throw std::invalid_argument("oracle_psi_slit: empty grid");
  double x_absmax = 0;
  for (double x : xs) x_absmax = std::max(x_absmax, std::abs(x));

  const SlitPlane plane = build_slit_plane(cfg, q, x_absmax);
  std::vector<ComplexAmplitude> out = propagate_plane(cfg, plane, plane.mask, xs);
  if (!physical_transmission) {
    // Propagation after the mask is unitary, so the screen norm equals the
    // masked plane norm.
    const double root_T = plane_norm(plane, plane.mask);
    for (auto& v : out) v /= root_T;
  }
  return out;
}

double oracle_babinet_identity(const PhysicalConfig& cfg,
                               const std::vector<double>& xs,
                               const QuadratureSpec& q) {
  cfg.validate();
  check_spec(q);
  validate_grid(xs);
  double x_absmax = 0;
  for (double x : xs) x_absmax = std::max(x_absmax, std::abs(x));

  const SlitPlane plane = build_slit_plane(cfg, q, x_absmax);
  std::vector<double> complement(plane.mask.size());
  for (std::size_t j = 0; j < complement.size(); ++j) {
    complement[j] = 1.0 - plane.mask[j];
  }
  const std::vector<ComplexAmplitude> through_slit =
      propagate_plane(cfg, plane, plane.mask, xs);
  const std::vector<ComplexAmplitude> around_obstacle =
      propagate_plane(cfg, plane, complement, xs);
  const std::vector<ComplexAmplitude> free =
      oracle_psi_free_grid(cfg, xs, cfg.t + cfg.tau, q);

  double peak = 0;
  for (const auto& v : free) peak = std::max(peak, std::abs(v));
  double dev = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    dev = std::max(dev,
                   std::abs(through_slit[k] + around_obstacle[k] - free[k]));
  }
  return dev / peak;
}

double oracle_decoherent_intensity(const PhysicalConfig& cfg, double ell,
                                   double x, const QuadratureSpec& q) {
  return oracle_decoherent_profile(cfg, ell, {x}, q).values.front();
}

IntensityProfile oracle_decoherent_profile(const PhysicalConfig& cfg,
                                           double ell,
                                           const std::vector<double>& grid,
                                           const QuadratureSpec& q) {
  cfg.validate();
  check_spec(q);
  validate_grid(grid);
  if (!(ell > 0)) throw std::invalid_argument("oracle: ell must be positive");

  const FreeBeamParams fb = free_params(cfg, cfg.t);
  const SlitBeamParams ob = obstacle_plane_params(cfg);
  const double m_over_hbar = cfg.mass / cfg.hbar;
  const double theta = m_over_hbar / cfg.tau;

  double x_absmax = 0;
  for (double x : grid) x_absmax = std::max(x_absmax, std::abs(x));

  // Mean/difference coordinates: s = (x0 + x0')/2, u = x0 - x0'. The
  // coherence kernel confines u to min(full width, 10 ell); everything is
  // Gaussian-damped in s at the obstacle-plane widths.
  const double w = q.half_width_sigmas * fb.b;
  const double u_max = std::min(2.0 * w, 10.0 * ell);
  const double s_max = w + 0.5 * u_max;

  const double f_u = theta * (w + x_absmax) + m_over_hbar * w / fb.r;
  const std::size_t n_u =
      required_nodes(f_u, 2.0 * u_max, std::min(ell, 2.0 * ob.B), q,
                     "difference-coordinate integral");
  const double f_s = (theta + m_over_hbar / fb.r) * u_max;
  const std::size_t n_s = required_nodes(
      f_s, 2.0 * s_max, ob.B, q, "mean-coordinate integral");

  const Nodes su = make_nodes(u_max, n_u);
  const Nodes ss = make_nodes(s_max, n_s);

  // Obstacle-plane wave, common Gouy phase dropped (cancels in psi psi*).
  const double amp_f = 1.0 / std::sqrt(fb.b * std::sqrt(M_PI));
  const double amp_s = 1.0 / std::sqrt(ob.B * std::sqrt(M_PI));
  const double curv = 0.5 * m_over_hbar / fb.r;
  auto psi_obstacle = [&](double xx) {
    const double envelope =
        amp_f * std::exp(-xx * xx / (2.0 * fb.b * fb.b)) -
        amp_s * std::exp(-xx * xx / (2.0 * ob.B * ob.B));
    return std::polar(envelope, curv * xx * xx);
  };

  // G(u) = int ds e^{i theta u s} psi(s + u/2) conj(psi(s - u/2)).
  // Difference-coordinate rows are independent and partition across threads;
  // each writes only its own G[j], so results match the serial loop exactly.
  std::vector<ComplexAmplitude> G(n_u);
  parallel_index_for(n_u, [&](std::size_t j) {
    const double uj = su.x[j];
    std::vector<ComplexAmplitude> row(n_s);
    for (std::size_t i = 0; i < n_s; ++i) {
      const double si = ss.x[i];
      const ComplexAmplitude pair =
          psi_obstacle(si + 0.5 * uj) * std::conj(psi_obstacle(si - 0.5 * uj));
      row[i] = pair * std::polar(1.0, theta * uj * si);
    }
    G[j] = simpson(row, ss.h);
  });

  std::vector<double> damp(n_u);
  for (std::size_t j = 0; j < n_u; ++j) {
    damp[j] = std::exp(-su.x[j] * su.x[j] / (2.0 * ell * ell));
  }

  IntensityProfile p;
  p.xs = grid;
  p.values.resize(grid.size());
  std::vector<ComplexAmplitude> integrand(n_u);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t j = 0; j < n_u; ++j) {
      integrand[j] = G[j] * damp[j] * std::polar(1.0, theta * su.x[j] * grid[k]);
    }
    const ComplexAmplitude val = simpson(integrand, su.h);
    // Diagonal of a Hermitian density matrix: anything beyond roundoff in the
    // imaginary part means a conjugation bug.
    if (std::abs(val.imag()) > 1e-10 * std::abs(val.real())) {
      throw std::logic_error(
          "oracle_decoherent: non-real intensity at x = " + format_double(grid[k]) +
          " (re " + format_double(val.real()) + ", im " + format_double(val.imag()) + ")");
    }
    p.values[k] = val.real();
  }
  p.meta = "oracle decoherent ell=" + format_double(ell);
  return p;
}

}  // namespace arago
