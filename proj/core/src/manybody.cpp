#include "jsnl/manybody.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jsnl/fft.hpp"
#include "jsnl/spectral.hpp"

namespace jsnl {

long CompositeGrid::total_points() const {
  long total = 1;
  for (const Grid& g : axes) total *= g.n;
  return total;
}

long CompositeGrid::stride(int axis) const {
  long s = 1;
  for (int a = n_axes() - 1; a > axis; --a) s *= axes[static_cast<size_t>(a)].n;
  return s;
}

double CompositeGrid::cell_volume() const {
  double v = 1.0;
  for (const Grid& g : axes) v *= g.spacing;
  return v;
}

CompositeGrid make_composite_grid(int n_particles, int dims_per_particle,
                                  std::vector<Grid> axes, std::vector<double> masses,
                                  std::vector<double> length_scales) {
  if (n_particles < 1 || dims_per_particle < 1)
    raise(Errc::bad_argument, "composite grid needs n_particles, d >= 1");
  const int nd = n_particles * dims_per_particle;
  if (static_cast<int>(axes.size()) != nd)
    raise(Errc::bad_argument, "composite grid needs one axis grid per degree of freedom");
  if (static_cast<int>(masses.size()) != n_particles)
    raise(Errc::bad_argument, "composite grid needs one mass per particle");
  if (static_cast<int>(length_scales.size()) != dims_per_particle)
    raise(Errc::bad_argument, "composite grid needs one length scale per physical axis");
  for (double m : masses)
    if (!(m > 0.0)) raise(Errc::bad_argument, "masses must be positive");
  for (double l : length_scales)
    if (!(l > 0.0)) raise(Errc::bad_argument, "length scales must be positive");

  CompositeGrid grid{n_particles, dims_per_particle, std::move(axes), std::move(masses),
                     std::move(length_scales)};
  if (grid.total_points() > CompositeGrid::kMaxPoints)
    raise(Errc::grid_too_large, "composite grid exceeds the desk-scale point budget");
  return grid;
}

std::pair<int, int> axis_maps(int i, const CompositeGrid& grid) {
  if (i < 1 || i > grid.n_axes())
    raise(Errc::index_out_of_range, "axis index " + std::to_string(i) + " out of range");
  const int d = grid.dims_per_particle;
  return {(i + d - 1) / d, ((i - 1) % d) + 1};
}

double norm_squared(const CompositeWave& psi) {
  double sum = 0.0;
  for (const cplx& v : psi.values) sum += std::norm(v);
  return sum * psi.grid.cell_volume();
}

void normalize(CompositeWave& psi) {
  const double n2 = norm_squared(psi);
  if (!(n2 > 0.0)) raise(Errc::non_finite, "cannot normalize a zero composite state");
  const double s = 1.0 / std::sqrt(n2);
  for (cplx& v : psi.values) v *= s;
}

std::vector<double> density_of(const CompositeWave& psi) {
  std::vector<double> rho(psi.values.size());
  for (size_t j = 0; j < rho.size(); ++j) rho[j] = std::norm(psi.values[j]);
  return rho;
}

namespace {

// Applies fn(base, stride, count) to every 1D line along `axis`.
template <typename Fn>
void for_each_line(const CompositeGrid& grid, int axis, Fn&& fn) {
  const long stride = grid.stride(axis);
  const int count = grid.axes[static_cast<size_t>(axis)].n;
  const long block = stride * count;
  const long total = grid.total_points();
  for (long hi = 0; hi < total; hi += block)
    for (long lo = 0; lo < stride; ++lo) fn(hi + lo, stride, count);
}

}  // namespace

std::vector<double> axis_shift(std::span<const double> values, const CompositeGrid& grid,
                               int axis, int steps) {
  const int count = grid.axes[static_cast<size_t>(axis)].n;
  int s = steps % count;
  if (s < 0) s += count;
  std::vector<double> out(values.size());
  for_each_line(grid, axis, [&](long base, long stride, int n) {
    for (int t = 0; t < n; ++t)
      out[static_cast<size_t>(base + t * stride)] =
          values[static_cast<size_t>(base + ((t + s) % n) * stride)];
  });
  return out;
}

std::vector<double> axis_derivative(std::span<const double> values, const CompositeGrid& grid,
                                    int axis, int order, double dealias_fraction) {
  const Grid& ax = grid.axes[static_cast<size_t>(axis)];
  std::vector<double> multiplier = wavenumbers(ax);
  const double kcut = std::min(dealias_fraction, 1.0) * std::numbers::pi / ax.spacing;
  std::vector<bool> keep(multiplier.size());
  for (size_t j = 0; j < multiplier.size(); ++j) keep[j] = std::abs(multiplier[j]) <= kcut;

  std::vector<double> out(values.size());
  std::vector<cplx> line(static_cast<size_t>(ax.n));
  std::vector<cplx> hat(static_cast<size_t>(ax.n));
  const size_t nyquist = static_cast<size_t>(ax.n / 2);

  for_each_line(grid, axis, [&](long base, long stride, int n) {
    for (int t = 0; t < n; ++t)
      line[static_cast<size_t>(t)] = values[static_cast<size_t>(base + t * stride)];
    fft::forward(line, hat);
    if (order == 1) {
      for (size_t j = 0; j < hat.size(); ++j)
        hat[j] = keep[j] ? hat[j] * cplx(0.0, multiplier[j]) : cplx(0.0);
      hat[nyquist] = 0.0;
    } else {
      for (size_t j = 0; j < hat.size(); ++j)
        hat[j] = keep[j] ? hat[j] * (-multiplier[j] * multiplier[j]) : cplx(0.0);
    }
    fft::inverse(hat, line);
    for (int t = 0; t < n; ++t)
      out[static_cast<size_t>(base + t * stride)] = line[static_cast<size_t>(t)].real();
  });
  return out;
}

std::vector<double> manybody_nonlinear_term(std::span<const double> rho,
                                            const CompositeGrid& grid, double hbar,
                                            const ManybodyTermOptions& opts) {
  if (static_cast<long>(rho.size()) != grid.total_points())
    raise(Errc::bad_argument, "manybody_nonlinear_term: density size mismatch");

  const size_t n = rho.size();
  std::vector<double> r(n);
  double peak = 0.0;
  for (size_t j = 0; j < n; ++j) {
    r[j] = std::max(rho[j], opts.floor);
    peak = std::max(peak, rho[j]);
  }

  std::vector<double> root;
  if (opts.bohm_form == BohmForm::sqrt_rho) {
    root.resize(n);
    for (size_t j = 0; j < n; ++j) root[j] = std::sqrt(r[j]);
  }

  std::vector<double> out(n, 0.0);
  for (int axis = 0; axis < grid.n_axes(); ++axis) {
    const double m = grid.masses[static_cast<size_t>(grid.particle_of_axis(axis))];
    const double l = grid.length_scales[static_cast<size_t>(grid.dimension_of_axis(axis))];
    const int steps = shift_steps(grid.axes[static_cast<size_t>(axis)], l);
    const double half_zeta = 0.5 * hbar * hbar / (m * l * l);

    const std::vector<double> rp = axis_shift(r, grid, axis, steps);
    const std::vector<double> rm = axis_shift(r, grid, axis, -steps);
    for (size_t j = 0; j < n; ++j)
      out[j] += half_zeta * std::log(4.0 * r[j] * r[j] / ((r[j] + rp[j]) * (rm[j] + r[j])));

    if (opts.bohm_form == BohmForm::sqrt_rho) {
      const std::vector<double> d2 =
          axis_derivative(root, grid, axis, 2, opts.dealias_fraction);
      const double coeff = hbar * hbar / (2.0 * m);
      for (size_t j = 0; j < n; ++j) out[j] += coeff * d2[j] / root[j];
    } else {
      const std::vector<double> d1 = axis_derivative(r, grid, axis, 1, opts.dealias_fraction);
      const std::vector<double> d2 = axis_derivative(r, grid, axis, 2, opts.dealias_fraction);
      const double coeff = hbar * hbar / (8.0 * m);
      for (size_t j = 0; j < n; ++j)
        out[j] += coeff * (2.0 * d2[j] / r[j] - d1[j] * d1[j] / (r[j] * r[j]));
    }
  }

  const double cut = opts.vacuum_rel * peak;
  for (size_t j = 0; j < n; ++j)
    if (rho[j] < cut) out[j] = 0.0;
  return out;
}

std::vector<double> reduced_density_values(const CompositeWave& psi, int particle) {
  const CompositeGrid& grid = psi.grid;
  if (particle < 1 || particle > grid.n_particles)
    raise(Errc::index_out_of_range, "particle index out of range");
  const int d = grid.dims_per_particle;
  const int first_axis = (particle - 1) * d;

  long own = 1;
  for (int a = first_axis; a < first_axis + d; ++a)
    own *= grid.axes[static_cast<size_t>(a)].n;
  std::vector<double> out(static_cast<size_t>(own), 0.0);

  double other_volume = grid.cell_volume();
  for (int a = first_axis; a < first_axis + d; ++a)
    other_volume /= grid.axes[static_cast<size_t>(a)].spacing;

  const long total = grid.total_points();
  for (long idx = 0; idx < total; ++idx) {
    long key = 0;
    for (int a = first_axis; a < first_axis + d; ++a) {
      const long coord = (idx / grid.stride(a)) % grid.axes[static_cast<size_t>(a)].n;
      key = key * grid.axes[static_cast<size_t>(a)].n + coord;
    }
    out[static_cast<size_t>(key)] += std::norm(psi.values[static_cast<size_t>(idx)]);
  }
  for (double& v : out) v *= other_volume;
  return out;
}

DensityField reduced_density(const CompositeWave& psi, int particle) {
  if (psi.grid.dims_per_particle != 1)
    raise(Errc::bad_argument, "reduced_density: DensityField form needs d = 1");
  const Grid& axis = psi.grid.axes[static_cast<size_t>(particle - 1)];
  return DensityField{axis, reduced_density_values(psi, particle)};
}

namespace {

std::vector<double> composite_interaction(const std::vector<double>& rho,
                                          const CompositeGrid& grid,
                                          const CompositeEvolutionConfig& cfg) {
  if (!cfg.js_nonlinearity) return std::vector<double>(rho.size(), 0.0);
  ManybodyTermOptions opts;
  opts.floor = cfg.floor;
  opts.vacuum_rel = cfg.vacuum_rel;
  opts.dealias_fraction = cfg.dealias_fraction;
  return manybody_nonlinear_term(rho, grid, cfg.hbar, opts);
}

void apply_composite_phase(CompositeWave& psi, const std::vector<double>& w, double factor) {
  for (size_t j = 0; j < psi.values.size(); ++j)
    psi.values[j] *= std::polar(1.0, -w[j] * factor);
}

void apply_half_potential(CompositeWave& psi, const CompositeEvolutionConfig& cfg) {
  std::vector<double> w = composite_interaction(density_of(psi), psi.grid, cfg);
  if (!cfg.potential.empty()) {
    if (cfg.potential.size() != w.size())
      raise(Errc::bad_argument, "composite potential size mismatch");
    for (size_t j = 0; j < w.size(); ++j) w[j] += cfg.potential[j];
  }
  apply_composite_phase(psi, w, 0.5 * cfg.dt / cfg.hbar);
}

void apply_kinetic(CompositeWave& psi, const CompositeEvolutionConfig& cfg) {
  const CompositeGrid& grid = psi.grid;
  std::vector<cplx> line, hat;
  for (int axis = 0; axis < grid.n_axes(); ++axis) {
    const Grid& ax = grid.axes[static_cast<size_t>(axis)];
    const double m = grid.masses[static_cast<size_t>(grid.particle_of_axis(axis))];
    std::vector<double> phase = wavenumbers(ax);
    for (double& k : phase) k = cfg.hbar * k * k / (2.0 * m) * cfg.dt;
    line.resize(static_cast<size_t>(ax.n));
    hat.resize(static_cast<size_t>(ax.n));
    for_each_line(grid, axis, [&](long base, long stride, int n) {
      for (int t = 0; t < n; ++t)
        line[static_cast<size_t>(t)] = psi.values[static_cast<size_t>(base + t * stride)];
      fft::forward(line, hat);
      for (int t = 0; t < n; ++t)
        hat[static_cast<size_t>(t)] *= std::polar(1.0, -phase[static_cast<size_t>(t)]);
      fft::inverse(hat, line);
      for (int t = 0; t < n; ++t)
        psi.values[static_cast<size_t>(base + t * stride)] = line[static_cast<size_t>(t)];
    });
  }
}

}  // namespace

CompositeWave composite_strang_step(const CompositeWave& psi,
                                    const CompositeEvolutionConfig& cfg) {
  CompositeWave out = psi;
  apply_half_potential(out, cfg);
  apply_kinetic(out, cfg);
  apply_half_potential(out, cfg);
  return out;
}

double composite_energy(const CompositeWave& psi, const CompositeEvolutionConfig& cfg) {
  const CompositeGrid& grid = psi.grid;
  const std::vector<double> rho = density_of(psi);
  const size_t n = rho.size();
  const double vol = grid.cell_volume();

  double sum = 0.0;
  // classical kinetic part, axis by axis through the probability current
  std::vector<double> re(n), im(n);
  for (size_t j = 0; j < n; ++j) {
    re[j] = psi.values[j].real();
    im[j] = psi.values[j].imag();
  }
  for (int axis = 0; axis < grid.n_axes(); ++axis) {
    const double m = grid.masses[static_cast<size_t>(grid.particle_of_axis(axis))];
    const std::vector<double> dre = axis_derivative(re, grid, axis, 1);
    const std::vector<double> dim = axis_derivative(im, grid, axis, 1);
    for (size_t j = 0; j < n; ++j) {
      const double flux = cfg.hbar * (re[j] * dim[j] - im[j] * dre[j]);
      sum += flux * flux / (2.0 * m * std::max(rho[j], cfg.floor));
    }
  }

  if (!cfg.potential.empty())
    for (size_t j = 0; j < n; ++j) sum += cfg.potential[j] * rho[j];

  if (cfg.js_nonlinearity) {
    std::vector<double> r(n);
    for (size_t j = 0; j < n; ++j) r[j] = std::max(rho[j], cfg.floor);
    for (int axis = 0; axis < grid.n_axes(); ++axis) {
      const double m = grid.masses[static_cast<size_t>(grid.particle_of_axis(axis))];
      const double l = grid.length_scales[static_cast<size_t>(grid.dimension_of_axis(axis))];
      const int steps = shift_steps(grid.axes[static_cast<size_t>(axis)], l);
      const double half_zeta = 0.5 * cfg.hbar * cfg.hbar / (m * l * l);
      const std::vector<double> rp = axis_shift(r, grid, axis, steps);
      const std::vector<double> rm = axis_shift(r, grid, axis, -steps);
      for (size_t j = 0; j < n; ++j)
        sum += half_zeta * r[j] *
               std::log(4.0 * r[j] * r[j] / ((r[j] + rp[j]) * (rm[j] + r[j])));
    }
  }
  return sum * vol;
}

CompositeEvolveResult composite_evolve(const CompositeWave& psi0,
                                       const CompositeEvolutionConfig& cfg) {
  if (cfg.record_every < 1) raise(Errc::bad_argument, "record_every must be >= 1");
  CompositeEvolveResult result;
  CompositeWave psi = psi0;

  auto record = [&](long step) {
    DiagnosticsRecord d;
    d.time = step * cfg.dt;
    d.norm_sq = norm_squared(psi);
    d.energy = composite_energy(psi, cfg);
    result.trajectory.push_back(psi);
    result.diagnostics.push_back(d);
  };

  record(0);
  for (long step = 1; step <= cfg.n_steps; ++step) {
    psi = composite_strang_step(psi, cfg);
    if (step % cfg.record_every == 0 || step == cfg.n_steps) {
      for (const cplx& z : psi.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
          raise(Errc::non_finite, "composite field became non-finite");
      record(step);
    }
  }
  return result;
}

WaveField gaussian_wave(const Grid& grid, double x0, double sigma, double k0) {
  WaveField psi{grid, std::vector<cplx>(static_cast<size_t>(grid.n))};
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.x(j);
    psi.values[static_cast<size_t>(j)] =
        std::polar(std::exp(-(x - x0) * (x - x0) / (4.0 * sigma * sigma)), k0 * x);
  }
  normalize(psi);
  return psi;
}

CompositeWave product_state(const CompositeGrid& grid, const WaveField& f1,
                            const WaveField& f2) {
  if (grid.n_axes() != 2)
    raise(Errc::bad_argument, "product_state helper covers the two-axis case");
  const int n1 = grid.axes[0].n, n2 = grid.axes[1].n;
  if (f1.grid.n != n1 || f2.grid.n != n2)
    raise(Errc::grid_mismatch, "product_state: factor grids do not match axes");
  CompositeWave psi{grid, std::vector<cplx>(static_cast<size_t>(n1) * n2)};
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      psi.values[static_cast<size_t>(a) * n2 + b] =
          f1.values[static_cast<size_t>(a)] * f2.values[static_cast<size_t>(b)];
  normalize(psi);
  return psi;
}

CompositeWave entangled_state(const CompositeGrid& grid, const WaveField& a,
                              const WaveField& b) {
  if (grid.n_axes() != 2)
    raise(Errc::bad_argument, "entangled_state helper covers the two-axis case");
  const int n1 = grid.axes[0].n, n2 = grid.axes[1].n;
  CompositeWave psi{grid, std::vector<cplx>(static_cast<size_t>(n1) * n2)};
  for (int p = 0; p < n1; ++p)
    for (int q = 0; q < n2; ++q)
      psi.values[static_cast<size_t>(p) * n2 + q] =
          a.values[static_cast<size_t>(p)] * b.values[static_cast<size_t>(q)] +
          b.values[static_cast<size_t>(p)] * a.values[static_cast<size_t>(q)];
  normalize(psi);
  return psi;
}

SeparabilityReport separability_experiment(const SeparabilityConfig& cfg) {
  const Grid& ax = cfg.axis;
  CompositeGrid grid = make_composite_grid(2, 1, {ax, ax}, {cfg.mass1, cfg.mass2},
                                           {cfg.length_scale});

  CompositeWave psi0 =
      cfg.initial == InitialKind::product
          ? product_state(grid, gaussian_wave(ax, cfg.x0_1, cfg.sigma1),
                          gaussian_wave(ax, cfg.x0_2, cfg.sigma2))
          : entangled_state(grid, gaussian_wave(ax, -cfg.entangled_sep, cfg.entangled_sigma),
                            gaussian_wave(ax, cfg.entangled_sep, cfg.entangled_sigma));

  auto composite_potential = [&](const std::vector<double>& v2) {
    std::vector<double> v(static_cast<size_t>(ax.n) * ax.n, 0.0);
    for (int p = 0; p < ax.n; ++p)
      for (int q = 0; q < ax.n; ++q) {
        double val = 0.0;
        if (!cfg.v1.empty()) val += cfg.v1[static_cast<size_t>(p)];
        if (!v2.empty()) val += v2[static_cast<size_t>(q)];
        val += cfg.coupling * ax.x(p) * ax.x(q);
        v[static_cast<size_t>(p) * ax.n + q] = val;
      }
    return v;
  };

  CompositeEvolutionConfig base;
  base.hbar = cfg.hbar;
  base.dt = cfg.dt;
  base.n_steps = cfg.n_steps;
  base.record_every = cfg.record_every;
  base.js_nonlinearity = cfg.js_nonlinearity;
  base.dealias_fraction = cfg.dealias_fraction;

  CompositeEvolutionConfig run_a = base, run_b = base;
  run_a.potential = composite_potential(cfg.v2_baseline);
  run_b.potential = composite_potential(cfg.v2_modified);

  CompositeWave pa = psi0, pb = psi0;
  SeparabilityReport report;

  auto record = [&](long step) {
    const std::vector<double> ma = reduced_density_values(pa, 1);
    const std::vector<double> mb = reduced_density_values(pb, 1);
    double dist = 0.0;
    for (size_t j = 0; j < ma.size(); ++j) dist += std::abs(ma[j] - mb[j]);
    dist *= ax.spacing;
    report.max_marginal_distance = std::max(report.max_marginal_distance, dist);
    report.rows.push_back(SeparabilityRow{step * cfg.dt, dist, norm_squared(pa),
                                          composite_energy(pa, run_a)});
  };

  record(0);
  for (long step = 1; step <= cfg.n_steps; ++step) {
    pa = composite_strang_step(pa, run_a);
    pb = composite_strang_step(pb, run_b);
    if (step % cfg.record_every == 0 || step == cfg.n_steps) record(step);
  }
  return report;
}

}  // namespace jsnl
