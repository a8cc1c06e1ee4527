// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// unexpected outcome. Each check pins its tolerance in code next to the
// measurement. Runs at desk scale (1D grids up to 2048, one 128^2 composite
// case) in a few minutes on one core.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "jsnl/evolve.hpp"
#include "jsnl/hamiltonian.hpp"
#include "jsnl/manybody.hpp"
#include "jsnl/measures.hpp"
#include "jsnl/potential.hpp"
#include "jsnl/runner.hpp"
#include "jsnl/spectral.hpp"

using namespace jsnl;

namespace {

constexpr double pi = std::numbers::pi;

int g_failures = 0;
int g_checks = 0;

void record(const std::string& name, bool pass, const std::string& detail) {
  ++g_checks;
  if (!pass) ++g_failures;
  std::printf("[%s] %s  %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

// A property the run demonstrates to be numerically false: reported with its
// measured value, counted as expected. An unexpected pass flips the suite red
// so the record stays honest in both directions.
void record_expected_fail(const std::string& name, bool pass, const std::string& detail) {
  ++g_checks;
  if (pass) {
    ++g_failures;
    std::printf("[XPASS] %s  %s  (expected to fail; revisit the ledger analysis)\n",
                name.c_str(), detail.c_str());
  } else {
    std::printf("[XFAIL] %s  %s  (known deviation, see decisions ledger)\n", name.c_str(),
                detail.c_str());
  }
  std::fflush(stdout);
}

std::string qoi(double value, double threshold) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(val=%.3e, thr=%.3e)", value, threshold);
  return buf;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2_distance(const WaveField& a, const WaveField& b) {
  double sum = 0.0;
  for (size_t j = 0; j < a.values.size(); ++j) sum += std::norm(a.values[j] - b.values[j]);
  return std::sqrt(sum * a.grid.spacing);
}

double fitted_order(const std::vector<double>& values, const std::vector<double>& metrics) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(values.size());
  for (int i = 0; i < m; ++i) {
    const double lx = std::log(values[i]), ly = std::log(metrics[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

DensityField gaussian_density(const Grid& g, double x0, double sigma) {
  DensityField rho{g, std::vector<double>(static_cast<size_t>(g.n))};
  for (int j = 0; j < g.n; ++j) {
    const double x = g.x(j) - x0;
    rho.values[j] = std::exp(-x * x / (2.0 * sigma * sigma));
  }
  normalize(rho);
  return rho;
}

DensityField gaussian_with_background(const Grid& g, double sigma, double weight) {
  DensityField rho = gaussian_density(g, 0.0, sigma);
  for (double& v : rho.values) v = (1.0 - weight) * v + weight / g.length;
  return rho;
}

// ---------------------------------------------------------------------------
// 1. scale invariance of the nonlinear term
void criterion_scale_invariance() {
  const Grid g = make_grid(16.0, 256, -8.0);
  ModelParams params;
  params.length_scale = 0.25;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityField rho = random_density(g, 1000 + seed);
    const std::vector<double> base = nonlinear_term(rho, params);
    const double scale = 1.0 + max_abs(base);
    for (double gamma_sq : {0.01, 0.25, 4.0, 100.0}) {
      DensityField scaled = rho;
      for (double& v : scaled.values) v *= gamma_sq;
      const std::vector<double> out = nonlinear_term(scaled, params);
      for (size_t j = 0; j < out.size(); ++j)
        worst = std::max(worst, std::abs(out[j] - base[j]) / scale);
    }
  }
  record("C01 scale-invariance N(g^2 rho) = N(rho)", worst < 1e-10, qoi(worst, 1e-10));
}

// 2. linear limit: JS vs linear evolution distance is O(l^2)
void criterion_linear_limit() {
  const Grid g = make_grid(25.6, 1024, -12.8);
  const WaveField psi0 = gaussian_wave(g, 0.0, 1.0, 0.0);
  const double dt = 2.5e-4;
  const long steps = 4000;  // t = 1

  EvolutionConfig lin;
  lin.nonlinearity = Nonlinearity::none;
  lin.dt = dt;
  lin.n_steps = steps;
  lin.record_every = steps;
  lin.quiet = true;
  const WaveField linear_out = evolve(psi0, lin).trajectory.back();

  const std::vector<double> ls = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> dist;
  for (double l : ls) {
    EvolutionConfig cfg = lin;
    cfg.nonlinearity = Nonlinearity::js;
    cfg.params.length_scale = l;
    dist.push_back(l2_distance(evolve(psi0, cfg).trajectory.back(), linear_out));
  }
  bool ratios_ok = true;
  for (size_t i = 1; i < dist.size(); ++i) {
    const double r = dist[i - 1] / dist[i];
    std::printf("    l %.2f -> %.2f: dist %.4e -> %.4e ratio %.3f\n", ls[i - 1], ls[i],
                dist[i - 1], dist[i], r);
    ratios_ok = ratios_ok && r > 3.5 && r < 4.5;
  }
  const double order = fitted_order(ls, dist);
  record("C02 linear limit O(l^2)", ratios_ok && order > 1.8 && order < 2.2,
         qoi(order, 2.0) + std::string(" ratios in [3.5,4.5]: ") + (ratios_ok ? "yes" : "no"));
}

// 3. expansion residual shrinks ~16x per halving of l
void criterion_expansion_residual() {
  const Grid g = make_grid(16.0, 512, -8.0);
  const DensityField rho = gaussian_with_background(g, 1.0, 1e-3);
  std::vector<double> residuals;
  const std::vector<double> ls = {0.5, 0.25, 0.125, 0.0625};
  for (double l : ls) {
    ModelParams p;
    p.length_scale = l;
    const std::vector<double> n = nonlinear_term(rho, p);
    const std::vector<double> e = nonlinear_term_expansion(rho, p);
    double worst = 0.0;
    for (size_t j = 0; j < n.size(); ++j) worst = std::max(worst, std::abs(n[j] - e[j]));
    residuals.push_back(worst);
  }
  bool ok = true;
  double worst_ratio = 0.0;
  for (size_t i = 1; i < residuals.size(); ++i) {
    const double r = residuals[i - 1] / residuals[i];
    std::printf("    l %.4f -> %.4f: residual ratio %.2f\n", ls[i - 1], ls[i], r);
    ok = ok && r > 12.0 && r < 20.0;
    worst_ratio = r;
  }
  record("C03 expansion residual O(l^4)", ok, qoi(worst_ratio, 16.0) + " all in [12,20]");
}

// 4. norm conservation over 1e4 Strang steps
void criterion_norm_conservation() {
  const Grid g = make_grid(25.6, 512, -12.8);
  EvolutionConfig cfg;
  cfg.params.length_scale = 0.2;
  cfg.dt = 2.5e-4;
  cfg.quiet = true;
  WaveField psi = gaussian_wave(g, 0.0, 1.0, 0.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    psi = strang_step(psi, cfg);
    if (i % 250 == 249) worst = std::max(worst, std::abs(norm_squared(psi) - 1.0));
  }
  worst = std::max(worst, std::abs(norm_squared(psi) - 1.0));
  record("C04 norm conservation over 1e4 steps", worst < 1e-12, qoi(worst, 1e-12));
}

// 5. energy drift is O(dt^2): halving dt cuts the drift by ~4
void criterion_energy_conservation() {
  const Grid g = make_grid(25.6, 1024, -12.8);
  std::vector<double> drifts;
  for (double dt : {4e-4, 2e-4}) {
    EvolutionConfig cfg;
    cfg.params.length_scale = 0.2;
    cfg.potential = PotentialSpec::harmonic(1.0);
    cfg.dt = dt;
    cfg.n_steps = std::lround(1.0 / dt);
    cfg.record_every = 10;
    cfg.quiet = true;
    const WaveField psi0 = gaussian_wave(g, 1.0, 0.7, 0.0);
    const EvolveResult res = evolve(psi0, cfg);
    const double e0 = res.diagnostics.front().energy;
    double drift = 0.0;
    for (const DiagnosticsRecord& d : res.diagnostics)
      drift = std::max(drift, std::abs(d.energy - e0));
    drifts.push_back(drift);
  }
  const double ratio = drifts[0] / drifts[1];
  record("C05 energy drift O(dt^2)", ratio > 3.2 && ratio < 4.8,
         qoi(ratio, 4.0) + " drift " + qoi(drifts[0], drifts[1]));
}

// 6. JS bounds on 1000 seeded pairs (plus the K-form / entropy-form
// equality and KL nonnegativity on the same ensemble)
void criterion_js_bounds() {
  const Grid g = make_grid(16.0, 256, -8.0);
  int violations = 0;
  double worst_form_gap = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const DensityPair pair{random_density(g, 2 * seed), random_density(g, 2 * seed + 1)};
    const double js = js_divergence(pair);
    const double j = j_divergence(pair);
    const double kl = kl_divergence(pair.rho1, pair.rho0);
    if (!(js >= 0.0 && js <= 0.25 * j + 1e-15 && js <= std::log(2.0) + 1e-15 && kl >= 0.0))
      ++violations;
    worst_form_gap =
        std::max(worst_form_gap, std::abs(js - js_divergence_entropy_form(pair)));
  }
  record("C06 JS bounds 0 <= I_JS <= min(J/4, ln 2) on 1000 pairs",
         violations == 0 && worst_form_gap < 1e-10,
         "violations=" + std::to_string(violations) + " form gap " +
             qoi(worst_form_gap, 1e-10));
}

// 7. sqrt(JS) triangle inequality on 1000 seeded triples
void criterion_js_metric() {
  const Grid g = make_grid(16.0, 256, -8.0);
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const DensityField a = random_density(g, 3 * seed);
    const DensityField b = random_density(g, 3 * seed + 1);
    const DensityField c = random_density(g, 3 * seed + 2);
    const double dab = js_distance(DensityPair{a, b});
    const double dbc = js_distance(DensityPair{b, c});
    const double dac = js_distance(DensityPair{a, c});
    if (dac > dab + dbc + 1e-12) ++violations;
  }
  record("C07 sqrt(JS) triangle inequality on 1000 triples", violations == 0,
         "violations=" + std::to_string(violations));
}

// 8. small-shift coefficients with second-order convergence
void criterion_small_shift() {
  const Grid g = make_grid(25.6, 2048, -12.8);
  const DensityField rho = gaussian_density(g, 0.0, 1.0);
  const std::vector<double> deltas = {0.8, 0.4, 0.2, 0.1};

  bool all_ok = true;
  auto run_case = [&](const char* label, ShiftMeasure m, double piw, double limit) {
    std::vector<double> errors;
    for (double d : deltas)
      errors.push_back(std::abs(small_shift_ratio(rho, d, m, piw) - limit));
    const double rel = errors.back() / limit;
    const double order = fitted_order(deltas, errors);
    const bool ok = rel < 0.01 && order > 1.5 && order < 2.5;
    std::printf("    %s: finest rel err %.3e, observed order %.2f\n", label, rel, order);
    all_ok = all_ok && ok;
  };
  run_case("JS -> 1/8", ShiftMeasure::js, 0.5, 0.125);
  run_case("piJS(0.20) -> 0.08", ShiftMeasure::pi_js, 0.20, 0.5 * 0.20 * 0.80);
  run_case("piJS(0.35) -> 0.11375", ShiftMeasure::pi_js, 0.35, 0.5 * 0.35 * 0.65);
  run_case("piJS(0.50) -> 1/8", ShiftMeasure::pi_js, 0.50, 0.125);
  record("C08 small-shift coefficients 1/8 and pi(1-pi)/2", all_ok,
         "rel err < 1% at delta=0.1, order ~ 2");
}

// 9. Fisher path integral equals the symmetrized KL on 50 pairs
void criterion_fisher_path() {
  const Grid g = make_grid(16.0, 256, -8.0);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityPair pair{random_density(g, 5000 + seed), random_density(g, 6000 + seed)};
    const double sym = kl_divergence(pair.rho0, pair.rho1) +
                       kl_divergence(pair.rho1, pair.rho0);
    const double path = fisher_path_integral(pair, 64);
    worst = std::max(worst, std::abs(path - sym) / sym);
  }
  record("C09 Fisher path integral = KL(0,1)+KL(1,0)", worst < 1e-5, qoi(worst, 1e-5));
}

// 10. pi = 1/2 reduction of the parametric measures and potential
void criterion_pi_half_reduction() {
  const Grid g = make_grid(16.0, 256, -8.0);
  double worst_measure = 0.0, worst_potential = 0.0;
  ModelParams params;
  params.length_scale = 0.25;
  params.pi_weight = 0.5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityField a = random_density(g, 7000 + seed);
    const DensityField b = random_density(g, 8000 + seed);
    const DensityPair pair{a, b};
    worst_measure =
        std::max(worst_measure, std::abs(pi_js_divergence(make_weighted_pair(pair, 0.5)) -
                                         js_divergence(pair)));
    const std::vector<double> qn = js_quantum_potential(a, params);
    const std::vector<double> qp = parametric_quantum_potential(a, params);
    for (size_t j = 0; j < qn.size(); ++j)
      worst_potential = std::max(worst_potential,
                                 std::abs(qp[j] - qn[j]) / (1.0 + std::abs(qn[j])));
  }
  record("C10 pi=1/2 reduction (measure and potential)",
         worst_measure < 1e-12 && worst_potential < 1e-12,
         qoi(std::max(worst_measure, worst_potential), 1e-12));
}

// 11. repulsive quantum force for gaussians at sigma/l in {0.5, 1, 2, 5}
void criterion_repulsive_force() {
  const int n = 320;
  const double length = 16.0;
  const double dx = length / n;
  const Grid g = make_grid(length, n, -0.5 * length + 0.5 * dx);  // no seam point
  int total_violations = 0;
  for (double ratio : {0.5, 1.0, 2.0, 5.0}) {
    const double sigma = 1.0;
    const double l = sigma / ratio;
    ModelParams params;
    params.length_scale = l;
    const DensityField rho = gaussian_density(g, 0.0, sigma);
    std::vector<double> force = spectral_derivative(js_quantum_potential(rho, params), g, 1);
    for (double& f : force) f = -f;
    for (int j = 0; j < g.n; ++j) {
      const double x = g.x(j);
      if (std::abs(x) <= g.spacing) continue;
      if (force[j] * x <= 0.0) {
        ++total_violations;
        std::printf("    violation: sigma/l=%.1f at x=%.4f force=%.3e\n", ratio, x, force[j]);
      }
    }
  }
  record("C11 repulsive gaussian force, sigma/l in {0.5,1,2,5}", total_violations == 0,
         "violations=" + std::to_string(total_violations));
}

// 12. Hamilton's equations: oracle match and evolver time derivatives
void criterion_hamilton_equations() {
  const Grid g = make_grid(9.6, 96, -4.8);
  ModelParams params;
  params.length_scale = 0.4;  // 4 dx
  const PotentialSpec vspec = PotentialSpec::harmonic(1.0);
  const std::vector<double> v = vspec.evaluate(g);

  double worst_rho = 0.0, worst_s = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityField rho = random_density(g, 9000 + seed);
    const DensityField sf = random_density(g, 9500 + seed);
    std::vector<double> s(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) s[j] = 0.3 * sf.values[j] * g.length;
    const std::vector<double> grad_s = spectral_derivative(s, g, 1);
    const MadelungPair state{g, rho, grad_s};

    auto energy_rho = [&](std::span<const double> vals) {
      DensityField r{g, std::vector<double>(vals.begin(), vals.end())};
      const std::vector<double> q = js_energy_density(r, params);
      double sum = 0.0;
      for (int j = 0; j < g.n; ++j)
        sum += r.values[j] * (grad_s[j] * grad_s[j] / 2.0 + v[j]) + q[j];
      return sum * g.spacing;
    };
    const std::vector<double> numeric_rho =
        numerical_functional_derivative(energy_rho, rho.values, g);
    const std::vector<double> analytic_rho = functional_derivative_rho(state, params, vspec);
    for (int j = 0; j < g.n; ++j)
      worst_rho = std::max(worst_rho, std::abs(numeric_rho[j] - analytic_rho[j]) /
                                          (1.0 + std::abs(analytic_rho[j])));

    auto energy_s = [&](std::span<const double> vals) {
      const std::vector<double> ds =
          spectral_derivative(std::span<const double>(vals.data(), vals.size()), g, 1);
      double sum = 0.0;
      for (int j = 0; j < g.n; ++j) sum += rho.values[j] * ds[j] * ds[j] / 2.0;
      return sum * g.spacing;
    };
    const std::vector<double> numeric_s = numerical_functional_derivative(energy_s, s, g);
    const std::vector<double> analytic_s = functional_derivative_s(state, params);
    for (int j = 0; j < g.n; ++j)
      worst_s = std::max(worst_s, std::abs(numeric_s[j] - analytic_s[j]) /
                                      (1.0 + std::abs(analytic_s[j])));
  }
  const bool oracle_ok = worst_rho < 1e-5 && worst_s < 1e-5;
  std::printf("    oracle: dH/drho %.3e, dH/dS %.3e (thr 1e-5)\n", worst_rho, worst_s);

  // evolver route: dH/drho = -dS/dt, dH/dS = drho/dt at O(dt^2)
  const Grid ge = make_grid(16.0, 128, -8.0);
  EvolutionConfig cfg;
  cfg.params.length_scale = 0.5;
  cfg.potential = vspec;
  cfg.dt = 2e-4;
  cfg.n_steps = 2;
  cfg.record_every = 1;
  cfg.quiet = true;
  const WaveField psi0 = gaussian_wave(ge, 0.5, 1.0, 2.0 * pi * 2.0 / ge.length);
  const EvolveResult res = evolve(psi0, cfg);
  const WaveField &prev = res.trajectory[0], &mid = res.trajectory[1],
                  &next = res.trajectory[2];
  const MadelungPair state = madelung_from_wave(mid, 1.0);
  const std::vector<double> dh_drho = functional_derivative_rho(state, cfg.params, vspec);
  const std::vector<double> dh_ds = functional_derivative_s(state, cfg.params);
  double worst_ts = 0.0, worst_trho = 0.0;
  for (int j = 0; j < ge.n; ++j) {
    if (state.rho.values[j] < 1e-6) continue;
    const cplx psi_dot = (next.values[j] - prev.values[j]) / (2.0 * cfg.dt);
    const double s_dot = std::imag(psi_dot / mid.values[j]);
    worst_ts = std::max(worst_ts, std::abs(dh_drho[j] + s_dot) /
                                      (1.0 + std::abs(dh_drho[j])));
    const double rho_dot =
        (std::norm(next.values[j]) - std::norm(prev.values[j])) / (2.0 * cfg.dt);
    worst_trho =
        std::max(worst_trho, std::abs(dh_ds[j] - rho_dot) / (1.0 + std::abs(rho_dot)));
  }
  const bool evolver_ok = worst_ts < 1e-4 && worst_trho < 1e-4;
  std::printf("    evolver: -dS/dt %.3e, drho/dt %.3e (thr 1e-4 at dt=2e-4)\n", worst_ts,
              worst_trho);
  record("C12 Hamilton equations (oracle + evolver)", oracle_ok && evolver_ok, "");
}

// 13. homogeneity of E(N) and of the nonlinear vector field
void criterion_homogeneity() {
  const Grid g = make_grid(16.0, 256, -8.0);
  ModelParams params;
  params.length_scale = 0.25;

  double worst_e = 0.0;
  const DensityField rho = random_density(g, 97);
  const double base = expected_nonlinear(rho, params);
  for (double lam2 : {0.5, 2.0, 10.0}) {
    DensityField scaled = rho;
    for (double& v : scaled.values) v *= lam2;
    worst_e = std::max(worst_e, std::abs(expected_nonlinear(scaled, params) - lam2 * base) /
                                    std::abs(lam2 * base));
  }

  // X_N(lambda psi) = lambda X_N(psi) pointwise, complex lambda
  EvolutionConfig cfg;
  cfg.params = params;
  cfg.quiet = true;
  const DensityField sf = random_density(g, 98);
  std::vector<double> s(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j) s[j] = 0.3 * sf.values[j] * g.length;
  const WaveField psi = wave_from_madelung(random_density(g, 99), s, 1.0);

  auto x_nonlinear = [&](const WaveField& w) {
    const std::vector<double> nl = interaction_potential(density_of(w), cfg);
    WaveField out = w;
    for (size_t j = 0; j < w.values.size(); ++j)
      out.values[j] = cplx(0.0, -1.0) * nl[j] * w.values[j];
    return out;
  };
  const WaveField xbase = x_nonlinear(psi);
  double worst_x = 0.0;
  for (const cplx lambda : {cplx(2.0, 0.0), cplx(0.4, -0.6), cplx(0.0, 1.9)}) {
    WaveField scaled = psi;
    for (cplx& v : scaled.values) v *= lambda;
    const WaveField xs = x_nonlinear(scaled);
    for (size_t j = 0; j < xs.values.size(); ++j)
      worst_x = std::max(worst_x, std::abs(xs.values[j] - lambda * xbase.values[j]) /
                                      (1.0 + std::abs(xbase.values[j])));
  }
  record("C13 homogeneity: E(N) degree two, X_N degree one",
         worst_e < 1e-10 && worst_x < 1e-10, qoi(std::max(worst_e, worst_x), 1e-10));
}

// 14. von Neumann residual: second order in dt, tiny for the plane wave
void criterion_von_neumann() {
  const Grid g = make_grid(12.8, 48, -6.4);
  EvolutionConfig cfg;
  cfg.params.length_scale = 0.8;
  cfg.dt = 1e-3;
  cfg.quiet = true;

  WaveField plane{g, std::vector<cplx>(static_cast<size_t>(g.n))};
  const double k = 2.0 * pi * 3.0 / g.length;
  for (int j = 0; j < g.n; ++j) plane.values[j] = std::polar(1.0, k * g.x(j));
  normalize(plane);
  const double plane_res = von_neumann_residual(plane, cfg);

  const WaveField gauss = gaussian_wave(g, 0.4, 1.0, 0.5);
  std::vector<double> residuals;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    EvolutionConfig c = cfg;
    c.dt = dt;
    residuals.push_back(von_neumann_residual(gauss, c));
  }
  bool ratios_ok = true;
  for (size_t i = 1; i < residuals.size(); ++i) {
    const double r = residuals[i - 1] / residuals[i];
    std::printf("    dt halving ratio %.2f\n", r);
    ratios_ok = ratios_ok && r > 3.0 && r < 5.0;
  }
  record("C14 von Neumann residual: O(dt^2) and plane-wave < 1e-8",
         ratios_ok && plane_res < 1e-8, qoi(plane_res, 1e-8));
}

// 15. mobility: JS moves overlaps, linear dynamics does not
void criterion_mobility() {
  const Grid g = make_grid(25.6, 256, -12.8);
  const WaveField a = gaussian_wave(g, 0.0, 1.0, 0.0);
  const WaveField b = gaussian_wave(g, 1.5, 0.8, 2.0 * pi * 2.0 / g.length);

  EvolutionConfig cfg;
  cfg.params.length_scale = 0.2;
  cfg.dt = 5e-4;
  cfg.n_steps = 2000;
  cfg.record_every = 20;
  cfg.quiet = true;
  const OverlapTrace js = evolve_overlap(a, b, cfg);
  double dev = 0.0;
  for (double o : js.overlaps) dev = std::max(dev, std::abs(o - js.overlaps.front()));

  EvolutionConfig lin = cfg;
  lin.nonlinearity = Nonlinearity::none;
  const OverlapTrace lt = evolve_overlap(a, b, lin);
  double dev_lin = 0.0;
  for (double o : lt.overlaps) dev_lin = std::max(dev_lin, std::abs(o - lt.overlaps.front()));

  record("C15 mobility: JS overlap drift > 1e-6, linear < 1e-12",
         dev > 1e-6 && dev_lin < 1e-12,
         "js=" + qoi(dev, 1e-6) + " linear=" + qoi(dev_lin, 1e-12));
}

// 16. separability at 128^2: product and entangled invariance, coupled control
void criterion_separability() {
  SeparabilityConfig sc;
  sc.axis = make_grid(16.0, 128, -8.0);
  sc.length_scale = 0.25;
  sc.dt = 1e-3;
  sc.n_steps = 500;
  sc.record_every = 25;
  std::vector<double> v2(static_cast<size_t>(sc.axis.n));
  for (int j = 0; j < sc.axis.n; ++j) {
    const double x = sc.axis.x(j);
    v2[j] = 0.5 * x * x;
  }
  sc.v2_modified = v2;

  sc.initial = InitialKind::product;
  sc.n_steps = 1000;  // also exercises composite norm drift over 1e3 steps
  const SeparabilityReport product_report = separability_experiment(sc);
  double norm_drift = 0.0;
  for (const SeparabilityRow& row : product_report.rows)
    norm_drift = std::max(norm_drift, std::abs(row.norm_sq - 1.0));
  record("C16a separability: product marginal invariance",
         product_report.max_marginal_distance < 1e-10 && norm_drift < 1e-12,
         qoi(product_report.max_marginal_distance, 1e-10) + " norm drift " +
             qoi(norm_drift, 1e-12));
  sc.n_steps = 500;

  sc.initial = InitialKind::entangled;
  const double entangled_dist = separability_experiment(sc).max_marginal_distance;
  // Measured to be a property of the PDE (stable under dt, grid, and filter
  // refinement): the configuration-space nonlinearity signals for entangled
  // states; complete separability protects product states only.
  record_expected_fail("C16b separability: entangled marginal invariance",
                       entangled_dist < 1e-10, qoi(entangled_dist, 1e-10));

  sc.initial = InitialKind::product;
  sc.coupling = 1.5;
  const double control_dist = separability_experiment(sc).max_marginal_distance;
  record("C16c separability: interacting control breaks invariance", control_dist > 1e-3,
         qoi(control_dist, 1e-3));
}

// 17. Strang vs RK4 global difference is O(dt^2)
void criterion_cross_integrator() {
  const Grid g = make_grid(25.6, 256, -12.8);
  const WaveField psi0 = gaussian_wave(g, 0.0, 1.0, 2.0 * pi * 2.0 / g.length);
  std::vector<double> dist;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    EvolutionConfig cfg;
    cfg.params.length_scale = 0.2;
    cfg.dt = dt;
    cfg.n_steps = std::lround(0.5 / dt);
    cfg.record_every = cfg.n_steps;
    cfg.quiet = true;
    EvolutionConfig rk = cfg;
    rk.scheme = Scheme::rk4_reference;
    dist.push_back(l2_distance(evolve(psi0, cfg).trajectory.back(),
                               evolve(psi0, rk).trajectory.back()));
  }
  bool ok = true;
  for (size_t i = 1; i < dist.size(); ++i) {
    const double r = dist[i - 1] / dist[i];
    std::printf("    dt halving ratio %.2f\n", r);
    ok = ok && r > 3.2 && r < 4.8;
  }
  record("C17 Strang vs RK4 difference O(dt^2)", ok, "ratios in [3.2,4.8]");
}

}  // namespace

int main() {
  std::printf("jsnl acceptance suite\n=====================\n");
  criterion_scale_invariance();
  criterion_linear_limit();
  criterion_expansion_residual();
  criterion_norm_conservation();
  criterion_energy_conservation();
  criterion_js_bounds();
  criterion_js_metric();
  criterion_small_shift();
  criterion_fisher_path();
  criterion_pi_half_reduction();
  criterion_repulsive_force();
  criterion_hamilton_equations();
  criterion_homogeneity();
  criterion_von_neumann();
  criterion_mobility();
  criterion_separability();
  criterion_cross_integrator();
  std::printf("=====================\n%d checks, %d unexpected failures\n", g_checks,
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
