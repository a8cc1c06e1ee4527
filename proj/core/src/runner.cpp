#include "jsnl/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "jsnl/hamiltonian.hpp"
#include "jsnl/io.hpp"
#include "jsnl/manybody.hpp"
#include "jsnl/measures.hpp"
#include "jsnl/spectral.hpp"

namespace jsnl {
namespace {

// Portable uniform in [0, 1): uses the top 53 bits so the stream depends
// only on the mt19937_64 sequence, not on distribution internals.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open " + path.string() + " for writing");
  return out;
}

void write_manifest(const RunConfig& rc, const ConfigMap& resolved) {
  std::filesystem::create_directories(rc.out_dir);
  std::ofstream out = open_out(rc.out_dir / "manifest.txt");
  out << "scenario = " << scenario_name(rc.scenario) << '\n';
  out << "seed = " << rc.seed << '\n';
  for (const auto& [key, value] : resolved.resolved_entries())
    out << key << " = " << value << '\n';
}

}  // namespace

Scenario scenario_from_name(const std::string& name) {
  if (name == "evolve") return Scenario::evolve;
  if (name == "measures") return Scenario::measures;
  if (name == "potential") return Scenario::potential;
  if (name == "verify") return Scenario::verify;
  if (name == "separability") return Scenario::separability;
  if (name == "sweep") return Scenario::sweep;
  raise(Errc::bad_argument, "unknown scenario '" + name + "'");
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::evolve: return "evolve";
    case Scenario::measures: return "measures";
    case Scenario::potential: return "potential";
    case Scenario::verify: return "verify";
    case Scenario::separability: return "separability";
    case Scenario::sweep: return "sweep";
  }
  return "?";
}

DensityField random_density(const Grid& grid, std::uint64_t seed, int max_mode) {
  std::mt19937_64 rng(seed);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> t(static_cast<size_t>(grid.n), 1.0);
  for (int mode = 1; mode <= max_mode; ++mode) {
    const double a = uniform01(rng) - 0.5;
    const double b = uniform01(rng) - 0.5;
    const double w = two_pi * mode / grid.length;
    for (int j = 0; j < grid.n; ++j) {
      const double x = grid.x(j);
      t[static_cast<size_t>(j)] += (a * std::cos(w * x) + b * std::sin(w * x)) / mode;
    }
  }
  DensityField rho{grid, std::vector<double>(static_cast<size_t>(grid.n))};
  double mean_sq = 0.0;
  for (double v : t) mean_sq += v * v;
  mean_sq /= grid.n;
  const double offset = 0.05 * mean_sq;
  for (int j = 0; j < grid.n; ++j) {
    const double v = t[static_cast<size_t>(j)];
    rho.values[static_cast<size_t>(j)] = v * v + offset;
  }
  normalize(rho);
  return rho;
}

namespace {

ModelParams params_from(const ConfigMap& cfg) {
  ModelParams p;
  p.hbar = cfg.get_double("hbar", 1.0);
  p.mass = cfg.get_double("mass", 1.0);
  p.length_scale = cfg.get_double("l", 0.1);
  p.pi_weight = cfg.get_double("pi", 0.5);
  if (!(p.pi_weight >= 0.0 && p.pi_weight <= 1.0))
    raise(Errc::type_error, "pi must lie in [0, 1]");
  if (cfg.has("zeta_override")) p.zeta_override = cfg.get_double("zeta_override", 0.0);
  p.floor = cfg.get_double("floor", kDensityFloor);
  p.vacuum_rel = cfg.get_double("vacuum_rel", 1e-16);
  return p;
}

Grid grid_from(const ConfigMap& cfg) {
  const long n = cfg.get_long("grid.n", 256);
  const double length = cfg.get_double("grid.length", 25.6);
  const double origin = cfg.get_double("grid.origin", -0.5 * length);
  return make_grid(length, static_cast<int>(n), origin);
}

}  // namespace

EvolveSetup build_evolve_setup(const ConfigMap& cfg) {
  EvolveSetup setup;
  setup.grid = grid_from(cfg);
  EvolutionConfig& ec = setup.config;
  ec.params = params_from(cfg);

  const std::string pot = cfg.get_string("potential.kind", "zero");
  if (pot == "zero") {
    ec.potential = PotentialSpec::zero();
  } else if (pot == "harmonic") {
    ec.potential = PotentialSpec::harmonic(cfg.get_double("potential.k", 1.0));
  } else {
    raise(Errc::type_error, "potential.kind must be zero or harmonic");
  }

  ec.dt = cfg.get_double("dt", 1e-3);
  ec.n_steps = cfg.get_long("steps", 1000);
  ec.record_every = cfg.get_long("record_every", 10);
  ec.dealias_fraction = cfg.get_double("dealias", 1.0 / 3.0);

  const std::string scheme = cfg.get_string("scheme", "strang");
  if (scheme == "strang") {
    ec.scheme = Scheme::strang_split_step;
  } else if (scheme == "rk4") {
    ec.scheme = Scheme::rk4_reference;
  } else {
    raise(Errc::type_error, "scheme must be strang or rk4");
  }

  const std::string nl = cfg.get_string("nonlinearity", "js");
  if (nl == "js") {
    ec.nonlinearity = Nonlinearity::js;
  } else if (nl == "parametric" || nl == "pjs") {
    ec.nonlinearity = Nonlinearity::parametric_js;
  } else if (nl == "none") {
    ec.nonlinearity = Nonlinearity::none;
  } else {
    raise(Errc::type_error, "nonlinearity must be js, parametric, or none");
  }

  const std::string init = cfg.get_string("initial.kind", "gaussian");
  if (init == "gaussian") {
    setup.initial = gaussian_wave(setup.grid, cfg.get_double("initial.x0", 0.0),
                                  cfg.get_double("initial.sigma", 1.0),
                                  cfg.get_double("initial.k0", 0.0));
  } else if (init == "plane") {
    // nearest commensurate wavenumber to initial.k0
    const double k0 = cfg.get_double("initial.k0", 0.0);
    const double dk = 2.0 * std::numbers::pi / setup.grid.length;
    const double k = dk * std::round(k0 / dk);
    WaveField psi{setup.grid, std::vector<cplx>(static_cast<size_t>(setup.grid.n))};
    for (int j = 0; j < setup.grid.n; ++j)
      psi.values[static_cast<size_t>(j)] = std::polar(1.0, k * setup.grid.x(j));
    normalize(psi);
    setup.initial = psi;
  } else {
    raise(Errc::type_error, "initial.kind must be gaussian or plane");
  }
  return setup;
}

namespace {

int run_evolve(const RunConfig& rc) {
  EvolveSetup setup = build_evolve_setup(rc.config);
  if (rc.strict) rc.config.reject_unknown();
  write_manifest(rc, rc.config);

  const EvolveResult result = evolve(setup.initial, setup.config);

  std::ofstream diag = open_out(rc.out_dir / "diagnostics.csv");
  diag << "time,norm_sq,energy,continuity_residual,overlap\n";
  for (size_t i = 0; i < result.diagnostics.size(); ++i) {
    const DiagnosticsRecord& d = result.diagnostics[i];
    diag << format_sci(d.time) << ',' << format_sci(d.norm_sq) << ',' << format_sci(d.energy)
         << ',' << format_sci(d.continuity_residual) << ','
         << (d.overlap ? format_sci(*d.overlap) : "") << '\n';

    const long step = std::lround(d.time / setup.config.dt);
    write_wave_binary(rc.out_dir / ("snap_" + std::to_string(step) + ".bin"),
                      result.trajectory[i]);
  }
  return 0;
}

int run_measures(const RunConfig& rc) {
  const ConfigMap& cfg = rc.config;
  Grid grid;
  const Grid* hint = nullptr;
  if (cfg.has("grid.n") && cfg.has("grid.length")) {
    grid = grid_from(cfg);
    hint = &grid;
  } else {
    (void)cfg.get_long("grid.n", 0);
    (void)cfg.get_double("grid.length", 0);
    (void)cfg.get_double("grid.origin", 0);
  }
  DensityField rho0 = read_density_auto(cfg.require_string("rho0"), hint);
  DensityField rho1 = read_density_auto(cfg.require_string("rho1"), hint);
  const double pi = cfg.get_double("pi", 0.5);
  const int n_theta = static_cast<int>(cfg.get_long("n_theta", 64));
  if (rc.strict) cfg.reject_unknown();
  write_manifest(rc, cfg);

  DensityPair pair = make_density_pair(rho0, rho1);
  WeightedPair wp = make_weighted_pair(pair, pi);

  FloorReport floor_report;
  std::vector<std::pair<std::string, double>> rows;
  rows.emplace_back("shannon_entropy_rho0", shannon_entropy(pair.rho0));
  rows.emplace_back("shannon_entropy_rho1", shannon_entropy(pair.rho1));
  rows.emplace_back("kl_rho1_rho0", kl_divergence(pair.rho1, pair.rho0, &floor_report));
  rows.emplace_back("kl_rho0_rho1", kl_divergence(pair.rho0, pair.rho1, &floor_report));
  rows.emplace_back("j_divergence", j_divergence(pair, &floor_report));
  rows.emplace_back("k_rho0_rho1", k_divergence(pair.rho0, pair.rho1));
  rows.emplace_back("k_rho1_rho0", k_divergence(pair.rho1, pair.rho0));
  rows.emplace_back("js_divergence", js_divergence(pair));
  rows.emplace_back("js_entropy_form", js_divergence_entropy_form(pair));
  rows.emplace_back("js_distance", js_distance(pair));
  rows.emplace_back("pi_js_divergence", pi_js_divergence(wp));
  rows.emplace_back("pi_k_rho0_rho1", pi_k_divergence(pair.rho0, pair.rho1, pi));
  rows.emplace_back("pi_k_rho1_rho0", pi_k_divergence(pair.rho1, pair.rho0, pi));
  rows.emplace_back("pi_js_halfsum", pi_js_halfsum(wp));
  rows.emplace_back("fisher_rho0", fisher_information(pair.rho0));
  rows.emplace_back("fisher_rho1", fisher_information(pair.rho1));

  double path = std::numeric_limits<double>::quiet_NaN();
  try {
    path = fisher_path_integral(pair, n_theta);
  } catch (const Error& e) {
    if (e.code() != Errc::non_positive_density) throw;
  }
  rows.emplace_back("fisher_path_integral", path);

  std::ofstream out = open_out(rc.out_dir / "measures.csv");
  out << "name,value\n";
  for (const auto& [name, value] : rows) out << name << ',' << format_sci(value) << '\n';
  if (floor_report.floor_dominated)
    std::ofstream(rc.out_dir / "FLOOR_DOMINATED") << "kl or j hit the density floor\n";
  return 0;
}

int run_potential(const RunConfig& rc) {
  const ConfigMap& cfg = rc.config;
  Grid grid;
  const Grid* hint = nullptr;
  if (cfg.has("grid.n") && cfg.has("grid.length")) {
    grid = grid_from(cfg);
    hint = &grid;
  } else {
    (void)cfg.get_long("grid.n", 0);
    (void)cfg.get_double("grid.length", 0);
    (void)cfg.get_double("grid.origin", 0);
  }
  DensityField rho = read_density_auto(cfg.require_string("rho"), hint);
  ModelParams params = params_from(cfg);
  if (rc.strict) cfg.reject_unknown();
  write_manifest(rc, cfg);

  const std::vector<double> q = bohm_quantum_potential(rho, params);
  const std::vector<double> qn = js_quantum_potential(rho, params);
  const std::vector<double> n = nonlinear_term(rho, params);
  const std::vector<double> exp_n = nonlinear_term_expansion(rho, params);

  std::ofstream out = open_out(rc.out_dir / "potential.csv");
  out << "x,Q,Q_N,N,expansion\n";
  for (int j = 0; j < rho.grid.n; ++j) {
    const size_t i = static_cast<size_t>(j);
    out << format_sci(rho.grid.x(j)) << ',' << format_sci(q[i]) << ',' << format_sci(qn[i])
        << ',' << format_sci(n[i]) << ',' << format_sci(exp_n[i]) << '\n';
  }
  return 0;
}

struct CheckRow {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

int run_verify(const RunConfig& rc) {
  const ConfigMap& cfg = rc.config;
  const Grid grid = grid_from(cfg);
  ModelParams params = params_from(cfg);
  const double dt = cfg.get_double("dt", 2e-4);
  if (rc.strict) cfg.reject_unknown();
  write_manifest(rc, cfg);

  EvolutionConfig ec;
  ec.params = params;
  ec.dt = dt;
  ec.quiet = true;

  std::vector<CheckRow> checks;
  auto add = [&](const std::string& name, double value, double tol) {
    checks.push_back(CheckRow{name, value, tol, value <= tol});
  };

  std::mt19937_64 rng(rc.seed);
  // Smooth random states with a generous uniform background: the flow and
  // derivative identities are exact in the continuum, and their discrete
  // counterparts hold to quadrature accuracy, which is set by the
  // analyticity margin of 1/rho. A lifted minimum keeps that margin wide.
  auto random_wave = [&](std::uint64_t salt) {
    DensityField rho = random_density(grid, rc.seed * 7919 + salt, 6);
    for (double& v : rho.values) v = 0.5 * v + 0.5 / grid.length;
    std::vector<double> s(static_cast<size_t>(grid.n));
    const DensityField sfield = random_density(grid, rc.seed * 104729 + salt + 1, 6);
    for (int j = 0; j < grid.n; ++j)
      s[static_cast<size_t>(j)] = 0.15 * sfield.values[static_cast<size_t>(j)] * grid.length;
    return wave_from_madelung(rho, s, params.hbar);
  };

  // symplectic form: antisymmetry, bilinearity scale, phase direction
  {
    double worst_anti = 0.0, worst_lin = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const WaveField a = random_wave(10 + trial), b = random_wave(40 + trial);
      worst_anti = std::max(worst_anti,
                            std::abs(symplectic_form(a, b) + symplectic_form(b, a)));
      const double c1 = 0.3 + uniform01(rng), c2 = 0.3 + uniform01(rng);
      WaveField combo = a;
      for (size_t j = 0; j < combo.values.size(); ++j)
        combo.values[j] = c1 * a.values[j] + c2 * b.values[j];
      const WaveField probe = random_wave(70 + trial);
      worst_lin = std::max(worst_lin, std::abs(symplectic_form(combo, probe) -
                                               c1 * symplectic_form(a, probe) -
                                               c2 * symplectic_form(b, probe)));
    }
    add("symplectic_antisymmetry", worst_anti, 1e-12);
    add("symplectic_bilinearity", worst_lin, 1e-12);
    const WaveField a = random_wave(3);
    WaveField ia = a;
    for (cplx& v : ia.values) v *= cplx(0.0, 1.0);
    add("symplectic_phase_direction",
        std::abs(symplectic_form(a, ia) - 2.0 * norm_squared(a)), 1e-12);
  }

  // analytic functional derivatives vs the central-difference oracle
  {
    double worst_rho = 0.0, worst_s = 0.0, worst_var = 0.0;
    const PotentialSpec vspec = PotentialSpec::harmonic(1.0);
    for (int trial = 0; trial < 3; ++trial) {
      const WaveField psi = random_wave(100 + trial);
      const MadelungPair state = madelung_from_wave(psi, params.hbar);
      const std::vector<double> v = vspec.evaluate(grid);

      std::vector<double> s_field(static_cast<size_t>(grid.n));
      {
        const DensityField sf = random_density(grid, rc.seed * 31 + trial);
        for (int j = 0; j < grid.n; ++j)
          s_field[static_cast<size_t>(j)] = 0.3 * sf.values[static_cast<size_t>(j)] * grid.length;
      }
      const std::vector<double> grad_s = spectral_derivative(s_field, grid, 1);
      MadelungPair st2{grid, state.rho, grad_s};

      auto energy_of_rho = [&](std::span<const double> rho_vals) {
        DensityField r{grid, std::vector<double>(rho_vals.begin(), rho_vals.end())};
        const std::vector<double> qn = js_energy_density(r, params);
        double sum = 0.0;
        for (int j = 0; j < grid.n; ++j) {
          const size_t i = static_cast<size_t>(j);
          sum += r.values[i] * (grad_s[i] * grad_s[i] / (2.0 * params.mass) + v[i]) + qn[i];
        }
        return sum * grid.spacing;
      };
      const std::vector<double> numeric_rho =
          numerical_functional_derivative(energy_of_rho, state.rho.values, grid);
      const std::vector<double> analytic_rho = functional_derivative_rho(st2, params, vspec);
      for (size_t j = 0; j < numeric_rho.size(); ++j)
        worst_rho = std::max(worst_rho, std::abs(numeric_rho[j] - analytic_rho[j]) /
                                            (1.0 + std::abs(analytic_rho[j])));

      auto energy_of_s = [&](std::span<const double> s_vals) {
        const std::vector<double> ds =
            spectral_derivative(std::span<const double>(s_vals.data(), s_vals.size()), grid, 1);
        double sum = 0.0;
        for (int j = 0; j < grid.n; ++j) {
          const size_t i = static_cast<size_t>(j);
          sum += state.rho.values[i] * ds[i] * ds[i] / (2.0 * params.mass);
        }
        return sum * grid.spacing;
      };
      const std::vector<double> numeric_s =
          numerical_functional_derivative(energy_of_s, s_field, grid);
      const std::vector<double> analytic_s =
          functional_derivative_s(MadelungPair{grid, state.rho, grad_s}, params);
      for (size_t j = 0; j < numeric_s.size(); ++j)
        worst_s = std::max(worst_s, std::abs(numeric_s[j] - analytic_s[j]) /
                                        (1.0 + std::abs(analytic_s[j])));

      // variational origin of Q_N: d(zeta I_JS)/d rho
      auto js_functional = [&](std::span<const double> rho_vals) {
        DensityField r{grid, std::vector<double>(rho_vals.begin(), rho_vals.end())};
        return integrate(js_energy_density(r, params), grid);
      };
      const std::vector<double> numeric_qn =
          numerical_functional_derivative(js_functional, state.rho.values, grid);
      const std::vector<double> analytic_qn = js_quantum_potential(state.rho, params);
      for (size_t j = 0; j < numeric_qn.size(); ++j)
        worst_var = std::max(worst_var, std::abs(numeric_qn[j] - analytic_qn[j]) /
                                            (1.0 + std::abs(analytic_qn[j])));
    }
    add("hamilton_eq_rho_vs_oracle", worst_rho, 1e-5);
    add("hamilton_eq_s_vs_oracle", worst_s, 1e-5);
    add("variational_origin_qn", worst_var, 1e-5);
  }

  // homogeneity of the vector field and of E(N)
  {
    const WaveField psi = random_wave(200);
    const WaveField x1 = hamiltonian_vector_field(psi, ec);
    double worst = 0.0;
    for (const cplx lambda : {cplx(2.0, 0.0), cplx(0.5, 0.5), cplx(0.0, -1.3)}) {
      WaveField scaled = psi;
      for (cplx& v : scaled.values) v *= lambda;
      const WaveField x2 = hamiltonian_vector_field(scaled, ec);
      for (size_t j = 0; j < x1.values.size(); ++j)
        worst = std::max(worst, std::abs(x2.values[j] - lambda * x1.values[j]) /
                                    (1.0 + std::abs(x1.values[j])));
    }
    add("vector_field_degree_one", worst, 1e-10);

    const DensityField rho = random_density(grid, rc.seed + 5);
    const double base = expected_nonlinear(rho, params);
    double worst_e = 0.0;
    for (const double lam2 : {0.5, 2.0, 10.0}) {
      DensityField scaled = rho;
      for (double& v : scaled.values) v *= lam2;
      worst_e = std::max(worst_e, std::abs(expected_nonlinear(scaled, params) - lam2 * base) /
                                      (1.0 + std::abs(lam2 * base)));
    }
    add("expected_nonlinear_degree_two", worst_e, 1e-10);
  }

  // flow identity dH(probe) = hbar Omega(X, probe)
  {
    const WaveField psi = random_wave(300);
    const double h_scale = 1.0 + std::abs(energy_functional(psi, ec));
    WaveField iphi = psi;
    for (cplx& v : iphi.values) v *= cplx(0.0, 1.0);
    add("flow_check_phase_direction", hamiltonian_flow_check(psi, iphi, ec) / h_scale, 1e-6);
    add("flow_check_random_probe",
        hamiltonian_flow_check(psi, random_wave(301), ec) / h_scale, 1e-6);
    EvolutionConfig linear = ec;
    linear.nonlinearity = Nonlinearity::none;
    add("flow_check_linear_case",
        hamiltonian_flow_check(psi, random_wave(302), linear) / h_scale, 1e-6);
  }

  // von Neumann residual on a small grid
  {
    const Grid small = make_grid(12.8, 48, -6.4);
    EvolutionConfig vc;
    vc.params = params;
    vc.params.length_scale = 0.8;  // commensurate with dx = 0.2666... (3 steps)
    vc.dt = 1e-3;
    vc.quiet = true;
    WaveField plane{small, std::vector<cplx>(48)};
    const double k = 2.0 * std::numbers::pi * 3.0 / small.length;
    for (int j = 0; j < small.n; ++j)
      plane.values[static_cast<size_t>(j)] = std::polar(1.0, k * small.x(j));
    normalize(plane);
    add("von_neumann_plane_wave", von_neumann_residual(plane, vc), 1e-8);

    const WaveField g = gaussian_wave(small, 0.5, 1.0, 0.4);
    const double r1 = von_neumann_residual(g, vc);
    EvolutionConfig vc2 = vc;
    vc2.dt = 0.5 * vc.dt;
    const double r2 = von_neumann_residual(g, vc2);
    const double ratio = r1 / std::max(r2, 1e-300);
    checks.push_back(CheckRow{"von_neumann_dt_order_ratio", ratio, 4.0,
                              ratio > 3.0 && ratio < 5.0});
  }

  // purity preservation along evolution
  {
    EvolutionConfig pc = ec;
    pc.params.length_scale = 0.8;
    pc.dt = 1e-3;
    pc.n_steps = 50;
    pc.record_every = 50;
    const Grid small = make_grid(12.8, 48, -6.4);
    const WaveField g0 = gaussian_wave(small, 0.0, 1.0, 0.3);
    const EvolveResult res = evolve(g0, pc);
    const WaveField& g = res.trajectory.back();
    const Eigen::MatrixXcd rho_op = density_operator(g).matrix;
    const double herm = (rho_op - rho_op.adjoint()).cwiseAbs().maxCoeff();
    const double trace_err = std::abs(rho_op.trace().real() - 1.0) +
                             std::abs(rho_op.trace().imag());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rho_op);
    const double second_sv = svd.singularValues()(1);
    add("density_operator_hermitian", herm, 1e-10);
    add("density_operator_trace_one", trace_err, 1e-10);
    add("density_operator_rank_one", second_sv, 1e-10);
  }

  std::ofstream out = open_out(rc.out_dir / "verify.csv");
  out << "check,value,tolerance,pass\n";
  bool all_pass = true;
  for (const CheckRow& c : checks) {
    out << c.name << ',' << format_sci(c.value) << ',' << format_sci(c.tolerance) << ','
        << (c.pass ? "pass" : "fail") << '\n';
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}

int run_separability(const RunConfig& rc) {
  const ConfigMap& cfg = rc.config;
  SeparabilityConfig sc;
  const long n = cfg.get_long("grid.n", 128);
  const double length = cfg.get_double("grid.length", 16.0);
  sc.axis = make_grid(length, static_cast<int>(n), -0.5 * length);
  sc.hbar = cfg.get_double("hbar", 1.0);
  sc.mass1 = cfg.get_double("mass1", 1.0);
  sc.mass2 = cfg.get_double("mass2", 1.0);
  sc.length_scale = cfg.get_double("l", 0.25);
  sc.initial = cfg.get_string("initial.kind", "product") == "entangled"
                   ? InitialKind::entangled
                   : InitialKind::product;
  sc.sigma1 = cfg.get_double("initial.sigma1", 0.8);
  sc.x0_1 = cfg.get_double("initial.x0_1", -1.0);
  sc.sigma2 = cfg.get_double("initial.sigma2", 0.7);
  sc.x0_2 = cfg.get_double("initial.x0_2", 0.5);
  sc.entangled_sigma = cfg.get_double("initial.entangled_sigma", 0.7);
  sc.entangled_sep = cfg.get_double("initial.entangled_sep", 2.0);
  sc.coupling = cfg.get_double("coupling", 0.0);
  sc.dt = cfg.get_double("dt", 1e-3);
  sc.n_steps = cfg.get_long("steps", 500);
  sc.record_every = cfg.get_long("record_every", 25);
  sc.js_nonlinearity = cfg.get_bool("nonlinearity", true);
  sc.dealias_fraction = cfg.get_double("dealias", 1.0 / 3.0);

  const double v2k = cfg.get_double("v2.k", 1.0);
  std::vector<double> harmonic(static_cast<size_t>(sc.axis.n));
  for (int j = 0; j < sc.axis.n; ++j) {
    const double x = sc.axis.x(j);
    harmonic[static_cast<size_t>(j)] = 0.5 * v2k * x * x;
  }
  sc.v2_baseline.clear();       // zero
  sc.v2_modified = harmonic;    // the "action on particle 2"
  if (rc.strict) cfg.reject_unknown();
  write_manifest(rc, cfg);

  const SeparabilityReport report = separability_experiment(sc);
  std::ofstream out = open_out(rc.out_dir / "report.csv");
  out << "time,marginal_distance,norm_sq,energy\n";
  for (const SeparabilityRow& row : report.rows)
    out << format_sci(row.time) << ',' << format_sci(row.marginal_distance) << ','
        << format_sci(row.norm_sq) << ',' << format_sci(row.energy) << '\n';
  return 0;
}

ConfigMap with_override(const ConfigMap& base, const std::string& parameter, double value) {
  ConfigMap cfg = base;
  if (parameter == "l") cfg.set("l", format_sci(value));
  else if (parameter == "dt") cfg.set("dt", format_sci(value));
  else if (parameter == "n") cfg.set("grid.n", std::to_string(static_cast<long>(value)));
  else if (parameter == "pi") cfg.set("pi", format_sci(value));
  else if (parameter == "delta") cfg.set("delta", format_sci(value));
  else raise(Errc::bad_argument, "sweepable parameters are l, dt, n, delta, pi");
  return cfg;
}

double sweep_metric(const ConfigMap& cfg, const std::string& metric) {
  if (metric == "linear_limit") {
    EvolveSetup setup = build_evolve_setup(cfg);
    setup.config.quiet = true;
    EvolutionConfig linear = setup.config;
    linear.nonlinearity = Nonlinearity::none;
    const WaveField a = evolve(setup.initial, setup.config).trajectory.back();
    const WaveField b = evolve(setup.initial, linear).trajectory.back();
    double sum = 0.0;
    for (size_t j = 0; j < a.values.size(); ++j) sum += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(sum * setup.grid.spacing);
  }
  if (metric == "energy_drift") {
    EvolveSetup setup = build_evolve_setup(cfg);
    setup.config.quiet = true;
    const EvolveResult res = evolve(setup.initial, setup.config);
    const double e0 = res.diagnostics.front().energy;
    double drift = 0.0;
    for (const DiagnosticsRecord& d : res.diagnostics)
      drift = std::max(drift, std::abs(d.energy - e0));
    return drift;
  }
  if (metric == "expansion_residual") {
    const Grid grid = grid_from(cfg);
    ModelParams params = params_from(cfg);
    const WaveField g = gaussian_wave(grid, cfg.get_double("initial.x0", 0.0),
                                      cfg.get_double("initial.sigma", 1.0));
    DensityField rho = density_of(g);
    const double mix = 1e-3;
    for (double& v : rho.values) v = (1.0 - mix) * v + mix / grid.length;
    const std::vector<double> n = nonlinear_term(rho, params);
    const std::vector<double> e = nonlinear_term_expansion(rho, params);
    double worst = 0.0;
    for (size_t j = 0; j < n.size(); ++j) worst = std::max(worst, std::abs(n[j] - e[j]));
    return worst;
  }
  if (metric == "shift_js" || metric == "shift_pijs" || metric == "shift_kl") {
    const Grid grid = grid_from(cfg);
    const ModelParams params = params_from(cfg);
    const DensityField rho =
        density_of(gaussian_wave(grid, 0.0, cfg.get_double("initial.sigma", 1.0)));
    const double delta = cfg.get_double("delta", 0.2);
    if (metric == "shift_js")
      return std::abs(small_shift_ratio(rho, delta, ShiftMeasure::js) - 0.125);
    if (metric == "shift_kl")
      return std::abs(small_shift_ratio(rho, delta, ShiftMeasure::kl) - 0.5);
    const double pi = params.pi_weight;
    return std::abs(small_shift_ratio(rho, delta, ShiftMeasure::pi_js, pi) -
                    0.5 * pi * (1.0 - pi));
  }
  if (metric == "vn_residual") {
    EvolveSetup setup = build_evolve_setup(cfg);
    setup.config.quiet = true;
    return von_neumann_residual(setup.initial, setup.config);
  }
  if (metric == "strang_rk4") {
    EvolveSetup setup = build_evolve_setup(cfg);
    setup.config.quiet = true;
    EvolutionConfig rk = setup.config;
    rk.scheme = Scheme::rk4_reference;
    setup.config.scheme = Scheme::strang_split_step;
    const WaveField a = evolve(setup.initial, setup.config).trajectory.back();
    const WaveField b = evolve(setup.initial, rk).trajectory.back();
    double sum = 0.0;
    for (size_t j = 0; j < a.values.size(); ++j) sum += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(sum * setup.grid.spacing);
  }
  raise(Errc::bad_argument, "unknown sweep.metric '" + metric + "'");
}

}  // namespace

SweepTable run_sweep(const RunConfig& base, const std::string& parameter,
                     const std::vector<double>& values) {
  if (values.empty()) raise(Errc::bad_argument, "sweep needs at least one value");
  const std::string metric = base.config.get_string("sweep.metric", "linear_limit");

  SweepTable table;
  table.parameter = parameter;
  table.metric_name = metric;
  for (size_t i = 0; i < values.size(); ++i) {
    const ConfigMap cfg = with_override(base.config, parameter, values[i]);
    SweepRow row;
    row.value = values[i];
    row.metric = sweep_metric(cfg, metric);
    if (base.strict && i == 0) cfg.reject_unknown();
    row.ratio = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                       : table.rows[i - 1].metric / row.metric;
    table.rows.push_back(row);
  }

  if (values.size() >= 2) {
    // least-squares slope of log(metric) against log(value)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const SweepRow& row : table.rows) {
      if (!(row.metric > 0.0) || !(row.value > 0.0)) continue;
      const double lx = std::log(row.value), ly = std::log(row.metric);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++m;
    }
    table.fitted_order = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  }
  return table;
}

int run_scenario(const RunConfig& rc) {
  switch (rc.scenario) {
    case Scenario::evolve:
      return run_evolve(rc);
    case Scenario::measures:
      return run_measures(rc);
    case Scenario::potential:
      return run_potential(rc);
    case Scenario::verify:
      return run_verify(rc);
    case Scenario::separability:
      return run_separability(rc);
    case Scenario::sweep: {
      const std::string parameter = rc.config.get_string("sweep.parameter", "l");
      const std::vector<double> values = rc.config.get_double_list("sweep.values");
      const SweepTable table = run_sweep(rc, parameter, values);
      write_manifest(rc, rc.config);
      std::ofstream out = open_out(rc.out_dir / "sweep.csv");
      out << "value,metric,ratio,fitted_order\n";
      for (const SweepRow& row : table.rows)
        out << format_sci(row.value) << ',' << format_sci(row.metric) << ','
            << format_sci(row.ratio) << ',' << format_sci(table.fitted_order) << '\n';
      return 0;
    }
  }
  raise(Errc::bad_argument, "unhandled scenario");
}

}  // namespace jsnl
