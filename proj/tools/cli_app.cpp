#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "tvlm/asymptotics.hpp"
#include "tvlm/csv.hpp"
#include "tvlm/errors.hpp"
#include "tvlm/estimator.hpp"
#include "tvlm/models.hpp"
#include "tvlm/parallel.hpp"
#include "tvlm/scalogram.hpp"
#include "tvlm/simulate.hpp"
#include "tvlm/wavelet.hpp"
#include "tvlm/weights.hpp"

namespace tvlm::cli {

namespace {

namespace fs = std::filesystem;

// ---- flat key=value config file ------------------------------------------

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

struct Defaults {
  int wavelet_order = 2;
  std::string weights_kind = "kernel";
  std::string kernel = "rectangle";
  double bandwidth = 0.25;
  double level = 0.95;
  std::string scales = "2:2";
  int grid = 99;

  void apply(const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key) -> const std::string* {
      const auto it = kv.find(key);
      return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("wavelet.order")) wavelet_order = std::stoi(*v);
    if (const auto* v = get("weights.kind")) weights_kind = *v;
    if (const auto* v = get("weights.kernel")) kernel = *v;
    if (const auto* v = get("weights.bandwidth")) bandwidth = std::stod(*v);
    if (const auto* v = get("estimate.level")) level = std::stod(*v);
    if (const auto* v = get("estimate.scales")) scales = *v;
    if (const auto* v = get("grid")) grid = std::stoi(*v);
  }
};

// "L:ell" or "L..J" -> (L, ell)
std::pair<int, int> parse_scales(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots != std::string::npos) {
      const int L = std::stoi(s.substr(0, dots));
      const int J = std::stoi(s.substr(dots + 2));
      if (J < L) throw ConfigError("scale range end below start: " + s);
      return {L, J - L};
    }
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("scales must be 'L:ell' or 'L..J', got: " + s);
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::invalid_argument&) {
    throw ConfigError("cannot parse scales: " + s);
  }
}

WeightScheme make_scheme(const std::string& kind, const std::string& kernel,
                         double bandwidth) {
  if (kind == "recursive") return WeightScheme::recursive(bandwidth);
  if (kind != "kernel") {
    throw ConfigError("weights must be 'kernel' or 'recursive', got: " + kind);
  }
  if (kernel == "rectangle") return WeightScheme::rectangle(bandwidth);
  if (kernel.rfind("file:", 0) == 0) {
    Kernel k;
    k.rectangle = false;
    k.samples = read_series_csv(kernel.substr(5));
    return WeightScheme::custom_kernel(bandwidth, std::move(k));
  }
  throw ConfigError("kernel must be 'rectangle' or 'file:<taps.csv>'");
}

std::vector<double> interior_grid(int n) {
  if (n < 1) throw ConfigError("grid size must be >= 1");
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    u[static_cast<std::size_t>(i)] =
        static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  return u;
}

std::string flag_tokens(std::uint8_t flags) {
  if (flags == 0) return "ok";
  std::string s;
  auto add = [&](const char* t) {
    if (!s.empty()) s += ';';
    s += t;
  };
  if (flags & estflag::kBoundaryDropped) add("boundary-dropped");
  if (flags & estflag::kZeroScalogram) add("zero-scalogram");
  if (flags & estflag::kCiUnavailable) add("ci-unavailable");
  return s;
}

MemoryCurve make_memory(const std::string& preset, double d0, double d1) {
  if (preset == "constant") return constant_memory(d0);
  if (preset == "cosine") return cosine_ramp_memory();
  if (preset == "piecewise") return piecewise_memory(d0, d1);
  throw ConfigError("memory preset must be constant|cosine|piecewise");
}

struct SimulateArgs {
  std::string model = "arfima";
  std::string memory = "cosine";
  double d0 = 0.2, d1 = 0.3;
  std::vector<double> phi, theta;
  double sigma = 1.0;
  int p = 0;
  std::int64_t T = 4096;
  std::uint64_t seed = 1;
  std::string noise = "gaussian";
  std::int64_t trunc = 4096;
  std::string out = "path.csv";
};

int cmd_simulate(const SimulateArgs& a) {
  SimConfig cfg;
  cfg.T = a.T;
  cfg.seed = a.seed;
  cfg.trunc = a.trunc;
  if (a.noise == "uniform") {
    cfg.noise = NoiseKind::uniform_iid;
  } else if (a.noise != "gaussian") {
    throw ConfigError("noise must be gaussian|uniform");
  }
  SimulatedPath path;
  if (a.model == "arfima") {
    const MemoryCurve mem = make_memory(a.memory, a.d0, a.d1);
    const TvArfimaModel model(
        mem, [&a](double) { return a.phi; }, static_cast<int>(a.phi.size()),
        [&a](double) { return a.theta; }, static_cast<int>(a.theta.size()),
        [&a](double) { return a.sigma; }, a.p);
    path = simulate(model, cfg);
  } else if (a.model == "fgn") {
    const MemoryCurve mem = make_memory(a.memory, a.d0, a.d1);
    const TvFgnModel model([mem](double u) { return mem.d(u) + 0.5; });
    path = simulate(model, cfg);
  } else {
    throw ConfigError("model must be arfima|fgn");
  }
  for (const auto& w : path.warnings) std::cerr << "warning: " << w << "\n";
  write_series_csv(a.out, path.values, "x");
  return 0;
}

struct PipelineArgs {
  std::string in;
  int wavelet_order = 2;
  std::string scales = "2:2";
  double bandwidth = 0.25;
  std::string weights_kind = "kernel";
  std::string kernel = "rectangle";
  int grid = 99;
  double level = 0.95;
  std::string out;
};

LocalScalogram run_scalogram(const std::vector<double>& x, const PipelineArgs& a,
                             int L, int ell, const WaveletBank& bank) {
  const auto grid = interior_grid(a.grid);
  if (a.weights_kind == "recursive") {
    StreamingScalogram stream(bank, L, ell, a.bandwidth,
                              static_cast<std::int64_t>(x.size()), grid);
    for (double v : x) stream.push(v);
    return stream.to_scalogram();
  }
  const WaveletPyramid pyr = dwt(x, bank, L + ell);
  const WeightScheme scheme = make_scheme(a.weights_kind, a.kernel, a.bandwidth);
  return local_scalogram(pyr, scheme, grid, L, ell);
}

int cmd_scalogram(const PipelineArgs& a, bool export_taps) {
  const auto x = read_series_csv(a.in);
  const auto [L, ell] = parse_scales(a.scales);
  WaveletSpec spec{.order = a.wavelet_order};
  spec.validate();
  const WaveletBank bank(spec, L + ell);
  if (export_taps) {
    for (int j = 1; j <= L + ell; ++j) {
      write_series_csv("taps_j" + std::to_string(j) + ".csv", bank.filter(j).taps,
                       "h");
    }
  }
  const auto sc = run_scalogram(x, a, L, ell, bank);
  std::ofstream out(a.out);
  if (!out) throw DataError("cannot open output file: " + a.out);
  out << "u,j,sigma2\n";
  for (std::size_t iu = 0; iu < sc.u_grid.size(); ++iu) {
    for (int i = 0; i <= sc.ell; ++i) {
      out << format_full(sc.u_grid[iu]) << "," << sc.scale(i) << ","
          << format_full(sc.values[static_cast<std::size_t>(i)][iu]) << "\n";
    }
  }
  return 0;
}

int cmd_estimate(const PipelineArgs& a) {
  const auto x = read_series_csv(a.in);
  const auto [L, ell] = parse_scales(a.scales);
  WaveletSpec spec{.order = a.wavelet_order};
  spec.validate();
  const WaveletBank bank(spec, L + ell);
  if (bank.coeff_count(static_cast<std::int64_t>(x.size()), L + ell) < 2) {
    throw DataError("series too short for scales " + a.scales +
                    " (maximum feasible scale is " +
                    std::to_string(bank.max_feasible_scale(
                        static_cast<std::int64_t>(x.size()))) +
                    ")");
  }
  const auto sc = run_scalogram(x, a, L, ell, bank);

  EstimationPlan plan;
  plan.L = L;
  plan.ell = ell;
  plan.scheme = make_scheme(a.weights_kind, a.kernel, a.bandwidth);
  plan.level = a.level;
  MemoryEstimate est = estimate_d(sc, plan);
  const VarianceCache cache(bank, plan.scheme, ell, plan.effective_weights().w);
  attach_confidence(est, sc, plan, cache);

  std::ofstream out(a.out);
  if (!out) throw DataError("cannot open output file: " + a.out);
  out << "u,d_hat,se,ci_lo,ci_hi,flags\n";
  std::size_t flagged = 0;
  for (const auto& pt : est.points) {
    out << format_full(pt.u) << "," << format_full(pt.d_hat) << ","
        << format_full(pt.se) << "," << format_full(pt.lo) << ","
        << format_full(pt.hi) << "," << flag_tokens(pt.flags) << "\n";
    if (pt.flags != 0) ++flagged;
  }
  if (flagged > 0) {
    std::cerr << "warning: " << flagged << " of " << est.points.size()
              << " grid points flagged (see the flags column)\n";
  }
  return 0;
}

struct AsymArgs {
  double d_min = 0.0, d_max = 0.4, d_step = 0.1;
  int ell = 2;
  int wavelet_order = 2;
  std::string weights_kind = "kernel";
  std::string kernel = "rectangle";
  double bandwidth = 0.25;
  std::string format = "csv";
  std::string out = "asymptotics.csv";
};

int cmd_asymptotics(const AsymArgs& a) {
  WaveletSpec spec{.order = a.wavelet_order};
  spec.validate();
  const WaveletBank bank(spec, std::max(1, a.ell + 1));
  const WeightScheme scheme = make_scheme(a.weights_kind, a.kernel, a.bandwidth);
  const auto w = ols_regression_weights(a.ell).w;
  std::vector<double> ds;
  for (double d = a.d_min; d <= a.d_max + 1e-12; d += a.d_step) ds.push_back(d);
  std::vector<VarianceReport> reps(ds.size());
  const AsymptoticConfig cfg;
  SigmaEvaluator ev(bank, a.ell, cfg);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    reps[i].d = ds[i];
    reps[i].w = w;
    reps[i].scheme_tag = scheme.tag();
    reps[i].K_value = ev.K()(ds[i]);
    reps[i].Sigma = ev.sigma(ds[i], scheme);
    reps[i].V_value = ev.estimator_variance(ds[i], w, scheme);
  }
  if (a.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reps) {
      nlohmann::json sig = nlohmann::json::array();
      for (int i = 0; i <= a.ell; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k <= a.ell; ++k) row.push_back(r.Sigma(i, k));
        sig.push_back(row);
      }
      j.push_back({{"d", r.d},
                   {"K", r.K_value},
                   {"V", r.V_value},
                   {"scheme", r.scheme_tag},
                   {"Sigma", sig}});
    }
    std::ofstream out(a.out);
    if (!out) throw DataError("cannot open output file: " + a.out);
    out << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    std::ofstream out(a.out);
    if (!out) throw DataError("cannot open output file: " + a.out);
    out << "quantity,d,i,ip,value\n";
    for (const auto& r : reps) {
      out << "K," << format_full(r.d) << ",," << "," << format_full(r.K_value)
          << "\n";
      out << "V," << format_full(r.d) << ",," << "," << format_full(r.V_value)
          << "\n";
      for (int i = 0; i <= a.ell; ++i) {
        for (int k = 0; k <= a.ell; ++k) {
          out << "Sigma," << format_full(r.d) << "," << i << "," << k << ","
              << format_full(r.Sigma(i, k)) << "\n";
        }
      }
    }
  } else {
    throw ConfigError("format must be csv|json");
  }
  return 0;
}

// ---- section 5.1 reproduction ---------------------------------------------

struct Sec51Args {
  int seeds = 20;
  std::int64_t T = 4096;
  double bandwidth = 0.25;
  int grid = 101;
  std::string out_dir = "sec51";
  std::uint64_t base_seed = 1;
};

TvArfimaModel sec51_model() {
  return TvArfimaModel(cosine_ramp_memory(),
                       [](double) { return std::vector<double>{0.8}; }, 1,
                       [](double) { return std::vector<double>{}; }, 0,
                       [](double) { return 1.0; }, 0);
}

struct Sec51SeedResult {
  // d_hat[scheme][L-1][iu], se likewise; sigma2[scheme][j-1][iu]
  std::vector<std::vector<std::vector<double>>> d_hat, se, lo, hi;
  std::vector<std::vector<std::vector<double>>> sigma2;
  std::vector<std::vector<std::vector<std::uint8_t>>> flags;
};

int cmd_reproduce_sec51(const Sec51Args& a) {
  if (a.seeds < 2) throw ConfigError("need at least 2 seeds");
  fs::create_directories(a.out_dir);
  const auto model = sec51_model();
  const WaveletBank bank(WaveletSpec{.order = 2}, 5);
  const auto grid = interior_grid(a.grid);
  const int n_L = 3, ell = 2, n_scheme = 2;

  // variance caches shared across seeds (one per scheme)
  const auto w = ols_regression_weights(ell).w;
  const WeightScheme rect = WeightScheme::rectangle(a.bandwidth);
  const WeightScheme rec = WeightScheme::recursive(a.bandwidth);
  const VarianceCache cache_rect(bank, rect, ell, w);
  const VarianceCache cache_rec(bank, rec, ell, w);

  std::vector<Sec51SeedResult> results(static_cast<std::size_t>(a.seeds));
  parallel_for(static_cast<std::size_t>(a.seeds), [&](std::size_t s) {
    SimConfig cfg;
    cfg.T = a.T;
    cfg.seed = a.base_seed + s;
    const auto path = simulate(model, cfg);
    const auto pyr = dwt(path.values, bank, 5);
    Sec51SeedResult r;
    r.d_hat.assign(n_scheme, {});
    r.se.assign(n_scheme, {});
    r.lo.assign(n_scheme, {});
    r.hi.assign(n_scheme, {});
    r.sigma2.assign(n_scheme, {});
    r.flags.assign(n_scheme, {});
    for (int sch = 0; sch < n_scheme; ++sch) {
      const WeightScheme& scheme = (sch == 0) ? rect : rec;
      const VarianceCache& cache = (sch == 0) ? cache_rect : cache_rec;
      // sigma2 curves for j = 1..5
      const auto sc_all = local_scalogram(pyr, scheme, grid, 1, 4);
      r.sigma2[static_cast<std::size_t>(sch)] = sc_all.values;
      for (int L = 1; L <= n_L; ++L) {
        EstimationPlan plan;
        plan.L = L;
        plan.ell = ell;
        plan.scheme = scheme;
        const auto sc = local_scalogram(pyr, scheme, grid, L, ell);
        MemoryEstimate est = estimate_d(sc, plan);
        attach_confidence(est, sc, plan, cache);
        std::vector<double> dh(grid.size()), se(grid.size()), lo(grid.size()),
            hi(grid.size());
        std::vector<std::uint8_t> fl(grid.size());
        for (std::size_t iu = 0; iu < grid.size(); ++iu) {
          dh[iu] = est.points[iu].d_hat;
          se[iu] = est.points[iu].se;
          lo[iu] = est.points[iu].lo;
          hi[iu] = est.points[iu].hi;
          fl[iu] = est.points[iu].flags;
        }
        r.d_hat[static_cast<std::size_t>(sch)].push_back(std::move(dh));
        r.se[static_cast<std::size_t>(sch)].push_back(std::move(se));
        r.lo[static_cast<std::size_t>(sch)].push_back(std::move(lo));
        r.hi[static_cast<std::size_t>(sch)].push_back(std::move(hi));
        r.flags[static_cast<std::size_t>(sch)].push_back(std::move(fl));
      }
    }
    results[s] = std::move(r);
  });

  const char* scheme_names[2] = {"kernel", "recursive"};

  // plot-ready long CSV for the first seed (one representative path)
  for (int sch = 0; sch < n_scheme; ++sch) {
    std::ofstream out(fs::path(a.out_dir) /
                      ("figure_" + std::string(scheme_names[sch]) + ".csv"));
    out << "u,quantity,index,value\n";
    const auto& r = results[0];
    for (std::size_t iu = 0; iu < grid.size(); ++iu) {
      out << format_full(grid[iu]) << ",d_true,0,"
          << format_full(model.d(grid[iu])) << "\n";
      for (int L = 1; L <= n_L; ++L) {
        const auto& row = r.d_hat[static_cast<std::size_t>(sch)][static_cast<std::size_t>(L - 1)];
        if (std::isnan(row[iu])) continue;  // boundary-dropped
        out << format_full(grid[iu]) << ",d_hat," << L << ","
            << format_full(row[iu]) << "\n";
        out << format_full(grid[iu]) << ",ci_lo," << L << ","
            << format_full(r.lo[static_cast<std::size_t>(sch)][static_cast<std::size_t>(L - 1)][iu]) << "\n";
        out << format_full(grid[iu]) << ",ci_hi," << L << ","
            << format_full(r.hi[static_cast<std::size_t>(sch)][static_cast<std::size_t>(L - 1)][iu]) << "\n";
      }
      for (int j = 1; j <= 5; ++j) {
        out << format_full(grid[iu]) << ",sigma2," << j << ","
            << format_full(r.sigma2[static_cast<std::size_t>(sch)][static_cast<std::size_t>(j - 1)][iu]) << "\n";
      }
    }
  }

  // summary: MAE and signed bias on u in [0.2, 0.8], CI coverage, and the
  // Monte Carlo variance of sigma2 by scale
  std::ofstream sum(fs::path(a.out_dir) / "summary.csv");
  sum << "metric,scheme,index,value\n";
  double mae_L2_kernel = -1.0, bias_L1_kernel = 0.0, bias_L2_kernel = 0.0;
  for (int sch = 0; sch < n_scheme; ++sch) {
    for (int L = 1; L <= n_L; ++L) {
      double mae = 0.0, bias = 0.0, cover = 0.0;
      std::int64_t n = 0, ncover = 0;
      for (int s = 0; s < a.seeds; ++s) {
        const auto& r = results[static_cast<std::size_t>(s)];
        for (std::size_t iu = 0; iu < grid.size(); ++iu) {
          const double u = grid[iu];
          if (u < 0.2 - 1e-12 || u > 0.8 + 1e-12) continue;
          const double dh =
              r.d_hat[static_cast<std::size_t>(sch)][static_cast<std::size_t>(L - 1)][iu];
          if (std::isnan(dh)) continue;
          const double dt = model.d(u);
          mae += std::abs(dh - dt);
          bias += dh - dt;
          ++n;
          const double lo =
              r.lo[static_cast<std::size_t>(sch)][static_cast<std::size_t>(L - 1)][iu];
          const double hi =
              r.hi[static_cast<std::size_t>(sch)][static_cast<std::size_t>(L - 1)][iu];
          if (!std::isnan(lo) && lo <= dt && dt <= hi) ++ncover;
        }
      }
      mae /= static_cast<double>(n);
      bias /= static_cast<double>(n);
      cover = static_cast<double>(ncover) / static_cast<double>(n);
      sum << "mae," << scheme_names[sch] << "," << L << "," << format_full(mae) << "\n";
      sum << "bias," << scheme_names[sch] << "," << L << "," << format_full(bias) << "\n";
      sum << "ci_coverage," << scheme_names[sch] << "," << L << ","
          << format_full(cover) << "\n";
      if (sch == 0 && L == 1) bias_L1_kernel = bias;
      if (sch == 0 && L == 2) {
        mae_L2_kernel = mae;
        bias_L2_kernel = bias;
      }
    }
    // MC variance of sigma2 by scale, averaged over interior u
    for (int j = 1; j <= 5; ++j) {
      double var_acc = 0.0;
      std::int64_t nu = 0;
      for (std::size_t iu = 0; iu < grid.size(); ++iu) {
        const double u = grid[iu];
        if (u < 0.2 - 1e-12 || u > 0.8 + 1e-12) continue;
        double m = 0.0, m2 = 0.0;
        for (int s = 0; s < a.seeds; ++s) {
          const double v = results[static_cast<std::size_t>(s)]
                               .sigma2[static_cast<std::size_t>(sch)]
                                      [static_cast<std::size_t>(j - 1)][iu];
          m += v;
          m2 += v * v;
        }
        m /= a.seeds;
        m2 /= a.seeds;
        var_acc += (m2 - m * m) * static_cast<double>(a.seeds) /
                   static_cast<double>(a.seeds - 1);
        ++nu;
      }
      sum << "sigma2_mc_variance," << scheme_names[sch] << "," << j << ","
          << format_full(var_acc / static_cast<double>(nu)) << "\n";
    }
  }
  std::cerr << "summary: kernel MAE(L=2)=" << mae_L2_kernel
            << " bias(L=1)=" << bias_L1_kernel << " bias(L=2)=" << bias_L2_kernel
            << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Time-varying long-memory estimation from wavelet scalograms"};
  app.require_subcommand(1);
  app.footer("Environment: TVLM_THREADS caps worker threads.\n"
             "A flat key=value config file (--config) provides defaults for\n"
             "wavelet.order, weights.kind, weights.kernel, weights.bandwidth,\n"
             "estimate.level, estimate.scales, grid; flags override it.");

  // pre-scan for --config so its values become flag defaults
  Defaults defs;
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  try {
    if (!config_path.empty()) defs.apply(load_config(config_path));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::string config_opt;
  app.add_option("--config", config_opt, "flat key=value config file");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate a locally stationary path");
  c_sim->add_option("--model", sim.model, "arfima|fgn");
  c_sim->add_option("--memory", sim.memory, "d(u) preset: constant|cosine|piecewise");
  c_sim->add_option("--d0", sim.d0, "constant d, or left piece");
  c_sim->add_option("--d1", sim.d1, "right piece for piecewise");
  c_sim->add_option("--phi", sim.phi, "AR coefficients");
  c_sim->add_option("--theta", sim.theta, "MA coefficients");
  c_sim->add_option("--sigma", sim.sigma, "innovation scale");
  c_sim->add_option("--p", sim.p, "differencing order");
  c_sim->add_option("--T", sim.T, "series length");
  c_sim->add_option("--seed", sim.seed, "RNG seed");
  c_sim->add_option("--noise", sim.noise, "gaussian|uniform");
  c_sim->add_option("--trunc", sim.trunc, "MA truncation length");
  c_sim->add_option("--out", sim.out, "output CSV (header 'x')");

  PipelineArgs sca;
  sca.wavelet_order = defs.wavelet_order;
  sca.scales = "1..5";
  sca.bandwidth = defs.bandwidth;
  sca.weights_kind = defs.weights_kind;
  sca.kernel = defs.kernel;
  sca.grid = defs.grid;
  sca.out = "scalogram.csv";
  bool export_taps = false;
  auto* c_sca = app.add_subcommand("scalogram", "local wavelet scalogram of a series");
  c_sca->add_option("--in", sca.in, "input CSV, one value per line")->required();
  c_sca->add_option("--wavelet", sca.wavelet_order, "Daubechies order");
  c_sca->add_option("--scales", sca.scales, "L..J or L:ell");
  c_sca->add_option("--bandwidth", sca.bandwidth, "bandwidth b");
  c_sca->add_option("--weights", sca.weights_kind, "kernel|recursive");
  c_sca->add_option("--kernel", sca.kernel, "rectangle|file:<taps.csv>");
  c_sca->add_option("--grid", sca.grid, "number of u grid points");
  c_sca->add_option("--out", sca.out, "output CSV (u,j,sigma2)");
  c_sca->add_flag("--export-taps", export_taps, "write per-scale filter taps CSVs");

  PipelineArgs est;
  est.wavelet_order = defs.wavelet_order;
  est.scales = defs.scales;
  est.bandwidth = defs.bandwidth;
  est.weights_kind = defs.weights_kind;
  est.kernel = defs.kernel;
  est.grid = defs.grid;
  est.level = defs.level;
  est.out = "estimates.csv";
  auto* c_est = app.add_subcommand("estimate", "estimate d(u) with confidence intervals");
  c_est->add_option("--in", est.in, "input CSV, one value per line")->required();
  c_est->add_option("--wavelet", est.wavelet_order, "Daubechies order");
  c_est->add_option("--scales", est.scales, "L:ell or L..J");
  c_est->add_option("--bandwidth", est.bandwidth, "bandwidth b");
  c_est->add_option("--weights", est.weights_kind, "kernel|recursive");
  c_est->add_option("--kernel", est.kernel, "rectangle|file:<taps.csv>");
  c_est->add_option("--level", est.level, "confidence level in (0,1)");
  c_est->add_option("--grid", est.grid, "number of u grid points");
  c_est->add_option("--out", est.out, "output CSV (u,d_hat,se,ci_lo,ci_hi,flags)");

  AsymArgs asym;
  asym.wavelet_order = defs.wavelet_order;
  asym.weights_kind = defs.weights_kind;
  asym.kernel = defs.kernel;
  asym.bandwidth = defs.bandwidth;
  auto* c_asy = app.add_subcommand("asymptotics", "emit K(d), Sigma, V tables");
  c_asy->add_option("--d-min", asym.d_min, "grid start");
  c_asy->add_option("--d-max", asym.d_max, "grid end");
  c_asy->add_option("--d-step", asym.d_step, "grid step");
  c_asy->add_option("--ell", asym.ell, "number of extra scales in the regression");
  c_asy->add_option("--wavelet", asym.wavelet_order, "Daubechies order");
  c_asy->add_option("--weights", asym.weights_kind, "kernel|recursive");
  c_asy->add_option("--kernel", asym.kernel, "rectangle|file:<taps.csv>");
  c_asy->add_option("--format", asym.format, "csv|json");
  c_asy->add_option("--out", asym.out, "output path");

  std::int64_t adv_T = 0;
  double adv_d = 0.0, adv_beta = 2.0;
  int adv_p = 0, adv_wavelet = defs.wavelet_order;
  auto* c_adv = app.add_subcommand("advise", "suggest (L, b) from the rate balance");
  c_adv->add_option("--T", adv_T, "series length")->required();
  c_adv->add_option("--d-prior", adv_d, "prior guess for d");
  c_adv->add_option("--beta", adv_beta, "smoothness exponent in (0,2]");
  c_adv->add_option("--p", adv_p, "differencing order");
  c_adv->add_option("--wavelet", adv_wavelet, "Daubechies order");

  Sec51Args s51;
  s51.bandwidth = defs.bandwidth;
  auto* c_51 = app.add_subcommand("reproduce-sec51",
                                  "simulated tvARFIMA(1,d,0) experiment end to end");
  c_51->add_option("--seeds", s51.seeds, "Monte Carlo replications");
  c_51->add_option("--T", s51.T, "series length");
  c_51->add_option("--bandwidth", s51.bandwidth, "bandwidth b");
  c_51->add_option("--grid", s51.grid, "number of u grid points");
  c_51->add_option("--seed", s51.base_seed, "base RNG seed");
  c_51->add_option("--out-dir", s51.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_sim->parsed()) return cmd_simulate(sim);
    if (c_sca->parsed()) return cmd_scalogram(sca, export_taps);
    if (c_est->parsed()) return cmd_estimate(est);
    if (c_asy->parsed()) return cmd_asymptotics(asym);
    if (c_adv->parsed()) {
      WaveletSpec spec{.order = adv_wavelet};
      spec.validate();
      const WaveletBank bank(spec, 12);
      const TuningAdvice adv = advise_tuning(adv_T, adv_d, adv_beta, adv_p, bank);
      std::cout << "L=" << adv.L << "\nbandwidth=" << format_full(adv.bandwidth)
                << "\nrate_exponent=" << format_full(adv.rate_exponent) << "\n";
      return 0;
    }
    if (c_51->parsed()) return cmd_reproduce_sec51(s51);
  } catch (const BoundaryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tvlm::cli
