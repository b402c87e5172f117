#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "svlab/error.hpp"
#include "svlab/gaussian.hpp"
#include "svlab/kernels.hpp"
#include "svlab/oracles.hpp"
#include "svlab/parallel.hpp"
#include "svlab/parity.hpp"
#include "svlab/power_law.hpp"
#include "svlab/pseudospin.hpp"
#include "svlab/shell_sums.hpp"

#ifndef SVLAB_VERSION
#define SVLAB_VERSION "unknown"
#endif

namespace svlab::cli {
namespace {

namespace ps = pseudospin;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void write_metadata(std::ostream& out, const std::string& command, const std::string& config,
                    const std::string& tolerances, const Common& common) {
  out << "# svlab " << SVLAB_VERSION << ' ' << command << '\n';
  out << "# config: " << config << "; seed=" << common.seed;
  if (!common.config_path.empty()) out << "; config_file=" << common.config_path;
  out << '\n';
  out << "# tolerances: " << tolerances << '\n';
  out << "# kernels: " << kernels::name(kernels::active_isa()) << '\n';
}

class Row {
 public:
  Row& operator<<(double x) { return add(num(x)); }
  Row& operator<<(int x) { return add(std::to_string(x)); }
  Row& operator<<(bool x) { return add(x ? "1" : "0"); }
  Row& operator<<(const std::string& s) { return add(s); }
  const std::string& str() const { return s_; }

 private:
  Row& add(const std::string& cell) {
    if (!s_.empty()) s_ += ',';
    s_ += cell;
    return *this;
  }
  std::string s_;
};

}  // namespace

std::vector<double> Grid::values() const {
  if (count < 1) throw DomainError("grid count must be >= 1");
  if (!(min <= max) || !std::isfinite(min) || !std::isfinite(max))
    throw DomainError("grid needs finite min <= max");
  if (spacing == Spacing::log && !(min > 0.0)) throw DomainError("log grid needs min > 0");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    v[i] = spacing == Spacing::linear ? min + (max - min) * t
                                      : std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
  }
  v.back() = count == 1 ? min : max;
  return v;
}

std::string Grid::describe() const {
  return "[" + num(min) + "," + num(max) + "]x" + std::to_string(count) +
         (spacing == Spacing::log ? " log" : " linear");
}

int parity_scan(const ParityScanConfig& cfg, const Common& common, std::ostream& out,
                std::ostream& err) {
  const auto grid = cfg.a.values();
  for (int n : cfg.n_modes)
    if (n < 2) throw DomainError("n must be >= 2");
  for (double a : grid)
    if (a < 1.0) throw DomainError("a must be >= 1");

  parity::ParityOptions opt;
  opt.lattice_side = cfg.lattice_side;
  opt.threads = common.threads;

  write_metadata(out, "parity-scan",
                 "n=" + join_ints(cfg.n_modes) + "; a=" + cfg.a.describe() +
                     "; lattice_side=" + std::to_string(cfg.lattice_side),
                 "x_tol=" + num(opt.x_tol) + "; stationarity_tol=" + num(opt.residual_tol), common);
  out << "n,a,s_opt,q0,q1,p0,p1,stationarity_residual,converged,q_improved,seed,quantum_bound\n";

  bool all_converged = true;
  for (int n : cfg.n_modes) {
    for (const auto& row : parity::scan_vs_a(n, grid, opt)) {
      const auto& o = row.optimum;
      all_converged = all_converged && o.converged;
      Row r;
      r << n << row.a << o.s_opt << o.settings.q0 << o.settings.q1 << o.settings.p0 << o.settings.p1
        << o.residual << o.converged << o.q_improved << o.seed << svetlichny::quantum_bound(n);
      out << r.str() << '\n';
    }
  }
  if (!all_converged) {
    err << "svlab: warning: some grid points did not converge\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int parity_landscape(const LandscapeConfig& cfg, const Common& common, std::ostream& out,
                     std::ostream&) {
  const auto p0 = cfg.p0.values();
  const auto p1 = cfg.p1.values();
  const auto land = parity::landscape(cfg.n_modes, cfg.a, p0, p1, common.threads);

  write_metadata(out, "parity-landscape",
                 "n=" + std::to_string(cfg.n_modes) + "; a=" + num(cfg.a) + "; q0=0; q1=0; p0=" +
                     cfg.p0.describe() + "; p1=" + cfg.p1.describe(),
                 "none (closed form)", common);
  out << "p0,p1,s,violation\n";
  for (std::size_t i = 0; i < p0.size(); ++i)
    for (std::size_t j = 0; j < p1.size(); ++j) {
      const double s = land.at(i, j);
      Row r;
      r << p0[i] << p1[j] << s << std::max(s, 1.0);
      out << r.str() << '\n';
    }
  return kExitOk;
}

int pseudospin_scan(const PseudospinScanConfig& cfg, const Common& common, std::ostream& out,
                    std::ostream& err) {
  const auto grid = cfg.r.values();
  if (cfg.cutoff && (*cfg.cutoff < 0 || *cfg.cutoff % 2 != 0))
    throw DomainError("cutoff must be even and >= 0");
  if (cfg.starts < 0) throw DomainError("starts must be >= 0");

  struct Result {
    int cutoff = 0;
    double deficit = 0.0;
    double fixed = 0.0;
    double residual = 0.0;
    ps::PseudospinOptimum opt;
    parity::ParityOptimum parity;
  };
  std::vector<Result> rows(grid.size());
  parallel_for(grid.size(), common.threads, [&](std::size_t i) {
    const double r = grid[i];
    const int cutoff = cfg.cutoff ? *cfg.cutoff : ps::choose_cutoff(r, cfg.tail_tolerance);
    const auto state = ps::ghz_state_fock(r, cutoff, std::numeric_limits<double>::infinity());
    const ps::CorrelationTensor t(state);
    ps::PseudospinOptions po;
    po.starts = cfg.starts;
    po.seed = common.seed;
    Result& res = rows[i];
    res.cutoff = cutoff;
    res.deficit = state.norm_deficit();
    res.fixed = ps::svetlichny_fixed_settings(t);
    res.residual = ps::residual_norm(state);
    res.opt = ps::optimize_pseudospin_settings(t, po);
    res.parity = parity::optimize_settings(
        gaussian::SymmetricGaussianState(3, gaussian::a_from_squeezing(r)));
  });

  std::string cut = cfg.cutoff ? std::to_string(*cfg.cutoff) : "auto";
  write_metadata(out, "pseudospin-scan",
                 "r=" + cfg.r.describe() + "; cutoff=" + cut + "; starts=" + std::to_string(cfg.starts),
                 "tail=" + num(cfg.tail_tolerance) + "; angle_x_tol=1e-08", common);
  out << "r,a,cutoff,norm_deficit,tail_ok,s3_fixed,s3_optimized,optimizer_converged,"
         "s3_parity_optimal,residual_norm";
  for (const char* m : {"a", "b", "c"})
    for (int x = 0; x < 2; ++x) out << ",theta_" << m << x << ",phi_" << m << x;
  out << '\n';

  bool tail_ok_all = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Result& res = rows[i];
    const bool tail_ok = res.deficit <= cfg.tail_tolerance;
    tail_ok_all = tail_ok_all && tail_ok;
    Row r;
    r << grid[i] << gaussian::a_from_squeezing(grid[i]) << res.cutoff << res.deficit << tail_ok
      << res.fixed << res.opt.s_opt << res.opt.converged << res.parity.s_opt << res.residual;
    for (double x : res.opt.settings.to_vector()) r << x;
    out << r.str() << '\n';
  }
  if (!tail_ok_all) {
    err << "svlab: warning: cutoff misses the tail tolerance " << num(cfg.tail_tolerance)
        << " for some rows\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int f_sequence(const FSequenceConfig& cfg, const Common& common, std::ostream& out,
               std::ostream& err) {
  if (cfg.n_min < 0 || cfg.n_max < cfg.n_min || cfg.n_step < 1)
    throw DomainError("need 0 <= n-min <= n-max and n-step >= 1");
  std::vector<int> ns;
  for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step) ns.push_back(n);

  std::vector<double> f;
  try {
    f = ps::shell_terms(ns, common.threads);
  } catch (const PrecisionError& e) {
    err << "svlab: precision error: " << e.what() << '\n';
    return kExitNumerical;
  }
  const FitWindow window{cfg.fit_min.value_or(cfg.n_max / 2.0), cfg.fit_max.value_or(cfg.n_max)};

  write_metadata(out, "f-sequence",
                 "n=[" + std::to_string(cfg.n_min) + "," + std::to_string(cfg.n_max) + "] step " +
                     std::to_string(cfg.n_step) + "; fit_window=[" + num(window.lo) + "," +
                     num(window.hi) + "]",
                 "log_magnitude_guard=1e7", common);
  out << "n,f\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Row r;
    r << ns[i] << f[i];
    out << r.str() << '\n';
  }

  std::vector<double> nd(ns.begin(), ns.end());
  try {
    const auto fit = fit_power_law(nd, f, window);
    out << "# fit: prefactor=" << num(fit.prefactor) << " exponent=" << num(fit.exponent)
        << " points=" << fit.points << '\n';
  } catch (const Error& e) {
    err << "svlab: warning: power-law fit skipped: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int threshold(const ThresholdConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n_modes % 2 == 0 || cfg.n_modes < 3) {
    err << "svlab: threshold: n must be odd and >= 3; even n violates the inequality for every a > 1\n";
    return kExitUsage;
  }
  try {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", parity::threshold(cfg.n_modes, cfg.tol));
    out << buf << '\n';
  } catch (const BracketError& e) {
    err << "svlab: threshold: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int validate(const ValidateConfig& cfg, std::ostream& out, std::ostream& err) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      out << "PASS " << name << '\n';
    } else {
      out << "FAIL " << name << ": " << detail << '\n';
      ++failures;
    }
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  check("symmetric-vs-general-svetlichny", [&]() -> std::string {
    double worst = 0.0;
    for (int n = 2; n <= 7; ++n)
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> e(n + 1);
        for (double& x : e) x = unit(rng);
        const svetlichny::SymmetricCorrelations corr(n, e);
        const double sym = cfg.coefficient ? svetlichny::svetlichny_symmetric(corr, cfg.coefficient)
                                           : svetlichny::svetlichny_symmetric(corr);
        worst = std::max(worst, std::abs(sym - svetlichny::svetlichny_general(svetlichny::expand(corr))));
      }
    return worst < 1e-12 ? "" : "max deviation " + num(worst);
  });

  check("parity-correlator-vs-wigner", [&]() -> std::string {
    std::uniform_real_distribution<double> a_dist(1.0, 4.0);
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      const int n = 2 + rep % 6;
      const parity::SymmetricGaussianState st(n, a_dist(rng));
      const parity::ParitySettings s{0.5 * unit(rng), 0.5 * unit(rng), 0.5 * unit(rng), 0.5 * unit(rng)};
      const int m = rep % (n + 1);
      const double e = parity::correlation(st, s, m);
      const double w = oracles::parity_correlation_wigner(st, s, m);
      worst = std::max(worst, std::abs(e - w) / std::abs(w));
    }
    return worst < 1e-10 ? "" : "max relative deviation " + num(worst);
  });

  const std::vector<double> radii{0.0, 1.0, 2.0};
  check("pseudospin-tail-tolerance", [&]() -> std::string {
    for (double r : radii) {
      const int cutoff = cfg.cutoff ? *cfg.cutoff : ps::choose_cutoff(r, cfg.tail_tolerance);
      const double d = ps::tail_weight(r, cutoff);
      if (d > cfg.tail_tolerance)
        return "r=" + num(r) + " cutoff=" + std::to_string(cutoff) + " norm_deficit=" + num(d);
    }
    return "";
  });

  check("fixed-vs-general-pseudospin", [&]() -> std::string {
    for (double r : radii) {
      const int cutoff = cfg.cutoff ? *cfg.cutoff : ps::choose_cutoff(r, cfg.tail_tolerance);
      const ps::CorrelationTensor t(
          ps::ghz_state_fock(r, cutoff, std::numeric_limits<double>::infinity()));
      const double d = std::abs(ps::svetlichny_fixed_settings(t) -
                                ps::svetlichny_pseudospin(t, ps::fixed_settings()));
      if (d > 1e-9) return "r=" + num(r) + " deviation " + num(d);
    }
    return "";
  });

  check("dense-pseudospin-correlator", [&]() -> std::string {
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> phi(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (double r : {0.3, 0.9}) {
      const auto state = ps::ghz_state_fock(r, 8, 1.0);
      const ps::CorrelationTensor t(state);
      for (int rep = 0; rep < 10; ++rep) {
        const std::array<ps::Setting, 3> s{ps::Setting{theta(rng), phi(rng)}, {theta(rng), phi(rng)},
                                           {theta(rng), phi(rng)}};
        const auto dense = oracles::dense_pseudospin_correlation(state, s);
        worst = std::max({worst, std::abs(t.correlation(s) - dense[0]), std::abs(dense[1])});
      }
    }
    return worst < 1e-12 ? "" : "max deviation " + num(worst);
  });

  check("residual-identity", [&]() -> std::string {
    for (double r : {0.0, 0.7, 1.5}) {
      const auto state = ps::ghz_state(r);
      const double res = ps::residual_norm(state);
      const double d = std::abs(res * res + 2.0 * ps::CorrelationTensor(state).xx() - 2.0);
      if (d > 1e-9) return "r=" + num(r) + " deviation " + num(d);
    }
    return "";
  });

  check("kernel-equivalence", [&]() -> std::string {
    if (!kernels::avx2_available()) return "";
    std::vector<double> lf(2 * 300 + 1, 0.0);
    for (std::size_t k = 1; k < lf.size(); ++k) lf[k] = std::lgamma(k + 1.0);
    for (int n : {0, 1, 7, 64, 300}) {
      const double s = kernels::scalar::shell_sum(n, lf);
      const double v = kernels::avx2::shell_sum(n, lf);
      if (std::abs(s - v) > 1e-12 * std::abs(s)) return "shell_sum n=" + std::to_string(n);
    }
    return "";
  });

  if (failures) err << "svlab: validate: " << failures << " check(s) failed\n";
  return failures ? kExitUsage : kExitOk;
}

std::string gnuplot_script(const std::string& command, const std::string& csv_path) {
  std::ostringstream g;
  g << "# gnuplot script written by svlab " << command << "\n"
    << "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n"
    << "set terminal pngcairo size 900,650\nset output '" << csv_path << ".png'\n";
  if (command == "parity-scan") {
    g << "set xlabel 'a'\nset ylabel 'S_n^{opt}'\n"
      << "plot for [n=2:30] '" << csv_path
      << "' using 2:($1==n ? $3 : 1/0) with lines title sprintf('n=%d', n)\n";
  } else if (command == "parity-landscape") {
    g << "set xlabel 'p_0'\nset ylabel 'p_1'\nset view map\nset dgrid3d\n"
      << "splot '" << csv_path << "' using 1:2:4 with pm3d notitle\n";
  } else if (command == "pseudospin-scan") {
    g << "set xlabel 'r'\nset ylabel 'S_3'\n"
      << "plot '" << csv_path << "' using 1:6 with lines title 'fixed settings', \\\n"
      << "     '' using 1:7 with points pt 7 title 'optimized pseudospin', \\\n"
      << "     '' using 1:9 with lines title 'displaced parity', sqrt(2) dt 2 title 'sqrt(2)'\n";
  } else {
    g << "set logscale xy\nset xlabel 'n'\nset ylabel 'f(n)'\n"
      << "plot '" << csv_path << "' using 1:2 with points pt 7 title 'f(n)', x**(-1.5) dt 2 title 'n^{-3/2}'\n";
  }
  return g.str();
}

}  // namespace svlab::cli
