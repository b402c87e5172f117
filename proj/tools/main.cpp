#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "svlab/error.hpp"

namespace {

using namespace svlab::cli;

struct Shared {
  std::string out = "-";
  std::string format = "csv";
  int threads = 0;
  std::uint64_t seed = 20240101;
  bool gnuplot = false;
};

void add_shared(CLI::App* sub, Shared& s) {
  sub->add_option("--out", s.out, "Output file ('-' for stdout)");
  sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv"}));
  sub->add_option("--threads", s.threads, "Worker threads (default: SVLAB_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", s.seed, "Seed for optimizer multi-starts");
  sub->add_flag("--gnuplot", s.gnuplot, "Also write a gnuplot script next to the CSV");
}

void add_grid(CLI::App* sub, const std::string& name, Grid& g, bool with_spacing = true) {
  sub->add_option("--" + name + "-min", g.min);
  sub->add_option("--" + name + "-max", g.max);
  sub->add_option("--" + name + "-count", g.count)->check(CLI::PositiveNumber);
  if (with_spacing) {
    static const std::map<std::string, Spacing> kSpacing{{"linear", Spacing::linear}, {"log", Spacing::log}};
    sub->add_option("--" + name + "-spacing", g.spacing)->transform(CLI::CheckedTransformer(kSpacing));
  }
}

// Runs a table-producing command against --out, optionally writing a
// gnuplot script beside it.
int run_table(const std::string& command, const Shared& s, const std::string& config_path,
              const std::function<int(const Common&, std::ostream&)>& body) {
  Common common{s.threads, s.seed, config_path};
  if (s.gnuplot && s.out == "-") {
    std::cerr << "svlab: --gnuplot needs --out FILE\n";
    return kExitUsage;
  }
  // Buffer so that a failed run leaves no partial file behind.
  std::ostringstream buffer;
  const int code = body(common, buffer);
  if (s.out == "-") {
    std::cout << buffer.str();
    return code;
  }
  std::ofstream file(s.out, std::ios::binary);
  file << buffer.str();
  if (!file) {
    std::cerr << "svlab: cannot write " << s.out << '\n';
    return kExitUsage;
  }
  if (s.gnuplot) {
    std::ofstream gp(s.out + ".gp", std::ios::binary);
    gp << gnuplot_script(command, s.out);
    if (!gp) {
      std::cerr << "svlab: cannot write " << s.out << ".gp\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Svetlichny nonlocality of symmetric Gaussian states", "svlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", SVLAB_VERSION);
  std::string config_path;
  app.set_config("--config", "", "TOML-style config file; command-line flags take precedence")
      ->each([&](const std::string& p) { config_path = p; });

  Shared shared;

  ParityScanConfig scan;
  auto* c_scan = app.add_subcommand("parity-scan", "Optimal S_n versus a (displaced parity)");
  c_scan->add_option("--n", scan.n_modes, "Mode counts")->delimiter(',')->check(CLI::Range(2, 30));
  add_grid(c_scan, "a", scan.a);
  c_scan->add_option("--lattice-side", scan.lattice_side, "Seeds per axis for even n")
      ->check(CLI::PositiveNumber);
  add_shared(c_scan, shared);

  LandscapeConfig land;
  auto* c_land = app.add_subcommand("parity-landscape", "S_n over a (p0, p1) grid at q = 0");
  c_land->add_option("--n", land.n_modes)->check(CLI::Range(2, 30));
  c_land->add_option("--a", land.a)->check(CLI::Range(1.0, 1e12));
  add_grid(c_land, "p0", land.p0, false);
  add_grid(c_land, "p1", land.p1, false);
  add_shared(c_land, shared);

  PseudospinScanConfig pscan;
  auto* c_ps = app.add_subcommand("pseudospin-scan", "S_3 versus squeezing r (pseudospin and parity)");
  add_grid(c_ps, "r", pscan.r);
  c_ps->add_option("--tail", pscan.tail_tolerance, "Largest discarded probability")
      ->check(CLI::PositiveNumber);
  c_ps->add_option("--cutoff", pscan.cutoff, "Force the Fock cutoff (even)");
  c_ps->add_option("--starts", pscan.starts, "Random optimizer starts")->check(CLI::NonNegativeNumber);
  add_shared(c_ps, shared);

  FSequenceConfig fseq;
  auto* c_f = app.add_subcommand("f-sequence", "Infinite-squeezing residual shell sums f(n)");
  c_f->add_option("--n-min", fseq.n_min);
  c_f->add_option("--n-max", fseq.n_max);
  c_f->add_option("--n-step", fseq.n_step);
  c_f->add_option("--fit-min", fseq.fit_min);
  c_f->add_option("--fit-max", fseq.fit_max);
  add_shared(c_f, shared);

  ThresholdConfig thr;
  auto* c_thr = app.add_subcommand("threshold", "Smallest violating a for odd n");
  c_thr->add_option("n,--n", thr.n_modes, "Number of modes (odd)");
  c_thr->add_option("--tol", thr.tol)->check(CLI::PositiveNumber);
  add_shared(c_thr, shared);

  ValidateConfig val;
  auto* c_val = app.add_subcommand("validate", "Cross-check the library against slow oracles");
  c_val->add_option("--cutoff", val.cutoff, "Force the Fock cutoff used by the pseudospin checks");
  c_val->add_option("--tail", val.tail_tolerance)->check(CLI::PositiveNumber);
  add_shared(c_val, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_scan)
      return run_table("parity-scan", shared, config_path,
                       [&](const Common& c, std::ostream& o) { return parity_scan(scan, c, o, std::cerr); });
    if (*c_land)
      return run_table("parity-landscape", shared, config_path, [&](const Common& c, std::ostream& o) {
        return parity_landscape(land, c, o, std::cerr);
      });
    if (*c_ps)
      return run_table("pseudospin-scan", shared, config_path, [&](const Common& c, std::ostream& o) {
        return pseudospin_scan(pscan, c, o, std::cerr);
      });
    if (*c_f)
      return run_table("f-sequence", shared, config_path,
                       [&](const Common& c, std::ostream& o) { return f_sequence(fseq, c, o, std::cerr); });
    if (*c_thr) {
      if (shared.out == "-") return threshold(thr, std::cout, std::cerr);
      std::ofstream file(shared.out);
      const int code = threshold(thr, file, std::cerr);
      if (!file) {
        std::cerr << "svlab: cannot write " << shared.out << '\n';
        return kExitUsage;
      }
      return code;
    }
    if (*c_val) return validate(val, std::cout, std::cerr);
  } catch (const svlab::Error& e) {
    std::cerr << "svlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "svlab: unexpected failure: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
