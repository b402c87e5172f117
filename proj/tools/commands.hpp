#pragma once

// Implementations of the `svlab` subcommands. Each returns the process exit
// code and writes its table to `out`; diagnostics go to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svlab/svetlichny.hpp"

namespace svlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

enum class Spacing { linear, log };

struct Grid {
  double min = 0.0;
  double max = 1.0;
  int count = 1;
  Spacing spacing = Spacing::linear;

  // Throws DomainError unless count >= 1 and min <= max (min > 0 for log).
  std::vector<double> values() const;
  std::string describe() const;
};

struct Common {
  int threads = 0;  // <= 0: SVLAB_THREADS, then hardware concurrency
  std::uint64_t seed = 20240101;
  std::string config_path;  // echoed into the metadata line only
};

struct ParityScanConfig {
  std::vector<int> n_modes{2, 3, 4, 5, 6, 7};
  Grid a{1.0, 10.0, 100, Spacing::linear};
  int lattice_side = 5;
};

struct LandscapeConfig {
  int n_modes = 3;
  double a = 1.5;
  Grid p0{-1.5, 1.5, 101, Spacing::linear};
  Grid p1{-1.5, 1.5, 101, Spacing::linear};
};

struct PseudospinScanConfig {
  Grid r{0.0, 3.0, 31, Spacing::linear};
  double tail_tolerance = 1e-8;
  std::optional<int> cutoff;  // forced cutoff instead of the tail-based choice
  int starts = 20;
};

struct FSequenceConfig {
  int n_min = 0;
  int n_max = 1000;
  int n_step = 1;
  std::optional<double> fit_min;  // default: n_max / 2
  std::optional<double> fit_max;  // default: n_max
};

struct ThresholdConfig {
  int n_modes = 3;
  double tol = 1e-10;
};

struct ValidateConfig {
  std::optional<int> cutoff;  // forced pseudospin cutoff
  double tail_tolerance = 1e-8;
  // Replaces the Svetlichny coefficients on the symmetric side of the
  // symmetric-vs-general check; used to confirm that the check can fail.
  svetlichny::CoefficientFn coefficient;
};

int parity_scan(const ParityScanConfig& cfg, const Common& common, std::ostream& out,
                std::ostream& err);
int parity_landscape(const LandscapeConfig& cfg, const Common& common, std::ostream& out,
                     std::ostream& err);
int pseudospin_scan(const PseudospinScanConfig& cfg, const Common& common, std::ostream& out,
                    std::ostream& err);
// The fitted prefactor and exponent are appended as a trailing comment line.
int f_sequence(const FSequenceConfig& cfg, const Common& common, std::ostream& out,
               std::ostream& err);
// Prints the threshold with 6 decimals.
int threshold(const ThresholdConfig& cfg, std::ostream& out, std::ostream& err);
// One "PASS name" / "FAIL name: detail" line per check.
int validate(const ValidateConfig& cfg, std::ostream& out, std::ostream& err);

// Gnuplot script plotting the CSV at `csv_path` for the given command.
std::string gnuplot_script(const std::string& command, const std::string& csv_path);

}  // namespace svlab::cli
