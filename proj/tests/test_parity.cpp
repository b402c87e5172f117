#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "svlab/error.hpp"
#include "svlab/oracles.hpp"
#include "svlab/parity.hpp"

using namespace svlab;
using namespace svlab::parity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kAsymptote = 4.0 * std::pow(3.0, -9.0 / 8.0);
const double kThreshold3 = std::sqrt(1.5);

}  // namespace

TEST_CASE("correlator is one without displacement", "[parity]") {
  for (int n = 2; n <= 7; ++n)
    for (int m = 0; m <= n; ++m) CHECK(correlation(SymmetricGaussianState(n, 2.5), {}, m) == 1.0);
}

TEST_CASE("vacuum correlator is a product of single-mode Gaussians", "[parity]") {
  testing::for_all(50, 31, [](testing::Gen& g, int) {
    const int n = g.integer(2, 6);
    const int m = g.integer(0, n);
    const ParitySettings s{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    const double expected =
        std::exp(-(n - m) * (s.q0 * s.q0 + s.p0 * s.p0) - m * (s.q1 * s.q1 + s.p1 * s.p1));
    CHECK_THAT(correlation(SymmetricGaussianState(n, 1.0), s, m), WithinRel(expected, 1e-14));
  });
}

TEST_CASE("correlator equals the scaled Wigner function", "[parity][property]") {
  testing::for_all(100, 32, [](testing::Gen& g, int) {
    const int n = g.integer(2, 5);
    const SymmetricGaussianState st(n, g.uniform(1.0, 3.0));
    const ParitySettings s{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    const int m = g.integer(0, n);
    const double e = correlation(st, s, m);
    CHECK(e > 0.0);
    CHECK(e <= 1.0);
    CHECK_THAT(e, WithinRel(oracles::parity_correlation_wigner(st, s, m), 1e-10));
  });
}

TEST_CASE("correlator rejects invalid m", "[parity]") {
  CHECK_THROWS_AS(correlation(SymmetricGaussianState(3, 2.0), {}, 4), DomainError);
  CHECK_THROWS_AS(correlation(SymmetricGaussianState(3, 2.0), {}, -1), DomainError);
}

TEST_CASE("Svetlichny value at reference points", "[parity]") {
  for (double a : {1.0, 1.5, 7.0}) CHECK(svetlichny_parity(SymmetricGaussianState(3, a), {}) == 1.0);
  // 40-digit reference at the closed-form antisymmetric optimum.
  const double p = optimal_p3(1.5);
  CHECK_THAT(p, WithinRel(0.2129259759790770317414716394, 1e-12));
  CHECK_THAT(svetlichny_parity(SymmetricGaussianState(3, 1.5), {0, 0, p, -p}),
             WithinRel(1.033975508729854717074895295, 1e-12));
  CHECK_THAT(optimal_p3(2.0), WithinRel(0.2267374490969930309014729386, 1e-12));
}

TEST_CASE("Svetlichny value is even in p and in q", "[parity][property]") {
  testing::for_all(100, 33, [](testing::Gen& g, int) {
    const SymmetricGaussianState st(g.integer(2, 8), g.uniform(1.0, 5.0));
    const ParitySettings s{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    const double v = svetlichny_parity(st, s);
    CHECK_THAT(svetlichny_parity(st, {s.q0, s.q1, -s.p0, -s.p1}), WithinAbs(v, 1e-14));
    CHECK_THAT(svetlichny_parity(st, {-s.q0, -s.q1, s.p0, s.p1}), WithinAbs(v, 1e-14));
  });
}

TEST_CASE("stationarity residuals", "[parity]") {
  const auto at_origin = stationarity_residuals(SymmetricGaussianState(5, 3.0), 0.0, 0.0);
  CHECK(at_origin.g0 == 0.0);
  CHECK(at_origin.g1 == 0.0);
  const double p = optimal_p3(2.0);
  CHECK(stationarity_residuals(SymmetricGaussianState(3, 2.0), p, -p).max_abs() < 1e-7);
}

TEST_CASE("stationarity sums are the scaled gradient", "[parity][property]") {
  testing::for_all(20, 34, [](testing::Gen& g, int) {
    const int n = g.integer(2, 8);
    const SymmetricGaussianState st(n, g.uniform(1.1, 4.0));
    const double p0 = g.uniform(-0.8, 0.8), p1 = g.uniform(-0.8, 0.8);
    const double h = 1e-5;
    const double d0 = (svetlichny_parity(st, {0, 0, p0 + h, p1}) - svetlichny_parity(st, {0, 0, p0 - h, p1})) / (2 * h);
    const double d1 = (svetlichny_parity(st, {0, 0, p0, p1 + h}) - svetlichny_parity(st, {0, 0, p0, p1 - h})) / (2 * h);
    const auto r = stationarity_residuals(st, p0, p1);
    // (g1, g0) points along -grad S.
    const double dot = -(r.g1 * d0 + r.g0 * d1);
    const double cosine = dot / (std::hypot(r.g0, r.g1) * std::hypot(d0, d1));
    CHECK(cosine > 0.999);
    const double k = -std::ldexp(1.0, 1 - (n + 1) / 2);
    CHECK_THAT(k * r.g1, WithinAbs(d0, 1e-7));
    CHECK_THAT(k * r.g0, WithinAbs(d1, 1e-7));
  });
}

TEST_CASE("antisymmetric optimum for three modes", "[parity]") {
  CHECK_THROWS_AS(optimal_p3(kThreshold3), DomainError);
  CHECK_THROWS_AS(optimal_p3(1.1), DomainError);
  CHECK(optimal_p3(kThreshold3 + 1e-9) < 1e-3);
  double prev = 0.0;
  for (double a = kThreshold3 + 1e-6; a < kThreshold3 + 0.02; a += 0.002) {
    const double p = optimal_p3(a);
    CHECK(p > 0.0);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("two-dimensional refinement cannot improve the antisymmetric optimum", "[parity]") {
  for (double a : {1.5, 2.0, 5.0}) {
    const SymmetricGaussianState st(3, a);
    const double p = optimal_p3(a);
    const double base = svetlichny_parity(st, {0, 0, p, -p});
    const auto best = optimize_settings(st, ParityOptions{.warm_start = ParitySettings{0, 0, p, -p}});
    INFO("a=" << a);
    CHECK(best.s_opt - base <= 1e-8);
    CHECK_THAT(best.s_opt, WithinAbs(base, 1e-10));
  }
}

TEST_CASE("optimum below, near and far above the three-mode threshold", "[parity]") {
  const auto below = optimize_settings(SymmetricGaussianState(3, 1.2));
  CHECK(below.s_opt == 1.0);
  CHECK(below.settings.p0 == 0.0);
  CHECK(below.converged);
  const auto far = optimize_settings(SymmetricGaussianState(3, 1e4));
  CHECK_THAT(far.s_opt, WithinAbs(kAsymptote, 1e-3));
  CHECK(far.converged);
}

TEST_CASE("even mode counts violate for every a above one", "[parity]") {
  CHECK(optimize_settings(SymmetricGaussianState(4, 1.01)).s_opt > 1.0);
  CHECK(optimize_settings(SymmetricGaussianState(2, 1.01)).s_opt > 1.0);
}

TEST_CASE("optimum regression table", "[parity]") {
  // Independent multi-start simplex optimisation in double precision.
  struct Ref {
    int n;
    double a;
    double s;
  };
  const Ref refs[] = {
      {2, 1.5, 1.1066400810}, {3, 1.5, 1.0339755087}, {4, 1.5, 1.4516374247}, {5, 1.5, 1.3266217561},
      {2, 3.0, 1.1488891152}, {3, 3.0, 1.1274460039}, {4, 3.0, 1.7340078426}, {5, 3.0, 1.6926463210},
      {2, 10.0, 1.1610500869}, {3, 10.0, 1.1590606213}, {4, 10.0, 1.8293188105}, {5, 10.0, 1.8251882127},
      {2, 1.01, 1.0076341461}, {4, 1.01, 1.0180518469}, {3, 1.01, 1.0}, {5, 1.01, 1.0},
      {2, 1e4, 1.1622473893}, {3, 1e4, 1.1622473873}, {4, 1e4, 1.8391657510}, {5, 1e4, 1.8391657468},
  };
  for (const auto& r : refs) {
    INFO("n=" << r.n << " a=" << r.a);
    CHECK_THAT(optimize_settings(SymmetricGaussianState(r.n, r.a)).s_opt, WithinAbs(r.s, 1e-5));
  }
}

TEST_CASE("optimum invariants", "[parity][property]") {
  testing::for_all(40, 35, [](testing::Gen& g, int) {
    const int n = g.integer(2, 9);
    const double a = std::exp(g.uniform(0.0, std::log(30.0)));
    INFO("n=" << n << " a=" << a);
    const auto o = optimize_settings(SymmetricGaussianState(n, a));
    CHECK(o.s_opt >= 1.0);
    CHECK(o.s_opt <= svetlichny::quantum_bound(n) + 1e-6);
    CHECK(o.converged);
    CHECK(o.residual < 1e-7);
    CHECK_FALSE(o.q_improved);
    if (n % 2 == 1) CHECK(std::abs(o.settings.p0 + o.settings.p1) < 1e-6);
  });
}

TEST_CASE("thresholds for odd mode counts", "[parity]") {
  CHECK_THAT(threshold(3), WithinAbs(kThreshold3, 1e-7));
  // 40-digit roots of the small-displacement violation condition.
  CHECK_THAT(threshold(5), WithinAbs(1.080123449734643371827661239, 1e-7));
  CHECK_THAT(threshold(7), WithinAbs(1.048808848170151546991453514, 1e-7));
  CHECK_THAT(threshold(9), WithinAbs(1.035098339013531326694190297, 1e-7));
  CHECK(threshold(5) < threshold(3));
  CHECK(threshold(7) < threshold(5));
  CHECK_THROWS_AS(threshold(4), DomainError);
  CHECK_THROWS_AS(threshold(1), DomainError);
}

TEST_CASE("threshold separates violating and non-violating a", "[parity]") {
  for (int n : {3, 5, 7}) {
    const double t = threshold(n);
    CHECK(optimize_settings(SymmetricGaussianState(n, t - 1e-3)).s_opt <= 1.0 + 1e-12);
    CHECK(optimize_settings(SymmetricGaussianState(n, t + 1e-3)).s_opt > 1.0);
  }
}

TEST_CASE("scans against a", "[parity]") {
  std::vector<double> grid;
  for (double a = 1.0; a <= 10.0; a += 0.25) grid.push_back(a);
  std::vector<std::vector<ScanRow>> rows;
  for (int n = 2; n <= 5; ++n) rows.push_back(scan_vs_a(n, grid));

  CHECK(rows[0].front().optimum.s_opt == 1.0);
  for (const auto& scan : rows)
    for (std::size_t i = 1; i < scan.size(); ++i) CHECK(scan[i].optimum.s_opt >= scan[i - 1].optimum.s_opt - 1e-9);
  for (int k : {0, 2})
    for (std::size_t i = 0; i < grid.size(); ++i) {
      INFO("n=" << k + 2 << " a=" << grid[i]);
      CHECK(rows[k][i].optimum.s_opt >= rows[k + 1][i].optimum.s_opt - 1e-6);
    }

  const double big[] = {50.0};
  CHECK_THAT(scan_vs_a(2, big)[0].optimum.s_opt, WithinAbs(scan_vs_a(3, big)[0].optimum.s_opt, 2e-3));
}

TEST_CASE("landscape structure", "[parity]") {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = -1.5 + 0.03 * i;

  auto argmax = [](const Landscape& l) {
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < l.p0.size(); ++i)
      for (std::size_t j = 0; j < l.p1.size(); ++j)
        if (l.at(i, j) > l.at(bi, bj)) bi = i, bj = j;
    return std::pair{bi, bj};
  };

  const auto l3 = landscape(3, 1.5, grid, grid);
  const auto [i3, j3] = argmax(l3);
  CHECK(l3.at(i3, j3) > 1.0);
  CHECK(i3 + j3 == 100);

  const auto l4 = landscape(4, 1.5, grid, grid);
  const auto [i4, j4] = argmax(l4);
  CHECK(i4 + j4 != 100);

  for (int n = 2; n <= 8; ++n) {
    const auto l = landscape(n, 1.5, grid, grid);
    for (double v : l.values) CHECK(v <= svetlichny::quantum_bound(n));
  }
}

TEST_CASE("landscape values match pointwise evaluation for every kernel", "[parity]") {
  const std::vector<double> p0{-1.0, -0.3, 0.0, 0.4, 0.9};
  const std::vector<double> p1{-0.7, -0.1, 0.0, 0.2, 0.5, 0.8, 1.2};
  for (auto isa : {kernels::Isa::scalar, kernels::Isa::avx2}) {
    const auto l = landscape(6, 2.0, p0, p1, 2, isa);
    for (std::size_t i = 0; i < p0.size(); ++i)
      for (std::size_t j = 0; j < p1.size(); ++j)
        CHECK_THAT(l.at(i, j), WithinAbs(svetlichny_parity(SymmetricGaussianState(6, 2.0), {0, 0, p0[i], p1[j]}), 1e-13));
  }
}

TEST_CASE("six modes show several separate violation islands", "[parity]") {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = -1.5 + 0.03 * i;
  const auto l = landscape(6, 1.5, grid, grid);
  const std::size_t side = grid.size();
  std::vector<int> label(side * side, -1);
  int islands = 0;
  for (std::size_t start = 0; start < label.size(); ++start) {
    if (label[start] >= 0 || l.values[start] <= 1.0) continue;
    std::vector<std::size_t> stack{start};
    label[start] = islands;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const std::size_t i = c / side, j = c % side;
      const std::pair<std::size_t, std::size_t> nb[] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (auto [ni, nj] : nb) {
        if (ni >= side || nj >= side) continue;
        const std::size_t k = ni * side + nj;
        if (label[k] < 0 && l.values[k] > 1.0) {
          label[k] = islands;
          stack.push_back(k);
        }
      }
    }
    ++islands;
  }
  CHECK(islands >= 2);
}
