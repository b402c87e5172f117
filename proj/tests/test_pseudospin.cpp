#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "svlab/error.hpp"
#include "svlab/oracles.hpp"
#include "svlab/pseudospin.hpp"
#include "svlab/shell_sums.hpp"

using namespace svlab;
using namespace svlab::pseudospin;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

namespace {

Setting random_setting(testing::Gen& g) { return {g.uniform(-pi, 2 * pi), g.uniform(-2 * pi, 2 * pi)}; }

// Random dense tensor with every total photon number below the capacity.
FockTensor random_interior(testing::Gen& g, int cap) {
  FockTensor t(cap);
  for (int k1 = 0; k1 <= cap; ++k1)
    for (int k2 = 0; k1 + k2 <= cap; ++k2)
      for (int k3 = 0; k1 + k2 + k3 < cap; ++k3) t.at(k1, k2, k3) = {g.uniform(-1, 1), g.uniform(-1, 1)};
  return t;
}

double max_diff(const FockTensor& x, const FockTensor& y) {
  double m = 0.0;
  const int cap = x.capacity();
  for (int k1 = 0; k1 <= cap; ++k1)
    for (int k2 = 0; k2 <= cap; ++k2)
      for (int k3 = 0; k3 <= cap; ++k3) m = std::max(m, std::abs(x.at(k1, k2, k3) - y.at(k1, k2, k3)));
  return m;
}

}  // namespace

TEST_CASE("pseudospin operators square to one away from the boundary", "[pseudospin][property]") {
  testing::for_all(30, 51, [](testing::Gen& g, int) {
    const auto psi = random_interior(g, 7);
    const auto mode = static_cast<Mode>(g.integer(0, 2));
    const auto s = random_setting(g);
    const auto twice = apply_pseudospin(apply_pseudospin(psi, mode, s), mode, s);
    CHECK(max_diff(twice, psi) < 1e-13);
    CHECK(twice.leakage() == 0.0);
  });
}

TEST_CASE("pseudospin operators are self-adjoint", "[pseudospin][property]") {
  testing::for_all(30, 52, [](testing::Gen& g, int) {
    const auto x = random_interior(g, 6);
    const auto y = random_interior(g, 6);
    const auto mode = static_cast<Mode>(g.integer(0, 2));
    const auto s = random_setting(g);
    const auto lhs = x.inner(apply_pseudospin(y, mode, s));
    const auto rhs = apply_pseudospin(x, mode, s).inner(y);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  });
}

TEST_CASE("Z_z reads the photon-number parity", "[pseudospin]") {
  FockTensor t(6);
  t.at(1, 2, 3) = 1.0;
  CHECK(apply_pseudospin(t, Mode::a, {0.0, 0.0}).at(1, 2, 3) == std::complex<double>(1.0));
  CHECK(apply_pseudospin(t, Mode::b, {0.0, 0.0}).at(1, 2, 3) == std::complex<double>(-1.0));
  CHECK(apply_pseudospin(t, Mode::c, {0.0, 0.0}).at(1, 2, 3) == std::complex<double>(1.0));
}

TEST_CASE("raising past the capacity is reported as leakage", "[pseudospin]") {
  FockTensor t(4);
  t.at(4, 0, 0) = {0.6, 0.0};
  t.at(0, 0, 0) = {0.8, 0.0};
  const auto out = apply_pseudospin(t, Mode::a, {pi / 2, 0.0});
  CHECK_THAT(out.leakage(), WithinAbs(0.6, 1e-15));
  CHECK(out.at(1, 0, 0) == std::complex<double>(0.8));
  CHECK(std::abs(out.at(4, 0, 0)) < 1e-16);
  CHECK_THAT(apply_pseudospin(out, Mode::b, {pi / 2, 0.0}).leakage(), WithinAbs(0.6, 1e-15));
}

TEST_CASE("vacuum correlator is a product of cosines", "[pseudospin][property]") {
  const auto vac = ghz_state_fock(0.0, 10);
  testing::for_all(50, 53, [&](testing::Gen& g, int) {
    const std::array<Setting, 3> s{random_setting(g), random_setting(g), random_setting(g)};
    const double expected = -std::cos(s[0].theta) * std::cos(s[1].theta) * std::cos(s[2].theta);
    CHECK_THAT(correlation(vac, s), WithinAbs(expected, 1e-14));
  });
}

TEST_CASE("correlation tensor matches explicit Kronecker products", "[pseudospin][property]") {
  testing::for_all(40, 54, [](testing::Gen& g, int) {
    const auto st = ghz_state_fock(g.uniform(0.1, 1.5), 2 * g.integer(1, 4), 1.0);
    const std::array<Setting, 3> s{random_setting(g), random_setting(g), random_setting(g)};
    const auto ref = oracles::dense_pseudospin_correlation(st, s);
    CHECK_THAT(correlation(st, s), WithinAbs(ref[0], 1e-12));
    CHECK(std::abs(ref[1]) < 1e-12);
  });
}

TEST_CASE("correlation tensor matches dense application", "[pseudospin][property]") {
  testing::for_all(20, 55, [](testing::Gen& g, int) {
    const auto st = ghz_state_fock(g.uniform(0.1, 1.2), 10, 1.0);
    const auto dense = FockTensor::from_state(st, 13);
    const std::array<Setting, 3> s{random_setting(g), random_setting(g), random_setting(g)};
    double leak = -1.0;
    const auto z = correlation_dense(dense, s, &leak);
    CHECK(leak == 0.0);
    CHECK_THAT(correlation(st, s), WithinAbs(z.real(), 1e-12));
  });
}

TEST_CASE("correlations are bounded, symmetric in b and c, and canonical-invariant", "[pseudospin][property]") {
  const CorrelationTensor t(ghz_state(1.2));
  testing::for_all(200, 56, [&](testing::Gen& g, int) {
    const Setting a = random_setting(g), b = random_setting(g), c = random_setting(g);
    const double v = t.correlation({a, b, c});
    CHECK(std::abs(v) <= 1.0 + 1e-12);
    CHECK_THAT(t.correlation({a, c, b}), WithinAbs(v, 1e-12));
    CHECK_THAT(t.correlation({b, a, c}), WithinAbs(v, 1e-12));
    CHECK_THAT(t.correlation({a.canonical(), b.canonical(), c.canonical()}), WithinAbs(v, 1e-12));
  });
}

TEST_CASE("canonical settings lie in the principal range", "[pseudospin][property]") {
  testing::for_all(500, 57, [](testing::Gen& g, int) {
    const auto c = random_setting(g).canonical();
    CHECK(c.theta >= 0.0);
    CHECK(c.theta <= pi);
    CHECK(c.phi > -pi);
    CHECK(c.phi <= pi);
  });
  const auto flipped = Setting{-pi / 3, 0.0}.canonical();
  CHECK_THAT(flipped.theta, WithinAbs(pi / 3, 1e-15));
  CHECK_THAT(flipped.phi, WithinAbs(pi, 1e-15));
}

TEST_CASE("the squeezed state is even under total parity", "[pseudospin]") {
  for (double r : {0.0, 0.7, 2.0}) {
    const CorrelationTensor t(ghz_state(r));
    CHECK_THAT(t.entry(CorrelationTensor::z, CorrelationTensor::z, CorrelationTensor::z), WithinAbs(-1.0, 1e-15));
    CHECK(t.odd_parity_weight() <= 1e-15);
  }
}

TEST_CASE("fixed settings reduce to the two-mode correlator", "[pseudospin]") {
  for (double r : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    INFO("r=" << r);
    const auto st = ghz_state(r);
    const CorrelationTensor t(st);
    const double fixed = svetlichny_fixed_settings(t);
    CHECK_THAT(svetlichny_pseudospin(t, fixed_settings()), WithinAbs(fixed, 1e-12));
    CHECK_THAT(fixed, WithinAbs(std::numbers::sqrt2 / 4.0 * (1.0 + 3.0 * t.xx()), 1e-15));
    const double res = residual_norm(st);
    CHECK_THAT(fixed, WithinAbs(std::numbers::sqrt2 / 4.0 * (4.0 - 1.5 * res * res), 1e-11));
  }
}

TEST_CASE("fixed-setting value at reference squeezings", "[pseudospin]") {
  // Dense summation over the Fock amplitudes in an independent script up to
  // r = 1.5; the larger radii are regression values.
  const std::pair<double, double> refs[] = {
      {0.0, std::numbers::sqrt2 / 4.0}, {0.5, 0.7229109893}, {1.0, 1.0014050978},
      {1.5, 1.1592661572},              {2.0, 1.2512425683}, {3.0, 1.3484980397},
  };
  for (const auto& [r, s] : refs) {
    INFO("r=" << r);
    CHECK_THAT(svetlichny_fixed_settings(ghz_state(r)), WithinAbs(s, 1e-9));
  }
}

TEST_CASE("fixed-setting value increases with squeezing", "[pseudospin]") {
  double prev = 0.0;
  for (double r = 0.0; r <= 2.5; r += 0.25) {
    const double s = svetlichny_fixed_settings(ghz_state(r));
    CHECK(s > prev);
    CHECK(s < std::numbers::sqrt2);
    prev = s;
  }
}

TEST_CASE("doubling the cutoff leaves the value unchanged", "[pseudospin]") {
  for (double r : {0.5, 1.0, 1.5}) {
    const int c = choose_cutoff(r);
    const double base = svetlichny_fixed_settings(ghz_state_fock(r, c));
    CHECK_THAT(svetlichny_fixed_settings(ghz_state_fock(r, 2 * c)), WithinAbs(base, 1e-7));
  }
}

TEST_CASE("odd-parity components are rejected", "[pseudospin]") {
  auto dense = FockTensor::from_state(ghz_state_fock(0.5, 8, 1.0), 10);
  CHECK_NOTHROW(svetlichny_fixed_settings(dense));
  CHECK_THAT(svetlichny_fixed_settings(dense),
             WithinAbs(svetlichny_fixed_settings(ghz_state_fock(0.5, 8, 1.0)), 1e-12));
  dense.at(1, 0, 0) = 1e-3;
  CHECK_THROWS_AS(svetlichny_fixed_settings(dense), ParityViolationError);
}

TEST_CASE("setting vectors round-trip", "[pseudospin]") {
  const auto fixed = fixed_settings();
  const auto v = fixed.to_vector();
  REQUIRE(v.size() == 12);
  const auto back = PseudospinSettingSet::from_vector(v);
  for (int m = 0; m < 3; ++m)
    for (int c = 0; c < 2; ++c) {
      CHECK(back.angles[m][c].theta == fixed.angles[m][c].theta);
      CHECK(back.angles[m][c].phi == fixed.angles[m][c].phi);
    }
  CHECK_THROWS_AS(PseudospinSettingSet::from_vector(std::vector<double>(11)), DimensionError);
}

TEST_CASE("optimized value dominates the fixed settings", "[pseudospin]") {
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    INFO("r=" << r);
    const CorrelationTensor t(ghz_state(r));
    const auto opt = optimize_pseudospin_settings(t, {.starts = 8});
    CHECK(opt.s_opt >= svetlichny_fixed_settings(t) - 1e-12);
    CHECK(opt.s_opt >= 1.0 - 1e-9);
    CHECK(opt.s_opt <= std::numbers::sqrt2 + 1e-9);
    CHECK_THAT(svetlichny_pseudospin(t, opt.settings), WithinAbs(opt.s_opt, 1e-12));
  }
}

TEST_CASE("optimized value at reference squeezings", "[pseudospin]") {
  // Stable across 150 starts and three seeds.
  CHECK_THAT(optimize_pseudospin_settings(ghz_state(1.0)).s_opt, WithinAbs(1.04643590, 1e-6));
  CHECK_THAT(optimize_pseudospin_settings(ghz_state(2.0)).s_opt, WithinAbs(1.25524484, 1e-6));
  CHECK_THAT(optimize_pseudospin_settings(ghz_state(3.0)).s_opt, WithinAbs(1.34905597, 1e-6));
}

TEST_CASE("optimizer result does not depend on the thread count", "[pseudospin]") {
  const CorrelationTensor t(ghz_state(1.5));
  const auto one = optimize_pseudospin_settings(t, {.starts = 6, .threads = 1});
  const auto three = optimize_pseudospin_settings(t, {.starts = 6, .threads = 3});
  CHECK(one.s_opt == three.s_opt);
  CHECK(one.start == three.start);
  CHECK(one.settings.to_vector() == three.settings.to_vector());
}

TEST_CASE("optimized settings come back canonical", "[pseudospin]") {
  const auto opt = optimize_pseudospin_settings(ghz_state(1.0), {.starts = 4});
  for (const auto& mode : opt.settings.angles)
    for (const auto& s : mode) {
      CHECK(s.theta >= 0.0);
      CHECK(s.theta <= pi);
      CHECK(s.phi > -pi);
      CHECK(s.phi <= pi);
    }
}

TEST_CASE("optimized value at r = 3 approaches the quantum bound", "[pseudospin][limit]") {
  const auto opt = optimize_pseudospin_settings(ghz_state(3.0));
  INFO("s_opt=" << opt.s_opt << " gap=" << std::numbers::sqrt2 - opt.s_opt);
  CHECK(std::abs(opt.s_opt - std::numbers::sqrt2) < 0.02);
}

TEST_CASE("fixed-setting value at r = 3 is within 0.05 of the quantum bound", "[pseudospin][limit]") {
  const auto st = ghz_state(3.0);
  REQUIRE(st.norm_deficit() < 1e-8);
  const double s = svetlichny_fixed_settings(st);
  INFO("S3=" << s << " cutoff=" << st.cutoff());
  CHECK(std::abs(s - std::numbers::sqrt2) < 0.05);
}
