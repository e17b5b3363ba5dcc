#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "tripop/error.hpp"
#include "tripop/leakage.hpp"
#include "tripop/propagator.hpp"
#include "tripop/pulse.hpp"
#include "tripop/transfer.hpp"

using namespace tripop;

namespace {

constexpr double kPi = std::numbers::pi;

// P2 of a harmonic run at time t with the given splittings.
double p2_at(const TransferCondition& c, double w12, double w13, double t, int steps = 20000) {
  const Pulse drive = harmonic_for_condition(c, 1.0);
  const auto tr = integrate(c.ratios(), LevelEnergies::from_splittings(w12, w13), drive, t,
                            IntegratorConfig::per_period(drive.period(), steps));
  return tr.samples.back().p2;
}

double deficit_at_t0(const TransferCondition& c, double ratio12, double omega = 1.0) {
  const SplittingRatios r{ratio12, 0.0};
  return leakage_scan(c, c.beta > 0 ? 1 : -1, std::span(&r, 1),
                      IntegratorConfig::per_period(2.0 * kPi / omega), omega)[0]
      .deficit;
}

}  // namespace

TEST_SUITE("leakage") {

TEST_CASE("early-time estimate trivial limits and quartic form") {
  CHECK(delta_p2_early(1.0, 2.0, 3.0, 0.0, 0.0, 0.7).delta_p2 == 0.0);
  CHECK(delta_p2_early(1.0, 2.0, 3.0, 0.1, 0.2, 0.0).delta_p2 == 0.0);
  const double a = delta_p2_early(0.5, 1.0, 2.0, 0.01, 0.03, 0.2).delta_p2;
  const double b = delta_p2_early(0.5, 1.0, 2.0, 0.01, 0.03, 0.4).delta_p2;
  CHECK(b / a == doctest::Approx(16.0).epsilon(1e-12));
  CHECK_THROWS_AS(delta_p2_early(1, 1, 1, 0.1, 0.1, -1.0), Error);
}

TEST_CASE("early-time estimate against dual integration for the (1,5) family") {
  const auto c = condition_from_odd_pair({-1, 3});
  const double v0 = harmonic_for_condition(c, 1.0).v0();
  const double w12 = 0.01, w13 = 0.0;
  for (double t : {0.05, 0.1}) {
    const double measured = p2_at(c, w12, w13, t) - p2_at(c, 0.0, 0.0, t);
    const auto est = delta_p2_early(c.alpha * v0, c.beta * v0, v0, w12, w13, t);
    CAPTURE(t);
    CHECK(est.delta_p2 == doctest::Approx(measured).epsilon(0.25));
    CHECK_FALSE(est.beyond_leading_order);
  }
}

TEST_CASE("(3,3) couplings: the leading coefficient vanishes and leakage is higher order") {
  const auto c = condition_from_odd_pair({1, 1});
  const double v0 = harmonic_for_condition(c, 1.0).v0();
  const auto est = delta_p2_early(c.alpha * v0, c.beta * v0, v0, 0.01, 0.02, 0.5);
  CHECK(est.delta_p2 == 0.0);
  CHECK(est.beyond_leading_order);
  const double d1 = std::abs(p2_at(c, 0.01, 0.02, 0.25) - p2_at(c, 0.0, 0.0, 0.25));
  const double d2 = std::abs(p2_at(c, 0.01, 0.02, 0.5) - p2_at(c, 0.0, 0.0, 0.5));
  CHECK(d2 > 0.0);
  // Beyond t^4: doubling t grows the deficit by clearly more than 16.
  CHECK(d2 / d1 > 24.0);
}

TEST_CASE("at-t0 estimate trivial limits and the n1 = n2 caveat") {
  for (const auto& c : enumerate_conditions(35)) CHECK(delta_p2_at_t0(c, 1, 0.0, 0.0).delta_p2 == 0.0);
  const auto c33 = delta_p2_at_t0(condition_from_odd_pair({1, 1}), 1, 0.05, 0.02);
  CHECK(c33.delta_p2 == 0.0);
  CHECK(c33.beyond_leading_order);
  CHECK(c33.regime == LeakageRegime::AtT0);
  const auto c15 = delta_p2_at_t0(condition_from_odd_pair({-1, 3}), 1, 0.01, 0.0);
  CHECK(c15.delta_p2 != 0.0);
  CHECK_FALSE(c15.beyond_leading_order);
  CHECK_THROWS_AS(delta_p2_at_t0(condition_from_odd_pair({1, 1}), 0, 0.1, 0.1), Error);
}

TEST_CASE("leakage scan trends") {
  const auto c33 = condition_from_odd_pair({1, 1});
  CHECK(std::abs(deficit_at_t0(c33, 0.0)) < 1e-6);
  CHECK(deficit_at_t0(c33, 0.01) < deficit_at_t0(c33, 0.1));
  // Fixed omega12 = 0.1, drive frequency doubled.
  CHECK(deficit_at_t0(c33, 0.05, 2.0) < deficit_at_t0(c33, 0.1, 1.0));

  const auto c15 = condition_from_odd_pair({-1, 3});
  double previous = -1.0;
  for (double ratio : {0.0, 0.005, 0.01, 0.02, 0.05}) {
    const double d = deficit_at_t0(c15, ratio);
    CHECK(d > previous);
    previous = d;
  }
}

TEST_CASE("scan CSV header") {
  const std::vector<LeakagePoint> pts{{{0.1, 0.0}, 1e-3, 2e-3}};
  std::ostringstream os;
  write_scan_csv(os, pts);
  CHECK(os.str() == "omega12_ratio,omega13_ratio,deficit,estimate\n0.1,0,0.001,0.002\n");
}

TEST_CASE("two-level populations") {
  CHECK(two_level_populations({0.3, 0.3, kPi / 2.0}).p2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two_level_populations({0.0, 0.0, 0.0}).p1 == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double e1 = u(rng), e2 = u(rng), a = 4.0 * u(rng);
    const auto p = two_level_populations({e1, e2, a});
    CHECK(std::abs(p.p1 + p.p2 - 1.0) < 1e-12);
    CHECK(p.p2 <= two_level_bound(e1, e2) + 1e-12);
    const auto same = two_level_populations({e1, e1, a});
    CHECK(std::abs(same.p2 - std::pow(std::sin(a), 2)) < 1e-12);
  }
  double peak = 0.0;
  for (int i = 0; i <= 200000; ++i) peak = std::max(peak, two_level_populations({0.0, 2.0, 4.0 * i / 200000.0}).p2);
  CHECK(std::abs(peak - 0.5) < 1e-9);
  CHECK(two_level_bound(0.0, 2.0) == 0.5);
}

}  // TEST_SUITE
