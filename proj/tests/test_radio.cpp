#include <doctest.h>

#include <cmath>

#include "wsn/model.hpp"
#include "wsn/radio.hpp"
#include "wsn/rng.hpp"

using namespace wsn;

namespace {
const RadioParams defaults = default_config().radio;
}

TEST_CASE("tx_cost matches the first-order model") {
    // electronics only at d = 0: 4000 * 50 nJ
    CHECK(tx_cost(defaults, 4000, 0.0) == doctest::Approx(200e-6).epsilon(1e-12));
    // free-space branch: 200 uJ + 4000 * 10 pJ * d^2
    CHECK(tx_cost(defaults, 4000, 20.0) == doctest::Approx(216e-6).epsilon(1e-12));
    CHECK(tx_cost(defaults, 4000, 50.0) == doctest::Approx(300e-6).epsilon(1e-12));
    CHECK(tx_cost(defaults, 0, 123.0) == 0.0);
}

TEST_CASE("tx_cost branches agree exactly at the crossover") {
    const double d0 = defaults.d0();
    const double k = 4000;
    const double free_space = k * defaults.e_elec + k * defaults.eps_fs * d0 * d0;
    const double multipath = k * defaults.e_elec + k * defaults.eps_mp * d0 * d0 * d0 * d0;
    CHECK(free_space == doctest::Approx(multipath).epsilon(1e-12));
    // the implementation takes the multipath branch at d0 itself
    CHECK(tx_cost(defaults, 4000, d0) == multipath);
}

TEST_CASE("rx_cost is electronics only") {
    CHECK(rx_cost(defaults, 4000) == doctest::Approx(200e-6).epsilon(1e-12));
    CHECK(rx_cost(defaults, 0) == 0.0);
    CHECK(rx_cost(defaults, 200) == doctest::Approx(10e-6).epsilon(1e-12));
}

TEST_CASE("aggregation_cost is e_da per bit per signal") {
    CHECK(aggregation_cost(defaults, 4000, 10) == doctest::Approx(200e-6).epsilon(1e-12));
    CHECK(aggregation_cost(defaults, 4000, 0) == 0.0);
    CHECK(aggregation_cost(defaults, 4000, 2) == doctest::Approx(40e-6).epsilon(1e-12));
}

TEST_CASE("d0 recomputation satisfies eps_fs*d0^2 == eps_mp*d0^4") {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        RadioParams r = defaults;
        r.eps_fs = 1e-13 + rng.next_real() * 1e-10;
        r.eps_mp = 1e-16 + rng.next_real() * 1e-12;
        const double d0 = r.d0();
        const double lhs = r.eps_fs * d0 * d0;
        const double rhs = r.eps_mp * d0 * d0 * d0 * d0;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, rhs));
    }
}

TEST_CASE("tx_cost monotone in k and d") {
    SplitMix64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t k1 = static_cast<std::int64_t>(rng.next_real() * 10000);
        const std::int64_t k2 = k1 + static_cast<std::int64_t>(rng.next_real() * 5000);
        const double d1 = rng.next_real() * 200.0;
        const double d2 = d1 + rng.next_real() * 100.0;
        CHECK(tx_cost(defaults, k2, d1) >= tx_cost(defaults, k1, d1));
        CHECK(tx_cost(defaults, k1, d2) >= tx_cost(defaults, k1, d1));
    }
}

TEST_CASE("tx_cost continuous across the crossover") {
    // one-sided slopes at d0 sum to ~2.1e-5 J/m for k = 4000
    const double d0 = defaults.d0();
    for (double eps = 1e-3; eps >= 1e-9; eps /= 10.0) {
        const double below = tx_cost(defaults, 4000, d0 - eps);
        const double above = tx_cost(defaults, 4000, d0 + eps);
        CHECK(std::abs(below - above) <= 3e-5 * eps + 1e-15);
    }
}

TEST_CASE("tx_cost linear in k") {
    SplitMix64 rng(13);
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng.next_real() * 100000);
        const double d = rng.next_real() * 250.0;
        const double one = tx_cost(defaults, k, d);
        const double two = tx_cost(defaults, 2 * k, d);
        CHECK(std::abs(two - 2.0 * one) <= 1e-12 * two);
    }
}

TEST_CASE("action_cost dispatches to the matching primitive") {
    CHECK(action_cost(defaults, Action::TxData, 4000, 50.0) ==
          tx_cost(defaults, 4000, 50.0));
    CHECK(action_cost(defaults, Action::TxCtrl, 200, 40.0) ==
          tx_cost(defaults, 200, 40.0));
    CHECK(action_cost(defaults, Action::RxData, 4000, 0.0) == rx_cost(defaults, 4000));
    CHECK(action_cost(defaults, Action::RxCtrl, 200, 0.0) == rx_cost(defaults, 200));
    // aggregate entries carry total fused bits
    CHECK(action_cost(defaults, Action::Aggregate, 8000, 0.0) ==
          aggregation_cost(defaults, 4000, 2));
}
