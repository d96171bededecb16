#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles/oracles.hpp"
#include "support.hpp"
#include "tmbec/errors.hpp"
#include "tmbec/log_factorial.hpp"
#include "tmbec/model.hpp"

using namespace tmbec;
using doctest::Approx;

TEST_CASE("model params validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.lambda = 1.0;
    p.u_ab = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.u_ab = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("analytic validity flag") {
    ModelParams p{0, 0, 1.0, 3.0, 2.0, 1.0};
    CHECK(p.analytic_valid());
    CHECK_FALSE(p.equal_scattering());
    p.u_ab = 2.0 + 1e-9;
    CHECK_FALSE(p.analytic_valid());
    p.u_ab = 2.0 + 1e-13;
    CHECK(p.analytic_valid());
    ModelParams q{0, 0, 1.5, 1.5, 1.5, 1.0};
    CHECK(q.equal_scattering());
}

TEST_CASE("derive_params examples") {
    SUBCASE("equal frequencies and scattering: omega_1 = 0, lambda_1 = lambda") {
        for (double n : {0.0, 1.0, 25.0, 1000.0}) {
            const auto d = derive_params({1.0, 1.0, 0.7, 0.7, 0.2, 2.0}, n);
            CHECK(d.omega_1 == 0.0);
            CHECK(d.lambda_1 == 2.0);
            CHECK(d.n_mean == n);
        }
    }
    SUBCASE("3-4-5") {
        const auto d = derive_params({6.0, 0.0, 1.0, 1.0, 0.0, 4.0}, 10.0);
        CHECK(d.omega_1 == Approx(3.0).epsilon(1e-15));
        CHECK(d.lambda_1 == Approx(5.0).epsilon(1e-15));
    }
    SUBCASE("zero couplings") {
        const auto d = derive_params({}, 7.0);
        CHECK(d.omega_0 == 0.0);
        CHECK(d.omega_1 == 0.0);
        CHECK(d.lambda_1 == 0.0);
    }
    SUBCASE("formulae") {
        const ModelParams p{0.3, -0.2, 1.1, 0.4, 0.6, 0.9};
        const auto d = derive_params(p, 12.0);
        CHECK(d.omega_0 == Approx(0.5 * (0.3 - 0.2 - 1.2)));
        CHECK(d.omega_1 == Approx(0.5 * (0.5 + 0.7 * 11.0)));
        CHECK(d.lambda_1 == Approx(std::hypot(0.9, d.omega_1)));
    }
    CHECK_THROWS_AS(derive_params({}, -1.0), std::invalid_argument);
}

TEST_CASE("property: derive_params invariants and scale covariance") {
    auto g = testing::rng(1);
    for (int i = 0; i < 500; ++i) {
        const auto p = testing::generic_params(g);
        const double n = testing::uniform(g, 0.0, 100.0);
        const auto d = derive_params(p, n);
        CHECK(d.lambda_1 >= std::abs(d.omega_1));
        CHECK(d.lambda_1 >= p.lambda);
        // powers of two make the scaling exact in floating point
        const double c = std::ldexp(1.0, static_cast<int>(testing::uniform(g, -4, 5)));
        const auto ds = derive_params(p.scaled(c), n);
        CHECK(ds.omega_0 == c * d.omega_0);
        CHECK(ds.omega_1 == c * d.omega_1);
        CHECK(ds.lambda_1 == c * d.lambda_1);
        const double c2 = testing::uniform(g, 0.1, 10.0);
        const auto d2 = derive_params(p.scaled(c2), n);
        CHECK(d2.lambda_1 == Approx(c2 * d.lambda_1).epsilon(1e-14));
    }
}

TEST_CASE("coherent pair normalizes phases") {
    const CoherentPair pair(std::polar(2.0, 3.0 * std::numbers::pi / 2.0), std::polar(1.0, -std::numbers::pi));
    CHECK(std::arg(pair.alpha_a()) == Approx(-std::numbers::pi / 2.0));
    CHECK(std::arg(pair.alpha_b()) == Approx(std::numbers::pi));
    CHECK(pair.n_mean() == Approx(5.0));
    auto g = testing::rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto z = normalize_phase(std::polar(testing::uniform(g, 0.1, 5), testing::uniform(g, -20, 20)));
        CHECK(std::arg(z) > -std::numbers::pi);
        CHECK(std::arg(z) <= std::numbers::pi);
    }
}

TEST_CASE("log factorial and coherent amplitudes") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK(log_factorial(10) == Approx(std::log(3628800.0)));
    CHECK(log_factorial(5000) == Approx(std::lgamma(5001.0)).epsilon(1e-14));
    CHECK(log_factorial(200) == Approx(std::lgamma(201.0)).epsilon(1e-13));
    CHECK(coherent_amplitude({0, 0}, 0) == std::complex<double>(1.0, 0.0));
    CHECK(coherent_amplitude({0, 0}, 3) == std::complex<double>(0.0, 0.0));
    auto g = testing::rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto z = testing::random_complex(g, 6.0);
        const int n = static_cast<int>(testing::uniform(g, 0, 80));
        const auto want = oracle::coherent_amp_direct(z, n);
        CHECK(std::abs(coherent_amplitude(z, n) - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("poisson tail and cutoff") {
    CHECK(poisson_tail(0.0, 0) == 0.0);
    CHECK(poisson_cutoff(0.0, 1e-12) == 0);
    CHECK_THROWS_AS(poisson_cutoff(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(poisson_cutoff(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(poisson_cutoff(600.0, 1e-12), ResourceLimitError);
    CHECK_THROWS_AS(poisson_cutoff(30.0, 1e-12, 40), ResourceLimitError);
    auto g = testing::rng(4);
    for (int i = 0; i < 100; ++i) {
        const double mean = testing::uniform(g, 0.01, 60.0);
        const double tol = std::pow(10.0, -testing::uniform(g, 3.0, 14.0));
        const int n = poisson_cutoff(mean, tol);
        CHECK(static_cast<double>(oracle::poisson_tail_direct(mean, n)) < tol);
        if (n > 0) CHECK(static_cast<double>(oracle::poisson_tail_direct(mean, n - 1)) >= tol * (1 - 1e-9));
        CHECK(poisson_tail(mean, n) == Approx(static_cast<double>(oracle::poisson_tail_direct(mean, n))).epsilon(1e-9));
    }
}

TEST_CASE("coherent_product examples") {
    SUBCASE("vacuum") {
        const auto s = coherent_product(CoherentPair({0, 0}, {0, 0}));
        CHECK(s.cutoff() == 0);
        CHECK(s.size() == 1);
        CHECK(s.amplitude(0, 0) == std::complex<double>(1.0, 0.0));
    }
    SUBCASE("alpha_a = 2: Poisson block weights with mean 4") {
        const auto s = coherent_product(CoherentPair({2, 0}, {0, 0}));
        const auto p = oracle::poisson_pmf(4.0, s.cutoff());
        for (int n = 0; n <= s.cutoff(); ++n) CHECK(s.block_weight(n) == Approx(static_cast<double>(p[n])).epsilon(1e-13));
        CHECK(s.mean_total() == Approx(4.0).epsilon(1e-11));
    }
    SUBCASE("mean 25 at tail_tol 1e-12: frozen brute-force tail") {
        const double r = std::sqrt(12.5);
        const auto s = coherent_product(CoherentPair({r, 0}, {0, r}), 1e-12);
        // Brute-force long-double tail: N_max = 68 leaves 3.6079664945417506e-13,
        // 67 would leave 1.003633311282877e-12.
        CHECK(s.cutoff() == 68);
        CHECK(1.0 - s.norm_squared() == Approx(3.6079664945417506e-13).epsilon(1e-4));
    }
    CHECK_THROWS_AS(coherent_product(CoherentPair({20, 0}, {20, 0})), ResourceLimitError);
    CHECK_THROWS_AS(coherent_product(CoherentPair({1, 0}, {0, 0}), 2.0), std::invalid_argument);
}

TEST_CASE("property: coherent_product norm and Poisson marginals") {
    auto g = testing::rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = testing::random_complex(g, 4.0);
        const auto b = testing::random_complex(g, 3.5);
        const double tol = std::pow(10.0, -testing::uniform(g, 4.0, 13.0));
        const auto s = coherent_product(CoherentPair(a, b), tol);
        const double norm = s.norm_squared();
        CHECK(norm <= 1.0 + 1e-14);
        CHECK(norm >= 1.0 - tol);
        // marginal of mode a, truncated to n_a small enough that the pair tail is negligible
        const int n_check = std::min(s.cutoff() / 3, 12);
        const auto pa = oracle::poisson_pmf(std::norm(a), s.cutoff());
        for (int na = 0; na <= n_check; ++na) {
            double marginal = 0.0;
            for (int nb = 0; na + nb <= s.cutoff(); ++nb) marginal += std::norm(s.amplitude(na, nb));
            CHECK(marginal == Approx(static_cast<double>(pa[na])).epsilon(1e-6));
        }
        for (int na = 0; na <= 3; ++na)
            for (int nb = 0; nb <= 3; ++nb)
                CHECK(std::abs(s.amplitude(na, nb) - oracle::coherent_amp_direct(a, na) * oracle::coherent_amp_direct(b, nb)) < 1e-14);
    }
}

TEST_CASE("two-mode state layout") {
    TwoModeState s(3);
    CHECK(s.size() == 10);
    CHECK(TwoModeState::block_offset(3) == 6);
    s.at(1, 2) = {0.6, 0.0};
    s.at(0, 0) = {0.0, 0.8};
    CHECK(s.block(3)[2] == std::complex<double>(0.6, 0.0));
    CHECK(s.amplitude(2, 2) == std::complex<double>(0.0, 0.0));
    CHECK(s.norm_squared() == Approx(1.0));
    CHECK(s.mean_total() == Approx(0.36 * 3));
    CHECK_THROWS_AS(s.at(4, 0), std::out_of_range);
    const auto p = s.padded(5);
    CHECK(p.cutoff() == 5);
    CHECK(p.amplitude(1, 2) == s.amplitude(1, 2));
    CHECK(fidelity(s, p) == Approx(1.0));
    CHECK_THROWS_AS(s.padded(2), std::invalid_argument);
}

TEST_CASE("formation time estimate") {
    const double t = estimate_formation_time(50.0, 1.4e-25, 2.0 * std::numbers::pi * 600.0);
    CHECK(t == Approx(1.0 / 600.0).epsilon(1e-12));
    CHECK(t > 1e-4);
    CHECK(t < 1e-2);
    CHECK(estimate_formation_time(50.0, 1.4e-25, 4.0 * std::numbers::pi * 600.0) == Approx(t / 2.0).epsilon(1e-14));
    CHECK(estimate_formation_time(1.0, 1.0, 2.0 * std::numbers::pi) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(estimate_formation_time(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_formation_time(1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_formation_time(1.0, 1.0, 0.0), std::invalid_argument);
}
