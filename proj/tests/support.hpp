// support.hpp: seeded generators shared by the property tests

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "tmbec/model.hpp"

namespace testing {

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed1234abcdULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::complex<double> random_complex(std::mt19937_64& g, double max_abs) {
    const double r = max_abs * std::sqrt(uniform(g, 0.0, 1.0));
    return std::polar(r, uniform(g, -3.14159, 3.14159));
}

// Couplings in the closed-form regime with U_aa == U_bb == U_ab.
inline tmbec::ModelParams equal_scattering_params(std::mt19937_64& g) {
    tmbec::ModelParams p;
    p.omega_a = p.omega_b = uniform(g, -1.0, 1.0);
    p.u_aa = p.u_bb = p.u_ab = uniform(g, 0.05, 2.0);
    p.lambda = uniform(g, 0.2, 2.0);
    return p;
}

inline tmbec::ModelParams generic_params(std::mt19937_64& g) {
    tmbec::ModelParams p;
    p.omega_a = uniform(g, -1.0, 1.0);
    p.omega_b = uniform(g, -1.0, 1.0);
    p.u_aa = uniform(g, 0.0, 2.0);
    p.u_bb = uniform(g, 0.0, 2.0);
    p.u_ab = uniform(g, 0.0, 2.0);
    p.lambda = uniform(g, 0.0, 2.0);
    return p;
}

} // namespace testing
