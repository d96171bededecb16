// log_factorial.hpp: cumulative ln(n!) table and log-domain Fock amplitudes

#pragma once

#include <complex>

namespace tmbec {

inline constexpr int kLogFactorialTableSize = 4096;

// ln(n!) for n >= 0; tabulated below kLogFactorialTableSize, lgamma beyond.
double log_factorial(int n);

// Coherent-state Fock amplitude <n|z> = e^{-|z|^2/2} z^n / sqrt(n!).
std::complex<double> coherent_amplitude(std::complex<double> z, int n);

} // namespace tmbec
