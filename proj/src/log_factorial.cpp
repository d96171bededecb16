#include "tmbec/log_factorial.hpp"

#include <array>
#include <cmath>

namespace tmbec {

namespace {

const std::array<double, kLogFactorialTableSize>& table() {
    static const auto t = [] {
        std::array<double, kLogFactorialTableSize> out{};
        out[0] = 0.0;
        for (int n = 1; n < kLogFactorialTableSize; ++n)
            out[n] = out[n - 1] + std::log(static_cast<double>(n));
        return out;
    }();
    return t;
}

} // namespace

double log_factorial(int n) {
    if (n < 0) return std::nan("");
    if (n < kLogFactorialTableSize) return table()[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

std::complex<double> coherent_amplitude(std::complex<double> z, int n) {
    const double r = std::abs(z);
    if (r == 0.0) return n == 0 ? 1.0 : 0.0;
    const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * log_factorial(n);
    return std::polar(std::exp(log_mag), n * std::arg(z));
}

} // namespace tmbec
