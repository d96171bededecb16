#include "tmbec/decoherence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmbec {

namespace {

void validate(const DampingParams& dp, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("phase damping is only defined forward in time (t >= 0)");
    if (!(dp.kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
}

void validate_times(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw std::invalid_argument("times must be >= 0");
        if (i > 0 && times[i] < times[i - 1]) throw std::invalid_argument("times must be ascending");
    }
}

// Tr rho(t)^2 without forming rho(t): the unitary factors drop out of |rho_nm|^2.
double damped_purity(const Eigen::MatrixXcd& rho0, double kappa, double t) {
    double s = 0.0;
    const Eigen::Index dim = rho0.rows();
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double diff = static_cast<double>(n - m);
            s += std::norm(rho0(n, m)) * std::exp(-2.0 * kappa * t * diff * diff);
        }
    }
    return s;
}

} // namespace

SingleModeDensity phase_damp(const SingleModeDensity& rho0, const DampingParams& dp, double t) {
    validate(dp, t);
    const auto& in = rho0.matrix();
    const Eigen::Index dim = in.rows();
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double nn = static_cast<double>(n);
            const double mm = static_cast<double>(m);
            const double phase = -dp.omega_a * (nn - mm) * t - dp.u_aa * (nn * (nn - 1.0) - mm * (mm - 1.0)) * t;
            const double damp = std::exp(-dp.kappa * t * (nn - mm) * (nn - mm));
            out(n, m) = in(n, m) * std::polar(damp, phase);
        }
    }
    // Diagonal factors are exactly one; keep the populations bit-identical.
    out.diagonal() = in.diagonal();
    return SingleModeDensity(std::move(out));
}

GcsState kerr_drifted_gcs(double n_total, const DerivedParams& d, const ModelParams& p, double t, double tail_tol) {
    if (!(d.lambda_1 > 0.0)) throw std::invalid_argument("lambda_1 = 0: no GCS formation time");
    if (!(n_total >= 0.0)) throw std::invalid_argument("N must be >= 0");
    const double pi = std::numbers::pi;
    const complex upsilon = -std::sqrt(n_total) * std::polar(1.0, -(pi * d.omega_0 / d.lambda_1 + (p.omega_a - p.u_aa) * t));
    const double kerr = pi * p.u_ab / d.lambda_1 + p.u_aa * t;
    return make_gcs(upsilon, kerr, tail_tol);
}

std::vector<std::pair<double, double>> purity_series(const SingleModeDensity& rho0, const DampingParams& dp,
                                                     const std::vector<double>& times) {
    validate(dp, 0.0);
    validate_times(times);
    std::vector<std::pair<double, double>> out(times.size());
    const auto& m = rho0.matrix();
    const long count = static_cast<long>(times.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) out[i] = {times[i], damped_purity(m, dp.kappa, times[i])};
    return out;
}

std::vector<std::pair<double, double>> purity_series_serial(const SingleModeDensity& rho0, const DampingParams& dp,
                                                            const std::vector<double>& times) {
    validate(dp, 0.0);
    validate_times(times);
    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    for (double t : times) out.emplace_back(t, phase_damp(rho0, dp, t).purity());
    return out;
}

} // namespace tmbec
