#include "tmbec/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tmbec/errors.hpp"
#include "tmbec/log_factorial.hpp"

namespace tmbec {

namespace {

void validate(const GridSpec& s) {
    for (double v : {s.re_min, s.re_max, s.im_min, s.im_max})
        if (!std::isfinite(v)) throw std::invalid_argument("grid window must be finite");
    if (!(s.re_max > s.re_min) || !(s.im_max > s.im_min)) throw std::invalid_argument("grid window is empty");
    if (s.resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
}

// Highest Fock index carrying weight; entries beyond it do not contribute.
int support(const Eigen::MatrixXcd& rho) {
    for (Eigen::Index n = rho.rows() - 1; n > 0; --n)
        if (rho.row(n).cwiseAbs().maxCoeff() > 0.0 || rho.col(n).cwiseAbs().maxCoeff() > 0.0)
            return static_cast<int>(n);
    return 0;
}

void check_cutoff(const SingleModeDensity& rho, const GridSpec& spec) {
    const int need = required_cutoff(spec);
    if (rho.cutoff() < need)
        throw InsufficientCutoffError("density cutoff " + std::to_string(rho.cutoff()) +
                                      " too small for the window; need " + std::to_string(need));
}

// One grid row: Q at fixed Im(gamma) for every Re(gamma).
void husimi_row(const Eigen::MatrixXcd& rho, int dim, const HusimiGrid& grid, int j, double* out) {
    Eigen::VectorXcd v(dim);
    const double im = grid.im_at(j);
    for (int i = 0; i < grid.spec.resolution; ++i) {
        const complex gamma{grid.re_at(i), im};
        for (int n = 0; n < dim; ++n) v[n] = coherent_amplitude(gamma, n);
        const complex q = v.dot(rho.topLeftCorner(dim, dim) * v); // v^H rho v
        out[i] = std::max(q.real(), 0.0) / std::numbers::pi;
    }
}

HusimiGrid make_grid(const GridSpec& spec) {
    validate(spec);
    return HusimiGrid{spec, std::vector<double>(static_cast<std::size_t>(spec.resolution) * spec.resolution, 0.0)};
}

} // namespace

double HusimiGrid::re_at(int i) const {
    return spec.re_min + (spec.re_max - spec.re_min) * i / (spec.resolution - 1);
}

double HusimiGrid::im_at(int j) const {
    return spec.im_min + (spec.im_max - spec.im_min) * j / (spec.resolution - 1);
}

double HusimiGrid::max_value() const { return *std::max_element(values.begin(), values.end()); }

double HusimiGrid::integral() const {
    const double dx = (spec.re_max - spec.re_min) / (spec.resolution - 1);
    const double dy = (spec.im_max - spec.im_min) / (spec.resolution - 1);
    return std::accumulate(values.begin(), values.end(), 0.0) * dx * dy;
}

int required_cutoff(const GridSpec& spec) {
    validate(spec);
    const double x = std::max(std::abs(spec.re_min), std::abs(spec.re_max));
    const double y = std::max(std::abs(spec.im_min), std::abs(spec.im_max));
    return poisson_cutoff(x * x + y * y, 1e-10);
}

HusimiGrid husimi(const SingleModeDensity& rho, const GridSpec& spec) {
    auto grid = make_grid(spec);
    check_cutoff(rho, spec);
    const int dim = support(rho.matrix()) + 1;
    const int res = spec.resolution;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < res; ++j) husimi_row(rho.matrix(), dim, grid, j, grid.values.data() + std::size_t(j) * res);
    return grid;
}

HusimiGrid husimi_serial(const SingleModeDensity& rho, const GridSpec& spec) {
    auto grid = make_grid(spec);
    check_cutoff(rho, spec);
    const int dim = support(rho.matrix()) + 1;
    for (int j = 0; j < spec.resolution; ++j)
        husimi_row(rho.matrix(), dim, grid, j, grid.values.data() + std::size_t(j) * spec.resolution);
    return grid;
}

int count_packets(const HusimiGrid& grid, double rel_threshold) {
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) throw std::invalid_argument("rel_threshold must lie in (0, 1)");
    const double peak = grid.max_value();
    if (!(peak > 0.0)) throw std::invalid_argument("empty superlevel set: Q vanishes on the grid");
    const double level = rel_threshold * peak;
    const int res = grid.spec.resolution;
    std::vector<int> label(grid.values.size(), 0);
    std::vector<int> stack;
    int components = 0;
    for (int start = 0; start < res * res; ++start) {
        if (label[start] != 0 || grid.values[start] < level) continue;
        ++components;
        label[start] = components;
        stack.push_back(start);
        while (!stack.empty()) {
            const int cell = stack.back();
            stack.pop_back();
            const int i = cell % res;
            const int j = cell / res;
            const int nbrs[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
            for (const auto& nb : nbrs) {
                if (nb[0] < 0 || nb[0] >= res || nb[1] < 0 || nb[1] >= res) continue;
                const int idx = nb[1] * res + nb[0];
                if (label[idx] == 0 && grid.values[idx] >= level) {
                    label[idx] = components;
                    stack.push_back(idx);
                }
            }
        }
    }
    return components;
}

} // namespace tmbec
