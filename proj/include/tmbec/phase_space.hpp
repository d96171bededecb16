// phase_space.hpp: Husimi Q function on a rectangular grid and packet counting

#pragma once

#include <vector>

#include "tmbec/observables.hpp"

namespace tmbec {

struct GridSpec {
    double re_min{-1.0};
    double re_max{1.0};
    double im_min{-1.0};
    double im_max{1.0};
    int resolution{2}; // points per axis, endpoints included
};

struct HusimiGrid {
    GridSpec spec;
    std::vector<double> values; // row-major: index = i_im * resolution + i_re

    double re_at(int i) const;
    double im_at(int j) const;
    double at(int i_re, int i_im) const { return values[static_cast<std::size_t>(i_im) * spec.resolution + i_re]; }
    double max_value() const;
    // Riemann sum of Q over the window (cell area times sum of samples).
    double integral() const;
};

// Smallest Fock cutoff for which the coherent-state tail at the window's
// farthest corner stays below 1e-10.
int required_cutoff(const GridSpec& spec);

// Q(gamma) = <gamma|rho|gamma>/pi.  Throws InsufficientCutoffError when
// rho.cutoff() < required_cutoff(spec); rows run as an OpenMP parallel loop.
HusimiGrid husimi(const SingleModeDensity& rho, const GridSpec& spec);
// Reference kernel: same math, single thread.
HusimiGrid husimi_serial(const SingleModeDensity& rho, const GridSpec& spec);

// Connected components (4-neighbour) of {Q >= rel_threshold * max Q}.
int count_packets(const HusimiGrid& grid, double rel_threshold);

} // namespace tmbec
