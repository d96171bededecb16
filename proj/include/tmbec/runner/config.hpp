// config.hpp: INI run configuration for the command-line runner
//
//   [model]      omega_a omega_b u_aa u_bb u_ab lambda          (rad/s)
//   [state]      alpha_a_re alpha_a_im alpha_b_re alpha_b_im
//                  or  n_total delta_phi   (equal populations, alpha_a = alpha_b e^{i delta_phi})
//   [time]       start stop steps unit=seconds|inverse_lambda|inverse_u_aa
//   [truncation] tail_tol
//   [evolve]     u_ab_percent=100,90,...  engine=auto|numeric|analytic
//   [cat]        n_total alpha_a_re alpha_a_im quarter_index rational_tol max_denominator
//   [husimi]     source=cat|coherent|vacuum|gcs_vacuum_start  re_min re_max im_min im_max
//                resolution threshold amplitude_re amplitude_im n_total k
//   [decohere]   kappa_over_u=0.01,0.1  n_total=50,100  initial=gcs|coherent
//   [purify]     alpha_re alpha_im vanishing=a|b count
//   [formation]  trap_omega mass rabi_frequency

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmbec/gcs.hpp"
#include "tmbec/model.hpp"
#include "tmbec/phase_space.hpp"

namespace tmbec::runner {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Engine { automatic, numeric, analytic };
enum class TimeUnit { seconds, inverse_lambda, inverse_u_aa };

struct TimeGrid {
    double start{0.0};
    double stop{0.0};
    int steps{1}; // number of points; 1 means just `start`
    TimeUnit unit{TimeUnit::seconds};

    // Grid values in the configured unit.
    std::vector<double> points() const;
    // Conversion factor from the configured unit to seconds.
    double seconds_per_unit(const ModelParams& p) const;
};

struct CatOptions {
    double n_total{25.0};
    std::optional<complex> alpha_a; // default sqrt(N)(1+i)/2
    int quarter_index{0};
    double rational_tol{kDefaultRationalTol};
    long max_denominator{kDefaultMaxDenominator};
};

struct HusimiOptions {
    std::string source{"cat"};
    GridSpec grid{-8.0, 8.0, -8.0, 8.0, 201};
    double threshold{0.5};
    complex amplitude{0.0, 0.0};
    double n_total{25.0};
    int k{1};
};

struct DecohereOptions {
    std::vector<double> kappa_over_u;
    std::vector<double> n_total;
    std::string initial{"gcs"};
};

struct PurifyOptions {
    complex alpha_known{1.0, 0.0};
    Mode vanishing{Mode::a};
    int count{3};
};

struct FormationOptions {
    double trap_omega{0.0};
    double mass{0.0};
    double rabi_frequency{0.0};
};

struct RunConfig {
    ModelParams model;
    std::optional<CoherentPair> state;
    TimeGrid time;
    double tail_tol{kDefaultTailTol};
    Engine engine{Engine::automatic};
    std::vector<double> u_ab_percent; // empty: single series at model.u_ab
    CatOptions cat;
    HusimiOptions husimi;
    DecohereOptions decohere;
    PurifyOptions purify;
    std::optional<FormationOptions> formation;
};

// Parse INI text; `origin` names the source in error messages.  Throws
// ConfigError naming the line (syntax) or section.key (values).
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

std::string engine_name(Engine e);

} // namespace tmbec::runner
