#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace cdsp::simlab {

struct TruncExpSpec {
    double rate = 1.0;
    double lower = 0.0;
    double upper = 3.0;
};

struct NoiseMixtureSpec {
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> sds;
};

// Generator: X ~ truncated exponential, eta ~ Gaussian mixture, and
// Y = sign(X - a) |X - a|^d * beta + eta.
struct SimScenario {
    double degree_d = 1.0;
    double shift_a = 1.0;
    double slope_beta = 1.0;
    TruncExpSpec cause;
    NoiseMixtureSpec noise;
    std::size_t n = 500;
    int m_reps = 50;
    std::uint64_t seed = 1;
};

void validate_scenario(const SimScenario& s);

// Desk-scale defaults with mixture means recentered to exact zero mean.
SimScenario default_scenario(double degree_d);

// Preset names: paper-d1, paper-d1.2, paper-d1.25, paper-d1.3, paper-d1.4,
// paper-d1.5, paper-d3.
std::optional<SimScenario> preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

// key = value scenario files; '#' starts a comment. Unknown keys are errors.
SimScenario parse_scenario_text(const std::string& text);
SimScenario parse_scenario_file(const std::string& path);
std::string scenario_to_text(const SimScenario& s);

// One deterministic replication draw.
Sample generate(const SimScenario& scenario, int rep_index);

// Both columns shifted to exact zero mean; used before every method call in
// the lab so the no-intercept theory and the intercept fits agree.
Sample centered(const Sample& sample);

double truncated_exp_mean(const TruncExpSpec& spec);

struct OracleQuantities {
    double theta_xtoy = 0.0;  // population HSIC target for the X->Y test
    double theta_ytox = 0.0;
    double sigma_xtoy = 0.0;  // sqrt(n)-scaled sd of the per-replication stats
    double sigma_ytox = 0.0;
    double i_x = 0.0;  // theta_ytox / sigma_ytox (reverse-fit test)
    double i_y = 0.0;  // theta_xtoy / sigma_xtoy
    std::size_t n_mc = 0;
    bool asymmetry_holds() const { return i_x > i_y; }
};

// Monte Carlo oracle: thetas from one size-n_mc sample (population-level OLS
// on that sample), sigmas as sqrt(n) times the sd of per-replication
// statistics over m_reps_for_sigma size-n datasets. Critical-value terms are
// omitted (their contribution vanishes at population scale).
OracleQuantities estimate_oracle(const SimScenario& scenario, std::size_t n_mc,
                                 int m_reps_for_sigma);

struct CdspConfig {
    double alpha = 0.05;
    int n_boot = 100;
};

struct OracleConfig {
    std::size_t n_mc = 20000;
    int m_reps = 50;
};

struct RepRecord {
    int rep_index = 0;
    bool failed = false;
    Verdict cdsp_direction = Verdict::Inconclusive;
    Direction lingam_direction = Direction::XtoY;
    double i_hat_x = 0.0;
    double i_hat_y = 0.0;
    double t_xtoy = 0.0;  // per-replication directional statistics
    double t_ytox = 0.0;
    bool reject_y = false;
    bool reject_x = false;
};

struct AccuracyReport {
    SimScenario scenario;
    OracleQuantities oracle;
    double cdsp_accuracy = 0.0;    // vs. the oracle-favored direction
    double lingam_accuracy = 0.0;  // vs. the true direction (XtoY)
    bool asymmetry_holds = false;
    int failures = 0;
    std::vector<RepRecord> per_rep;
};

AccuracyReport run_accuracy_experiment(const SimScenario& scenario,
                                       const CdspConfig& cdsp_cfg,
                                       const OracleConfig& oracle_cfg);

}  // namespace cdsp::simlab
