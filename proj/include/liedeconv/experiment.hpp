#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "liedeconv/estimator.hpp"

namespace liedeconv {

/// Named truth fixture. Shapes are specified by their Fourier coefficients
/// and then scaled to sit at Sobolev radius exactly A (except "zero").
struct TruthSpec {
    std::string name = "sobolev_worst";  // zero | single_mode | sobolev_worst | smooth_bump | rate_mix | so3_smooth
    int band = 8;
    double cutoff = 0.0;  // 0 -> derived from band
};

FourierCoefficients make_truth(const GroupSpec& group, const TruthSpec& spec, double s, double A);

struct ExperimentConfig {
    GroupSpec group;
    TruthSpec truth;
    DensitySpec density;
    double epsilon = 1.0;
    double s = 3.0;
    double nu = 1.0;  // nominal smoothness order, cross-checked against the profile
    double A = 1.0;
    std::vector<std::int64_t> n_grid;
    int replicates = 64;
    std::uint64_t seed = 1;
    std::string output;  // path prefix; empty -> no files written
    int threads = 1;

    void validate() const;
};

ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& cfg);  // echo for reports

struct RiskRow {
    std::int64_t n = 0;
    double T = 0.0;
    RiskEstimate est;
};

struct RiskTable {
    std::vector<RiskRow> rows;
    bool has_slope = false;
    double fitted_slope = 0.0;
    double slope_stderr = 0.0;
    double theoretical_slope = 0.0;
    double nu_nominal = 0.0;
    double nu_hat = 0.0;
    double nu_used = 0.0;
    bool nu_consistent = true;
    bool supersmooth = false;
};

/// Weighted least squares of log(risk) on log(n); weights are delta-method
/// (risk/std_error)^2, or uniform when any std_error is 0. The stderr comes
/// from the weighted residuals. Throws on nonpositive risks or < 2 points.
std::pair<double, double> fit_loglog_slope(
    const std::vector<std::tuple<std::int64_t, double, double>>& points);

/// Fits the slope fields of a table from its rows (absent for 1-row tables).
void fit_table_slope(RiskTable& table);

/// For each n in the grid: T from the bandwidth rule, Monte-Carlo risk, then
/// the log-log fit against the theoretical exponent -2s/(2s+2nu+dim).
/// Deterministic given the seed at any thread count.
RiskTable run_rate_sweep(const ExperimentConfig& cfg);

/// CSV with the exact header n,T,mean_risk,std_error,bias_sq,variance_term,tail_term.
std::string risk_table_csv(const RiskTable& table);

/// Versioned JSON report (see schemas/risk_report.schema.json).
std::string risk_table_json(const RiskTable& table, const ExperimentConfig& cfg);

}  // namespace liedeconv
