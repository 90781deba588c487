#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liedeconv/density.hpp"
#include "liedeconv/simulate.hpp"

namespace liedeconv {

struct EstimatorConfig {
    double s = 3.0;   // smoothness of the truth, > dim(G)/2
    double nu = 0.0;  // smoothness order of the kernel, >= 0
    double A = 1.0;   // Sobolev radius, > 0
    std::optional<double> cutoff_override;

    void validate(int dim) const;
};

/// Bandwidth rule floor(n^{2/(2s+2nu+dim)}), returned as a real cutoff.
double bandwidth_T(std::int64_t n, double s, double nu, int dim);

/// Spectral-cutoff deconvolution: for each irrep with lambda < T,
/// (1/n) sum_m c_pi(Y_m) c_pi(h)^{-1}, solved by LU factorization. Refuses
/// (naming the irrep and its condition number) when a kernel coefficient has
/// condition number >= 1e12; no regularization is applied.
FourierCoefficients deconvolve_estimate(const ObservationSet& obs, const DeformationDensity& h,
                                        double T);

/// Parseval risk sum_pi d_pi ||c_pi(estimate) - c_pi(truth)||_F^2 over the
/// union of supports; truth coefficients beyond the estimate's cutoff count
/// as pure bias. Requires truth.cutoff >= estimate.cutoff.
double risk_of(const FourierCoefficients& estimate, const FourierCoefficients& truth);

struct RiskEstimate {
    double mean_risk = 0.0;
    double std_error = 0.0;
    int replicates = 0;
    double bias_sq = 0.0;        // within-cutoff, from the replicate-averaged estimate
    double variance_term = 0.0;  // mean squared deviation about that average
    double tail_term = 0.0;      // truth mass at lambda >= T (exact)
};

/// Monte-Carlo risk of the estimator at cutoff T = config.cutoff_override or
/// the bandwidth rule. mean_risk == bias_sq + variance_term + tail_term holds
/// exactly by construction. Replicate r draws from rng.substream(r), so
/// results are identical for any thread count.
RiskEstimate mc_risk(const FourierCoefficients& truth, const DeformationDensity& h, int n,
                     double epsilon, const EstimatorConfig& config, int replicates, const Rng& rng,
                     int threads = 1);

/// Worst-case sign-perturbation family on the annulus D <= lambda < 2D:
/// coefficients sqrt(mu_D) w_pi with entries +/- d_pi^{-1/2},
/// mu_D = kappa D^{-s-dim/2}.
struct AssouadMember {
    FourierCoefficients f;
    std::vector<int> signs;  // +1/-1 per matrix entry, canonical order
};

double assouad_mu(double kappa, double D, double s, int dim);

/// Largest kappa for which the whole family stays inside the Sobolev ball of
/// radius A (membership condition mu_D sum d^2 <= 2^{-s} D^{-s} A^2 / 2).
double assouad_kappa_max(const GroupSpec& group, double D, double s, double A);

/// Full enumeration (2^{sum d^2} members; requires sum d^2 <= 20).
std::vector<AssouadMember> assouad_family_enumerate(const GroupSpec& group, double D, double s,
                                                    double kappa);

/// Random sign draws when the cube is too large to enumerate.
std::vector<AssouadMember> assouad_family_sample(const GroupSpec& group, double D, double s,
                                                 double kappa, int count, Rng& rng);

}  // namespace liedeconv
