#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liedeconv/density.hpp"
#include "liedeconv/fourier.hpp"
#include "liedeconv/rng.hpp"

namespace liedeconv {

/// n simulated observations stored as Fourier coefficients over a common
/// cutoff set, plus provenance.
struct ObservationSet {
    GroupSpec group;
    double cutoff = 0.0;
    std::vector<IrrepDescriptor> irreps;
    int n = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::string density_name;
    std::string truth_name;
    std::vector<std::vector<Eigen::MatrixXcd>> coeffs;  // [observation][irrep]
};

/// Exact draw from h by rejection with Haar proposals. Refuses if the
/// acceptance rate over a 10^5-proposal window is effectively zero.
GroupElement sample_deformation(const DeformationDensity& h, Rng& rng);

/// d_pi x d_pi matrix with i.i.d. circular complex Gaussian entries of total
/// variance 1/d_pi (real and imaginary parts N(0, 1/(2 d_pi)) each).
Eigen::MatrixXcd sample_matrix_noise(const IrrepDescriptor& irrep, Rng& rng);

/// Simulates c_pi(Y_m) = c_pi(truth) pi(tau_m^{-1}) + epsilon c_pi(W_m) for
/// each irrep below the truth's cutoff. Observation m draws from
/// rng.substream(m), so the output is identical for any thread count.
ObservationSet simulate_dataset(const FourierCoefficients& truth, const DeformationDensity& h,
                                int n, double epsilon, const Rng& rng, int threads = 1,
                                const std::string& truth_name = "");

}  // namespace liedeconv
