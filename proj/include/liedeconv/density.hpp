#pragma once

#include <functional>
#include <optional>
#include <string>

#include "liedeconv/fourier.hpp"

namespace liedeconv {

/// A known deformation density h on the group: pointwise evaluator (normalized
/// to integrate to 1 under Haar), an upper bound used as the rejection
/// envelope, and its Fourier coefficients over the stated cutoff.
struct DeformationDensity {
    GroupSpec group;
    std::string name;
    std::function<double(const GroupElement&)> eval;
    double sup = 1.0;
    FourierCoefficients coeffs;
};

/// h == 1 (Haar itself). Its only nonzero coefficient is the trivial one, so
/// it is the degenerate case for deconvolution.
DeformationDensity uniform_density(const GroupSpec& group, double coeff_cutoff = 30.0);

/// Torus: h(g) = 1 + a cos(2 pi g), |a| <= 1. Coefficients a/2 at l = +/-1.
DeformationDensity cosine_density(double a, double coeff_cutoff = 30.0);

/// Torus: band-limited density with nominal coefficients c_l = (1+l^2)^{-nu/2}
/// for |l| <= band. If the synthesized function dips below zero it is clipped
/// at zero and renormalized, and the stored coefficients are recomputed from
/// the clipped function on a fine grid (so samplers and coefficients always
/// describe the same density).
DeformationDensity polydecay_density(double nu, int band);

/// Torus: h = (1-a) + a * Dirichlet_band(g); constant spectrum c_l = a on
/// 1 <= |l| <= band (smoothness order 0). Requires a small enough that h >= 0.
DeformationDensity flat_density(double a, int band);

/// SO(3): positive band-limited bump around the identity,
/// h proportional to (sum_{l<=degree} b^l chi_l)^2 with 0 < b < 1.
/// Coefficients are scalar matrices gamma_l * I, nonzero through l = 2*degree.
DeformationDensity so3_bump_density(double b, int degree);

/// Parsed density request (from config files / CLI flags).
struct DensitySpec {
    std::string name;  // uniform | cosine | polydecay | flat | so3bump
    double a = 1.0;    // cosine amplitude / flat weight
    double nu = 1.0;
    int band = 8;
    double b = 0.6;
    int degree = 2;
    double cutoff = 30.0;  // uniform/cosine coefficient cutoff
};

DeformationDensity make_density(const GroupSpec& group, const DensitySpec& spec);

/// Checks the density contract: quadrature ~= 1, trivial coefficient ~= 1 and
/// eval <= sup on a fine grid. Throws ConfigError on violation.
void validate_density(const DeformationDensity& h);

}  // namespace liedeconv
