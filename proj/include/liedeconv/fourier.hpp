#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "liedeconv/group.hpp"

namespace liedeconv {

/// A finite map irrep -> d_pi x d_pi complex matrix, complete under `cutoff`:
/// every irrep with lambda < cutoff is present (explicit zeros allowed, absent
/// matrices are not), stored in the canonical enumeration order.
struct FourierCoefficients {
    GroupSpec group;
    double cutoff = 0.0;
    std::vector<IrrepDescriptor> irreps;
    std::vector<Eigen::MatrixXcd> mats;

    std::size_t size() const { return irreps.size(); }

    /// Position of an irrep index in the canonical order, or -1.
    std::ptrdiff_t find(const std::array<int, 2>& index) const;

    Eigen::MatrixXcd& at(const std::array<int, 2>& index);
    const Eigen::MatrixXcd& at(const std::array<int, 2>& index) const;
};

/// All-zero coefficients, complete for the given cutoff.
FourierCoefficients zero_coefficients(const GroupSpec& group, double cutoff);

/// Same coefficients truncated to a smaller cutoff.
FourierCoefficients restrict_cutoff(const FourierCoefficients& c, double cutoff);

/// Band limit needed to represent every irrep with lambda < cutoff
/// (largest |l| on the torus, largest l on SO(3)).
int band_for_cutoff(const GroupSpec& group, double cutoff);

/// Quadrature grid over the group. Tori use N equispaced points per
/// coordinate with N = 2*band+2; SO(3) uses band+1 Gauss-Legendre nodes in
/// cos(beta) and 2*band+1 uniform nodes in alpha and gamma. Weights are
/// normalized Haar (they sum to 1) and the quadrature is exact for products
/// of two functions band-limited at `band`.
struct Grid {
    GroupSpec group;
    int band = 0;
    std::array<int, 2> torus_n{0, 0};
    int n_alpha = 0, n_beta = 0, n_gamma = 0;
    std::vector<double> beta_nodes;    // in (0, pi)
    std::vector<double> beta_weights;  // Gauss-Legendre weights in cos(beta); sum to 2

    std::size_t size() const;
    GroupElement node(std::size_t flat) const;
    double weight(std::size_t flat) const;
};

Grid make_grid(const GroupSpec& group, int band);

/// Function sampled on a grid's nodes (flat canonical order).
struct GridFunction {
    Grid grid;
    Eigen::VectorXcd values;
};

/// Haar quadrature of f over the group.
Complex integrate(const GridFunction& f);

/// Haar quadrature of |f|^2.
double integrate_abs2(const GridFunction& f);

/// Fourier analysis: c_pi(f) for every lambda < lambda_cutoff, by quadrature;
/// exact (to roundoff) for f band-limited within the grid's band. Refuses
/// with a diagnostic if the grid is too coarse for the requested cutoff.
FourierCoefficients analyze(const GridFunction& f, double lambda_cutoff);

/// Pointwise synthesis sum_pi d_pi Tr(pi(g) c_pi).
Complex synthesize(const FourierCoefficients& c, const GroupElement& g);

/// Batch synthesis onto a grid.
GridFunction synthesize_grid(const FourierCoefficients& c, const Grid& grid);

/// Parseval sum: sum_pi d_pi ||c_pi||_F^2.
double l2_norm_sq(const FourierCoefficients& c);

/// l2_norm_sq(c) + sum_pi lambda_pi^s d_pi ||c_pi||_F^2. Values of s at or
/// below dim(G)/2 are computed but warned about on stderr.
double sobolev_norm_sq(const FourierCoefficients& c, double s);

/// Convolution through coefficients: per-irrep matrix products. Cutoffs are
/// aligned to the smaller one, which the result records.
FourierCoefficients convolve(const FourierCoefficients& f, const FourierCoefficients& h);

/// Per-irrep operator norms of a convolution kernel and the fitted smoothness
/// order. Operator norms come from singular values; the fit is the
/// least-squares slope of log ||c_pi^{-1}||_op^2 against log lambda_pi over
/// nontrivial irreps. `supersmooth` flags super-polynomial growth (large
/// positive curvature in the log-log fit).
struct SmoothnessProfile {
    struct Row {
        IrrepDescriptor irrep;
        double op_norm_sq = 0.0;
        double inv_op_norm_sq = 0.0;
        double condition = 0.0;
    };
    std::vector<Row> rows;
    double nu_hat = 0.0;
    double curvature = 0.0;
    bool supersmooth = false;
};

SmoothnessProfile smoothness_profile(const FourierCoefficients& h);

}  // namespace liedeconv
