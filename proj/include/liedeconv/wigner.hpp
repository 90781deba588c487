#pragma once

#include <vector>

#include <Eigen/Dense>

namespace liedeconv {

/// Wigner small-d matrices d^l(beta) for l = 0..l_max, computed by the
/// three-term recurrence in l (boundary rows from closed forms, interior from
/// the symmetric recurrence). Entry (i,j) of the l-th matrix is d^l_{m m'}
/// with m = i-l, m' = j-l, matching the convention
///   D^l_{m m'}(alpha,beta,gamma) = e^{-i m alpha} d^l_{m m'}(beta) e^{-i m' gamma}.
std::vector<Eigen::MatrixXd> wigner_d_stack(int l_max, double beta);

/// Full Wigner-D matrices D^l(alpha,beta,gamma) for l = 0..l_max.
std::vector<Eigen::MatrixXcd> wigner_D_stack(int l_max, double alpha, double beta, double gamma);

}  // namespace liedeconv
