#include "liedeconv/wigner.hpp"

#include <cmath>

namespace liedeconv {

namespace {

// sqrt(binom(2l, l-mp)) via lgamma; exact enough through l ~ few hundred.
double sqrt_binom_2l(int l, int mp) {
    const double lg = std::lgamma(2.0 * l + 1.0) - std::lgamma(double(l + mp) + 1.0) -
                      std::lgamma(double(l - mp) + 1.0);
    return std::exp(0.5 * lg);
}

}  // namespace

std::vector<Eigen::MatrixXd> wigner_d_stack(int l_max, double beta) {
    std::vector<Eigen::MatrixXd> d(static_cast<std::size_t>(l_max) + 1);
    d[0] = Eigen::MatrixXd::Ones(1, 1);
    if (l_max == 0) return d;

    const double c = std::cos(beta);
    const double ch = std::cos(0.5 * beta);
    const double sh = std::sin(0.5 * beta);
    const double s_over_sqrt2 = std::sin(beta) / std::sqrt(2.0);

    d[1].resize(3, 3);
    d[1] << 0.5 * (1.0 + c), s_over_sqrt2, 0.5 * (1.0 - c),
            -s_over_sqrt2, c, s_over_sqrt2,
            0.5 * (1.0 - c), -s_over_sqrt2, 0.5 * (1.0 + c);

    for (int l = 2; l <= l_max; ++l) {
        const int n = 2 * l + 1;
        Eigen::MatrixXd cur = Eigen::MatrixXd::Zero(n, n);
        const Eigen::MatrixXd& p1 = d[l - 1];
        const Eigen::MatrixXd& p2 = d[l - 2];

        // Interior block |m|,|m'| <= l-1 by the recurrence in l; the d^{l-2}
        // term drops out on the |m| = l-1 border where its coefficient is 0.
        const double ll1 = double(l) * (l - 1);
        for (int m = -(l - 1); m <= l - 1; ++m) {
            for (int mp = -(l - 1); mp <= l - 1; ++mp) {
                const double denom =
                    (l - 1.0) * std::sqrt(double(l * l - m * m) * double(l * l - mp * mp));
                double term = (2.0 * l - 1.0) * (ll1 * c - double(m) * mp) * p1(m + l - 1, mp + l - 1);
                if (std::abs(m) <= l - 2 && std::abs(mp) <= l - 2) {
                    const double cz = std::sqrt(double((l - 1) * (l - 1) - m * m) *
                                                double((l - 1) * (l - 1) - mp * mp));
                    term -= double(l) * cz * p2(m + l - 2, mp + l - 2);
                }
                cur(m + l, mp + l) = term / denom;
            }
        }

        // Boundary row m = l from the closed form, then the remaining three
        // borders by the reflection/inversion symmetries.
        for (int mp = -l; mp <= l; ++mp) {
            const double v = sqrt_binom_2l(l, mp) * std::pow(ch, double(l + mp)) *
                             std::pow(-sh, double(l - mp));
            cur(2 * l, mp + l) = v;
        }
        for (int m = -l; m < l; ++m) {
            // column m' = l: d_{m,l} = (-1)^{l-m} d_{l,m}
            cur(m + l, 2 * l) = (((l - m) & 1) ? -1.0 : 1.0) * cur(2 * l, m + l);
            // column m' = -l: d_{m,-l} = d_{l,-m}
            cur(m + l, 0) = cur(2 * l, l - m);
        }
        for (int mp = -l; mp < l; ++mp) {
            // row m = -l: d_{-l,m'} = (-1)^{l+m'} d_{l,-m'}
            cur(0, mp + l) = (((l + mp) & 1) ? -1.0 : 1.0) * cur(2 * l, l - mp);
        }
        d[l] = std::move(cur);
    }
    return d;
}

std::vector<Eigen::MatrixXcd> wigner_D_stack(int l_max, double alpha, double beta, double gamma) {
    const std::vector<Eigen::MatrixXd> small = wigner_d_stack(l_max, beta);
    std::vector<Eigen::MatrixXcd> D(static_cast<std::size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l) {
        const int n = 2 * l + 1;
        Eigen::VectorXcd ea(n), eg(n);
        for (int m = -l; m <= l; ++m) {
            ea(m + l) = std::polar(1.0, -m * alpha);
            eg(m + l) = std::polar(1.0, -m * gamma);
        }
        D[l] = ea.asDiagonal() * small[l].cast<std::complex<double>>() * eg.asDiagonal();
    }
    return D;
}

}  // namespace liedeconv
