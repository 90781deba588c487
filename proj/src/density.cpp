#include "liedeconv/density.hpp"

#include <cmath>
#include <vector>

namespace liedeconv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double torus1_coord(const GroupElement& g) { return g.data[0]; }

// sum_{l=1..band} a_l cos(2 pi l x), evaluated by angle-addition recurrence.
double cos_series(const std::vector<double>& a, double x) {
    const double c1 = std::cos(kTwoPi * x), s1 = std::sin(kTwoPi * x);
    double ck = 1.0, sk = 0.0, acc = 0.0;
    for (std::size_t l = 1; l < a.size(); ++l) {
        const double cn = ck * c1 - sk * s1;
        const double sn = sk * c1 + ck * s1;
        ck = cn;
        sk = sn;
        acc += a[l] * ck;
    }
    return acc;
}

double dirichlet(int band, double x) {
    const double s = std::sin(M_PI * x);
    if (std::abs(s) < 1e-9) return 2.0 * band + 1.0;
    return std::sin((2.0 * band + 1.0) * M_PI * x) / s;
}

// chi_l(theta) = sin((2l+1) theta/2) / sin(theta/2), the SO(3) character.
double so3_character(int l, double theta) {
    const double s = std::sin(0.5 * theta);
    if (std::abs(s) < 1e-7) return 2.0 * l + 1.0;
    return std::sin((l + 0.5) * theta) / s;
}

}  // namespace

DeformationDensity uniform_density(const GroupSpec& group, double coeff_cutoff) {
    DeformationDensity h;
    h.group = group;
    h.name = "uniform";
    h.eval = [](const GroupElement&) { return 1.0; };
    h.sup = 1.0;
    h.coeffs = zero_coefficients(group, coeff_cutoff);
    h.coeffs.mats[0](0, 0) = 1.0;  // trivial irrep sorts first
    return h;
}

DeformationDensity cosine_density(double a, double coeff_cutoff) {
    if (std::abs(a) > 1.0) throw ConfigError("cosine density needs |a| <= 1");
    DeformationDensity h;
    h.group = GroupSpec(GroupKind::Torus1);
    h.name = "cosine";
    h.eval = [a](const GroupElement& g) { return 1.0 + a * std::cos(kTwoPi * torus1_coord(g)); };
    h.sup = 1.0 + std::abs(a);
    h.coeffs = zero_coefficients(h.group, coeff_cutoff);
    h.coeffs.at({0, 0})(0, 0) = 1.0;
    h.coeffs.at({1, 0})(0, 0) = 0.5 * a;
    h.coeffs.at({-1, 0})(0, 0) = 0.5 * a;
    return h;
}

DeformationDensity polydecay_density(double nu, int band) {
    if (nu < 0.0 || band < 1) throw ConfigError("polydecay density needs nu >= 0 and band >= 1");
    std::vector<double> a(static_cast<std::size_t>(band) + 1, 0.0);
    for (int l = 1; l <= band; ++l) a[l] = 2.0 * std::pow(1.0 + double(l) * l, -0.5 * nu);

    const int N = 1 << 16;
    double fmin = 1e300, fmax = -1e300, zsum = 0.0;
    std::vector<double> clipped(N);
    for (int i = 0; i < N; ++i) {
        const double v = 1.0 + cos_series(a, double(i) / N);
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
        clipped[i] = std::max(v, 0.0);
        zsum += clipped[i];
    }

    DeformationDensity h;
    h.group = GroupSpec(GroupKind::Torus1);
    h.name = "polydecay";
    h.coeffs = zero_coefficients(h.group, double(band + 1) * (band + 1));

    if (fmin >= -1e-12) {
        // valid as synthesized; coefficients stay exactly (1+l^2)^{-nu/2}
        h.eval = [a](const GroupElement& g) {
            return std::max(1.0 + cos_series(a, torus1_coord(g)), 0.0);
        };
        h.sup = 1.0 + cos_series(a, 0.0);
        h.coeffs.at({0, 0})(0, 0) = 1.0;
        for (int l = 1; l <= band; ++l) {
            const double cl = std::pow(1.0 + double(l) * l, -0.5 * nu);
            h.coeffs.at({l, 0})(0, 0) = cl;
            h.coeffs.at({-l, 0})(0, 0) = cl;
        }
        return h;
    }

    // Clip at zero and renormalize; recompute the coefficients of the clipped
    // function so the sampler and the coefficient map agree.
    const double Z = zsum / N;
    h.eval = [a, Z](const GroupElement& g) {
        return std::max(1.0 + cos_series(a, torus1_coord(g)), 0.0) / Z;
    };
    double deriv_bound = 0.0;
    for (int l = 1; l <= band; ++l) deriv_bound += kTwoPi * l * a[l];
    h.sup = fmax / Z + deriv_bound / (2.0 * N * Z);  // grid max plus slope slack
    for (int l = -band; l <= band; ++l) {
        Complex acc = 0.0;
        for (int i = 0; i < N; ++i)
            acc += clipped[i] * std::polar(1.0, -kTwoPi * l * double(i) / N);
        h.coeffs.at({l, 0})(0, 0) = acc / (double(N) * Z);
    }
    return h;
}

DeformationDensity flat_density(double a, int band) {
    if (a <= 0.0 || band < 1) throw ConfigError("flat density needs a > 0 and band >= 1");
    double fmin = 1e300;
    const int N = 1 << 14;
    for (int i = 0; i < N; ++i)
        fmin = std::min(fmin, 1.0 - a + a * dirichlet(band, double(i) / N));
    if (fmin < -1e-12)
        throw ConfigError("flat density is negative (min " + std::to_string(fmin) +
                          "); reduce a for this band");
    DeformationDensity h;
    h.group = GroupSpec(GroupKind::Torus1);
    h.name = "flat";
    h.eval = [a, band](const GroupElement& g) {
        return std::max(1.0 - a + a * dirichlet(band, torus1_coord(g)), 0.0);
    };
    h.sup = 1.0 + 2.0 * a * band;
    h.coeffs = zero_coefficients(h.group, double(band + 1) * (band + 1));
    h.coeffs.at({0, 0})(0, 0) = 1.0;
    for (int l = 1; l <= band; ++l) {
        h.coeffs.at({l, 0})(0, 0) = a;
        h.coeffs.at({-l, 0})(0, 0) = a;
    }
    return h;
}

DeformationDensity so3_bump_density(double b, int degree) {
    if (b <= 0.0 || b >= 1.0 || degree < 1)
        throw ConfigError("so3 bump density needs 0 < b < 1 and degree >= 1");
    // q^2 expands in characters via chi_l chi_l' = sum_{j=|l-l'|}^{l+l'} chi_j.
    std::vector<double> hhat(static_cast<std::size_t>(2 * degree) + 1, 0.0);
    for (int l = 0; l <= degree; ++l)
        for (int lp = 0; lp <= degree; ++lp)
            for (int j = std::abs(l - lp); j <= l + lp; ++j)
                hhat[j] += std::pow(b, l + lp);
    const double Z = hhat[0];

    DeformationDensity h;
    h.group = GroupSpec(GroupKind::SO3);
    h.name = "so3bump";
    h.eval = [b, degree, Z](const GroupElement& g) {
        const double theta = rotation_angle(g);
        double q = 0.0;
        for (int l = 0; l <= degree; ++l) q += std::pow(b, l) * so3_character(l, theta);
        return q * q / Z;
    };
    double q0 = 0.0;
    for (int l = 0; l <= degree; ++l) q0 += std::pow(b, l) * (2.0 * l + 1.0);
    h.sup = q0 * q0 / Z;
    h.coeffs = zero_coefficients(h.group, double(2 * degree + 1) * (2 * degree + 2));
    for (std::size_t k = 0; k < h.coeffs.irreps.size(); ++k) {
        const int l = h.coeffs.irreps[k].index[0];
        if (l <= 2 * degree) {
            const double gamma = hhat[l] / (double(2 * l + 1) * Z);
            h.coeffs.mats[k] = gamma * Eigen::MatrixXcd::Identity(2 * l + 1, 2 * l + 1);
        }
    }
    return h;
}

DeformationDensity make_density(const GroupSpec& group, const DensitySpec& spec) {
    DeformationDensity h;
    if (spec.name == "uniform") {
        h = uniform_density(group, spec.cutoff);
    } else if (spec.name == "cosine") {
        h = cosine_density(spec.a, spec.cutoff);
    } else if (spec.name == "polydecay") {
        h = polydecay_density(spec.nu, spec.band);
    } else if (spec.name == "flat") {
        h = flat_density(spec.a, spec.band);
    } else if (spec.name == "so3bump") {
        h = so3_bump_density(spec.b, spec.degree);
    } else {
        throw ConfigError("unknown density '" + spec.name + "'");
    }
    if (h.group != group)
        throw ConfigError("density '" + spec.name + "' lives on " + h.group.name() + ", not " +
                          group.name());
    return h;
}

void validate_density(const DeformationDensity& h) {
    if (!(h.sup >= 1.0) || !std::isfinite(h.sup))
        throw ConfigError("density sup must be finite and >= 1");
    double mass = 0.0, worst = 0.0;
    if (h.group.kind == GroupKind::SO3) {
        const Grid grid = make_grid(h.group, std::max(2 * band_for_cutoff(h.group, h.coeffs.cutoff), 8));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = h.eval(grid.node(i));
            mass += grid.weight(i) * v;
            worst = std::max(worst, v - h.sup);
        }
    } else {
        const int N = 1 << 14;
        for (int i = 0; i < N; ++i) {
            GroupElement g = h.group.kind == GroupKind::Torus1
                                 ? GroupElement::torus1(double(i) / N)
                                 : GroupElement::torus2(double(i % 128) / 128.0, double(i / 128) / 128.0);
            const double v = h.eval(g);
            mass += v / N;
            worst = std::max(worst, v - h.sup);
        }
    }
    if (std::abs(mass - 1.0) > 1e-6)
        throw ConfigError("density '" + h.name + "' integrates to " + std::to_string(mass));
    if (worst > 1e-9) throw ConfigError("density '" + h.name + "' exceeds its stated sup");
    const auto t = h.coeffs.find({0, 0});
    if (t < 0 || std::abs(h.coeffs.mats[static_cast<std::size_t>(t)](0, 0) - 1.0) > 1e-8)
        throw ConfigError("density '" + h.name + "' trivial coefficient is not 1");
}

}  // namespace liedeconv
