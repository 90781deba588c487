#include "liedeconv/fourier.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "liedeconv/wigner.hpp"

namespace liedeconv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

int max_torus_freq(double cutoff) {
    int l = 0;
    while (double(l + 1) * (l + 1) < cutoff) ++l;
    return l;
}

int max_so3_degree(double cutoff) {
    int l = 0;
    while (double(l + 1) * (l + 2) < cutoff) ++l;
    return l;
}

}  // namespace

std::ptrdiff_t FourierCoefficients::find(const std::array<int, 2>& index) const {
    for (std::size_t i = 0; i < irreps.size(); ++i)
        if (irreps[i].index == index) return static_cast<std::ptrdiff_t>(i);
    return -1;
}

Eigen::MatrixXcd& FourierCoefficients::at(const std::array<int, 2>& index) {
    const auto i = find(index);
    if (i < 0) throw ConfigError("coefficient index outside cutoff");
    return mats[static_cast<std::size_t>(i)];
}

const Eigen::MatrixXcd& FourierCoefficients::at(const std::array<int, 2>& index) const {
    const auto i = find(index);
    if (i < 0) throw ConfigError("coefficient index outside cutoff");
    return mats[static_cast<std::size_t>(i)];
}

FourierCoefficients zero_coefficients(const GroupSpec& group, double cutoff) {
    FourierCoefficients c;
    c.group = group;
    c.cutoff = cutoff;
    c.irreps = enumerate_irreps(group, cutoff);
    c.mats.reserve(c.irreps.size());
    for (const auto& p : c.irreps) c.mats.emplace_back(Eigen::MatrixXcd::Zero(p.dim, p.dim));
    return c;
}

FourierCoefficients restrict_cutoff(const FourierCoefficients& c, double cutoff) {
    FourierCoefficients out;
    out.group = c.group;
    out.cutoff = cutoff;
    for (std::size_t i = 0; i < c.irreps.size(); ++i) {
        if (c.irreps[i].lambda < cutoff) {
            out.irreps.push_back(c.irreps[i]);
            out.mats.push_back(c.mats[i]);
        }
    }
    return out;
}

int band_for_cutoff(const GroupSpec& group, double cutoff) {
    return group.kind == GroupKind::SO3 ? max_so3_degree(cutoff) : max_torus_freq(cutoff);
}

std::size_t Grid::size() const {
    switch (group.kind) {
        case GroupKind::Torus1: return static_cast<std::size_t>(torus_n[0]);
        case GroupKind::Torus2: return static_cast<std::size_t>(torus_n[0]) * torus_n[1];
        case GroupKind::SO3: return static_cast<std::size_t>(n_alpha) * n_beta * n_gamma;
    }
    return 0;
}

GroupElement Grid::node(std::size_t flat) const {
    switch (group.kind) {
        case GroupKind::Torus1:
            return GroupElement::torus1(double(flat) / torus_n[0]);
        case GroupKind::Torus2: {
            const std::size_t i = flat / torus_n[1], j = flat % torus_n[1];
            return GroupElement::torus2(double(i) / torus_n[0], double(j) / torus_n[1]);
        }
        case GroupKind::SO3: {
            const std::size_t a = flat / (static_cast<std::size_t>(n_beta) * n_gamma);
            const std::size_t b = (flat / n_gamma) % n_beta;
            const std::size_t c_idx = flat % n_gamma;
            const double alpha = kTwoPi * double(a) / n_alpha;
            const double beta = beta_nodes[b];
            const double gamma = kTwoPi * double(c_idx) / n_gamma;
            // q = qz(alpha) * qy(beta) * qz(gamma)
            const double cb = std::cos(0.5 * beta), sb = std::sin(0.5 * beta);
            const double cpg = std::cos(0.5 * (alpha + gamma)), spg = std::sin(0.5 * (alpha + gamma));
            const double cmg = std::cos(0.5 * (alpha - gamma)), smg = std::sin(0.5 * (alpha - gamma));
            return GroupElement::so3(cb * cpg, -sb * smg, sb * cmg, cb * spg);
        }
    }
    throw ConfigError("bad group kind");
}

double Grid::weight(std::size_t flat) const {
    switch (group.kind) {
        case GroupKind::Torus1: return 1.0 / torus_n[0];
        case GroupKind::Torus2: return 1.0 / (double(torus_n[0]) * torus_n[1]);
        case GroupKind::SO3: {
            const std::size_t b = (flat / n_gamma) % n_beta;
            return beta_weights[b] / (2.0 * n_alpha * n_gamma);
        }
    }
    return 0.0;
}

Grid make_grid(const GroupSpec& group, int band) {
    if (band < 0) throw ConfigError("band must be >= 0");
    Grid g;
    g.group = group;
    g.band = band;
    switch (group.kind) {
        case GroupKind::Torus1:
            g.torus_n = {2 * band + 2, 0};
            break;
        case GroupKind::Torus2:
            g.torus_n = {2 * band + 2, 2 * band + 2};
            break;
        case GroupKind::SO3: {
            g.n_alpha = g.n_gamma = 2 * band + 1;
            g.n_beta = band + 1;
            std::vector<double> x, w;
            gauss_legendre(g.n_beta, x, w);
            g.beta_nodes.resize(g.n_beta);
            g.beta_weights = w;
            for (int b = 0; b < g.n_beta; ++b) g.beta_nodes[b] = std::acos(x[b]);
            break;
        }
    }
    return g;
}

Complex integrate(const GridFunction& f) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) acc += f.grid.weight(i) * f.values(i);
    return acc;
}

double integrate_abs2(const GridFunction& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) acc += f.grid.weight(i) * std::norm(f.values(i));
    return acc;
}

namespace {

void require_resolution(const Grid& grid, double cutoff) {
    const int need = band_for_cutoff(grid.group, cutoff);
    if (grid.band >= need) return;
    std::ostringstream os;
    os << "grid resolves band " << grid.band << " but cutoff " << cutoff << " needs band " << need
       << " (minimum grid: ";
    if (grid.group.kind == GroupKind::SO3)
        os << 2 * need + 1 << "x" << need + 1 << "x" << 2 * need + 1 << " in alpha x beta x gamma)";
    else
        os << 2 * need + 2 << " points per coordinate)";
    throw ConfigError(os.str());
}

FourierCoefficients analyze_torus(const GridFunction& f, double cutoff) {
    FourierCoefficients c = zero_coefficients(f.grid.group, cutoff);
    const std::size_t npts = f.grid.size();
    for (std::size_t k = 0; k < c.irreps.size(); ++k) {
        const auto& p = c.irreps[k];
        Complex acc = 0.0;
        for (std::size_t i = 0; i < npts; ++i) {
            const GroupElement g = f.grid.node(i);
            const double phase = p.index[0] * g.data[0] + p.index[1] * g.data[1];
            acc += f.grid.weight(i) * f.values(i) * std::polar(1.0, -kTwoPi * phase);
        }
        c.mats[k](0, 0) = acc;
    }
    return c;
}

FourierCoefficients analyze_so3(const GridFunction& f, double cutoff) {
    FourierCoefficients c = zero_coefficients(f.grid.group, cutoff);
    const Grid& gr = f.grid;
    const int L = max_so3_degree(cutoff);
    const int nm = 2 * L + 1;

    // G_b(mp, m) = mean over (a,c) of f(a,b,c) e^{i mp alpha_a} e^{i m gamma_c}
    std::vector<Eigen::MatrixXcd> G(gr.n_beta, Eigen::MatrixXcd::Zero(nm, nm));
    Eigen::MatrixXcd ea(nm, gr.n_alpha), eg(nm, gr.n_gamma);
    for (int m = -L; m <= L; ++m) {
        for (int a = 0; a < gr.n_alpha; ++a) ea(m + L, a) = std::polar(1.0, m * kTwoPi * a / gr.n_alpha);
        for (int cc = 0; cc < gr.n_gamma; ++cc) eg(m + L, cc) = std::polar(1.0, m * kTwoPi * cc / gr.n_gamma);
    }
    for (int b = 0; b < gr.n_beta; ++b) {
        Eigen::MatrixXcd fb(gr.n_alpha, gr.n_gamma);
        for (int a = 0; a < gr.n_alpha; ++a)
            for (int cc = 0; cc < gr.n_gamma; ++cc)
                fb(a, cc) = f.values((static_cast<std::size_t>(a) * gr.n_beta + b) * gr.n_gamma + cc);
        G[b] = (ea * fb * eg.transpose()) / (double(gr.n_alpha) * gr.n_gamma);
    }

    for (int b = 0; b < gr.n_beta; ++b) {
        const auto dstack = wigner_d_stack(L, gr.beta_nodes[b]);
        const double wb = gr.beta_weights[b] / 2.0;
        for (std::size_t k = 0; k < c.irreps.size(); ++k) {
            const int l = c.irreps[k].index[0];
            auto& mat = c.mats[k];
            const auto& dl = dstack[l];
            for (int m = -l; m <= l; ++m)
                for (int mp = -l; mp <= l; ++mp)
                    mat(m + l, mp + l) += wb * dl(mp + l, m + l) * G[b](mp + L, m + L);
        }
    }
    return c;
}

}  // namespace

FourierCoefficients analyze(const GridFunction& f, double lambda_cutoff) {
    require_resolution(f.grid, lambda_cutoff);
    if (f.values.size() != static_cast<Eigen::Index>(f.grid.size()))
        throw ConfigError("grid function has wrong sample count");
    if (f.grid.group.kind == GroupKind::SO3) return analyze_so3(f, lambda_cutoff);
    return analyze_torus(f, lambda_cutoff);
}

Complex synthesize(const FourierCoefficients& c, const GroupElement& g) {
    if (c.group.kind != g.kind) throw ConfigError("element and coefficients belong to different groups");
    Complex acc = 0.0;
    if (c.group.kind == GroupKind::SO3) {
        int lmax = 0;
        for (const auto& p : c.irreps) lmax = std::max(lmax, p.index[0]);
        const auto ang = euler_zyz(g);
        const auto D = wigner_D_stack(lmax, ang[0], ang[1], ang[2]);
        for (std::size_t k = 0; k < c.irreps.size(); ++k) {
            const int l = c.irreps[k].index[0];
            acc += double(c.irreps[k].dim) * (D[l] * c.mats[k]).trace();
        }
        return acc;
    }
    for (std::size_t k = 0; k < c.irreps.size(); ++k) {
        const auto& p = c.irreps[k];
        const double phase = p.index[0] * g.data[0] + p.index[1] * g.data[1];
        acc += c.mats[k](0, 0) * std::polar(1.0, kTwoPi * phase);
    }
    return acc;
}

GridFunction synthesize_grid(const FourierCoefficients& c, const Grid& grid) {
    if (c.group != grid.group) throw ConfigError("grid and coefficients belong to different groups");
    GridFunction f;
    f.grid = grid;
    f.values.resize(static_cast<Eigen::Index>(grid.size()));
    if (grid.group.kind != GroupKind::SO3) {
        for (std::size_t i = 0; i < grid.size(); ++i) f.values(i) = synthesize(c, grid.node(i));
        return f;
    }
    int L = 0;
    for (const auto& p : c.irreps) L = std::max(L, p.index[0]);
    const int nm = 2 * L + 1;
    for (int b = 0; b < grid.n_beta; ++b) {
        const auto dstack = wigner_d_stack(L, grid.beta_nodes[b]);
        // H_b(m, mp) = sum_l d_l * d^l_{m mp}(beta_b) * c_l(mp, m)
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(nm, nm);
        for (std::size_t k = 0; k < c.irreps.size(); ++k) {
            const int l = c.irreps[k].index[0];
            const auto& dl = dstack[l];
            const auto& cl = c.mats[k];
            for (int m = -l; m <= l; ++m)
                for (int mp = -l; mp <= l; ++mp)
                    H(m + L, mp + L) += double(2 * l + 1) * dl(m + l, mp + l) * cl(mp + l, m + l);
        }
        Eigen::MatrixXcd ea(grid.n_alpha, nm), eg(nm, grid.n_gamma);
        for (int m = -L; m <= L; ++m) {
            for (int a = 0; a < grid.n_alpha; ++a)
                ea(a, m + L) = std::polar(1.0, -m * kTwoPi * a / grid.n_alpha);
            for (int cc = 0; cc < grid.n_gamma; ++cc)
                eg(m + L, cc) = std::polar(1.0, -m * kTwoPi * cc / grid.n_gamma);
        }
        const Eigen::MatrixXcd vals = ea * H * eg;  // (a, c) slab at this beta
        for (int a = 0; a < grid.n_alpha; ++a)
            for (int cc = 0; cc < grid.n_gamma; ++cc)
                f.values((static_cast<std::size_t>(a) * grid.n_beta + b) * grid.n_gamma + cc) = vals(a, cc);
    }
    return f;
}

double l2_norm_sq(const FourierCoefficients& c) {
    double acc = 0.0;
    for (std::size_t k = 0; k < c.irreps.size(); ++k)
        acc += double(c.irreps[k].dim) * c.mats[k].squaredNorm();
    return acc;
}

double sobolev_norm_sq(const FourierCoefficients& c, double s) {
    if (s <= 0.5 * c.group.dim)
        std::cerr << "warning: Sobolev order s=" << s << " is at or below dim(G)/2="
                  << 0.5 * c.group.dim << "; the norm is computed anyway\n";
    double acc = l2_norm_sq(c);
    for (std::size_t k = 0; k < c.irreps.size(); ++k) {
        const double lam = c.irreps[k].lambda;
        if (lam > 0.0)
            acc += std::pow(lam, s) * double(c.irreps[k].dim) * c.mats[k].squaredNorm();
    }
    return acc;
}

FourierCoefficients convolve(const FourierCoefficients& f, const FourierCoefficients& h) {
    if (f.group != h.group) throw ConfigError("convolve: group mismatch");
    const double cutoff = std::min(f.cutoff, h.cutoff);
    FourierCoefficients out = zero_coefficients(f.group, cutoff);
    for (std::size_t k = 0; k < out.irreps.size(); ++k) {
        const auto fi = f.find(out.irreps[k].index);
        const auto hi = h.find(out.irreps[k].index);
        out.mats[k] = f.mats[static_cast<std::size_t>(fi)] * h.mats[static_cast<std::size_t>(hi)];
    }
    return out;
}

SmoothnessProfile smoothness_profile(const FourierCoefficients& h) {
    SmoothnessProfile prof;
    prof.rows.reserve(h.size());
    for (std::size_t k = 0; k < h.irreps.size(); ++k) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h.mats[k]);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        const double cond = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
        if (!(cond < 1e12))
            throw NumericalRefusal("kernel coefficient at irrep " + h.irreps[k].label() +
                                   " is not safely invertible (condition " + std::to_string(cond) + ")");
        SmoothnessProfile::Row row;
        row.irrep = h.irreps[k];
        row.op_norm_sq = smax * smax;
        row.inv_op_norm_sq = 1.0 / (smin * smin);
        row.condition = cond;
        prof.rows.push_back(row);
    }

    // Least-squares line and curvature of log ||c^{-1}||_op^2 vs log lambda
    // over nontrivial irreps.
    std::vector<double> u, y;
    for (const auto& r : prof.rows) {
        if (r.irrep.trivial()) continue;
        u.push_back(std::log(r.irrep.lambda));
        y.push_back(std::log(r.inv_op_norm_sq));
    }
    const std::size_t n = u.size();
    if (n >= 2) {
        double mu = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mu += u[i];
            my += y[i];
        }
        mu /= double(n);
        my /= double(n);
        double suy = 0.0, suu = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            suy += (u[i] - mu) * (y[i] - my);
            suu += (u[i] - mu) * (u[i] - mu);
        }
        prof.nu_hat = (suu > 0.0) ? suy / suu : 0.0;
    }
    if (n >= 3) {
        // quadratic fit y ~ a u^2 + b u + c; a > 0.1 indicates faster than
        // polynomial growth
        Eigen::MatrixXd X(n, 3);
        Eigen::VectorXd Y(n);
        for (std::size_t i = 0; i < n; ++i) {
            X(i, 0) = u[i] * u[i];
            X(i, 1) = u[i];
            X(i, 2) = 1.0;
            Y(i) = y[i];
        }
        const Eigen::VectorXd beta = (X.transpose() * X).ldlt().solve(X.transpose() * Y);
        prof.curvature = beta(0);
        prof.supersmooth = beta(0) > 0.1;
    }
    return prof;
}

}  // namespace liedeconv
