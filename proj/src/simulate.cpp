#include "liedeconv/simulate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "liedeconv/wigner.hpp"

namespace liedeconv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// pi(tau^{-1}) for every irrep in the list, sharing one Wigner stack on SO(3).
std::vector<Eigen::MatrixXcd> irrep_matrices_of_inverse(const std::vector<IrrepDescriptor>& irreps,
                                                        const GroupElement& tau) {
    std::vector<Eigen::MatrixXcd> out(irreps.size());
    if (tau.kind == GroupKind::SO3) {
        int lmax = 0;
        for (const auto& p : irreps) lmax = std::max(lmax, p.index[0]);
        const auto ang = euler_zyz(tau);
        const auto D = wigner_D_stack(lmax, ang[0], ang[1], ang[2]);
        for (std::size_t k = 0; k < irreps.size(); ++k)
            out[k] = D[irreps[k].index[0]].adjoint();
        return out;
    }
    for (std::size_t k = 0; k < irreps.size(); ++k) {
        const auto& p = irreps[k];
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = std::polar(1.0, -kTwoPi * (p.index[0] * tau.data[0] + p.index[1] * tau.data[1]));
        out[k] = m;
    }
    return out;
}

void run_parallel(int jobs, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || jobs <= 1) {
        for (int j = 0; j < jobs; ++j) body(j);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min(threads, jobs);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) body(j);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                next.store(jobs);
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

GroupElement sample_deformation(const DeformationDensity& h, Rng& rng) {
    if (!(h.sup >= 1.0) || !std::isfinite(h.sup))
        throw ConfigError("density sup must be finite and >= 1");
    for (long trial = 0; trial < 100000; ++trial) {
        GroupElement g = haar_sample(h.group, rng);
        if (rng.uniform() * h.sup <= h.eval(g)) return g;
    }
    throw NumericalRefusal("rejection sampler for density '" + h.name +
                           "' fell below acceptance rate 1e-4; supply a better sampler");
}

Eigen::MatrixXcd sample_matrix_noise(const IrrepDescriptor& irrep, Rng& rng) {
    const int d = irrep.dim;
    const double scale = std::sqrt(0.5 / d);
    Eigen::MatrixXcd w(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            w(i, j) = Complex(scale * re, scale * im);
        }
    return w;
}

ObservationSet simulate_dataset(const FourierCoefficients& truth, const DeformationDensity& h,
                                int n, double epsilon, const Rng& rng, int threads,
                                const std::string& truth_name) {
    if (truth.group != h.group) throw ConfigError("truth and density belong to different groups");
    if (h.coeffs.cutoff < truth.cutoff)
        throw ConfigError("density coefficients stop below the truth cutoff");
    if (n < 1) throw ConfigError("need n >= 1 observations");
    if (epsilon < 0.0) throw ConfigError("epsilon must be >= 0");

    ObservationSet obs;
    obs.group = truth.group;
    obs.cutoff = truth.cutoff;
    obs.irreps = truth.irreps;
    obs.n = n;
    obs.epsilon = epsilon;
    obs.density_name = h.name;
    obs.truth_name = truth_name;
    obs.coeffs.resize(static_cast<std::size_t>(n));

    run_parallel(n, threads, [&](int m) {
        Rng rm = rng.substream(static_cast<std::uint64_t>(m));
        Rng r_tau = rm.substream(0);
        const GroupElement tau = sample_deformation(h, r_tau);
        const auto pis = irrep_matrices_of_inverse(obs.irreps, tau);
        auto& row = obs.coeffs[static_cast<std::size_t>(m)];
        row.resize(obs.irreps.size());
        for (std::size_t k = 0; k < obs.irreps.size(); ++k) {
            row[k] = truth.mats[k] * pis[k];
            if (epsilon > 0.0) {
                Rng rw = rm.substream(1 + static_cast<std::uint64_t>(k));
                row[k] += epsilon * sample_matrix_noise(obs.irreps[k], rw);
            }
        }
    });
    return obs;
}

}  // namespace liedeconv
