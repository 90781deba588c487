#include "liedeconv/estimator.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace liedeconv {

namespace {

void run_parallel(int jobs, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || jobs <= 1) {
        for (int j = 0; j < jobs; ++j) body(j);
        return;
    }
    std::atomic<int> next{0};
    const int workers = std::min(threads, jobs);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
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

// Annulus D <= lambda < 2D with its total d^2 count.
std::pair<std::vector<IrrepDescriptor>, long> assouad_annulus(const GroupSpec& group, double D) {
    std::vector<IrrepDescriptor> ann;
    for (const auto& p : enumerate_irreps(group, 2.0 * D))
        if (p.lambda >= D) ann.push_back(p);
    if (ann.empty())
        throw ConfigError("empty annulus [" + std::to_string(D) + ", " + std::to_string(2.0 * D) + ")");
    long q = 0;
    for (const auto& p : ann) q += long(p.dim) * p.dim;
    return {ann, q};
}

AssouadMember assouad_member(const GroupSpec& group, const std::vector<IrrepDescriptor>& ann,
                             double D, double mu, const std::vector<int>& signs) {
    AssouadMember m;
    m.signs = signs;
    m.f = zero_coefficients(group, 2.0 * D);
    std::size_t bit = 0;
    const double root_mu = std::sqrt(mu);
    for (const auto& p : ann) {
        auto& mat = m.f.at(p.index);
        const double mag = root_mu / std::sqrt(double(p.dim));
        for (int i = 0; i < p.dim; ++i)
            for (int j = 0; j < p.dim; ++j) mat(i, j) = signs[bit++] * mag;
    }
    return m;
}

}  // namespace

void EstimatorConfig::validate(int dim) const {
    if (!(s > 0.5 * dim)) throw ConfigError("estimator config needs s > dim(G)/2");
    if (!(nu >= 0.0)) throw ConfigError("estimator config needs nu >= 0");
    if (!(A > 0.0)) throw ConfigError("estimator config needs A > 0");
}

double bandwidth_T(std::int64_t n, double s, double nu, int dim) {
    if (n < 1) throw ConfigError("bandwidth rule needs n >= 1");
    const double expo = 2.0 / (2.0 * s + 2.0 * nu + dim);
    // The nudge keeps exact integer powers (e.g. 512^{2/9} = 4) on the right
    // side of the floor.
    return std::floor(std::pow(double(n), expo) + 1e-9);
}

FourierCoefficients deconvolve_estimate(const ObservationSet& obs, const DeformationDensity& h,
                                        double T) {
    if (obs.group != h.group) throw ConfigError("observations and density belong to different groups");
    if (obs.cutoff < T) throw ConfigError("observations stop below the requested cutoff");
    if (h.coeffs.cutoff < T) throw ConfigError("density coefficients stop below the requested cutoff");

    FourierCoefficients est = zero_coefficients(obs.group, T);
    for (std::size_t k = 0; k < est.irreps.size(); ++k) {
        const auto& p = est.irreps[k];
        const auto oi = [&] {
            for (std::size_t i = 0; i < obs.irreps.size(); ++i)
                if (obs.irreps[i].index == p.index) return i;
            throw ConfigError("observation set lacks irrep " + p.label());
        }();
        const Eigen::MatrixXcd& H = h.coeffs.at(p.index);

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        const double cond = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
        if (!(cond < 1e12))
            throw NumericalRefusal("kernel coefficient at irrep " + p.label() +
                                   " is not safely invertible (condition " + std::to_string(cond) +
                                   ")");

        Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(p.dim, p.dim);
        for (int m = 0; m < obs.n; ++m) mean += obs.coeffs[static_cast<std::size_t>(m)][oi];
        mean /= double(obs.n);

        // X = mean * H^{-1}, via H^T X^T = mean^T
        est.mats[k] = H.transpose().partialPivLu().solve(mean.transpose()).transpose();
    }
    return est;
}

double risk_of(const FourierCoefficients& estimate, const FourierCoefficients& truth) {
    if (estimate.group != truth.group) throw ConfigError("risk_of: group mismatch");
    if (truth.cutoff < estimate.cutoff)
        throw ConfigError("risk_of: truth cutoff must cover the estimate cutoff");
    double acc = 0.0;
    for (std::size_t k = 0; k < truth.irreps.size(); ++k) {
        const auto ei = estimate.find(truth.irreps[k].index);
        if (ei >= 0)
            acc += double(truth.irreps[k].dim) *
                   (estimate.mats[static_cast<std::size_t>(ei)] - truth.mats[k]).squaredNorm();
        else
            acc += double(truth.irreps[k].dim) * truth.mats[k].squaredNorm();
    }
    return acc;
}

RiskEstimate mc_risk(const FourierCoefficients& truth, const DeformationDensity& h, int n,
                     double epsilon, const EstimatorConfig& config, int replicates, const Rng& rng,
                     int threads) {
    config.validate(truth.group.dim);
    if (replicates < 2) throw ConfigError("mc_risk needs at least 2 replicates");
    const double T = config.cutoff_override
                         ? *config.cutoff_override
                         : bandwidth_T(n, config.s, config.nu, truth.group.dim);

    // Truth below T drives the simulation; everything at or above T is exact
    // truncation bias.
    FourierCoefficients truth_T = zero_coefficients(truth.group, T);
    for (std::size_t k = 0; k < truth_T.irreps.size(); ++k) {
        const auto ti = truth.find(truth_T.irreps[k].index);
        if (ti >= 0) truth_T.mats[k] = truth.mats[static_cast<std::size_t>(ti)];
    }
    const double tail = l2_norm_sq(truth) - l2_norm_sq(truth_T);

    std::vector<std::vector<Eigen::MatrixXcd>> estimates(static_cast<std::size_t>(replicates));
    std::vector<double> risks(static_cast<std::size_t>(replicates), 0.0);
    run_parallel(replicates, threads, [&](int r) {
        try {
            const Rng rr = rng.substream(static_cast<std::uint64_t>(r));
            const ObservationSet obs = simulate_dataset(truth_T, h, n, epsilon, rr);
            const FourierCoefficients est = deconvolve_estimate(obs, h, T);
            double within = 0.0;
            for (std::size_t k = 0; k < truth_T.irreps.size(); ++k)
                within += double(truth_T.irreps[k].dim) * (est.mats[k] - truth_T.mats[k]).squaredNorm();
            risks[static_cast<std::size_t>(r)] = within + tail;
            estimates[static_cast<std::size_t>(r)] = est.mats;
        } catch (const NumericalRefusal& e) {
            throw NumericalRefusal(std::string(e.what()) + " (replicate " + std::to_string(r) + ")");
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " (replicate " + std::to_string(r) + ")");
        }
    });

    RiskEstimate out;
    out.replicates = replicates;
    out.tail_term = tail;
    double mean = 0.0;
    for (double v : risks) mean += v;
    mean /= double(replicates);
    double var = 0.0;
    for (double v : risks) var += (v - mean) * (v - mean);
    var /= double(replicates - 1);
    out.mean_risk = mean;
    out.std_error = std::sqrt(var / double(replicates));

    std::vector<Eigen::MatrixXcd> avg(truth_T.size());
    for (std::size_t k = 0; k < truth_T.size(); ++k) {
        avg[k] = Eigen::MatrixXcd::Zero(truth_T.irreps[k].dim, truth_T.irreps[k].dim);
        for (int r = 0; r < replicates; ++r) avg[k] += estimates[static_cast<std::size_t>(r)][k];
        avg[k] /= double(replicates);
    }
    for (std::size_t k = 0; k < truth_T.size(); ++k)
        out.bias_sq += double(truth_T.irreps[k].dim) * (avg[k] - truth_T.mats[k]).squaredNorm();
    for (int r = 0; r < replicates; ++r)
        for (std::size_t k = 0; k < truth_T.size(); ++k)
            out.variance_term += double(truth_T.irreps[k].dim) *
                                 (estimates[static_cast<std::size_t>(r)][k] - avg[k]).squaredNorm() /
                                 double(replicates);
    return out;
}

double assouad_mu(double kappa, double D, double s, int dim) {
    return kappa * std::pow(D, -s - 0.5 * dim);
}

double assouad_kappa_max(const GroupSpec& group, double D, double s, double A) {
    const auto [ann, q] = assouad_annulus(group, D);
    // mu_D * sum d^2 <= 2^{-s} D^{-s} A^2 / 2
    const double mu_max = std::pow(2.0, -s) * std::pow(D, -s) * A * A / (2.0 * double(q));
    return mu_max / std::pow(D, -s - 0.5 * group.dim);
}

std::vector<AssouadMember> assouad_family_enumerate(const GroupSpec& group, double D, double s,
                                                    double kappa) {
    const auto [ann, q] = assouad_annulus(group, D);
    if (q > 20)
        throw ConfigError("annulus carries sum d^2 = " + std::to_string(q) +
                          " > 20; enumeration would be 2^" + std::to_string(q) + " members");
    const double mu = assouad_mu(kappa, D, s, group.dim);
    std::vector<AssouadMember> family;
    family.reserve(std::size_t(1) << q);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << q); ++mask) {
        std::vector<int> signs(static_cast<std::size_t>(q));
        for (long b = 0; b < q; ++b) signs[static_cast<std::size_t>(b)] = (mask >> b) & 1 ? 1 : -1;
        family.push_back(assouad_member(group, ann, D, mu, signs));
    }
    return family;
}

std::vector<AssouadMember> assouad_family_sample(const GroupSpec& group, double D, double s,
                                                 double kappa, int count, Rng& rng) {
    const auto [ann, q] = assouad_annulus(group, D);
    const double mu = assouad_mu(kappa, D, s, group.dim);
    std::vector<AssouadMember> family;
    family.reserve(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) {
        std::vector<int> signs(static_cast<std::size_t>(q));
        for (auto& v : signs) v = rng.uniform() < 0.5 ? -1 : 1;
        family.push_back(assouad_member(group, ann, D, mu, signs));
    }
    return family;
}

}  // namespace liedeconv
