#include <doctest.h>

#include "liedeconv/estimator.hpp"

#include <cmath>

#include "test_support.hpp"

using namespace liedeconv;

namespace {
const GroupSpec t1(GroupKind::Torus1);
const GroupSpec so3(GroupKind::SO3);
}  // namespace

TEST_CASE("bandwidth rule") {
    CHECK(bandwidth_T(1, 3.0, 1.0, 1) == 1.0);
    CHECK(bandwidth_T(1, 7.5, 0.25, 3) == 1.0);
    CHECK(bandwidth_T(1024, 3.0, 1.0, 1) == 4.0);
    CHECK(bandwidth_T(1000000, 2.0, 0.0, 1) == 251.0);
    // exact integer powers stay on the right side of the floor
    CHECK(bandwidth_T(512, 3.0, 1.0, 1) == 4.0);
    CHECK(bandwidth_T(128, 3.0, 0.0, 1) == 4.0);
}

TEST_CASE("deconvolution: zero data and the n = 1 algebraic identity") {
    const auto h = polydecay_density(1.0, 8);

    ObservationSet zero_obs;
    zero_obs.group = t1;
    zero_obs.cutoff = 10.0;
    zero_obs.irreps = enumerate_irreps(t1, 10.0);
    zero_obs.n = 3;
    zero_obs.coeffs.assign(3, {});
    for (auto& row : zero_obs.coeffs)
        for (const auto& p : zero_obs.irreps)
            row.push_back(Eigen::MatrixXcd::Zero(p.dim, p.dim));
    const auto est0 = deconvolve_estimate(zero_obs, h, 10.0);
    for (const auto& m : est0.mats) CHECK(m.norm() == 0.0);

    // single observation with tau = identity and epsilon = 0:
    // c(Y) = c(f*), so the estimate is c(f*) c(h)^{-1}
    Rng rng(301);
    const auto truth = testsupport::random_coefficients(t1, 10.0, rng);
    ObservationSet one;
    one.group = t1;
    one.cutoff = 10.0;
    one.irreps = truth.irreps;
    one.n = 1;
    one.coeffs.push_back(truth.mats);
    const auto est = deconvolve_estimate(one, h, 10.0);
    for (std::size_t k = 0; k < est.size(); ++k) {
        const Complex expect =
            truth.mats[k](0, 0) / h.coeffs.at(est.irreps[k].index)(0, 0);
        CHECK(std::abs(est.mats[k](0, 0) - expect) < 1e-13);
    }
}

TEST_CASE("deconvolution refuses singular kernels, naming the irrep") {
    const auto h = uniform_density(t1, 10.0);
    auto truth = zero_coefficients(t1, 10.0);
    const auto obs = simulate_dataset(truth, h, 4, 1.0, Rng(3));
    CHECK_THROWS_WITH_AS(deconvolve_estimate(obs, h, 5.0), doctest::Contains("l=-1"),
                         NumericalRefusal);
}

TEST_CASE("risk is the Parseval distance") {
    Rng rng(307);
    const auto truth = testsupport::random_coefficients(t1, 26.0, rng);
    CHECK(risk_of(truth, truth) == 0.0);

    auto two = zero_coefficients(t1, 2.0);
    two.at({1, 0})(0, 0) = 1.0;
    two.at({-1, 0})(0, 0) = 1.0;
    CHECK(risk_of(zero_coefficients(t1, 2.0), two) == doctest::Approx(2.0));

    // beyond-cutoff truth mass counts as bias
    const auto est = testsupport::random_coefficients(t1, 5.0, rng);
    double expect = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        const auto ei = est.find(truth.irreps[k].index);
        const Complex e = ei >= 0 ? est.mats[static_cast<std::size_t>(ei)](0, 0) : Complex(0.0);
        expect += std::norm(e - truth.mats[k](0, 0));
    }
    CHECK(risk_of(est, truth) == doctest::Approx(expect));

    // quadrature oracle: risk equals the integral of |difference|^2
    auto diff = truth;
    for (std::size_t k = 0; k < diff.size(); ++k) {
        const auto ei = est.find(diff.irreps[k].index);
        if (ei >= 0) diff.mats[k] -= est.mats[static_cast<std::size_t>(ei)];
    }
    const Grid grid = make_grid(t1, band_for_cutoff(t1, 26.0));
    const double direct = integrate_abs2(synthesize_grid(diff, grid));
    CHECK(std::abs(risk_of(est, truth) - direct) < 1e-8 * direct);
}

TEST_CASE("Monte-Carlo risk matches the exact variance formula at truth zero") {
    // scalar torus: E risk = (eps^2/n) sum |c_l(h)|^{-2} = 15/100 = 0.15
    const auto h = polydecay_density(1.0, 8);
    const auto truth = zero_coefficients(t1, 5.0);
    EstimatorConfig cfg{3.0, 1.0, 2.0, 5.0};
    const auto r = mc_risk(truth, h, 100, 1.0, cfg, 2000, Rng(311), 2);
    CHECK(std::abs(r.mean_risk - 0.15) < 4.0 * r.std_error);
    CHECK(r.tail_term == 0.0);
    // decomposition identity holds exactly
    CHECK(r.mean_risk ==
          doctest::Approx(r.bias_sq + r.variance_term + r.tail_term).epsilon(1e-12));

    // matrix case on SO(3): E risk = (eps^2/n) sum_pi d_pi ||c_pi(h)^{-1}||_F^2
    const auto hb = so3_bump_density(0.6, 2);
    const auto truth3 = zero_coefficients(so3, 6.5);
    double expect = 0.0;
    for (const auto& p : enumerate_irreps(so3, 6.5)) {
        const double gamma = hb.coeffs.at(p.index)(0, 0).real();
        expect += double(p.dim) * double(p.dim) / (gamma * gamma);
    }
    expect *= 0.25 / 64.0;  // eps^2 / n
    EstimatorConfig cfg3{3.0, 1.0, 2.0, 6.5};
    const auto r3 = mc_risk(truth3, hb, 64, 0.5, cfg3, 1200, Rng(313), 2);
    CHECK(std::abs(r3.mean_risk - expect) < 4.0 * r3.std_error);
}

TEST_CASE("deconvolution is unbiased coefficient by coefficient") {
    const auto h = polydecay_density(1.0, 8);
    auto truth = zero_coefficients(t1, 5.0);
    truth.at({0, 0})(0, 0) = Complex(0.4, 0.0);
    truth.at({1, 0})(0, 0) = Complex(0.5, -0.3);
    truth.at({-1, 0})(0, 0) = Complex(0.5, 0.3);
    truth.at({2, 0})(0, 0) = Complex(-0.2, 0.1);

    const int reps = 400;
    const Rng master(317);
    std::vector<std::vector<Complex>> samples(truth.size());
    for (int r = 0; r < reps; ++r) {
        const auto obs = simulate_dataset(truth, h, 200, 0.5, master.substream(r));
        const auto est = deconvolve_estimate(obs, h, 5.0);
        for (std::size_t k = 0; k < est.size(); ++k) samples[k].push_back(est.mats[k](0, 0));
    }
    for (std::size_t k = 0; k < truth.size(); ++k) {
        Complex mean = 0.0;
        for (const auto& v : samples[k]) mean += v;
        mean /= double(reps);
        double var = 0.0;
        for (const auto& v : samples[k]) var += std::norm(v - mean);
        var /= double(reps - 1);
        const double se = std::sqrt(var / reps);
        CHECK(std::abs(mean - truth.mats[k](0, 0)) < 4.0 * se + 1e-12);
    }
}

TEST_CASE("empirically optimal truncation is near the grid minimum") {
    const auto h = polydecay_density(1.0, 8);
    auto truth = zero_coefficients(t1, 26.0);
    for (std::size_t k = 0; k < truth.size(); ++k) {
        const int l = truth.irreps[k].index[0];
        truth.mats[k](0, 0) = l == 0 ? 0.8 : std::pow(double(std::abs(l)), -3.5);
    }
    const Rng master(331);
    double best_risk = 1e300;
    double best_sum = 1e300;
    double risk_at_best_sum = 0.0;
    for (int T = 1; T <= 12; ++T) {
        EstimatorConfig cfg{3.0, 1.0, 2.0, double(T)};
        const auto r = mc_risk(truth, h, 400, 0.5, cfg, 200, master.substream(T), 2);
        best_risk = std::min(best_risk, r.mean_risk);
        const double split_sum = r.bias_sq + r.variance_term * 200.0 / 199.0 + r.tail_term;
        if (split_sum < best_sum) {
            best_sum = split_sum;
            risk_at_best_sum = r.mean_risk;
        }
    }
    CHECK(risk_at_best_sum <= 1.05 * best_risk);
}

TEST_CASE("Assouad family on a small torus annulus") {
    // D = 4: annulus [4, 8) holds l = +-2 only
    const double D = 4.0, s = 3.0, A = 2.0;
    const double kappa = assouad_kappa_max(t1, D, s, A);
    const auto family = assouad_family_enumerate(t1, D, s, kappa);
    CHECK(family.size() == 4);  // 2^{sum d^2} = 2^2
    const double mu = assouad_mu(kappa, D, s, 1);
    for (const auto& member : family) {
        CHECK(std::abs(l2_norm_sq(member.f) - mu * 2.0) < 1e-10);
        CHECK(sobolev_norm_sq(member.f, s) <= A * A + 1e-12);
        CHECK(member.signs.size() == 2);
        for (int v : member.signs) CHECK(std::abs(v) == 1);
    }
    // distinct members
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            CHECK(testsupport::max_entry_diff(family[i].f, family[j].f) > 0.0);
}

TEST_CASE("Assouad family on SO(3) and the empty annulus") {
    const double s = 3.0, A = 2.0;
    // D = 2: annulus [2,4) holds l = 1 (d = 3): 2^9 members
    const double kappa = assouad_kappa_max(so3, 2.0, s, A);
    const auto family = assouad_family_enumerate(so3, 2.0, s, kappa);
    CHECK(family.size() == 512);
    const double mu = assouad_mu(kappa, 2.0, s, 3);
    CHECK(std::abs(l2_norm_sq(family[0].f) - mu * 9.0) < 1e-10);
    for (const auto& member : {family[0], family[100], family[511]})
        CHECK(sobolev_norm_sq(member.f, s) <= A * A + 1e-12);

    CHECK_THROWS_AS(assouad_family_enumerate(so3, 3.0, s, 1.0), ConfigError);

    // sampled members obey the same norms
    Rng rng(337);
    const auto sampled = assouad_family_sample(so3, 2.0, s, kappa, 8, rng);
    CHECK(sampled.size() == 8);
    for (const auto& member : sampled)
        CHECK(std::abs(l2_norm_sq(member.f) - mu * 9.0) < 1e-10);
}

TEST_CASE("estimator risk over the Assouad family stays above the packing level") {
    const auto h = polydecay_density(1.0, 8);
    const double s = 3.0, A = 2.0;
    Rng rng(341);
    double lo = 1e300, hi = 0.0;
    // n = 128 gives D = 2, whose annulus [2,4) holds no torus eigenvalue
    for (std::int64_t n : {256, 512, 1024, 2048, 4096}) {
        const double D = bandwidth_T(n, s, 1.0, 1);
        const double kappa = assouad_kappa_max(t1, D, s, A);
        const double mu = assouad_mu(kappa, D, s, 1);
        const auto [ann_count, sum_d2] = spectral_count(t1, 2.0 * D);
        const auto [in_count, in_d2] = spectral_count(t1, D);
        const double packing = mu * double(sum_d2 - in_d2);
        auto members = assouad_family_sample(t1, D, s, kappa, 4, rng);
        double avg = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            EstimatorConfig cfg{s, 1.0, A, D};
            const auto r = mc_risk(members[i].f, h, static_cast<int>(n), 1.0, cfg, 16,
                                   rng.substream(i), 2);
            avg += r.mean_risk;
        }
        avg /= double(members.size());
        const double ratio = avg / packing;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(lo >= 1.0);      // the family sits wholly beyond the cutoff
    CHECK(hi / lo < 25.0);  // and the ratio stays of one order across n
}
