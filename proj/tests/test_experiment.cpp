#include <doctest.h>

#include "liedeconv/experiment.hpp"

#include <cmath>

#include "liedeconv/serialize.hpp"

using namespace liedeconv;

namespace {
const GroupSpec t1(GroupKind::Torus1);

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.group = t1;
    cfg.truth.name = "sobolev_worst";
    cfg.truth.band = 8;
    cfg.density.name = "polydecay";
    cfg.density.nu = 1.0;
    cfg.density.band = 16;
    cfg.epsilon = 0.5;
    cfg.s = 3.0;
    cfg.nu = 1.0;
    cfg.A = 2.0;
    cfg.n_grid = {64, 128, 256};
    cfg.replicates = 12;
    cfg.seed = 4242;
    return cfg;
}
}  // namespace

TEST_CASE("log-log slope fitting") {
    // exact power law c n^{-2/3}
    std::vector<std::tuple<std::int64_t, double, double>> pts;
    for (std::int64_t n : {100, 200, 400, 800, 1600})
        pts.emplace_back(n, 3.7 * std::pow(double(n), -2.0 / 3.0), 0.0);
    const auto [slope, se] = fit_loglog_slope(pts);
    CHECK(std::abs(slope + 2.0 / 3.0) < 1e-12);
    CHECK(se < 1e-12);

    // constant risk fits slope zero
    std::vector<std::tuple<std::int64_t, double, double>> flat;
    for (std::int64_t n : {100, 1000, 10000}) flat.emplace_back(n, 0.25, 0.01);
    CHECK(std::abs(fit_loglog_slope(flat).first) < 1e-12);

    // nonpositive risks are refused
    std::vector<std::tuple<std::int64_t, double, double>> bad = {{10, 1.0, 0.1}, {20, 0.0, 0.1}};
    CHECK_THROWS_AS(fit_loglog_slope(bad), ConfigError);
    CHECK_THROWS_AS(fit_loglog_slope({{10, 1.0, 0.1}}), ConfigError);
}

TEST_CASE("synthetic table through the table-level fitting path") {
    RiskTable table;
    for (std::int64_t n : {128, 256, 512, 1024, 2048, 4096, 8192}) {
        RiskRow row;
        row.n = n;
        row.T = 1.0;
        row.est.mean_risk = 2.0 * std::pow(double(n), -2.0 / 3.0);
        row.est.std_error = 0.0;
        table.rows.push_back(row);
    }
    fit_table_slope(table);
    REQUIRE(table.has_slope);
    CHECK(std::abs(table.fitted_slope + 2.0 / 3.0) < 1e-12);
}

TEST_CASE("single-row tables have no slope") {
    RiskTable table;
    RiskRow row;
    row.n = 100;
    row.T = 2.0;
    row.est.mean_risk = 0.5;
    table.rows.push_back(row);
    fit_table_slope(table);
    CHECK_FALSE(table.has_slope);
    ExperimentConfig cfg = tiny_config();
    const std::string json = risk_table_json(table, cfg);
    CHECK(json.find("\"fitted_slope\":null") != std::string::npos);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = tiny_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.n_grid = {128, 128};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.n_grid = {1, 2};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_config();
    cfg.replicates = 4;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_config();
    cfg.s = 0.3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config JSON round trip") {
    const ExperimentConfig cfg = tiny_config();
    const std::string text = experiment_config_to_json(cfg);
    const ExperimentConfig back = experiment_config_from_json(text);
    CHECK(back.group == cfg.group);
    CHECK(back.truth.name == cfg.truth.name);
    CHECK(back.density.name == cfg.density.name);
    CHECK(back.density.band == cfg.density.band);
    CHECK(back.epsilon == cfg.epsilon);
    CHECK(back.n_grid == cfg.n_grid);
    CHECK(back.seed == cfg.seed);
    CHECK_THROWS_AS(experiment_config_from_json("{\"group\": \"torus1\"}"), ConfigError);
}

TEST_CASE("truth fixtures sit at the requested Sobolev radius") {
    for (const char* name : {"sobolev_worst", "smooth_bump", "single_mode", "rate_mix"}) {
        TruthSpec spec;
        spec.name = name;
        const auto truth = make_truth(t1, spec, 3.0, 2.5);
        CHECK(std::sqrt(sobolev_norm_sq(truth, 3.0)) == doctest::Approx(2.5).epsilon(1e-12));
    }
    TruthSpec z;
    z.name = "zero";
    CHECK(l2_norm_sq(make_truth(t1, z, 3.0, 2.5)) == 0.0);
    TruthSpec s3;
    s3.name = "so3_smooth";
    s3.band = 3;
    const auto truth = make_truth(GroupSpec(GroupKind::SO3), s3, 2.0, 1.5);
    CHECK(std::sqrt(sobolev_norm_sq(truth, 2.0)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("rate sweep emits a deterministic, schema-stable report") {
    ExperimentConfig cfg = tiny_config();
    cfg.threads = 1;
    const RiskTable a = run_rate_sweep(cfg);
    cfg.threads = 4;
    const RiskTable b = run_rate_sweep(cfg);

    const std::string csv_a = risk_table_csv(a);
    const std::string csv_b = risk_table_csv(b);
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("n,T,mean_risk,std_error,bias_sq,variance_term,tail_term\n", 0) == 0);
    CHECK(std::count(csv_a.begin(), csv_a.end(), '\n') == 4);  // header + 3 rows

    REQUIRE(a.has_slope);
    CHECK(a.theoretical_slope == doctest::Approx(-2.0 / 3.0));
    CHECK(a.nu_consistent);
    CHECK(a.nu_used == 1.0);

    // the decomposition identity survives the sweep
    for (const auto& row : a.rows)
        CHECK(row.est.mean_risk ==
              doctest::Approx(row.est.bias_sq + row.est.variance_term + row.est.tail_term)
                  .epsilon(1e-10));
}

TEST_CASE("nominal/profiled smoothness disagreement is flagged and resolved") {
    ExperimentConfig cfg = tiny_config();
    cfg.density.name = "flat";
    cfg.density.a = 0.2;
    cfg.density.band = 8;
    cfg.nu = 1.0;  // nominal disagrees with the flat kernel
    const RiskTable table = run_rate_sweep(cfg);
    CHECK_FALSE(table.nu_consistent);
    CHECK(table.nu_used == doctest::Approx(table.nu_hat));
    CHECK(std::abs(table.nu_hat) < 0.05);
    const std::string json = risk_table_json(table, cfg);
    CHECK(json.find("\"consistent\":false") != std::string::npos);
    CHECK(json.find("\"nominal\":1") != std::string::npos);
}

TEST_CASE("report JSON carries the version and validates structurally") {
    const ExperimentConfig cfg = tiny_config();
    RiskTable table;
    for (std::int64_t n : {64, 128}) {
        RiskRow row;
        row.n = n;
        row.T = 2.0;
        row.est.mean_risk = 1.0 / double(n);
        row.est.std_error = 0.1 / double(n);
        row.est.replicates = 12;
        table.rows.push_back(row);
    }
    fit_table_slope(table);
    const std::string json = risk_table_json(table, cfg);
    CHECK(json.find("\"schema_version\":1") != std::string::npos);
    CHECK(json.find(kVersion) != std::string::npos);
    for (const char* key :
         {"\"config\":", "\"nu_profile\":", "\"rows\":", "\"theoretical_slope\":",
          "\"fitted_slope\":", "\"slope_stderr\":", "\"mean_risk\":", "\"tail_term\":"})
        CHECK(json.find(key) != std::string::npos);
}
