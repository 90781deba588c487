#include "liedeconv/experiment.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "liedeconv/serialize.hpp"

namespace liedeconv {

namespace {

FourierCoefficients truth_shape(const GroupSpec& group, const TruthSpec& spec) {
    const int band = spec.band;
    double cutoff = spec.cutoff;
    if (cutoff <= 0.0) {
        cutoff = group.kind == GroupKind::SO3 ? double(band) * (band + 1) + 1.0
                                              : double(band) * band + 1.0;
    }
    FourierCoefficients c = zero_coefficients(group, cutoff);
    auto set_torus = [&](int l, double v) {
        c.at({l, 0})(0, 0) = v;
        if (l != 0) c.at({-l, 0})(0, 0) = v;
    };
    if (spec.name == "zero") {
        return c;
    } else if (spec.name == "single_mode") {
        if (group.kind != GroupKind::Torus1) throw ConfigError("single_mode is a torus1 truth");
        c.at({1, 0})(0, 0) = 1.0;
    } else if (spec.name == "sobolev_worst") {
        if (group.kind != GroupKind::Torus1) throw ConfigError("sobolev_worst is a torus1 truth");
        set_torus(0, 1.0);
        for (int l = 1; l <= band; ++l) set_torus(l, std::pow(double(l), -3.5));
    } else if (spec.name == "smooth_bump") {
        if (group.kind != GroupKind::Torus1) throw ConfigError("smooth_bump is a torus1 truth");
        set_torus(0, 1.0);
        for (int l = 1; l <= band; ++l) set_torus(l, std::exp(-double(l)));
    } else if (spec.name == "rate_mix") {
        if (group.kind != GroupKind::Torus1) throw ConfigError("rate_mix is a torus1 truth");
        set_torus(0, 0.3);
        set_torus(1, 0.4);
        set_torus(4, 0.026);
    } else if (spec.name == "so3_smooth") {
        if (group.kind != GroupKind::SO3) throw ConfigError("so3_smooth is an SO(3) truth");
        for (std::size_t k = 0; k < c.irreps.size(); ++k) {
            const int l = c.irreps[k].index[0];
            const int d = c.irreps[k].dim;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    c.mats[k](i, j) = std::exp(-double(l)) / (1.0 + i + j);
        }
    } else {
        throw ConfigError("unknown truth '" + spec.name + "'");
    }
    return c;
}

}  // namespace

FourierCoefficients make_truth(const GroupSpec& group, const TruthSpec& spec, double s, double A) {
    FourierCoefficients c = truth_shape(group, spec);
    const double norm = sobolev_norm_sq(c, s);
    if (norm == 0.0) return c;  // "zero" cannot sit on a sphere
    const double scale = A / std::sqrt(norm);
    for (auto& m : c.mats) m *= scale;
    return c;
}

void ExperimentConfig::validate() const {
    if (n_grid.empty()) throw ConfigError("n_grid must not be empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) throw ConfigError("n_grid entries must be >= 2");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw ConfigError("n_grid must be strictly increasing");
    }
    if (replicates < 8) throw ConfigError("need at least 8 replicates");
    if (epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    EstimatorConfig ec{s, nu, A, std::nullopt};
    ec.validate(group.dim);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        ExperimentConfig cfg;
        cfg.group = parse_group(j.at("group").get<std::string>());
        const auto& t = j.at("truth");
        cfg.truth.name = t.at("name").get<std::string>();
        if (t.contains("band")) cfg.truth.band = t.at("band").get<int>();
        if (t.contains("cutoff")) cfg.truth.cutoff = t.at("cutoff").get<double>();
        const auto& d = j.at("density");
        cfg.density.name = d.at("name").get<std::string>();
        if (d.contains("a")) cfg.density.a = d.at("a").get<double>();
        if (d.contains("nu")) cfg.density.nu = d.at("nu").get<double>();
        if (d.contains("band")) cfg.density.band = d.at("band").get<int>();
        if (d.contains("b")) cfg.density.b = d.at("b").get<double>();
        if (d.contains("degree")) cfg.density.degree = d.at("degree").get<int>();
        if (d.contains("cutoff")) cfg.density.cutoff = d.at("cutoff").get<double>();
        cfg.epsilon = j.at("epsilon").get<double>();
        cfg.s = j.at("s").get<double>();
        cfg.nu = j.at("nu").get<double>();
        cfg.A = j.at("A").get<double>();
        cfg.n_grid = j.at("n_grid").get<std::vector<std::int64_t>>();
        cfg.replicates = j.at("replicates").get<int>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad experiment config: ") + e.what());
    }
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    JsonWriter w;
    w.begin_object();
    w.key("group").value(cfg.group.name());
    w.key("truth").begin_object();
    w.key("name").value(cfg.truth.name);
    w.key("band").value(cfg.truth.band);
    w.key("cutoff").value(cfg.truth.cutoff);
    w.end_object();
    w.key("density").begin_object();
    w.key("name").value(cfg.density.name);
    w.key("a").value(cfg.density.a);
    w.key("nu").value(cfg.density.nu);
    w.key("band").value(cfg.density.band);
    w.key("b").value(cfg.density.b);
    w.key("degree").value(cfg.density.degree);
    w.key("cutoff").value(cfg.density.cutoff);
    w.end_object();
    w.key("epsilon").value(cfg.epsilon);
    w.key("s").value(cfg.s);
    w.key("nu").value(cfg.nu);
    w.key("A").value(cfg.A);
    w.key("n_grid").begin_array();
    for (auto n : cfg.n_grid) w.value(n);
    w.end_array();
    w.key("replicates").value(cfg.replicates);
    w.key("seed").value(cfg.seed);
    w.key("output").value(cfg.output);
    w.key("threads").value(cfg.threads);
    w.end_object();
    return w.finish();
}

std::pair<double, double> fit_loglog_slope(
    const std::vector<std::tuple<std::int64_t, double, double>>& points) {
    if (points.size() < 2) throw ConfigError("slope fit needs at least 2 points");
    std::vector<double> x, y, w;
    bool uniform = false;
    for (const auto& [n, risk, se] : points) {
        if (!(risk > 0.0)) throw ConfigError("slope fit needs positive risks");
        if (se <= 0.0) uniform = true;
    }
    for (const auto& [n, risk, se] : points) {
        x.push_back(std::log(double(n)));
        y.push_back(std::log(risk));
        w.push_back(uniform ? 1.0 : (risk / se) * (risk / se));
    }
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw ConfigError("slope fit needs at least 2 distinct n");
    const double slope = sxy / sxx;
    double stderr_ = 0.0;
    if (points.size() > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - my - slope * (x[i] - mx);
            rss += w[i] * r * r;
        }
        stderr_ = std::sqrt(rss / double(points.size() - 2) / sxx);
    }
    return {slope, stderr_};
}

void fit_table_slope(RiskTable& table) {
    table.has_slope = false;
    if (table.rows.size() < 2) return;
    std::vector<std::tuple<std::int64_t, double, double>> pts;
    for (const auto& r : table.rows) pts.emplace_back(r.n, r.est.mean_risk, r.est.std_error);
    const auto [slope, se] = fit_loglog_slope(pts);
    table.fitted_slope = slope;
    table.slope_stderr = se;
    table.has_slope = true;
}

RiskTable run_rate_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const DeformationDensity h = make_density(cfg.group, cfg.density);

    RiskTable table;
    table.nu_nominal = cfg.nu;
    const SmoothnessProfile prof = smoothness_profile(h.coeffs);
    table.nu_hat = prof.nu_hat;
    table.supersmooth = prof.supersmooth;
    table.nu_consistent = std::abs(prof.nu_hat - cfg.nu) <= 0.15;
    table.nu_used = table.nu_consistent ? cfg.nu : prof.nu_hat;
    if (!table.nu_consistent)
        std::cerr << "warning: nominal nu=" << cfg.nu << " disagrees with profiled nu_hat="
                  << prof.nu_hat << "; using nu_hat for the bandwidth rule\n";

    const FourierCoefficients truth = make_truth(cfg.group, cfg.truth, cfg.s, cfg.A);
    const Rng master(cfg.seed);
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        const std::int64_t n = cfg.n_grid[i];
        const double T = bandwidth_T(n, cfg.s, table.nu_used, cfg.group.dim);
        if (h.coeffs.cutoff < T)
            throw ConfigError("density band too small for bandwidth T=" + format_double(T) +
                              " at n=" + std::to_string(n));
        EstimatorConfig ec{cfg.s, table.nu_used, cfg.A, T};
        RiskRow row;
        row.n = n;
        row.T = T;
        try {
            row.est = mc_risk(truth, h, static_cast<int>(n), cfg.epsilon, ec, cfg.replicates,
                              master.substream(i), cfg.threads);
        } catch (const NumericalRefusal& e) {
            throw NumericalRefusal(std::string(e.what()) + " (n=" + std::to_string(n) + ")");
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " (n=" + std::to_string(n) + ")");
        }
        table.rows.push_back(row);
    }
    table.theoretical_slope = -2.0 * cfg.s / (2.0 * cfg.s + 2.0 * table.nu_used + cfg.group.dim);
    fit_table_slope(table);
    return table;
}

std::string risk_table_csv(const RiskTable& table) {
    std::string out = "n,T,mean_risk,std_error,bias_sq,variance_term,tail_term\n";
    for (const auto& r : table.rows) {
        out += std::to_string(r.n) + "," + format_double(r.T) + "," +
               format_double(r.est.mean_risk) + "," + format_double(r.est.std_error) + "," +
               format_double(r.est.bias_sq) + "," + format_double(r.est.variance_term) + "," +
               format_double(r.est.tail_term) + "\n";
    }
    return out;
}

std::string risk_table_json(const RiskTable& table, const ExperimentConfig& cfg) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(std::int64_t(1));
    w.key("version").value(std::string(kVersion));
    w.key("config").raw(experiment_config_to_json(cfg));
    w.key("nu_profile").begin_object();
    w.key("nominal").value(table.nu_nominal);
    w.key("nu_hat").value(table.nu_hat);
    w.key("used").value(table.nu_used);
    w.key("consistent").value(table.nu_consistent);
    w.key("supersmooth").value(table.supersmooth);
    w.end_object();
    w.key("rows").begin_array();
    for (const auto& r : table.rows) {
        w.begin_object();
        w.key("n").value(r.n);
        w.key("T").value(r.T);
        w.key("mean_risk").value(r.est.mean_risk);
        w.key("std_error").value(r.est.std_error);
        w.key("bias_sq").value(r.est.bias_sq);
        w.key("variance_term").value(r.est.variance_term);
        w.key("tail_term").value(r.est.tail_term);
        w.key("replicates").value(r.est.replicates);
        w.end_object();
    }
    w.end_array();
    w.key("theoretical_slope").value(table.theoretical_slope);
    w.key("fitted_slope");
    if (table.has_slope)
        w.value(table.fitted_slope);
    else
        w.null();
    w.key("slope_stderr");
    if (table.has_slope)
        w.value(table.slope_stderr);
    else
        w.null();
    w.end_object();
    return w.finish();
}

}  // namespace liedeconv
