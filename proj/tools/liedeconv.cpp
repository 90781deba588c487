// Command-line harness: rate sweeps, kernel profiling, Weyl-count checks,
// dataset simulation and one-shot deconvolution, with CSV/JSON reports.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liedeconv/experiment.hpp"
#include "liedeconv/serialize.hpp"

using namespace liedeconv;

namespace {

DensitySpec density_spec_from_flags(const std::string& name, double a, double nu, int band,
                                    double b, int degree, double cutoff) {
    DensitySpec spec;
    spec.name = name;
    spec.a = a;
    spec.nu = nu;
    spec.band = band;
    spec.b = b;
    spec.degree = degree;
    spec.cutoff = cutoff;
    return spec;
}

int run_rate_sweep_cmd(const std::string& config_path, int threads_override) {
    ExperimentConfig cfg = experiment_config_from_json(read_file(config_path));
    if (threads_override > 0) cfg.threads = threads_override;
    const RiskTable table = run_rate_sweep(cfg);
    const std::string csv = risk_table_csv(table);
    const std::string json = risk_table_json(table, cfg);
    if (cfg.output.empty()) {
        std::cout << csv;
    } else {
        write_file(cfg.output + ".csv", csv);
        write_file(cfg.output + ".json", json);
        std::cout << "wrote " << cfg.output << ".csv and " << cfg.output << ".json\n";
    }
    if (table.has_slope)
        std::cout << "fitted slope " << format_double(table.fitted_slope) << " (theoretical "
                  << format_double(table.theoretical_slope) << ")\n";
    return 0;
}

int kernel_profile_cmd(const GroupSpec& group, const DensitySpec& spec, double cutoff) {
    const DeformationDensity h = make_density(group, spec);
    const double effective = cutoff > 0.0 ? std::min(cutoff, h.coeffs.cutoff) : h.coeffs.cutoff;
    const SmoothnessProfile prof = smoothness_profile(restrict_cutoff(h.coeffs, effective));
    JsonWriter w;
    w.begin_object();
    w.key("density").value(h.name);
    w.key("group").value(group.name());
    w.key("cutoff").value(effective);
    w.key("nu_hat").value(prof.nu_hat);
    w.key("supersmooth").value(prof.supersmooth);
    w.key("irreps").begin_array();
    for (const auto& row : prof.rows) {
        w.begin_object();
        w.key("label").value(row.irrep.label());
        w.key("lambda").value(row.irrep.lambda);
        w.key("op_norm_sq").value(row.op_norm_sq);
        w.key("inv_op_norm_sq").value(row.inv_op_norm_sq);
        w.key("condition").value(row.condition);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    std::cout << w.finish() << "\n";
    return 0;
}

int weyl_check_cmd(const GroupSpec& group, double tmax) {
    if (tmax <= 10.0) throw ConfigError("--tmax must exceed 10");
    std::vector<double> ts;
    for (double t = tmax; t > 10.0 && ts.size() < 4; t /= 10.0) ts.insert(ts.begin(), t);
    std::vector<double> xs, ys;
    JsonWriter w;
    w.begin_object();
    w.key("group").value(group.name());
    w.key("rows").begin_array();
    for (double t : ts) {
        const auto [count, sum] = spectral_count(group, t);
        w.begin_object();
        w.key("T").value(t);
        w.key("count").value(count);
        w.key("sum_dpi_sq").value(sum);
        w.end_object();
        xs.push_back(std::log(t));
        ys.push_back(std::log(double(sum)));
    }
    w.end_array();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    w.key("fitted_exponent").value(sxy / sxx);
    w.key("expected_exponent").value(0.5 * group.dim);
    w.end_object();
    std::cout << w.finish() << "\n";
    return 0;
}

int simulate_cmd(const std::string& config_path, const std::string& out_path, std::int64_t n_override) {
    const auto j = read_file(config_path);
    ExperimentConfig cfg = experiment_config_from_json(j);
    const DeformationDensity h = make_density(cfg.group, cfg.density);
    const FourierCoefficients truth = make_truth(cfg.group, cfg.truth, cfg.s, cfg.A);
    const std::int64_t n = n_override > 0 ? n_override : cfg.n_grid.front();
    ObservationSet obs = simulate_dataset(truth, h, static_cast<int>(n), cfg.epsilon,
                                          Rng(cfg.seed), cfg.threads, cfg.truth.name);
    obs.seed = cfg.seed;
    write_file(out_path, observations_to_json(obs));
    std::cout << "wrote " << out_path << " (" << obs.n << " observations, "
              << obs.irreps.size() << " irreps)\n";
    return 0;
}

int estimate_cmd(const std::string& obs_path, const GroupSpec& group, const DensitySpec& spec,
                 double T, const std::string& out_path) {
    const ObservationSet obs = observations_from_json(read_file(obs_path));
    if (obs.group != group)
        throw ConfigError("observations live on " + obs.group.name() + ", not " + group.name());
    const DeformationDensity h = make_density(group, spec);
    const FourierCoefficients est = deconvolve_estimate(obs, h, T);
    const std::string json = coefficients_to_json(est);
    if (out_path.empty())
        std::cout << json << "\n";
    else {
        write_file(out_path, json);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier deconvolution on compact groups"};
    app.require_subcommand(1);

    std::string config_path, obs_path, out_path, density_name = "polydecay", group_name = "torus1";
    double flag_a = 0.2, flag_nu = 1.0, flag_b = 0.6, flag_cutoff = 0.0, flag_T = 0.0;
    double flag_dcutoff = 30.0;
    int flag_band = 8, flag_degree = 2, threads = 0;
    double tmax = 1e5;
    std::int64_t n_override = 0;

    app.add_option("--threads", threads, "worker threads (results do not depend on this)");

    auto* sweep = app.add_subcommand("rate-sweep", "Monte-Carlo risk over an n grid");
    sweep->add_option("config", config_path, "experiment config JSON")->required();

    auto* profile = app.add_subcommand("kernel-profile", "operator norms and fitted smoothness");
    profile->add_option("density", density_name, "uniform|cosine|polydecay|flat|so3bump")->required();
    profile->add_option("--group", group_name, "torus1|torus2|so3");
    profile->add_option("--cutoff", flag_cutoff, "lambda cutoff for the profile");
    profile->add_option("--a", flag_a, "cosine/flat weight");
    profile->add_option("--nu", flag_nu, "polydecay order");
    profile->add_option("--band", flag_band, "torus density band");
    profile->add_option("--b", flag_b, "so3 bump concentration");
    profile->add_option("--degree", flag_degree, "so3 bump degree");

    auto* weyl = app.add_subcommand("weyl-check", "spectral counting over a T ladder");
    weyl->add_option("group", group_name, "torus1|torus2|so3")->required();
    weyl->add_option("--tmax", tmax, "largest T (ladder descends by 10x)");

    auto* sim = app.add_subcommand("simulate", "draw a dataset and write it as JSON");
    sim->add_option("config", config_path, "experiment config JSON")->required();
    sim->add_option("--out", out_path, "output path")->required();
    sim->add_option("--n", n_override, "observation count (default: first n_grid entry)");

    auto* est = app.add_subcommand("estimate", "deconvolve a stored dataset");
    est->add_option("--obs", obs_path, "observations JSON")->required();
    est->add_option("--density", density_name, "kernel name")->required();
    est->add_option("--group", group_name, "torus1|torus2|so3");
    est->add_option("--T", flag_T, "spectral cutoff")->required();
    est->add_option("--a", flag_a, "cosine/flat weight");
    est->add_option("--nu", flag_nu, "polydecay order");
    est->add_option("--band", flag_band, "torus density band");
    est->add_option("--b", flag_b, "so3 bump concentration");
    est->add_option("--degree", flag_degree, "so3 bump degree");
    est->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const DensitySpec spec = density_spec_from_flags(density_name, flag_a, flag_nu, flag_band,
                                                         flag_b, flag_degree, flag_dcutoff);
        if (sweep->parsed()) return run_rate_sweep_cmd(config_path, threads);
        if (profile->parsed()) return kernel_profile_cmd(parse_group(group_name), spec, flag_cutoff);
        if (weyl->parsed()) return weyl_check_cmd(parse_group(group_name), tmax);
        if (sim->parsed()) return simulate_cmd(config_path, out_path, n_override);
        if (est->parsed())
            return estimate_cmd(obs_path, parse_group(group_name), spec, flag_T, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalRefusal& e) {
        std::cerr << "numerical refusal: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
