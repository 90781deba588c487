#include "liedeconv/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace liedeconv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonWriter& JsonWriter::value(double v) {
    out_ += format_double(v) + ",";
    return *this;
}

std::string JsonWriter::quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        switch (c) {
            case '"': q += "\\\""; break;
            case '\\': q += "\\\\"; break;
            case '\n': q += "\\n"; break;
            case '\t': q += "\\t"; break;
            default: q += c;
        }
    }
    q += "\"";
    return q;
}

namespace {

void append_matrix(JsonWriter& w, const Eigen::MatrixXcd& m) {
    w.key("matrix_real").begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        w.begin_array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) w.value(m(i, j).real());
        w.end_array();
    }
    w.end_array();
    w.key("matrix_imag").begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        w.begin_array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) w.value(m(i, j).imag());
        w.end_array();
    }
    w.end_array();
}

void append_coefficients_body(JsonWriter& w, const FourierCoefficients& c) {
    w.key("group").value(c.group.name());
    w.key("cutoff").value(c.cutoff);
    w.key("entries").begin_array();
    for (std::size_t k = 0; k < c.irreps.size(); ++k) {
        const auto& p = c.irreps[k];
        w.begin_object();
        if (p.kind == GroupKind::Torus2) {
            w.key("index").begin_array().value(p.index[0]).value(p.index[1]).end_array();
        } else {
            w.key("index").value(p.index[0]);
        }
        w.key("dim").value(p.dim);
        w.key("lambda").value(p.lambda);
        append_matrix(w, c.mats[k]);
        w.end_object();
    }
    w.end_array();
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& entry, int dim) {
    Eigen::MatrixXcd m(dim, dim);
    const auto& re = entry.at("matrix_real");
    const auto& im = entry.at("matrix_imag");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(i, j) = Complex(re.at(i).at(j).get<double>(), im.at(i).at(j).get<double>());
    return m;
}

FourierCoefficients coefficients_from_node(const nlohmann::json& node) {
    const GroupSpec group = parse_group(node.at("group").get<std::string>());
    FourierCoefficients c = zero_coefficients(group, node.at("cutoff").get<double>());
    for (const auto& entry : node.at("entries")) {
        std::array<int, 2> index{0, 0};
        if (entry.at("index").is_array()) {
            index[0] = entry.at("index").at(0).get<int>();
            index[1] = entry.at("index").at(1).get<int>();
        } else {
            index[0] = entry.at("index").get<int>();
        }
        const auto k = c.find(index);
        if (k < 0) throw IoError("coefficient entry outside its own cutoff");
        c.mats[static_cast<std::size_t>(k)] =
            matrix_from_json(entry, c.irreps[static_cast<std::size_t>(k)].dim);
    }
    return c;
}

}  // namespace

std::string coefficients_to_json(const FourierCoefficients& c) {
    JsonWriter w;
    w.begin_object();
    append_coefficients_body(w, c);
    w.end_object();
    return w.finish();
}

FourierCoefficients coefficients_from_json(const std::string& text) {
    try {
        return coefficients_from_node(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad coefficients JSON: ") + e.what());
    }
}

std::string observations_to_json(const ObservationSet& obs) {
    JsonWriter w;
    w.begin_object();
    w.key("n").value(obs.n);
    w.key("epsilon").value(obs.epsilon);
    w.key("seed").value(obs.seed);
    w.key("density_name").value(obs.density_name);
    w.key("truth_name").value(obs.truth_name);
    w.key("observations").begin_array();
    FourierCoefficients tmp;
    tmp.group = obs.group;
    tmp.cutoff = obs.cutoff;
    tmp.irreps = obs.irreps;
    for (int m = 0; m < obs.n; ++m) {
        tmp.mats = obs.coeffs[static_cast<std::size_t>(m)];
        w.begin_object();
        append_coefficients_body(w, tmp);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.finish();
}

ObservationSet observations_from_json(const std::string& text) {
    try {
        const auto node = nlohmann::json::parse(text);
        ObservationSet obs;
        obs.n = node.at("n").get<int>();
        obs.epsilon = node.at("epsilon").get<double>();
        obs.seed = node.at("seed").get<std::uint64_t>();
        obs.density_name = node.at("density_name").get<std::string>();
        obs.truth_name = node.at("truth_name").get<std::string>();
        const auto& arr = node.at("observations");
        if (arr.empty() || static_cast<int>(arr.size()) != obs.n)
            throw IoError("observation count does not match header n");
        for (const auto& o : arr) {
            FourierCoefficients c = coefficients_from_node(o);
            if (obs.coeffs.empty()) {
                obs.group = c.group;
                obs.cutoff = c.cutoff;
                obs.irreps = c.irreps;
            } else if (c.group != obs.group || c.cutoff != obs.cutoff) {
                throw IoError("observations disagree about group or cutoff");
            }
            obs.coeffs.push_back(std::move(c.mats));
        }
        return obs;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad observations JSON: ") + e.what());
    }
}

std::string risk_estimate_to_json(const RiskEstimate& r, const EstimatorConfig& config) {
    JsonWriter w;
    w.begin_object();
    w.key("mean_risk").value(r.mean_risk);
    w.key("std_error").value(r.std_error);
    w.key("replicates").value(r.replicates);
    w.key("bias_sq").value(r.bias_sq);
    w.key("variance_term").value(r.variance_term);
    w.key("tail_term").value(r.tail_term);
    w.key("config").begin_object();
    w.key("s").value(config.s);
    w.key("nu").value(config.nu);
    w.key("A").value(config.A);
    w.key("cutoff_override");
    if (config.cutoff_override)
        w.value(*config.cutoff_override);
    else
        w.null();
    w.end_object();
    w.end_object();
    return w.finish();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace liedeconv
