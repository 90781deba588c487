#pragma once

#include <cstdio>
#include <string>

#include "liedeconv/estimator.hpp"
#include "liedeconv/simulate.hpp"

namespace liedeconv {

/// Minimal ordered JSON emitter. All floats are written with 17 significant
/// digits so that emitted reports are byte-stable and round-trip exactly.
class JsonWriter {
public:
    std::string str() const { return out_; }

    JsonWriter& begin_object() { return token("{"); }
    JsonWriter& end_object() {
        trim_comma();
        out_ += "},";
        return *this;
    }
    JsonWriter& begin_array() { return token("["); }
    JsonWriter& end_array() {
        trim_comma();
        out_ += "],";
        return *this;
    }
    JsonWriter& key(const std::string& k) {
        out_ += quote(k) + ":";
        return *this;
    }
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v) {
        out_ += std::to_string(v) + ",";
        return *this;
    }
    JsonWriter& value(int v) { return value(std::int64_t(v)); }
    JsonWriter& value(std::uint64_t v) {
        out_ += std::to_string(v) + ",";
        return *this;
    }
    JsonWriter& value(bool v) {
        out_ += (v ? "true," : "false,");
        return *this;
    }
    JsonWriter& value(const std::string& v) {
        out_ += quote(v) + ",";
        return *this;
    }
    JsonWriter& null() {
        out_ += "null,";
        return *this;
    }
    /// Splices pre-rendered JSON as one value.
    JsonWriter& raw(const std::string& json) {
        out_ += json + ",";
        return *this;
    }

    std::string finish() {
        trim_comma();
        return out_;
    }

private:
    JsonWriter& token(const char* t) {
        out_ += t;
        return *this;
    }
    void trim_comma() {
        if (!out_.empty() && out_.back() == ',') out_.pop_back();
    }
    static std::string quote(const std::string& s);
    std::string out_;
};

std::string format_double(double v);  // %.17g

std::string coefficients_to_json(const FourierCoefficients& c);
FourierCoefficients coefficients_from_json(const std::string& text);

std::string observations_to_json(const ObservationSet& obs);
ObservationSet observations_from_json(const std::string& text);

std::string risk_estimate_to_json(const RiskEstimate& r, const EstimatorConfig& config);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace liedeconv
