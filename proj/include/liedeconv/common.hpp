#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace liedeconv {

inline constexpr const char* kVersion = "liedeconv 0.1.0";

using Complex = std::complex<double>;

/// Invalid configuration or precondition violation (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical refusal, e.g. an ill-conditioned deconvolution kernel (CLI exit code 3).
class NumericalRefusal : public std::runtime_error {
public:
    explicit NumericalRefusal(const std::string& msg) : std::runtime_error(msg) {}
};

/// File or stream failure (CLI exit code 4).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace liedeconv
