#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace turnstile {

using cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Tight-binding conventions used throughout: hopping amplitude -1 (half
// bandwidth 2), lattice spacing 1, e = hbar = 1. Single-particle band
// [-2, 2], two-particle band [-4, 4].

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct BandEdgeError : std::runtime_error {
  explicit BandEdgeError(const std::string& what) : std::runtime_error(what) {}
};

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

struct NormDriftError : std::runtime_error {
  explicit NormDriftError(const std::string& what) : std::runtime_error(what) {}
};

enum class SignPairing { printed, alternate };
enum class EvanescentBranch { keep, drop };
enum class DistributionMode { finite_T, zero_T };

}  // namespace turnstile
