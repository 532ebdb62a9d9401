#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sectional curvature of the ambient space form.
enum class Curvature : int { Spherical = 1, Hyperbolic = -1 };

inline double sign_of(Curvature k) { return static_cast<double>(static_cast<int>(k)); }

/// Selects the OpenMP kernel or the serial reference path. Both produce
/// bit-identical results for the same inputs.
enum class Exec { Serial, Parallel };

/// Malformed arguments or violated preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that is well-formed but outside the geometric domain of the
/// operation (non-compact simplex, ideal vertex, family leaving the
/// admissible set, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what, int index = -1)
        : std::domain_error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// A computation that should always succeed reached an impossible state.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// SplitMix64 finalizer; used to derive independent per-block and
/// per-trial seeds from a master seed and a counter.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return mix64(master ^ mix64(counter + 0x632BE59BD9B4E019ull));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(master, a), b);
}

}  // namespace curvlab
