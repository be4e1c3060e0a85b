// core.hpp
// Shared scalar aliases, error types and numeric defaults for noonmap.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace noonmap {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex I{0.0, 1.0};

// Default truncation leakage accepted when an analytic state is cut at n_cut.
inline constexpr double default_leakage_tolerance = 1e-9;
// Probability a beam splitter may push outside the (n_cut+1)^2 grid.
inline constexpr double default_truncation_loss_tolerance = 1e-12;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A Fock index or anti-diagonal falls outside the representable grid.
class CutoffError : public Error {
public:
    using Error::Error;
};

// An analytic state carries too much weight beyond the cutoff.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int required_cutoff)
        : Error(what), required_cutoff_(required_cutoff) {}
    int required_cutoff() const noexcept { return required_cutoff_; }

private:
    int required_cutoff_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Input lies entirely in the kernel of a transform.
class KernelError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class UnsupportedInputError : public Error {
public:
    using Error::Error;
};

// e^{i*pi/2*k} computed exactly for integer k.
inline complex i_pow(long long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace noonmap
