#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

namespace cfnl {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// exp(2 pi i k / m), with k reduced to [0, m) before the angle is formed.
cplx unit_root(std::int64_t k, std::uint64_t m);

/// exp(2 pi i k / m) - 1 without cancellation for k near 0 mod m.
cplx unit_root_minus_one(std::int64_t k, std::uint64_t m);

/// Reduces an angle to the canonical branch (-pi, pi].
double canonical_angle(double theta);

/// Distance between two angles on the circle, in [0, pi].
double angle_distance(double a, double b);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// Platform-independent draws from mt19937_64 (the distributions in <random>
// are implementation-defined, which would break byte-identical reports).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

}  // namespace cfnl
