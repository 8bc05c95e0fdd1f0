#include "cfnl/numeric.hpp"

#include "cfnl/error.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cfnl {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::out_of_range: return "out_of_range";
        case ErrorKind::reducible: return "reducible";
        case ErrorKind::not_primitive: return "not_primitive";
        case ErrorKind::size_limit: return "size_limit";
        case ErrorKind::io: return "io";
        case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

cplx unit_root(std::int64_t k, std::uint64_t m) {
    const auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = k % mm;
    if (r < 0) r += mm;
    // Fold into [-m/2, m/2] so the angle stays small.
    if (2 * r > mm) r -= mm;
    const double theta = 2.0 * pi * static_cast<double>(r) / static_cast<double>(m);
    return {std::cos(theta), std::sin(theta)};
}

cplx unit_root_minus_one(std::int64_t k, std::uint64_t m) {
    const auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = k % mm;
    if (r < 0) r += mm;
    if (2 * r > mm) r -= mm;
    // e^{i t} - 1 = 2i sin(t/2) e^{i t/2}, t = 2 pi r/m with |r| <= m/2
    const double half = pi * static_cast<double>(r) / static_cast<double>(m);
    return cplx{0.0, 2.0 * std::sin(half)} * cplx{std::cos(half), std::sin(half)};
}

double canonical_angle(double theta) {
    double r = std::remainder(theta, 2.0 * pi);  // [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

double angle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * pi));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

}  // namespace cfnl
