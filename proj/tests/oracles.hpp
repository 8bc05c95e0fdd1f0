#pragma once

// Slow, independent reference computations used as test oracles.

#include "cfnl/boolfn.hpp"
#include "cfnl/gf2n.hpp"
#include "cfnl/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

using cfnl::cplx;

inline unsigned degree(std::uint64_t p) { return p ? 63u - std::countl_zero(p) : 0u; }

inline std::uint64_t poly_rem(std::uint64_t a, std::uint64_t m) {
    const unsigned dm = degree(m);
    while (a && degree(a) >= dm) a ^= m << (degree(a) - dm);
    return a;
}

/// Trial division by every polynomial of degree 1..n/2.
inline bool irreducible(std::uint64_t p) {
    const unsigned n = degree(p);
    if (n == 0) return false;
    for (std::uint64_t d = 2; degree(d) <= n / 2; ++d)
        if (poly_rem(p, d) == 0) return false;
    return true;
}

/// Shift-and-add product mod m.
inline std::uint32_t mul(std::uint64_t m, std::uint32_t a, std::uint32_t b) {
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < 32; ++i)
        if (b >> i & 1u) acc ^= std::uint64_t{a} << i;
    return static_cast<std::uint32_t>(poly_rem(acc, m));
}

inline std::uint64_t order(std::uint64_t m, std::uint32_t a) {
    std::uint32_t x = a;
    std::uint64_t k = 1;
    while (x != 1) {
        x = mul(m, x, a);
        ++k;
    }
    return k;
}

/// Tr(a) = a + a^2 + ... + a^{2^{n-1}}.
inline int trace(std::uint64_t m, std::uint32_t a) {
    const unsigned n = degree(m);
    std::uint32_t s = 0, x = a;
    for (unsigned i = 0; i < n; ++i) {
        s ^= x;
        x = mul(m, x, x);
    }
    return static_cast<int>(s & 1u);
}

/// coeffs[lambda] = sum_x (-1)^{f(x) + Tr(lambda x)} by the double sum.
inline std::vector<std::int64_t> walsh(const cfnl::boolfn::TruthTable& t, std::uint64_t m) {
    const std::uint32_t q = static_cast<std::uint32_t>(t.size());
    std::vector<std::int64_t> w(q, 0);
    for (std::uint32_t l = 0; l < q; ++l)
        for (std::uint32_t x = 0; x < q; ++x)
            w[l] += ((t.values[x] ^ trace(m, mul(m, l, x))) & 1) ? -1 : 1;
    return w;
}

/// min Hamming distance to u.x + c over all u, c.
inline std::int64_t affine_distance(const cfnl::boolfn::TruthTable& t) {
    const std::uint32_t q = static_cast<std::uint32_t>(t.size());
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t u = 0; u < q; ++u) {
        std::int64_t d = 0;
        for (std::uint32_t x = 0; x < q; ++x) d += t.values[x] != (std::popcount(u & x) & 1);
        best = std::min({best, d, static_cast<std::int64_t>(q) - d});
    }
    return best;
}

/// out[k] = sum_j in[j] exp(sign 2 pi i jk / N).
inline std::vector<cplx> dft(const std::vector<cplx>& in, int sign) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s += in[j] * std::polar(1.0, sign * 2.0 * cfnl::pi * static_cast<double>((j * k) % n) / n);
        out[k] = s;
    }
    return out;
}

/// Best total over every permutation; w is row-major n x n.
inline double best_permutation(const std::vector<double>& w, std::size_t n, bool maximize) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    double best = maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    do {
        double s = 0;
        for (std::size_t r = 0; r < n; ++r) s += w[r * n + p[r]];
        best = maximize ? std::max(best, s) : std::min(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

/// sup over grid points x = k step of |A([0,x))/N - x| and |A([0,x])/N - x|.
inline double grid_star_discrepancy(const std::vector<double>& pts, double step) {
    std::vector<double> s = pts;
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double best = 0;
    for (double x = 0; x <= 1.0 + 1e-12; x += step) {
        const double open = std::lower_bound(s.begin(), s.end(), x) - s.begin();
        const double closed = std::upper_bound(s.begin(), s.end(), x) - s.begin();
        best = std::max({best, std::abs(open / n - x), std::abs(closed / n - x)});
    }
    return best;
}

/// int_{2/3}^{1} 1/(2cos(pi x/2)) - 1/(pi(1-x)) dx from the antiderivative
/// (1/pi)(ln tan(pi t/4) - ln t) in t = 1 - x.
inline double integral_antiderivative() {
    const double t = 1.0 / 3.0;
    const double at_zero = std::log(cfnl::pi / 4.0) / cfnl::pi;  // limit t -> 0
    return (std::log(std::tan(cfnl::pi * t / 4.0)) - std::log(t)) / cfnl::pi - at_zero;
}

}  // namespace oracle
