#include "cfnl/equidist.hpp"

#include "cfnl/error.hpp"

#include <algorithm>
#include <cmath>

namespace cfnl::equidist {

UnitSequence::UnitSequence(std::vector<double> points) : points_(std::move(points)) {
    for (double x : points_) {
        if (!(x >= 0.0 && x < 1.0))
            throw Error(ErrorKind::out_of_range, "sequence point outside [0, 1)");
    }
    sorted_ = points_;
    std::sort(sorted_.begin(), sorted_.end());
}

double star_discrepancy(const UnitSequence& s) {
    const std::size_t n = s.size();
    if (n == 0) throw Error(ErrorKind::out_of_range, "star discrepancy of an empty sequence");
    const auto xs = s.sorted();
    const double nd = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double above = static_cast<double>(i + 1) / nd - xs[i];
        const double below = xs[i] - static_cast<double>(i) / nd;
        d = std::max({d, above, below});
    }
    return d;
}

std::vector<double> weyl_sums(const UnitSequence& s, int H) {
    std::vector<double> out(static_cast<std::size_t>(std::max(H, 0)));
    const double nd = static_cast<double>(s.size());
    for (int h = 1; h <= H; ++h) {
        CompensatedComplexSum sum;
        for (double x : s.points()) {
            // Reduce h*x mod 1 before forming the angle.
            const double t = std::fmod(h * x, 1.0);
            sum.add(std::polar(1.0, 2.0 * pi * t));
        }
        out[static_cast<std::size_t>(h - 1)] = std::abs(sum.value()) / nd;
    }
    return out;
}

EtkEvaluation etk_bound(const UnitSequence& s, int H, double C) {
    if (H < 1) throw Error(ErrorKind::out_of_range, "ETK cutoff H must be >= 1");
    if (s.size() == 0) throw Error(ErrorKind::out_of_range, "ETK bound of an empty sequence");
    const auto w = weyl_sums(s, H);
    CompensatedSum printed;
    CompensatedSum rigorous;
    const double inv_h1 = 1.0 / (H + 1.0);
    for (int h = 1; h <= H; ++h) {
        printed.add(w[static_cast<std::size_t>(h - 1)] / h);
        rigorous.add((1.0 / h - inv_h1) * w[static_cast<std::size_t>(h - 1)]);
    }
    EtkEvaluation e;
    e.H = H;
    e.printed_form = C * (1.0 / H + printed.value());
    e.rigorous = 6.0 * inv_h1 + (4.0 / pi) * rigorous.value();
    return e;
}

DiscrepancyReport discrepancy_report(const UnitSequence& s, std::span<const int> Hs, double C) {
    DiscrepancyReport r;
    r.n_points = s.size();
    r.star_d = star_discrepancy(s);
    r.constant_c = C;
    for (int H : Hs) r.etk.push_back(etk_bound(s, H, C));
    return r;
}

double position_deviation(const UnitSequence& s) {
    const std::size_t n = s.size();
    if (n == 0) throw Error(ErrorKind::out_of_range, "position deviation of an empty sequence");
    const auto xs = s.sorted();
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        dev = std::max(dev, std::abs(xs[i] - static_cast<double>(i + 1) / static_cast<double>(n)));
    return dev;
}

double angle_to_unit(double theta) {
    double x = theta / (2.0 * pi);
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    return x;
}

UnitSequence gauss_arg_sequence(const charsums::CharContext& c, const charsums::GaussTable& g,
                                std::uint32_t l) {
    const std::uint64_t q = c.q();
    if (l >= q - 1) throw Error(ErrorKind::out_of_range, "l must lie in [0, q-2]");
    std::vector<double> pts;
    pts.reserve(q - 2);
    for (std::uint64_t mu = 1; mu + 1 < q; ++mu) {
        const cplx z = g.values.at(mu) * c.zeta_pow(-static_cast<std::int64_t>((mu * l) % (q - 1)));
        pts.push_back(angle_to_unit(std::arg(z)));
    }
    return UnitSequence(std::move(pts));
}

int quarter_power_h(std::uint64_t q) {
    // Integer fourth root, exact for powers of two.
    auto h = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(q), 0.25)));
    while ((h + 1) * (h + 1) * (h + 1) * (h + 1) <= q) ++h;
    while (h > 1 && h * h * h * h > q) --h;
    return static_cast<int>(std::max<std::uint64_t>(h, 1));
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) throw Error(ErrorKind::out_of_range, "slope needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double nd = static_cast<double>(n);
    return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
}

}  // namespace cfnl::equidist
