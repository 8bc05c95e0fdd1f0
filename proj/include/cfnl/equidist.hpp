#pragma once

// Star discrepancy, Erdos-Turan-Koksma evaluations and the sorted-position
// lemma, applied to arguments of Gauss sums.

#include "cfnl/charsums.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cfnl::equidist {

class UnitSequence {
public:
    /// Every point must lie in [0, 1).
    explicit UnitSequence(std::vector<double> points);

    std::span<const double> points() const { return points_; }
    std::span<const double> sorted() const { return sorted_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<double> points_;
    std::vector<double> sorted_;
};

/// sup_x |A([0,x], N)/N - x| from the order statistics.
double star_discrepancy(const UnitSequence& s);

/// |(1/N) sum_m exp(2 pi i h x_m)| for h = 1..H.
std::vector<double> weyl_sums(const UnitSequence& s, int H);

struct EtkEvaluation {
    int H = 0;
    /// C (1/H + sum_h (1/h) |weyl_h|).
    double printed_form = 0.0;
    /// 6/(H+1) + (4/pi) sum_h (1/h - 1/(H+1)) |weyl_h|; dominates the (extreme,
    /// hence also the star) discrepancy for every H.
    double rigorous = 0.0;
};

EtkEvaluation etk_bound(const UnitSequence& s, int H, double C);

struct DiscrepancyReport {
    std::size_t n_points = 0;
    double star_d = 0.0;
    double constant_c = 1.0;
    std::vector<EtkEvaluation> etk;
};

DiscrepancyReport discrepancy_report(const UnitSequence& s, std::span<const int> Hs, double C);

/// max_i |x_(i) - i/N|; never exceeds the star discrepancy.
double position_deviation(const UnitSequence& s);

/// arg(G(chi^mu) zeta^{-mu l}) / (2 pi) mod 1, mu = 1..q-2.
UnitSequence gauss_arg_sequence(const charsums::CharContext& c, const charsums::GaussTable& g,
                                std::uint32_t l);

/// floor(q^{1/4}), at least 1.
int quarter_power_h(std::uint64_t q);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

/// Maps an angle to [0, 1).
double angle_to_unit(double theta);

}  // namespace cfnl::equidist
