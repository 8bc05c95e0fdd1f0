#pragma once

// Quantitative steps of the improved nonlinearity bound: the main-term
// bounds, the constant assembly and its three ingredients, the angle lemma,
// the piecewise b_mu arrangement, the exact rearrangement optimum, and the
// per-n comparison against exact nonlinearity.

#include "cfnl/charsums.hpp"
#include "cfnl/gf2n.hpp"
#include "cfnl/numeric.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cfnl::bounds {

/// The rounded constant in the new bound.
inline constexpr double stated_constant = -0.3786;

/// (1/pi) sqrt(q) (n ln 2 + gamma + ln(8/pi)).
double prior_bound(unsigned n);
/// (sqrt(q)/pi) (ln q - 0.3786).
double new_bound(unsigned n);
/// (sqrt(q)/pi) (ln q + constant).
double bound_with_constant(unsigned n, double constant);

struct ConstantTerms {
    double neg_ln_pi = 0.0;
    double neg_half_ln_7_plus_4sqrt3 = 0.0;
    double gamma = 0.0;
    double half_pi = 0.0;
    double neg_pi_over_36 = 0.0;
    double neg_sqrt3_over_12 = 0.0;
    double one_sixth = 0.0;

    double total() const;
};

ConstantTerms constant_terms();

/// -ln pi - ln(7+4 sqrt3)/2 + gamma + pi/2 - pi/36 - sqrt3/12 + 1/6.
double assemble_constant();

/// 1/(2cos(pi x/2)) - 1/(pi(1-x)), continuous on [2/3, 1] with value 0 at 1.
double integrand(double x);

struct IntegralStep {
    double numeric = 0.0;
    double error_estimate = 0.0;
    /// (ln2 - ln pi + ln3)/pi - ln(7+4 sqrt3)/(2pi), as displayed.
    double printed_closed_form = 0.0;

    double difference() const { return numeric - printed_closed_form; }
};

/// Adaptive Gauss-Kronrod quadrature of integrand over [2/3, 1].
IntegralStep integral_step();

struct HarmonicStep {
    std::uint64_t q = 0;
    /// (2/pi) sum_{mu even, 2q/3 < mu <= q-2} 1/(q - mu)
    double exact = 0.0;
    /// (ln(q/6) + gamma)/pi
    double asymptotic = 0.0;
};

HarmonicStep harmonic_step(std::uint64_t q);

/// int_{1/2}^{2/3} cos^2(pi x/2) dx = (pi + 3 sqrt3 - 6)/(12 pi).
double cos2_integral();

struct Cos2Step {
    std::uint64_t q = 0;
    std::size_t terms = 0;
    /// sum_{mu even, q/2 <= mu <= 2q/3} cos^2(pi mu/(2(q-1)))
    double exact = 0.0;
    /// (q/12)(pi + 3 sqrt3 - 6)/(12 pi), as displayed.
    double printed_form = 0.0;
    /// ((q-1)/2) (pi + 3 sqrt3 - 6)/(12 pi)
    double riemann_form = 0.0;
};

Cos2Step cos2_step(std::uint64_t q);

struct RecomputedConstant {
    double assembled = 0.0;
    /// pi (numeric integral - displayed closed form)
    double integral_shift = 0.0;
    /// -4 pi (riemann - displayed) per unit q of the cos^2 sum
    double cos2_shift = 0.0;
    double recomputed = 0.0;
};

RecomputedConstant recomputed_constant();

// --- angle lemma -----------------------------------------------------------

struct OrdreLines {
    double line1 = 0.0;  // Re(conj(h) a - conj(k) a)
    double line2 = 0.0;  // -sqrt(q) (cos(t - arg h) - cos(t - arg k)) / (2 cos(pi mu/(2(q-1))))
    double line3 = 0.0;  // -sqrt(q) sin((arg k - arg h)/2) sin(t - (arg k + arg h)/2) / cos(...)
    double sine_bound = 0.0;    // sqrt(q) |sin((arg k - arg h)/2)| / cos(...)
    double linear_bound = 0.0;  // sqrt(q) |arg k - arg h| / (2 cos(...))
    double scale = 0.0;         // sqrt(q) |a_mu|
};

/// mu even in [2, q-2]; h and k of modulus sqrt(q).
OrdreLines ordre_lines(std::uint64_t q, std::uint64_t mu, cplx h, cplx k);

struct OrdreReport {
    std::size_t samples = 0;
    /// max |line1 - line3| / scale
    double max_identity_residual = 0.0;
    /// max ||line2| - |line1|| / scale
    double max_modulus_residual = 0.0;
    /// samples where line2 has the opposite sign of line1 (beyond noise)
    std::size_t line2_sign_flips = 0;
    std::size_t line2_sign_matches = 0;
    std::size_t inequality_violations = 0;

    // Ranked pairing of sorted Gauss arguments with equally spaced k.
    std::size_t ranked_pairs = 0;
    double star_d = 0.0;
    double position_deviation = 0.0;
    /// max |line1| / (sqrt(q) 2 pi D / (2 cos)); at most 1
    double max_envelope_ratio = 0.0;
    /// max |line1| / (q^{1/4} / (2 cos)), the constant hidden in O(q^{1/4})
    double max_quarter_constant = 0.0;
};

OrdreReport lemma_ordre_check(const charsums::CharContext& c, const charsums::GaussTable& g,
                              std::size_t samples, std::uint64_t seed, std::uint32_t l = 0);

// --- piecewise arrangement ---------------------------------------------------

/// k_x = sqrt(q) exp(2 pi i x/(q-1)).
cplx k_point(std::uint64_t q, double x);

/// x with b_mu = k_x: mu/2, 3mu/2 - q/2 or 3mu/4 on the three ranges.
double b_index(std::uint64_t q, std::uint64_t mu);

struct BMuValue {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> slots;  // even mu in [2, q-2]
    std::vector<cplx> b;
    /// 2 Re sum conj(b_mu) a_mu over all even mu
    double value = 0.0;
    /// the same over 2 <= mu <= q/2, q/2 < mu <= 2q/3, 2q/3 < mu <= q-2
    double part_low = 0.0;
    double part_mid = 0.0;
    double part_high = 0.0;
};

inline constexpr std::uint64_t max_b_mu_q = std::uint64_t{1} << 16;

BMuValue b_mu_value(std::uint64_t q);

// --- rearrangement -----------------------------------------------------------

enum class Objective { all_mu, even_mu };

struct RearrangementProblem {
    std::uint64_t q = 0;
    std::uint32_t ell = 0;
    Objective objective = Objective::all_mu;
    std::vector<std::uint64_t> slots;  // mu per row
    std::vector<cplx> coefficients;    // a_mu per row
    std::vector<cplx> gauss;           // pool h_nu
    std::vector<cplx> idealized;       // k_x, x = 0..q-2
};

inline constexpr std::size_t max_rearrangement_size = 510;  // q <= 2^9

/// Slots mu = 1..q-2 (all) or even mu; pool h_nu = G(chi^nu) zeta^{-nu ell} over the same nu.
RearrangementProblem make_rearrangement_problem(const charsums::CharContext& c,
                                                const charsums::GaussTable& g, std::uint32_t ell,
                                                Objective objective);

/// Problem over explicit slot coefficients and pool.
RearrangementProblem make_rearrangement_problem(std::uint64_t q, std::vector<cplx> coefficients,
                                                std::vector<cplx> pool);

struct AssignmentSolution {
    /// sigma[row] = pool index
    std::vector<std::size_t> sigma;
    double objective = 0.0;
};

/// sum_row Re(conj(pool[sigma[row]]) coefficients[row]).
double assignment_objective(const RearrangementProblem& p, const std::vector<std::size_t>& sigma);
double identity_objective(const RearrangementProblem& p);
/// max|h| * sum |a| over the slots (sqrt(q) sum |a_mu| for Gauss pools).
double trivial_bound(const RearrangementProblem& p);

/// Exact optimum over all permutations, via the assignment solver.
AssignmentSolution rearrangement_max(const RearrangementProblem& p);

struct ExchangeStats {
    std::size_t trials = 0;
    std::size_t identity_draws = 0;  // sigma already equal to b; nothing to exchange
    std::size_t condition_held = 0;
    std::size_t condition_violated = 0;
    std::size_t decreased_when_held = 0;
    /// max |objective change - Re((b_beta - k) conj(a_beta - a_s))|
    double max_identity_residual = 0.0;
};

/// Random arrangements of the b_mu pool over the even slots, one transposition each.
ExchangeStats exchange_argument_check(std::uint64_t q, std::size_t trials, std::uint64_t seed);

// --- comparison table ----------------------------------------------------------

struct BoundsRow {
    unsigned n = 0;
    std::int64_t nonlinearity = 0;
    std::int64_t gap_exact = 0;  // 2^{n-1} - nl
    double cf_bound = 0.0;
    double prior_bound = 0.0;
    double new_bound = 0.0;
    double recomputed_bound = 0.0;
    double gap_over_sqrt_q = 0.0;  // gap / 2^{n/2}
    bool cf_valid = false;         // gap <= cf_bound
    bool within_new_bound = false;
    gf2n::Poly modulus = 0;
    std::uint32_t alpha = 0;
};

BoundsRow bounds_row(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables);

std::vector<BoundsRow> bounds_table(unsigned n_lo, unsigned n_hi,
                                    const gf2n::CacheOptions& cache = {});

}  // namespace cfnl::bounds
