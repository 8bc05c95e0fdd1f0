#include "cfnl/bounds.hpp"

#include "cfnl/assignment.hpp"
#include "cfnl/boolfn.hpp"
#include "cfnl/equidist.hpp"
#include "cfnl/error.hpp"
#include "cfnl/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

namespace cfnl::bounds {

namespace {

const double sqrt3 = std::sqrt(3.0);

void require_n(unsigned n) {
    if (n < 2) throw Error(ErrorKind::out_of_range, "bounds need n >= 2");
}

void require_q(std::uint64_t q, std::uint64_t min_q) {
    if (q < min_q || !std::has_single_bit(q))
        throw Error(ErrorKind::out_of_range,
                    "q must be a power of two >= " + std::to_string(min_q));
}

double half_angle(std::uint64_t q, std::uint64_t mu) {
    return pi * static_cast<double>(mu) / (2.0 * static_cast<double>(q - 1));
}

}  // namespace

double prior_bound(unsigned n) {
    require_n(n);
    const double sqrt_q = std::sqrt(std::ldexp(1.0, static_cast<int>(n)));
    return sqrt_q / pi * (n * std::numbers::ln2 + euler_gamma + std::log(8.0 / pi));
}

double bound_with_constant(unsigned n, double constant) {
    require_n(n);
    const double q = std::ldexp(1.0, static_cast<int>(n));
    return std::sqrt(q) / pi * (std::log(q) + constant);
}

double new_bound(unsigned n) { return bound_with_constant(n, stated_constant); }

double ConstantTerms::total() const {
    // Fixed summation order keeps the value reproducible.
    return neg_ln_pi + neg_half_ln_7_plus_4sqrt3 + gamma + half_pi + neg_pi_over_36 +
           neg_sqrt3_over_12 + one_sixth;
}

ConstantTerms constant_terms() {
    ConstantTerms t;
    t.neg_ln_pi = -std::log(pi);
    t.neg_half_ln_7_plus_4sqrt3 = -std::log(7.0 + 4.0 * sqrt3) / 2.0;
    t.gamma = euler_gamma;
    t.half_pi = pi / 2.0;
    t.neg_pi_over_36 = -pi / 36.0;
    t.neg_sqrt3_over_12 = -sqrt3 / 12.0;
    t.one_sixth = 1.0 / 6.0;
    return t;
}

double assemble_constant() { return constant_terms().total(); }

double integrand(double x) {
    // With t = 1 - x the integrand is 1/(2 sin(pi t/2)) - 1/(pi t).
    const double t = 1.0 - x;
    const double u = pi * t / 2.0;
    if (std::abs(u) < 1e-3) {
        // (1/2)(1/sin u - 1/u) = u/12 + 7u^3/720 + 31u^5/30240 + ...
        const double u2 = u * u;
        return u * (1.0 / 12.0 + u2 * (7.0 / 720.0 + u2 * (31.0 / 30240.0)));
    }
    return 1.0 / (2.0 * std::sin(u)) - 1.0 / (pi * t);
}

IntegralStep integral_step() {
    using boost::math::quadrature::gauss_kronrod;
    IntegralStep s;
    double err = 0.0;
    s.numeric = gauss_kronrod<double, 61>::integrate(integrand, 2.0 / 3.0, 1.0, 15, 1e-15, &err);
    s.error_estimate = err;
    s.printed_closed_form = (std::numbers::ln2 - std::log(pi) + std::log(3.0)) / pi -
                          std::log(7.0 + 4.0 * sqrt3) / (2.0 * pi);
    return s;
}

HarmonicStep harmonic_step(std::uint64_t q) {
    require_q(q, 16);
    HarmonicStep h;
    h.q = q;
    CompensatedSum sum;
    // 2q/3 < mu <=> 3 mu > 2q
    for (std::uint64_t mu = q - 2; 3 * mu > 2 * q; mu -= 2) sum.add(1.0 / static_cast<double>(q - mu));
    h.exact = 2.0 / pi * sum.value();
    h.asymptotic = (std::log(static_cast<double>(q) / 6.0) + euler_gamma) / pi;
    return h;
}

double cos2_integral() { return (pi + 3.0 * sqrt3 - 6.0) / (12.0 * pi); }

Cos2Step cos2_step(std::uint64_t q) {
    require_q(q, 16);
    Cos2Step s;
    s.q = q;
    CompensatedSum sum;
    for (std::uint64_t mu = q / 2; 3 * mu <= 2 * q; mu += 2) {
        const double c = std::cos(half_angle(q, mu));
        sum.add(c * c);
        ++s.terms;
    }
    s.exact = sum.value();
    const double qd = static_cast<double>(q);
    s.printed_form = qd / 12.0 * cos2_integral();
    s.riemann_form = (qd - 1.0) / 2.0 * cos2_integral();
    return s;
}

RecomputedConstant recomputed_constant() {
    RecomputedConstant r;
    r.assembled = assemble_constant();
    const IntegralStep i = integral_step();
    r.integral_shift = pi * (i.numeric - i.printed_closed_form);
    const double per_q_printed = cos2_integral() / 12.0;
    const double per_q_riemann = cos2_integral() / 2.0;
    r.cos2_shift = -4.0 * pi * (per_q_riemann - per_q_printed);
    r.recomputed = r.assembled + r.integral_shift + r.cos2_shift;
    return r;
}

OrdreLines ordre_lines(std::uint64_t q, std::uint64_t mu, cplx h, cplx k) {
    if (mu % 2 != 0 || mu < 2 || mu > q - 2)
        throw Error(ErrorKind::out_of_range, "angle lemma applies to even mu in [2, q-2]");
    const auto a = spectral::a_mu(q, mu);
    const double sq = std::sqrt(static_cast<double>(q));
    const double c = std::cos(half_angle(q, mu));
    const double t = 3.0 * half_angle(q, mu);
    const double ah = std::arg(h);
    const double ak = std::arg(k);

    OrdreLines l;
    l.line1 = (std::conj(h) * a.value - std::conj(k) * a.value).real();
    l.line2 = -sq * (std::cos(t - ah) - std::cos(t - ak)) / (2.0 * c);
    l.line3 = -sq * std::sin((ak - ah) / 2.0) * std::sin(t - (ak + ah) / 2.0) / c;
    l.sine_bound = sq * std::abs(std::sin((ak - ah) / 2.0)) / c;
    l.linear_bound = sq * std::abs(ak - ah) / (2.0 * c);
    l.scale = sq * std::abs(a.value);
    return l;
}

OrdreReport lemma_ordre_check(const charsums::CharContext& c, const charsums::GaussTable& g,
                              std::size_t samples, std::uint64_t seed, std::uint32_t l) {
    const std::uint64_t q = c.q();
    require_q(q, 8);
    const std::uint64_t order = q - 1;
    auto h_of = [&](std::uint64_t nu) {
        return g.values.at(nu) * c.zeta_pow(-static_cast<std::int64_t>((nu * l) % order));
    };

    OrdreReport r;
    r.samples = samples;
    std::mt19937_64 rng(seed);
    const std::uint64_t even_slots = (q - 2) / 2;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::uint64_t mu = 2 + 2 * uniform_index(rng, even_slots);
        const std::uint64_t nu = 1 + uniform_index(rng, q - 2);
        const auto lines = ordre_lines(q, mu, h_of(nu), k_point(q, static_cast<double>(nu)));
        const double noise = 1e-9 * lines.scale;
        r.max_identity_residual =
            std::max(r.max_identity_residual, std::abs(lines.line1 - lines.line3) / lines.scale);
        r.max_modulus_residual = std::max(
            r.max_modulus_residual, std::abs(std::abs(lines.line2) - std::abs(lines.line1)) / lines.scale);
        if (std::abs(lines.line1) > noise) {
            if ((lines.line1 > 0) == (lines.line2 > 0))
                ++r.line2_sign_matches;
            else
                ++r.line2_sign_flips;
        }
        const bool ok = std::abs(lines.line1) <= lines.sine_bound + noise &&
                        lines.sine_bound <= lines.linear_bound + noise;
        if (!ok) ++r.inequality_violations;
    }

    // Ranked pairing: the i-th smallest argument against k at angle 2 pi i/N.
    const auto seq = equidist::gauss_arg_sequence(c, g, l);
    r.star_d = equidist::star_discrepancy(seq);
    r.position_deviation = equidist::position_deviation(seq);
    const auto sorted = seq.sorted();
    const std::size_t count = sorted.size();
    r.ranked_pairs = count;
    const double sq = std::sqrt(static_cast<double>(q));
    const double quarter = std::pow(static_cast<double>(q), 0.25);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t mu = 2 + 2 * (i % even_slots);
        const cplx h = std::polar(sq, 2.0 * pi * sorted[i]);
        const cplx k = std::polar(sq, 2.0 * pi * static_cast<double>(i + 1) / static_cast<double>(count));
        const auto lines = ordre_lines(q, mu, h, k);
        const double cosv = std::cos(half_angle(q, mu));
        if (r.star_d > 0.0) {
            const double envelope = sq * 2.0 * pi * r.star_d / (2.0 * cosv);
            r.max_envelope_ratio = std::max(r.max_envelope_ratio, std::abs(lines.line1) / envelope);
        }
        r.max_quarter_constant =
            std::max(r.max_quarter_constant, std::abs(lines.line1) * 2.0 * cosv / quarter);
    }
    return r;
}

cplx k_point(std::uint64_t q, double x) {
    return std::polar(std::sqrt(static_cast<double>(q)), 2.0 * pi * x / static_cast<double>(q - 1));
}

double b_index(std::uint64_t q, std::uint64_t mu) {
    const double m = static_cast<double>(mu);
    if (2 * mu <= q) return m / 2.0;
    if (3 * mu <= 2 * q) return 1.5 * m - static_cast<double>(q) / 2.0;
    return 0.75 * m;
}

BMuValue b_mu_value(std::uint64_t q) {
    require_q(q, 8);
    if (q > max_b_mu_q) throw Error(ErrorKind::size_limit, "b_mu evaluation limited to q <= 2^16");
    BMuValue v;
    v.q = q;
    CompensatedSum total, low, mid, high;
    for (std::uint64_t mu = 2; mu + 1 < q; mu += 2) {
        const cplx b = k_point(q, b_index(q, mu));
        const cplx a = spectral::a_mu(q, mu).value;
        v.slots.push_back(mu);
        v.b.push_back(b);
        const double term = 2.0 * (std::conj(b) * a).real();
        total.add(term);
        if (2 * mu <= q)
            low.add(2.0 * (std::conj(k_point(q, mu / 2.0)) * a).real());
        else if (3 * mu <= 2 * q)
            mid.add(2.0 * (std::conj(k_point(q, 1.5 * mu - q / 2.0)) * a).real());
        else
            high.add(2.0 * (std::conj(k_point(q, 0.75 * mu)) * a).real());
    }
    v.value = total.value();
    v.part_low = low.value();
    v.part_mid = mid.value();
    v.part_high = high.value();
    return v;
}

RearrangementProblem make_rearrangement_problem(const charsums::CharContext& c,
                                                const charsums::GaussTable& g, std::uint32_t ell,
                                                Objective objective) {
    const std::uint64_t q = c.q();
    const std::uint64_t order = q - 1;
    if (ell >= order) throw Error(ErrorKind::out_of_range, "ell must lie in [0, q-2]");
    RearrangementProblem p;
    p.q = q;
    p.ell = ell;
    p.objective = objective;
    const std::uint64_t step = objective == Objective::even_mu ? 2 : 1;
    for (std::uint64_t mu = step; mu + 1 < q; mu += step) {
        p.slots.push_back(mu);
        p.coefficients.push_back(spectral::a_mu(q, mu).value);
        p.gauss.push_back(g.values.at(mu) * c.zeta_pow(-static_cast<std::int64_t>((mu * ell) % order)));
    }
    for (std::uint64_t x = 0; x < order; ++x) p.idealized.push_back(k_point(q, static_cast<double>(x)));
    return p;
}

RearrangementProblem make_rearrangement_problem(std::uint64_t q, std::vector<cplx> coefficients,
                                                std::vector<cplx> pool) {
    if (coefficients.size() != pool.size())
        throw Error(ErrorKind::out_of_range, "slot and pool sizes differ");
    RearrangementProblem p;
    p.q = q;
    p.slots.resize(coefficients.size());
    std::iota(p.slots.begin(), p.slots.end(), std::uint64_t{1});
    p.coefficients = std::move(coefficients);
    p.gauss = std::move(pool);
    return p;
}

double assignment_objective(const RearrangementProblem& p, const std::vector<std::size_t>& sigma) {
    CompensatedSum sum;
    for (std::size_t row = 0; row < sigma.size(); ++row)
        sum.add((std::conj(p.gauss[sigma[row]]) * p.coefficients[row]).real());
    return sum.value();
}

double identity_objective(const RearrangementProblem& p) {
    std::vector<std::size_t> id(p.coefficients.size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    return assignment_objective(p, id);
}

double trivial_bound(const RearrangementProblem& p) {
    double hmax = 0.0;
    for (const cplx& h : p.gauss) hmax = std::max(hmax, std::abs(h));
    CompensatedSum sum;
    for (const cplx& a : p.coefficients) sum.add(std::abs(a));
    return hmax * sum.value();
}

AssignmentSolution rearrangement_max(const RearrangementProblem& p) {
    const std::size_t n = p.coefficients.size();
    if (n > max_rearrangement_size)
        throw Error(ErrorKind::size_limit,
                    "exact rearrangement limited to " + std::to_string(max_rearrangement_size) +
                        " slots (q <= 2^9); use b_mu_value for larger q");
    assignment::Matrix w(n);
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = 0; col < n; ++col)
            w(row, col) = (std::conj(p.gauss[col]) * p.coefficients[row]).real();
    const auto a = assignment::solve_max(w);
    return {a.col_for_row, assignment_objective(p, a.col_for_row)};
}

ExchangeStats exchange_argument_check(std::uint64_t q, std::size_t trials, std::uint64_t seed) {
    const BMuValue bv = b_mu_value(q);
    const std::size_t m = bv.slots.size();
    std::vector<cplx> a(m);
    for (std::size_t j = 0; j < m; ++j) a[j] = spectral::a_mu(q, bv.slots[j]).value;

    ExchangeStats st;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> sigma(m);
    auto objective = [&](const std::vector<std::size_t>& s) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) sum += (std::conj(bv.b[s[j]]) * a[j]).real();
        return sum;
    };
    for (std::size_t t = 0; t < trials; ++t) {
        ++st.trials;
        std::iota(sigma.begin(), sigma.end(), std::size_t{0});
        for (std::size_t i = m; i > 1; --i) std::swap(sigma[i - 1], sigma[uniform_index(rng, i)]);
        std::size_t beta = m;
        for (std::size_t j = m; j-- > 0;) {
            if (sigma[j] != j) {
                beta = j;
                break;
            }
        }
        if (beta == m) {
            ++st.identity_draws;
            continue;
        }
        const std::size_t s = static_cast<std::size_t>(std::find(sigma.begin(), sigma.end(), beta) - sigma.begin());
        const cplx k = bv.b[sigma[beta]];
        const double condition = ((bv.b[beta] - k) * std::conj(a[beta] - a[s])).real();
        const double before = objective(sigma);
        std::swap(sigma[beta], sigma[s]);
        const double change = objective(sigma) - before;
        st.max_identity_residual = std::max(st.max_identity_residual, std::abs(change - condition));
        if (condition > 0) {
            ++st.condition_held;
            if (change < 0) ++st.decreased_when_held;
        } else {
            ++st.condition_violated;
        }
    }
    return st;
}

BoundsRow bounds_row(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables) {
    BoundsRow row;
    row.n = f.n;
    row.modulus = f.modulus;
    row.alpha = f.alpha.bits;
    row.nonlinearity = boolfn::nonlinearity(boolfn::carlet_feng(f, tables));
    row.gap_exact = (std::int64_t{1} << (f.n - 1)) - row.nonlinearity;
    row.cf_bound = spectral::carlet_feng_rhs(f.q);
    row.prior_bound = prior_bound(f.n);
    row.new_bound = new_bound(f.n);
    row.recomputed_bound = bound_with_constant(f.n, recomputed_constant().recomputed);
    row.gap_over_sqrt_q = static_cast<double>(row.gap_exact) / std::sqrt(static_cast<double>(f.q));
    row.cf_valid = static_cast<double>(row.gap_exact) <= row.cf_bound;
    row.within_new_bound = static_cast<double>(row.gap_exact) <= row.new_bound;
    return row;
}

std::vector<BoundsRow> bounds_table(unsigned n_lo, unsigned n_hi, const gf2n::CacheOptions& cache) {
    if (n_lo > n_hi) throw Error(ErrorKind::out_of_range, "empty n range");
    std::vector<BoundsRow> rows;
    for (unsigned n = n_lo; n <= n_hi; ++n) {
        const auto f = gf2n::build_field(n);
        rows.push_back(bounds_row(f, *gf2n::dlog_tables(f, cache)));
    }
    return rows;
}

}  // namespace cfnl::bounds
