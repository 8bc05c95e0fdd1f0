// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 3 7        run the listed criteria
// Exit status is the number of failing criteria.

#include "oracles.hpp"

#include "cli.hpp"

#include "cfnl/assignment.hpp"
#include "cfnl/boolfn.hpp"
#include "cfnl/bounds.hpp"
#include "cfnl/charsums.hpp"
#include "cfnl/equidist.hpp"
#include "cfnl/spectral.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace cfnl;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) note << "first failure: ";
            else note << "; ";
            note << what;
        }
        pass = pass && ok;
    }
};

struct Field {
    gf2n::FieldSpec f;
    std::shared_ptr<const gf2n::DlogTables> t;
    explicit Field(unsigned n)
        : f(gf2n::build_field(n)), t(std::make_shared<const gf2n::DlogTables>(gf2n::compute_dlog_tables(f))) {}
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. W_f(lambda) = 2 S_lambda for lambda != 0, nl = 2^{n-1} - max|S|; n = 2..14.
void criterion_bridge(Outcome& o) {
    const auto t0 = Clock::now();
    for (unsigned n = 2; n <= 14; ++n) {
        Field k(n);
        const auto w = boolfn::wht(boolfn::carlet_feng(k.f, *k.t), k.f);
        std::int64_t peak = 0;
        bool exact = true;
        for (std::uint32_t l = 0; l + 1 < k.f.q; ++l) {
            const auto s = boolfn::s_lambda_direct(k.f, *k.t, l);
            exact = exact && w.coeffs[k.t->exp[l]] == 2 * s;
            peak = std::max<std::int64_t>(peak, std::abs(s));
        }
        o.require(exact, "W != 2S at n=" + std::to_string(n));
        o.require(boolfn::nonlinearity(w) == (std::int64_t{1} << (n - 1)) - peak, "nl mismatch at n=" + std::to_string(n));
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60, "runtime");
    o.note << (o.pass ? "" : "; ") << "n=2..14 exact, " << secs << " s";
}

// 2. Fourier expansion through Gauss sums, n = 2..12, every ell.
void criterion_fourier(Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0;
    for (unsigned n = 2; n <= 12; ++n) {
        Field k(n);
        charsums::CharContext c(k.f, k.t);
        const auto g = charsums::gauss_table(c, charsums::GaussMethod::dft);
        const auto amu = spectral::amu_table(k.f.q);
        const double tol = 1e-6 * k.f.q;
        for (std::uint32_t l = 0; l + 1 < k.f.q; ++l) {
            const cplx v = spectral::s_lambda_via_gauss(c, g, amu, l);
            const double s = static_cast<double>(boolfn::s_lambda_direct(k.f, *k.t, l));
            const double re = std::abs(v.real() - s), im = std::abs(v.imag());
            worst = std::max({worst, re / k.f.q, im / k.f.q});
            if (re >= tol || im >= tol) {
                o.require(false, "n=" + std::to_string(n) + " l=" + std::to_string(l));
                break;
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 300, "runtime");
    o.note << (o.pass ? "" : "; ") << "max residual/q " << worst << ", " << secs << " s";
}

// 3. Gauss sums: values[0] = -1, |G| = sqrt q, shift identity on 10^4 pairs.
void criterion_gauss(Outcome& o) {
    std::mt19937_64 rng(2024);
    double worst_mag = 0, worst_shift = 0;
    for (unsigned n = 2; n <= 12; ++n) {
        Field k(n);
        charsums::CharContext c(k.f, k.t);
        const auto g = charsums::gauss_table(c);
        const double sq = std::sqrt(static_cast<double>(k.f.q));
        o.require(std::abs(g.values[0] + 1.0) <= 1e-9, "values[0] at n=" + std::to_string(n));
        for (std::uint32_t mu = 1; mu + 1 < k.f.q; ++mu) {
            const double d = std::abs(std::abs(g.values[mu]) - sq);
            worst_mag = std::max(worst_mag, d / sq);
            if (d > 1e-9 * sq) o.require(false, "|G| at n=" + std::to_string(n));
        }
        if (n < 10) continue;
        for (int i = 0; i < 10000; ++i) {
            const auto l = uniform_index(rng, k.f.q - 1);
            const auto mu = static_cast<std::uint32_t>(uniform_index(rng, k.f.q - 1));
            const cplx lhs = charsums::gauss_sum_direct(c, {k.t->exp[l]}, mu);
            const cplx rhs = c.zeta_pow(-static_cast<std::int64_t>((mu * l) % (k.f.q - 1))) * g.values[mu];
            const double d = std::abs(lhs - rhs);
            worst_shift = std::max(worst_shift, d / sq);
            if (d > 1e-9 * sq) {
                o.require(false, "shift identity at n=" + std::to_string(n));
                break;
            }
        }
    }
    o.note << (o.pass ? "" : "; ") << "max ||G|-sqrt q|/sqrt q " << worst_mag << ", shift residual/sqrt q "
           << worst_shift << " (n=10..12, 10^4 pairs each)";
}

// 4. Moment identity and both bounds, n <= 10, r = 1..3.
void criterion_moments(Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0;
    std::size_t cases = 0;
    for (unsigned n = 2; n <= 10; ++n) {
        Field k(n);
        charsums::CharContext c(k.f, k.t);
        const auto g = charsums::gauss_table(c);
        std::mt19937_64 rng(n);
        std::vector<gf2n::FieldElement> as{{1}, k.f.alpha, {k.t->exp[uniform_index(rng, k.f.q - 1)]}};
        for (auto a : as) {
            for (unsigned r = 1; r <= 3; ++r) {
                const auto m = charsums::power_moment(c, g, a, r);
                ++cases;
                const double q = k.f.q;
                const double expect = (q - 1) * static_cast<double>(m.deligne_sum.value()) - (r % 2 ? -1.0 : 1.0);
                const double res = std::abs(m.moment - expect);
                worst = std::max(worst, res);
                const std::string tag = " n=" + std::to_string(n) + " r=" + std::to_string(r);
                o.require(res <= 1e-4, "identity" + tag);
                o.require(m.deligne_bound_ok(), "Deligne bound" + tag);
                o.require(m.moment_bound_ok(), "moment bound" + tag);
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 600, "runtime");
    o.note << (o.pass ? "" : "; ") << cases << " cases, max identity residual " << worst << ", " << secs << " s";
}

// 5. a_mu closed forms at q in {8, 16, 64, 256, 1024}, tolerances as typed.
void criterion_amu(Outcome& o) {
    std::size_t total = 0, mod_fail = 0, mod_fail_odd = 0, arg_fail = 0, conj_fail = 0, cubic_fail = 0, cf_fail = 0;
    for (std::uint64_t q : {8u, 16u, 64u, 256u, 1024u}) {
        for (std::uint64_t mu = 1; mu + 1 < q; ++mu) {
            ++total;
            const auto a = spectral::a_mu(q, mu);
            const double typed = 1.0 / (2.0 * std::cos(pi * mu / (2.0 * (q - 1.0))));
            if (std::abs(std::abs(a.value) - typed) > 1e-12 * typed) {
                ++mod_fail;
                mod_fail_odd += mu % 2;
            }
            if (std::abs(std::abs(a.value) - a.modulus_cf) > 1e-12 * a.modulus_cf) ++cf_fail;
            double arg = 3.0 * pi * mu / (2.0 * (q - 1.0));
            if (mu % 2) arg += pi / 2;
            if (angle_distance(std::arg(a.value), arg) > 1e-10) ++arg_fail;
            if (std::abs(spectral::a_mu(q, q - 1 - mu).value - std::conj(a.value)) > 1e-12 * std::abs(a.value))
                ++conj_fail;
            if (!spectral::cubic_map_check(q, mu, 1e-10)) ++cubic_fail;
        }
    }
    o.require(mod_fail == 0, "modulus 1/(2cos(pi mu/(2(q-1)))) fails for " + std::to_string(mod_fail) + "/" +
                                 std::to_string(total) + " mu (" + std::to_string(mod_fail_odd) + " odd)");
    o.require(arg_fail == 0, "argument");
    o.require(conj_fail == 0, "conjugation");
    o.require(cubic_fail == 0, "cubic map");
    o.note << (o.pass ? "" : "; ") << "argument " << total - arg_fail << "/" << total << ", conjugation "
           << total - conj_fail << "/" << total << ", cubic " << total - cubic_fail << "/" << total
           << ", parity-aware modulus (1/(2sin) for odd mu) " << total - cf_fail << "/" << total;
}

// 6. Discrepancy engine and Gauss-argument sequences.
void criterion_discrepancy(Outcome& o) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 512);
        std::vector<double> pts(n);
        for (auto& x : pts) x = uniform01(rng);
        const equidist::UnitSequence s(pts);
        const double d = equidist::star_discrepancy(s);
        if (std::abs(d - oracle::grid_star_discrepancy(pts, 1.0 / (8.0 * n))) > 1.0 / (8.0 * n)) {
            o.require(false, "grid oracle");
            break;
        }
        o.require(equidist::position_deviation(s) <= d, "position lemma (random)");
        for (int H : {1, 4, 16}) o.require(equidist::etk_bound(s, H, 1.0).rigorous >= d, "rigorous ETK (random)");
    }
    std::vector<double> qs, ds;
    double worst = 0;
    for (unsigned n = 8; n <= 16; ++n) {
        Field k(n);
        charsums::CharContext c(k.f, k.t);
        const auto g = charsums::gauss_table(c);
        const auto s = equidist::gauss_arg_sequence(c, g, 0);
        const double d = equidist::star_discrepancy(s);
        const double scaled = d * std::pow(static_cast<double>(k.f.q), 0.25);
        worst = std::max(worst, scaled);
        o.require(equidist::position_deviation(s) <= d, "position lemma n=" + std::to_string(n));
        o.require(equidist::etk_bound(s, equidist::quarter_power_h(k.f.q), 1.0).rigorous >= d,
                  "rigorous ETK n=" + std::to_string(n));
        o.require(scaled <= 3.0, "star_d q^{1/4} > 3 at n=" + std::to_string(n));
        qs.push_back(k.f.q);
        ds.push_back(d);
    }
    o.note << (o.pass ? "" : "; ") << "max star_d q^{1/4} " << worst << " (n=8..16), measured decay exponent "
           << equidist::log_log_slope(qs, ds);
}

// 7. Rearrangement: exhaustive agreement, strict trivial bound, b_mu domination.
void criterion_rearrangement(Outcome& o) {
    std::mt19937_64 rng(7);
    for (std::size_t m = 1; m <= 10; ++m) {
        for (int trial = 0; trial < (m <= 8 ? 10 : 1); ++trial) {
            assignment::Matrix w(m);
            std::vector<double> flat(m * m);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) flat[r * m + c] = w(r, c) = uniform01(rng) - 0.5;
            const double best = oracle::best_permutation(flat, m, true);
            o.require(std::abs(assignment::solve_max(w).total - best) < 1e-9, "exhaustive m=" + std::to_string(m));
        }
    }
    {
        Field k(3);
        charsums::CharContext c(k.f, k.t);
        const auto g = charsums::gauss_table(c);
        const auto p = bounds::make_rearrangement_problem(c, g, 0, bounds::Objective::all_mu);
        const std::size_t m = p.slots.size();
        std::vector<double> flat(m * m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t col = 0; col < m; ++col)
                flat[r * m + col] = (std::conj(p.gauss[col]) * p.coefficients[r]).real();
        o.require(std::abs(bounds::rearrangement_max(p).objective - oracle::best_permutation(flat, m, true)) < 1e-9,
                  "exhaustive q=8");
    }
    double worst_ratio = 0;
    for (unsigned n = 6; n <= 9; ++n) {
        Field k(n);
        charsums::CharContext c(k.f, k.t);
        const auto g = charsums::gauss_table(c);
        const auto p = bounds::make_rearrangement_problem(c, g, 0, bounds::Objective::all_mu);
        const auto sol = bounds::rearrangement_max(p);
        const double trivial = bounds::trivial_bound(p);
        worst_ratio = std::max(worst_ratio, sol.objective / trivial);
        o.require(sol.objective < trivial, "trivial bound attained at n=" + std::to_string(n));
        o.require(sol.objective >= bounds::identity_objective(p) - 1e-9, "identity at n=" + std::to_string(n));

        const auto even = bounds::make_rearrangement_problem(c, g, 0, bounds::Objective::even_mu);
        const auto bv = bounds::b_mu_value(k.f.q);
        const auto bp = bounds::make_rearrangement_problem(k.f.q, even.coefficients, bv.b);
        o.require(bounds::rearrangement_max(bp).objective >= bounds::identity_objective(bp) - 1e-9,
                  "b_mu domination at n=" + std::to_string(n));
    }
    o.note << (o.pass ? "" : "; ") << "sizes 1..10 exhaustive, max objective/trivial " << worst_ratio << " (n=6..9)";
}

// 8. Constants.
void criterion_constants(Outcome& o) {
    const double c = bounds::assemble_constant();
    o.require(std::abs(c - (-0.37861)) <= 5e-5, "assembled constant");
    o.require(std::abs(c - bounds::stated_constant) < 5e-5, "agreement with -0.3786");
    const auto i = bounds::integral_step();
    o.require(i.error_estimate < 1e-9, "quadrature error");
    o.require(std::abs(i.numeric - oracle::integral_antiderivative()) < 1e-9, "quadrature vs antiderivative");
    double worst_cos = 0;
    for (unsigned n = 4; n <= 20; ++n) {
        const std::uint64_t q = std::uint64_t{1} << n;
        const auto s = bounds::cos2_step(q);
        double direct = 0;
        for (std::uint64_t mu = 2; mu + 1 < q; mu += 2) {
            if (2 * mu < q || 3 * mu > 2 * q) continue;
            const double v = std::cos(pi * mu / (2.0 * (q - 1.0)));
            direct += v * v;
        }
        worst_cos = std::max(worst_cos, std::abs(s.exact - direct) / direct);
    }
    o.require(worst_cos < 1e-12, "cos^2 direct sum");
    const auto s20 = bounds::cos2_step(std::uint64_t{1} << 20);
    const auto rc = bounds::recomputed_constant();
    o.note << (o.pass ? "" : "; ") << "constant " << c << "; integral " << i.numeric << " vs printed "
           << i.printed_closed_form << " (deviation " << i.difference() << "); cos^2 at q=2^20 exact/printed "
           << s20.exact / s20.printed_form << ", exact/riemann " << s20.exact / s20.riemann_form
           << "; recomputed constant " << rc.recomputed;
}

// 9. Bound table n = 4..20.
void criterion_table(Outcome& o) {
    const auto rows = bounds::bounds_table(4, 20);
    double lo = 1e9, hi = 0;
    for (const auto& r : rows) {
        const std::string tag = " n=" + std::to_string(r.n);
        o.require(r.cf_bound >= static_cast<double>(r.gap_exact), "cf_bound" + tag);
        o.require(r.new_bound < r.prior_bound, "new < prior" + tag);
        if (r.n >= 8 && r.n <= 16) {
            lo = std::min(lo, r.gap_over_sqrt_q);
            hi = std::max(hi, r.gap_over_sqrt_q);
            o.require(r.gap_over_sqrt_q >= 0.5 && r.gap_over_sqrt_q <= 2.0, "gap/2^{n/2}" + tag);
        }
    }
    o.note << (o.pass ? "" : "; ") << rows.size() << " rows, gap/2^{n/2} in [" << lo << ", " << hi << "] for n=8..16";
}

// 10. Byte-identical repeated runs.
void criterion_determinism(Outcome& o) {
    const std::vector<std::vector<std::string>> runs{
        {"field", "9"},
        {"analyze", "4..12"},
        {"verify", "8", "--seed", "3"},
        {"bounds", "4..12", "--format", "csv"},
        {"discrepancy", "8..12", "--l", "0"},
        {"rearrange", "7"},
        {"constants"},
        {"export", "6", "--table", "gauss"},
    };
    for (const auto& args : runs) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            std::ostringstream out, err;
            auto a = args;
            a.push_back("--no-cache");
            cli::run(a, out, err);
            if (rep == 0) first = out.str();
            else o.require(out.str() == first, "differs: " + args.front());
        }
    }
    o.note << (o.pass ? "" : "; ") << runs.size() << " commands, two runs each";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"bridge identity W = 2S", criterion_bridge},
        {"Fourier expansion", criterion_fourier},
        {"Gauss-sum properties", criterion_gauss},
        {"moment identity", criterion_moments},
        {"a_mu closed forms", criterion_amu},
        {"discrepancy engine", criterion_discrepancy},
        {"rearrangement", criterion_rearrangement},
        {"constants", criterion_constants},
        {"bound table", criterion_table},
        {"determinism", criterion_determinism},
    };
    std::vector<std::size_t> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::stoul(argv[i]));
    if (pick.empty())
        for (std::size_t i = 1; i <= criteria.size(); ++i) pick.push_back(i);

    int failed = 0;
    for (auto k : pick) {
        if (k < 1 || k > criteria.size()) {
            std::cerr << "no criterion " << k << '\n';
            return 64;
        }
        Outcome o;
        o.note.precision(6);
        try {
            criteria[k - 1].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << "criterion " << k << " [" << criteria[k - 1].first << "]: " << (o.pass ? "PASS" : "FAIL") << "  "
                  << o.note.str() << std::endl;
    }
    return failed;
}
