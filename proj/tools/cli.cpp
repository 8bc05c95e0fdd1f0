#include "cli.hpp"

#include "report.hpp"

#include "cfnl/boolfn.hpp"
#include "cfnl/bounds.hpp"
#include "cfnl/charsums.hpp"
#include "cfnl/equidist.hpp"
#include "cfnl/error.hpp"
#include "cfnl/gf2n.hpp"
#include "cfnl/numeric.hpp"
#include "cfnl/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace cfnl::cli {

using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_uint(const std::string& text, const char* what) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &pos, 0);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (text.empty() || pos != text.size() || text[0] == '-')
        throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    return v;
}

std::string hex32(std::uint32_t v) { return gf2n::to_hex(v); }

// --- output plumbing ---------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string cell(double x) { return format_double(x); }
std::string cell(bool b) { return b ? "true" : "false"; }
template <class T>
    requires std::is_integral_v<T>
std::string cell(T x) {
    return std::to_string(x);
}
std::string cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_table(std::ostream& os, const Table& t) {
    os << "# schema_version=" << schema_version << '\n';
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }
}

ojson envelope(const RunConfig& cfg) {
    ojson j;
    j["schema_version"] = schema_version;
    j["command"] = cfg.command;
    j["config"] = to_json(cfg);
    return j;
}

class Sink {
public:
    Sink(const RunConfig& cfg, std::ostream& out) : out_(out) {
        if (!cfg.out.empty()) {
            file_.open(cfg.out, std::ios::binary);
            if (!file_) throw Error(ErrorKind::io, "cannot open output file '" + cfg.out + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }

private:
    std::ostream& out_;
    std::ofstream file_;
};

struct Env {
    const RunConfig& cfg;
    std::ostream& out;
    std::ostream& err;

    gf2n::CacheOptions cache() const {
        gf2n::CacheOptions c;
        c.enabled = !cfg.no_cache;
        if (!cfg.cache_dir.empty()) c.dir = cfg.cache_dir;
        std::ostream* e = &err;
        c.warn = [e](std::string_view msg) { *e << "warning: " << msg << '\n'; };
        return c;
    }

    gf2n::FieldSpec field(unsigned n) const {
        std::optional<gf2n::Poly> mod;
        if (cfg.modulus) mod = *cfg.modulus;
        return gf2n::build_field(n, mod, cfg.alpha);
    }

    bool csv() const { return cfg.format == "csv"; }

    void progress(const std::string& msg) const { err << msg << '\n'; }
};

void require_range(const RunConfig& cfg, unsigned lo, unsigned hi, const char* what) {
    if (cfg.n_lo < lo || cfg.n_hi > hi)
        throw Error(ErrorKind::out_of_range, std::string(what) + " requires " + std::to_string(lo) +
                                                 " <= n <= " + std::to_string(hi));
}

void require_single(const RunConfig& cfg) {
    if (cfg.n_lo != cfg.n_hi) throw UsageError(cfg.command + " takes a single n, not a range");
}

// --- commands ----------------------------------------------------------------

int cmd_field(const Env& env) {
    require_single(env.cfg);
    require_range(env.cfg, gf2n::min_degree, gf2n::max_degree, "field");
    const auto f = env.field(env.cfg.n_lo);
    Sink sink(env.cfg, env.out);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> witnesses;
    for (auto p : f.order_primes)
        witnesses.emplace_back(p, gf2n::pow(f, f.alpha, (f.q - 1) / p).bits);

    if (env.csv()) {
        Table t{{"n", "q", "modulus", "alpha", "source", "trace_mask", "order_primes"}, {}};
        std::string primes;
        for (std::size_t i = 0; i < f.order_primes.size(); ++i)
            primes += (i ? ";" : "") + std::to_string(f.order_primes[i]);
        t.rows.push_back({cell(f.n), cell(f.q), gf2n::to_hex(f.modulus), hex32(f.alpha.bits),
                          f.source == gf2n::FieldSource::builtin_table ? "builtin" : "user",
                          hex32(f.trace_mask), primes});
        write_table(sink.stream(), t);
        return exit_ok;
    }
    ojson j = envelope(env.cfg);
    ojson r;
    r["n"] = f.n;
    r["q"] = f.q;
    r["modulus"] = gf2n::to_hex(f.modulus);
    r["modulus_poly"] = gf2n::poly_to_string(f.modulus);
    r["modulus_source"] = f.source == gf2n::FieldSource::builtin_table ? "builtin" : "user";
    r["alpha"] = hex32(f.alpha.bits);
    r["trace_mask"] = hex32(f.trace_mask);
    ojson proof = ojson::array();
    for (auto [p, w] : witnesses) proof.push_back({{"prime", p}, {"alpha_pow_order_over_prime", hex32(w)}});
    r["primitivity"] = {{"group_order", f.q - 1}, {"witnesses", proof}};
    j["result"] = r;
    sink.stream() << j.dump(2) << '\n';
    return exit_ok;
}

int cmd_analyze(const Env& env) {
    require_range(env.cfg, gf2n::min_degree, gf2n::max_degree, "analyze");
    Table t{{"n", "q", "modulus", "alpha", "weight", "nonlinearity", "gap", "max_abs_s_lambda", "argmax_ell"}, {}};
    ojson rows = ojson::array();
    for (unsigned n = env.cfg.n_lo; n <= env.cfg.n_hi; ++n) {
        env.progress("analyze n=" + std::to_string(n));
        const auto f = env.field(n);
        const auto tables = gf2n::dlog_tables(f, env.cache());
        const auto tt = boolfn::carlet_feng(f, *tables);
        const auto s = boolfn::s_lambda_all(f, *tables);
        std::int64_t peak = -1;
        std::uint32_t arg = 0;
        for (const auto& e : s) {
            if (std::abs(e.value) > peak) {
                peak = std::abs(e.value);
                arg = e.ell;
            }
        }
        const auto nl = boolfn::nonlinearity(tt);
        const std::int64_t gap = (std::int64_t{1} << (n - 1)) - nl;
        t.rows.push_back({cell(n), cell(f.q), gf2n::to_hex(f.modulus), hex32(f.alpha.bits), cell(tt.weight()),
                          cell(nl), cell(gap), cell(peak), cell(arg)});
        rows.push_back({{"n", n},
                        {"q", f.q},
                        {"modulus", gf2n::to_hex(f.modulus)},
                        {"alpha", hex32(f.alpha.bits)},
                        {"weight", tt.weight()},
                        {"nonlinearity", nl},
                        {"gap", gap},
                        {"max_abs_s_lambda", peak},
                        {"argmax_ell", arg}});
    }
    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        write_table(sink.stream(), t);
    } else {
        ojson j = envelope(env.cfg);
        j["result"] = {{"rows", rows}};
        sink.stream() << j.dump(2) << '\n';
    }
    return exit_ok;
}

SuiteOptions suite_options(const RunConfig& cfg) {
    SuiteOptions o;
    o.tolerance_scale = cfg.tolerance_scale;
    o.etk_c = cfg.etk_c;
    o.etk_h = cfg.h_policy == "quarter" ? 0 : static_cast<int>(parse_uint(cfg.h_policy, "--H"));
    o.l = cfg.l;
    o.seed = cfg.seed;
    o.samples = cfg.samples;
    return o;
}

int cmd_verify(const Env& env) {
    require_range(env.cfg, 3, charsums::max_dft_degree, "verify");
    auto suites = env.cfg.suites;
    if (suites.empty()) suites = suite_names();
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw UsageError("unknown suite '" + s + "'");
    const auto opt = suite_options(env.cfg);

    bool all_ok = true;
    Table t{{"n", "suite", "check", "kind", "passed", "residual", "tolerance", "detail"}, {}};
    ojson per_n = ojson::array();
    for (unsigned n = env.cfg.n_lo; n <= env.cfg.n_hi; ++n) {
        const auto f = env.field(n);
        const auto ctx = make_suite_context(f, gf2n::dlog_tables(f, env.cache()));
        ojson js = ojson::array();
        for (const auto& name : suites) {
            env.progress("verify n=" + std::to_string(n) + " suite=" + name);
            const auto res = run_suite(name, ctx, opt);
            all_ok = all_ok && res.passed();
            ojson checks = ojson::array();
            for (const auto& c : res.checks) {
                const char* kind = c.kind == CheckKind::identity ? "identity" : "report";
                t.rows.push_back({cell(n), name, cell(c.name), kind, cell(c.passed), cell(c.residual),
                                  cell(c.tolerance), cell(c.detail)});
                ojson jc{{"name", c.name}, {"kind", kind}, {"passed", c.passed}, {"residual", c.residual}};
                if (c.kind == CheckKind::identity) jc["tolerance"] = c.tolerance;
                if (!c.detail.empty()) jc["detail"] = c.detail;
                checks.push_back(jc);
            }
            js.push_back({{"suite", name}, {"passed", res.passed()}, {"checks", checks}});
        }
        per_n.push_back({{"n", n}, {"modulus", gf2n::to_hex(f.modulus)}, {"alpha", hex32(f.alpha.bits)},
                         {"suites", js}});
    }
    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        write_table(sink.stream(), t);
    } else {
        ojson j = envelope(env.cfg);
        j["result"] = {{"passed", all_ok}, {"fields", per_n}};
        sink.stream() << j.dump(2) << '\n';
    }
    return all_ok ? exit_ok : exit_identity_failure;
}

int cmd_bounds(const Env& env) {
    require_range(env.cfg, gf2n::min_degree, gf2n::max_degree, "bounds");
    Table t{{"n", "modulus", "alpha", "nonlinearity", "gap_exact", "gap_over_sqrt_q", "cf_bound", "prior_bound",
             "new_bound", "recomputed_bound", "cf_valid", "within_new_bound"},
            {}};
    ojson rows = ojson::array();
    for (unsigned n = env.cfg.n_lo; n <= env.cfg.n_hi; ++n) {
        env.progress("bounds n=" + std::to_string(n));
        const auto f = env.field(n);
        const auto r = bounds::bounds_row(f, *gf2n::dlog_tables(f, env.cache()));
        t.rows.push_back({cell(r.n), gf2n::to_hex(r.modulus), hex32(r.alpha), cell(r.nonlinearity),
                          cell(r.gap_exact), cell(r.gap_over_sqrt_q), cell(r.cf_bound), cell(r.prior_bound),
                          cell(r.new_bound), cell(r.recomputed_bound), cell(r.cf_valid),
                          cell(r.within_new_bound)});
        rows.push_back({{"n", r.n},
                        {"modulus", gf2n::to_hex(r.modulus)},
                        {"alpha", hex32(r.alpha)},
                        {"nonlinearity", r.nonlinearity},
                        {"gap_exact", r.gap_exact},
                        {"gap_over_sqrt_q", r.gap_over_sqrt_q},
                        {"cf_bound", r.cf_bound},
                        {"prior_bound", r.prior_bound},
                        {"new_bound", r.new_bound},
                        {"recomputed_bound", r.recomputed_bound},
                        {"cf_valid", r.cf_valid},
                        {"within_new_bound", r.within_new_bound}});
    }
    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        write_table(sink.stream(), t);
    } else {
        ojson j = envelope(env.cfg);
        j["result"] = {{"rows", rows}};
        sink.stream() << j.dump(2) << '\n';
    }
    return exit_ok;
}

int cmd_discrepancy(const Env& env) {
    require_range(env.cfg, 3, charsums::max_dft_degree, "discrepancy");
    const auto opt = suite_options(env.cfg);
    Table t{{"n", "q", "l", "points", "star_d", "star_d_times_q_quarter", "position_deviation", "H", "etk_printed_form",
             "etk_rigorous"},
            {}};
    ojson rows = ojson::array();
    std::vector<double> qs, ds;
    for (unsigned n = env.cfg.n_lo; n <= env.cfg.n_hi; ++n) {
        env.progress("discrepancy n=" + std::to_string(n));
        const auto f = env.field(n);
        charsums::CharContext c(f, gf2n::dlog_tables(f, env.cache()));
        const auto g = charsums::gauss_table(c);
        const std::uint32_t l = env.cfg.l % (f.q - 1);
        const auto seq = equidist::gauss_arg_sequence(c, g, l);
        const double d = equidist::star_discrepancy(seq);
        const double pos = equidist::position_deviation(seq);
        const int H = opt.etk_h > 0 ? opt.etk_h : equidist::quarter_power_h(f.q);
        const auto etk = equidist::etk_bound(seq, H, opt.etk_c);
        const double scaled = d * std::pow(static_cast<double>(f.q), 0.25);
        qs.push_back(f.q);
        ds.push_back(d);
        t.rows.push_back({cell(n), cell(f.q), cell(l), cell(seq.size()), cell(d), cell(scaled), cell(pos), cell(H),
                          cell(etk.printed_form), cell(etk.rigorous)});
        rows.push_back({{"n", n},
                        {"q", f.q},
                        {"l", l},
                        {"points", seq.size()},
                        {"star_d", d},
                        {"star_d_times_q_quarter", scaled},
                        {"position_deviation", pos},
                        {"H", H},
                        {"etk_printed_form", etk.printed_form},
                        {"etk_rigorous", etk.rigorous}});
    }
    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        write_table(sink.stream(), t);
    } else {
        bool decreasing = true;
        for (std::size_t i = 1; i < ds.size(); ++i) decreasing = decreasing && ds[i] < ds[i - 1];
        ojson j = envelope(env.cfg);
        ojson summary{{"strictly_decreasing", decreasing}};
        if (qs.size() >= 2) summary["decay_exponent"] = equidist::log_log_slope(qs, ds);
        j["result"] = {{"rows", rows}, {"summary", summary}};
        sink.stream() << j.dump(2) << '\n';
    }
    return exit_ok;
}

int cmd_rearrange(const Env& env) {
    require_single(env.cfg);
    require_range(env.cfg, 3, 9, "rearrange");
    const unsigned n = env.cfg.n_lo;
    const auto f = env.field(n);
    charsums::CharContext c(f, gf2n::dlog_tables(f, env.cache()));
    const auto g = charsums::gauss_table(c);
    const std::uint32_t l = env.cfg.l % (f.q - 1);

    const auto p = bounds::make_rearrangement_problem(c, g, l, bounds::Objective::all_mu);
    const auto sol = bounds::rearrangement_max(p);
    const double identity = bounds::identity_objective(p);
    const double trivial = bounds::trivial_bound(p);

    const auto even = bounds::make_rearrangement_problem(c, g, l, bounds::Objective::even_mu);
    const auto even_sol = bounds::rearrangement_max(even);

    ojson bj = nullptr;
    double b_identity = 0.0, b_opt = 0.0;
    if (f.q >= 8) {
        const auto bv = bounds::b_mu_value(f.q);
        const auto bp = bounds::make_rearrangement_problem(f.q, even.coefficients, bv.b);
        b_identity = bounds::identity_objective(bp);
        b_opt = bounds::rearrangement_max(bp).objective;
        bj = {{"b_objective", b_identity}, {"optimum_over_b_pool", b_opt}, {"excess", b_opt - b_identity}};
    }

    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        Table t{{"n", "q", "l", "slots", "objective", "identity_objective", "trivial_bound", "objective_over_trivial",
                 "even_objective", "b_objective", "optimum_over_b_pool"},
                {}};
        t.rows.push_back({cell(n), cell(f.q), cell(l), cell(p.slots.size()), cell(sol.objective), cell(identity),
                          cell(trivial), cell(sol.objective / trivial), cell(even_sol.objective), cell(b_identity),
                          cell(b_opt)});
        write_table(sink.stream(), t);
        return exit_ok;
    }
    ojson sigma = ojson::array();
    for (auto s : sol.sigma) sigma.push_back(p.slots[s]);
    ojson j = envelope(env.cfg);
    j["result"] = {{"n", n},
                   {"q", f.q},
                   {"l", l},
                   {"slots", p.slots.size()},
                   {"objective", sol.objective},
                   {"identity_objective", identity},
                   {"trivial_bound", trivial},
                   {"objective_over_trivial", sol.objective / trivial},
                   {"below_trivial", sol.objective < trivial},
                   {"assignment", sigma},
                   {"even_mu", {{"objective", even_sol.objective}, {"identity_objective", bounds::identity_objective(even)}}},
                   {"b_construction", bj}};
    sink.stream() << j.dump(2) << '\n';
    return exit_ok;
}

int cmd_constants(const Env& env) {
    require_range(env.cfg, 4, gf2n::max_degree, "constants");
    const auto terms = bounds::constant_terms();
    const auto integral = bounds::integral_step();
    const auto rc = bounds::recomputed_constant();
    Table t{{"n", "q", "harmonic_exact", "harmonic_asymptotic", "cos2_terms", "cos2_exact", "cos2_printed_form",
             "cos2_riemann_form"},
            {}};
    ojson rows = ojson::array();
    for (unsigned n = env.cfg.n_lo; n <= env.cfg.n_hi; ++n) {
        const std::uint64_t q = std::uint64_t{1} << n;
        const auto h = bounds::harmonic_step(q);
        const auto c2 = bounds::cos2_step(q);
        t.rows.push_back({cell(n), cell(q), cell(h.exact), cell(h.asymptotic), cell(c2.terms), cell(c2.exact),
                          cell(c2.printed_form), cell(c2.riemann_form)});
        rows.push_back({{"n", n},
                        {"q", q},
                        {"harmonic_exact", h.exact},
                        {"harmonic_asymptotic", h.asymptotic},
                        {"cos2_terms", c2.terms},
                        {"cos2_exact", c2.exact},
                        {"cos2_printed_form", c2.printed_form},
                        {"cos2_riemann_form", c2.riemann_form}});
    }
    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        write_table(sink.stream(), t);
        return exit_ok;
    }
    ojson j = envelope(env.cfg);
    j["result"] = {
        {"terms",
         {{"neg_ln_pi", terms.neg_ln_pi},
          {"neg_half_ln_7_plus_4sqrt3", terms.neg_half_ln_7_plus_4sqrt3},
          {"gamma", terms.gamma},
          {"half_pi", terms.half_pi},
          {"neg_pi_over_36", terms.neg_pi_over_36},
          {"neg_sqrt3_over_12", terms.neg_sqrt3_over_12},
          {"one_sixth", terms.one_sixth}}},
        {"assembled", bounds::assemble_constant()},
        {"stated", bounds::stated_constant},
        {"integral",
         {{"numeric", integral.numeric},
          {"error_estimate", integral.error_estimate},
          {"printed_closed_form", integral.printed_closed_form},
          {"deviation", integral.difference()}}},
        {"cos2_integral", bounds::cos2_integral()},
        {"recomputed",
         {{"assembled", rc.assembled},
          {"integral_shift", rc.integral_shift},
          {"cos2_shift", rc.cos2_shift},
          {"constant", rc.recomputed}}},
        {"rows", rows}};
    sink.stream() << j.dump(2) << '\n';
    return exit_ok;
}

int cmd_export(const Env& env) {
    require_single(env.cfg);
    const unsigned n = env.cfg.n_lo;
    const std::string& table = env.cfg.table;
    const std::string format = env.cfg.format == "json" ? "csv" : env.cfg.format;
    if (format != "csv" && format != "hex") throw UsageError("export supports --format csv or hex");
    const bool gaussy = table == "gauss" || table == "amu";
    if (gaussy && format == "hex") throw UsageError("--table " + table + " is CSV only");
    require_range(env.cfg, gaussy ? 3 : gf2n::min_degree, gaussy ? charsums::max_dft_degree : gf2n::max_degree,
                  "export");
    const auto f = env.field(n);
    const auto tables = gf2n::dlog_tables(f, env.cache());
    Sink sink(env.cfg, env.out);
    auto& os = sink.stream();
    if (table == "truth-table") {
        const auto t = boolfn::carlet_feng(f, *tables);
        if (format == "hex")
            os << boolfn::to_hex(t) << '\n';
        else
            boolfn::write_csv(os, t);
    } else if (table == "spectrum") {
        const auto s = boolfn::wht(boolfn::carlet_feng(f, *tables), f);
        if (format == "hex")
            os << boolfn::to_hex(s) << '\n';
        else
            boolfn::write_csv(os, s);
    } else if (table == "gauss") {
        charsums::CharContext c(f, tables);
        charsums::write_gauss_csv(os, charsums::gauss_table(c));
    } else if (table == "amu") {
        spectral::write_amu_csv(os, spectral::amu_table(f.q));
    } else {
        throw UsageError("--table must be one of truth-table, spectrum, gauss, amu");
    }
    return exit_ok;
}

int cmd_compare_gauss(const Env& env) {
    require_single(env.cfg);
    require_range(env.cfg, 3, charsums::max_dft_degree, "compare-gauss");
    std::ifstream in(env.cfg.input);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + env.cfg.input + "'");
    const auto theirs = charsums::read_gauss_csv(in);
    const auto f = env.field(env.cfg.n_lo);
    charsums::CharContext c(f, gf2n::dlog_tables(f, env.cache()));
    const auto ours = charsums::gauss_table(c);
    if (theirs.values.size() != ours.values.size())
        throw Error(ErrorKind::parse, "table has " + std::to_string(theirs.values.size()) + " rows, expected " +
                                          std::to_string(ours.values.size()));
    double max_diff = 0.0;
    std::size_t worst = 0;
    for (std::size_t mu = 0; mu < ours.values.size(); ++mu) {
        const double d = std::abs(ours.values[mu] - theirs.values[mu]);
        if (d > max_diff) {
            max_diff = d;
            worst = mu;
        }
    }
    const double tol = 1e-9 * std::sqrt(static_cast<double>(f.q)) * env.cfg.tolerance_scale;
    const bool ok = max_diff <= tol;
    Sink sink(env.cfg, env.out);
    if (env.csv()) {
        Table t{{"n", "rows", "max_abs_diff", "worst_mu", "tolerance", "passed"}, {}};
        t.rows.push_back({cell(f.n), cell(ours.values.size()), cell(max_diff), cell(worst), cell(tol), cell(ok)});
        write_table(sink.stream(), t);
    } else {
        ojson j = envelope(env.cfg);
        j["result"] = {{"n", f.n},          {"rows", ours.values.size()}, {"max_abs_diff", max_diff},
                       {"worst_mu", worst}, {"tolerance", tol},           {"passed", ok}};
        sink.stream() << j.dump(2) << '\n';
    }
    return ok ? exit_ok : exit_identity_failure;
}

void write_error(std::ostream& out, const std::string& kind, const std::string& message) {
    ojson j;
    j["schema_version"] = schema_version;
    j["error"] = {{"kind", kind}, {"message", message}};
    out << j.dump(2) << '\n';
}

}  // namespace

// --- RunConfig serialization ---------------------------------------------------

nlohmann::ordered_json to_json(const RunConfig& c) {
    ojson j;
    j["command"] = c.command;
    j["n_lo"] = c.n_lo;
    j["n_hi"] = c.n_hi;
    j["modulus"] = c.modulus ? ojson(gf2n::to_hex(*c.modulus)) : ojson(nullptr);
    j["alpha"] = c.alpha ? ojson(hex32(*c.alpha)) : ojson(nullptr);
    j["format"] = c.format;
    j["out"] = c.out;
    j["tolerance_scale"] = c.tolerance_scale;
    j["etk_c"] = c.etk_c;
    j["h_policy"] = c.h_policy;
    j["cache_dir"] = c.cache_dir;
    j["no_cache"] = c.no_cache;
    j["seed"] = c.seed;
    j["l"] = c.l;
    j["samples"] = c.samples;
    j["suites"] = c.suites;
    j["table"] = c.table;
    j["input"] = c.input;
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.n_lo = j.at("n_lo").get<unsigned>();
    c.n_hi = j.at("n_hi").get<unsigned>();
    if (!j.at("modulus").is_null()) c.modulus = parse_uint(j.at("modulus").get<std::string>(), "modulus");
    if (!j.at("alpha").is_null())
        c.alpha = static_cast<std::uint32_t>(parse_uint(j.at("alpha").get<std::string>(), "alpha"));
    c.format = j.at("format").get<std::string>();
    c.out = j.at("out").get<std::string>();
    c.tolerance_scale = j.at("tolerance_scale").get<double>();
    c.etk_c = j.at("etk_c").get<double>();
    c.h_policy = j.at("h_policy").get<std::string>();
    c.cache_dir = j.at("cache_dir").get<std::string>();
    c.no_cache = j.at("no_cache").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.l = j.at("l").get<std::uint32_t>();
    c.samples = j.at("samples").get<std::size_t>();
    c.suites = j.at("suites").get<std::vector<std::string>>();
    c.table = j.at("table").get<std::string>();
    c.input = j.at("input").get<std::string>();
    return c;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    auto num = [](const std::string& s) {
        const auto v = parse_uint(s, "n");
        if (v > 64) throw Error(ErrorKind::out_of_range, "n = " + s + " is out of range");
        return static_cast<unsigned>(v);
    };
    if (dots == std::string::npos) {
        const unsigned n = num(text);
        return {n, n};
    }
    const unsigned lo = num(text.substr(0, dots));
    const unsigned hi = num(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + text + "'");
    return {lo, hi};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Carlet-Feng nonlinearity toolkit", "cfnl"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    RunConfig cfg;
    std::string range, modulus, alpha;
    app.add_option("--modulus", modulus, "Reduction polynomial, hex (e.g. 0x13)");
    app.add_option("--alpha", alpha, "Primitive element, hex");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "hex"}));
    app.add_option("--out", cfg.out, "Write output to a file instead of stdout");
    app.add_option("--tol-scale", cfg.tolerance_scale, "Multiply every identity tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--etk-c", cfg.etk_c, "Constant C in the Erdos-Turan-Koksma form")->check(CLI::PositiveNumber);
    app.add_option("--H", cfg.h_policy, "ETK cutoff: 'quarter' (floor(q^{1/4})) or a positive integer");
    app.add_option("--cache-dir", cfg.cache_dir, "Directory for exp/log table cache");
    app.add_flag("--no-cache", cfg.no_cache, "Neither read nor write the table cache");
    app.add_option("--seed", cfg.seed, "Seed for randomized samples");
    app.add_option("--samples", cfg.samples, "Random samples per sampled check")->check(CLI::PositiveNumber);
    app.add_option("--l", cfg.l, "Shift exponent l (lambda = alpha^l)");

    std::map<std::string, std::function<int(const Env&)>> handlers;
    auto sub = [&](const char* name, const char* help, const char* pos_help, std::function<int(const Env&)> fn) {
        auto* s = app.add_subcommand(name, help);
        if (pos_help) s->add_option("n", range, pos_help)->required();
        handlers[name] = std::move(fn);
        return s;
    };
    sub("field", "Field summary and primitivity certificate", "Degree n", cmd_field);
    sub("analyze", "Exact nonlinearity of the Carlet-Feng function", "Degree n or range a..b", cmd_analyze);
    sub("verify", "Run identity suites", "Degree n or range a..b", cmd_verify)
        ->add_option("--suite", cfg.suites, "Suite to run (repeatable); default all");
    sub("bounds", "Exact gap against the bounds", "Degree range a..b", cmd_bounds);
    sub("discrepancy", "Discrepancy of Gauss-sum arguments", "Degree range a..b", cmd_discrepancy);
    sub("rearrange", "Exact rearrangement optimum", "Degree n (3..9)", cmd_rearrange);
    auto* constants = sub("constants", "Constant assembly and its ingredients", nullptr, cmd_constants);
    constants->add_option("n", range, "Range for the q-dependent steps (default 10..20)");
    sub("export", "Export a table", "Degree n", cmd_export)
        ->add_option("--table", cfg.table, "truth-table, spectrum, gauss or amu")
        ->required();
    sub("compare-gauss", "Compare a Gauss-sum CSV against the computed table", "Degree n", cmd_compare_gauss)
        ->add_option("file", cfg.input, "CSV written by 'export --table gauss'")
        ->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        write_error(out, "usage", e.what());
        return exit_usage;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (cfg.command == "constants" && range.empty()) range = "10..20";
        std::tie(cfg.n_lo, cfg.n_hi) = parse_range(range);
        if (!modulus.empty()) cfg.modulus = parse_uint(modulus, "--modulus");
        if (!alpha.empty()) {
            const auto a = parse_uint(alpha, "--alpha");
            if (a > 0xFFFFFFFFu) throw Error(ErrorKind::out_of_range, "--alpha does not fit the field");
            cfg.alpha = static_cast<std::uint32_t>(a);
        }
        if (cfg.h_policy != "quarter" && parse_uint(cfg.h_policy, "--H") == 0)
            throw UsageError("--H must be 'quarter' or a positive integer");
        if (cfg.format == "hex" && cfg.command != "export") throw UsageError("--format hex applies to export only");
        Env env{cfg, out, err};
        return handlers.at(cfg.command)(env);
    } catch (const UsageError& e) {
        write_error(out, "usage", e.what());
    } catch (const Error& e) {
        write_error(out, to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        write_error(out, "internal", e.what());
    }
    return exit_usage;
}

}  // namespace cfnl::cli
