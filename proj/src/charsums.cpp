#include "cfnl/charsums.hpp"

#include "cfnl/error.hpp"
#include "cfnl/fft.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace cfnl::charsums {

namespace {

int trace_sign(const gf2n::FieldSpec& f, std::uint32_t x) {
    return gf2n::trace(f, gf2n::FieldElement{x}) ? -1 : 1;
}

std::uint32_t reduce(std::int64_t k, std::uint32_t m) {
    std::int64_t r = k % static_cast<std::int64_t>(m);
    if (r < 0) r += m;
    return static_cast<std::uint32_t>(r);
}

}  // namespace

CharContext::CharContext(gf2n::FieldSpec field, std::shared_ptr<const gf2n::DlogTables> tables)
    : field_(std::move(field)), tables_(std::move(tables)) {
    const std::uint32_t order = field_.q - 1;
    roots_.resize(order);
    for (std::uint32_t k = 0; k < order; ++k) roots_[k] = unit_root(k, order);
}

cplx CharContext::zeta_pow(std::int64_t k) const { return roots_[reduce(k, group_order())]; }

cplx CharContext::character(std::uint32_t mu, gf2n::FieldElement x) const {
    if (x.bits == 0) throw Error(ErrorKind::out_of_range, "multiplicative character at 0");
    const std::uint64_t e = static_cast<std::uint64_t>(mu) * dlog().log[x.bits];
    return roots_[e % group_order()];
}

cplx gauss_sum_direct(const CharContext& c, gf2n::FieldElement a, std::uint32_t mu) {
    if (a.bits == 0 || a.bits >= c.q())
        throw Error(ErrorKind::out_of_range, "Gauss sum G(a, chi) needs a in F_q^*");
    const std::uint32_t order = c.group_order();
    if (mu >= order) throw Error(ErrorKind::out_of_range, "mu must lie in [0, q-2]");
    const auto& t = c.dlog();
    const std::uint32_t log_a = t.log[a.bits];
    CompensatedComplexSum sum;
    for (std::uint32_t i = 0; i < order; ++i) {
        const std::uint32_t ax = t.exp[(static_cast<std::uint64_t>(log_a) + i) % order];
        const cplx chi = c.zeta_pow(static_cast<std::int64_t>((static_cast<std::uint64_t>(mu) * i) % order));
        sum.add(chi * static_cast<double>(trace_sign(c.field(), ax)));
    }
    return sum.value();
}

GaussTable gauss_table(const CharContext& c, GaussMethod method) {
    const unsigned n = c.field().n;
    const std::uint32_t order = c.group_order();
    GaussTable g{n, method, {}};
    if (method == GaussMethod::direct) {
        if (n > max_direct_degree)
            throw Error(ErrorKind::size_limit, "direct Gauss table limited to n <= " +
                                                   std::to_string(max_direct_degree));
        g.values.resize(order);
        std::vector<double> signs(order);
        for (std::uint32_t i = 0; i < order; ++i) signs[i] = trace_sign(c.field(), c.dlog().exp[i]);
        for (std::uint32_t mu = 0; mu < order; ++mu) {
            CompensatedComplexSum sum;
            std::uint32_t k = 0;  // mu * i mod (q-1)
            for (std::uint32_t i = 0; i < order; ++i) {
                sum.add(c.zeta_pow(k) * signs[i]);
                k += mu;
                if (k >= order) k -= order;
            }
            g.values[mu] = sum.value();
        }
        return g;
    }
    if (n > max_dft_degree)
        throw Error(ErrorKind::size_limit,
                    "DFT Gauss table limited to n <= " + std::to_string(max_dft_degree));
    std::vector<cplx> signal(order);
    for (std::uint32_t i = 0; i < order; ++i) signal[i] = trace_sign(c.field(), c.dlog().exp[i]);
    g.values = fft::Bluestein(order).transform(signal, +1);
    return g;
}

cplx gauss_sum_shifted(const CharContext& c, const GaussTable& g, gf2n::FieldElement a,
                       std::uint32_t mu) {
    if (a.bits == 0 || a.bits >= c.q())
        throw Error(ErrorKind::out_of_range, "Gauss sum G(a, chi) needs a in F_q^*");
    const std::uint64_t e = static_cast<std::uint64_t>(mu) * c.dlog().log[a.bits];
    return c.zeta_pow(-static_cast<std::int64_t>(e % c.group_order())) * g.values.at(mu);
}

std::int64_t deligne_sum(const CharContext& c, gf2n::FieldElement a, unsigned r) {
    if (a.bits == 0 || a.bits >= c.q()) throw Error(ErrorKind::out_of_range, "a must be nonzero");
    if (r < 1 || r > max_oracle_power)
        throw Error(ErrorKind::size_limit, "enumeration oracle supports r in [1, " +
                                               std::to_string(max_oracle_power) + "]");
    const auto& f = c.field();
    const auto& exp = c.dlog().exp;
    const std::uint32_t order = c.group_order();
    // Tr(a y) = parity(u & y).
    const std::uint32_t u = gf2n::trace_form_vector(f, a);
    auto psi = [u](std::uint32_t y) -> std::int64_t { return (std::popcount(u & y) & 1) ? -1 : 1; };

    std::int64_t sum = 0;
    switch (r) {
        case 1:
            sum = psi(1);
            break;
        case 2:
            // x_2 = x_1^{-1}
            for (std::uint32_t i = 0; i < order; ++i) sum += psi(exp[i] ^ exp[(order - i) % order]);
            break;
        case 3:
            for (std::uint32_t i = 0; i < order; ++i) {
                for (std::uint32_t j = 0; j < order; ++j) {
                    const std::uint32_t k = (2 * order - i - j) % order;
                    sum += psi(exp[i] ^ exp[j] ^ exp[k]);
                }
            }
            break;
        default:
            break;
    }
    return sum;
}

MomentQuery power_moment(const CharContext& c, const GaussTable& g, gf2n::FieldElement a,
                         unsigned r, double tolerance_scale, bool enumerate) {
    if (r == 0) throw Error(ErrorKind::out_of_range, "moment order r must be positive");
    const double q = c.q();
    MomentQuery m;
    m.a = a;
    m.r = r;
    CompensatedComplexSum sum;
    for (std::uint32_t mu = 1; mu + 1 < c.q(); ++mu) {
        const cplx z = gauss_sum_shifted(c, g, a, mu);
        sum.add(std::pow(z, static_cast<int>(r)));
    }
    m.moment = sum.value();
    m.moment_bound = 1.0 + r * std::pow(q, (r + 1) / 2.0);
    m.deligne_bound = r * std::pow(q, (r - 1) / 2.0);
    m.identity_tolerance = tolerance_scale * std::pow(q, r / 2.0);
    if (!enumerate || r > max_oracle_power) {
        m.oracle_skipped = true;
        return m;
    }
    m.deligne_sum = deligne_sum(c, a, r);
    const double mu0 = (r % 2 == 0) ? 1.0 : -1.0;  // G(a, chi^0)^r = (-1)^r
    const cplx expected{(q - 1.0) * static_cast<double>(*m.deligne_sum) - mu0, 0.0};
    m.identity_residual = std::abs(m.moment - expected);
    return m;
}

const char* to_string(GaussMethod m) { return m == GaussMethod::direct ? "direct" : "dft"; }

void write_gauss_csv(std::ostream& out, const GaussTable& g) {
    out << "mu,re,im,abs,arg\n";
    for (std::size_t mu = 0; mu < g.values.size(); ++mu) {
        const cplx z = g.values[mu];
        out << mu << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
            << format_double(std::abs(z)) << ',' << format_double(std::arg(z)) << '\n';
    }
}

GaussTable read_gauss_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("mu,re,im", 0) != 0)
        throw Error(ErrorKind::parse, "Gauss table CSV must start with a 'mu,re,im,...' header");
    GaussTable g;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string mu_s, re_s, im_s;
        if (!std::getline(row, mu_s, ',') || !std::getline(row, re_s, ',') ||
            !std::getline(row, im_s, ','))
            throw Error(ErrorKind::parse, "malformed Gauss table row: " + line);
        std::size_t mu = 0;
        double re = 0, im = 0;
        try {
            mu = std::stoul(mu_s);
            re = std::stod(re_s);
            im = std::stod(im_s);
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse, "non-numeric Gauss table row: " + line);
        }
        if (mu != expected) throw Error(ErrorKind::parse, "Gauss table rows must be consecutive from mu=0");
        g.values.emplace_back(re, im);
        ++expected;
    }
    // q - 1 = 2^n - 1
    const std::size_t q = g.values.size() + 1;
    if (g.values.empty() || !std::has_single_bit(q))
        throw Error(ErrorKind::parse, "Gauss table length is not 2^n - 1");
    g.n = static_cast<unsigned>(std::countr_zero(q));
    return g;
}

}  // namespace cfnl::charsums
