#include "cfnl/spectral.hpp"

#include "cfnl/error.hpp"

#include <bit>
#include <cmath>
#include <ostream>

namespace cfnl::spectral {

namespace {

void require_q(std::uint64_t q) {
    if (q < 4 || !std::has_single_bit(q))
        throw Error(ErrorKind::out_of_range, "q must be a power of two >= 4");
}

void require_mu(std::uint64_t q, std::uint64_t mu) {
    require_q(q);
    if (mu % (q - 1) == 0)
        throw Error(ErrorKind::out_of_range, "a_mu undefined for mu = 0 mod (q-1): 1 - zeta^{-mu} = 0");
    if (mu > q - 2) throw Error(ErrorKind::out_of_range, "mu must lie in [1, q-2]");
}

double half_angle(std::uint64_t q, std::uint64_t mu) {
    return pi * static_cast<double>(mu) / (2.0 * static_cast<double>(q - 1));
}

}  // namespace

AmuCoefficient a_mu(std::uint64_t q, std::uint64_t mu) {
    require_mu(q, mu);
    const std::uint64_t m = q - 1;
    const auto imu = static_cast<std::int64_t>(mu);
    const cplx num = unit_root_minus_one(-imu * static_cast<std::int64_t>(q / 2 - 1), m);
    const cplx den = -unit_root_minus_one(-imu, m);

    AmuCoefficient a;
    a.mu = mu;
    a.value = num / den;
    const double t = half_angle(q, mu);
    // cos t taken as sin of the complementary angle, exact in integers
    a.modulus_printed = 1.0 / (2.0 * std::sin(half_angle(q, m - mu)));
    a.modulus_cf = (mu % 2 == 0) ? a.modulus_printed : 1.0 / (2.0 * std::sin(t));
    const double base = 3.0 * t;
    a.arg_cf = canonical_angle(mu % 2 == 0 ? base : base + pi / 2.0);
    return a;
}

std::vector<AmuCoefficient> amu_table(std::uint64_t q) {
    require_q(q);
    std::vector<AmuCoefficient> out;
    out.reserve(q - 2);
    for (std::uint64_t mu = 1; mu + 1 < q; ++mu) out.push_back(a_mu(q, mu));
    return out;
}

cplx cubic_parameter(std::uint64_t q, std::uint64_t mu) {
    require_mu(q, mu);
    // exp(-i pi mu/(q-1)) = unit_root(-mu, 2(q-1))
    const cplx z = unit_root(-static_cast<std::int64_t>(mu), 2 * (q - 1));
    return mu % 2 == 0 ? z : -z;
}

double cubic_map_residual(std::uint64_t q, std::uint64_t mu) {
    const cplx z = cubic_parameter(q, mu);
    // z + z^2 = z (1 + z); 1 + z formed without cancellation near z = -1
    const auto imu = static_cast<std::int64_t>(mu);
    const auto m2 = 2 * (q - 1);
    const cplx one_plus_z = mu % 2 == 0 ? -unit_root_minus_one(static_cast<std::int64_t>(q - 1) - imu, m2)
                                        : -unit_root_minus_one(-imu, m2);
    return std::abs(a_mu(q, mu).value - 1.0 / (z * one_plus_z));
}

bool cubic_map_check(std::uint64_t q, std::uint64_t mu, double tol) {
    return cubic_map_residual(q, mu) <= tol;
}

std::vector<double> amu_argument_points(std::uint64_t q) {
    require_q(q);
    std::vector<double> pts;
    pts.reserve(q - 2);
    const double denom = 2.0 * static_cast<double>(q - 1);
    for (std::uint64_t mu = 1; mu + 1 < q; ++mu) {
        const double unwrapped = (mu % 2 == 0)
                                     ? 3.0 * pi * static_cast<double>(mu) / denom
                                     : -3.0 * pi * static_cast<double>(q - 1 - mu) / denom;
        double x = (unwrapped + 1.5 * pi) / (3.0 * pi);
        if (x >= 1.0) x = std::nextafter(1.0, 0.0);
        pts.push_back(x);
    }
    return pts;
}

cplx s_lambda_via_gauss(const charsums::CharContext& c, const charsums::GaussTable& g,
                        std::span<const AmuCoefficient> amu, std::uint32_t ell) {
    const std::uint64_t q = c.q();
    if (ell >= q - 1) throw Error(ErrorKind::out_of_range, "ell must lie in [0, q-2]");
    if (g.values.size() != q - 1) throw Error(ErrorKind::out_of_range, "Gauss table belongs to another field");
    if (amu.size() != q - 2) throw Error(ErrorKind::out_of_range, "a_mu table belongs to another field");
    CompensatedComplexSum sum;
    for (std::uint64_t mu = 1; mu + 1 < q; ++mu) {
        const cplx shift = c.zeta_pow(-static_cast<std::int64_t>((mu * ell) % (q - 1)));
        sum.add(g.values[mu] * shift * amu[mu - 1].value);
    }
    return (sum.value() - static_cast<double>(q) / 2.0) / static_cast<double>(q - 1);
}

cplx s_lambda_via_gauss(const charsums::CharContext& c, const charsums::GaussTable& g,
                        std::uint32_t ell) {
    const auto amu = amu_table(c.q());
    return s_lambda_via_gauss(c, g, amu, ell);
}

double carlet_feng_rhs(std::uint64_t q) {
    require_q(q);
    CompensatedSum sum;
    for (std::uint64_t mu = 1; mu + 1 < q; ++mu) sum.add(std::abs(a_mu(q, mu).value));
    const double qd = static_cast<double>(q);
    return (std::sqrt(qd) * sum.value() + qd / 2.0) / (qd - 1.0);
}

double carlet_feng_rhs(std::uint64_t q, const charsums::GaussTable& g) {
    require_q(q);
    if (g.values.size() != q - 1) throw Error(ErrorKind::out_of_range, "Gauss table belongs to another field");
    CompensatedSum sum;
    for (std::uint64_t mu = 1; mu + 1 < q; ++mu) sum.add(std::abs(g.values[mu]) * std::abs(a_mu(q, mu).value));
    const double qd = static_cast<double>(q);
    return (sum.value() + qd / 2.0) / (qd - 1.0);
}

double carlet_feng_rhs_closed_form(std::uint64_t q) {
    require_q(q);
    // |a_{q-1-mu}| = |a_mu| pairs each odd mu with an even one.
    CompensatedSum sum;
    for (std::uint64_t mu = 2; mu + 1 < q; mu += 2) sum.add(2.0 / (2.0 * std::sin(half_angle(q, q - 1 - mu))));
    const double qd = static_cast<double>(q);
    return (std::sqrt(qd) * sum.value() + qd / 2.0) / (qd - 1.0);
}

void write_amu_csv(std::ostream& out, const std::vector<AmuCoefficient>& table) {
    out << "mu,re,im,abs,arg\n";
    for (const auto& a : table) {
        out << a.mu << ',' << format_double(a.value.real()) << ',' << format_double(a.value.imag())
            << ',' << format_double(std::abs(a.value)) << ',' << format_double(std::arg(a.value))
            << '\n';
    }
}

}  // namespace cfnl::spectral
