#pragma once

// The coefficients a_mu = (zeta^{-mu(q/2-1)} - 1) / (1 - zeta^{-mu}) that
// carry S_lambda into Gauss-sum space, their closed forms on the cubic
// z -> 1/(z + z^2), and the Fourier expansion of S_lambda.

#include "cfnl/charsums.hpp"
#include "cfnl/numeric.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace cfnl::spectral {

struct AmuCoefficient {
    std::uint64_t mu = 0;
    /// From the defining quotient.
    cplx value;
    /// Parity-aware closed form: 1/(2cos(pi mu/(2(q-1)))) for even mu,
    /// 1/(2sin(pi mu/(2(q-1)))) for odd mu.
    double modulus_cf = 0.0;
    /// 1/(2cos(pi mu/(2(q-1)))) for every mu, as printed in the closed-form
    /// proposition; equals modulus_cf only for even mu.
    double modulus_printed = 0.0;
    /// 3 pi mu/(2(q-1)) (+ pi/2 for odd mu), reduced to (-pi, pi].
    double arg_cf = 0.0;
};

/// q must be a power of two >= 4; 1 <= mu <= q-2.
AmuCoefficient a_mu(std::uint64_t q, std::uint64_t mu);

std::vector<AmuCoefficient> amu_table(std::uint64_t q);

/// The point z on the unit circle whose cubic image 1/(z + z^2) is a_mu.
cplx cubic_parameter(std::uint64_t q, std::uint64_t mu);
/// |a_mu - 1/(z + z^2)|.
double cubic_map_residual(std::uint64_t q, std::uint64_t mu);
bool cubic_map_check(std::uint64_t q, std::uint64_t mu, double tol = 1e-10);

/// Unwrapped arguments: 3 pi mu/(2(q-1)) for even mu and its negated partner
/// -3 pi (q-1-mu)/(2(q-1)) for odd mu, mapped from [-3pi/2, 3pi/2) to [0, 1).
std::vector<double> amu_argument_points(std::uint64_t q);

/// (1/(q-1)) (sum_{mu=1}^{q-2} G(chi^mu) zeta^{-mu ell} a_mu - q/2).
cplx s_lambda_via_gauss(const charsums::CharContext& c, const charsums::GaussTable& g,
                        std::uint32_t ell);
/// Same, reusing a precomputed amu_table(q) across many ell.
cplx s_lambda_via_gauss(const charsums::CharContext& c, const charsums::GaussTable& g,
                        std::span<const AmuCoefficient> amu, std::uint32_t ell);

/// (1/(q-1)) (sqrt(q) sum_mu |a_mu| + q/2), |a_mu| from the defining quotient.
double carlet_feng_rhs(std::uint64_t q);
/// Same bound with the measured |G(chi^mu)| in place of sqrt(q).
double carlet_feng_rhs(std::uint64_t q, const charsums::GaussTable& g);
/// Same bound with |a_mu| from the even-mu closed form and conjugate symmetry.
double carlet_feng_rhs_closed_form(std::uint64_t q);

void write_amu_csv(std::ostream& out, const std::vector<AmuCoefficient>& table);

}  // namespace cfnl::spectral
