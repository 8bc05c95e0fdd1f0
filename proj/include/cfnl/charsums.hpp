#pragma once

// Multiplicative characters chi^mu(alpha^i) = zeta^{mu i}, Gauss sums
// G(a, chi^mu) = sum_{x != 0} chi^mu(x) (-1)^{Tr(a x)}, their power moments
// and the product-one additive sums that control them.

#include "cfnl/gf2n.hpp"
#include "cfnl/numeric.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace cfnl::charsums {

inline constexpr unsigned max_direct_degree = 13;
inline constexpr unsigned max_dft_degree = 20;
inline constexpr unsigned max_oracle_power = 3;

class CharContext {
public:
    CharContext(gf2n::FieldSpec field, std::shared_ptr<const gf2n::DlogTables> tables);

    const gf2n::FieldSpec& field() const { return field_; }
    const gf2n::DlogTables& dlog() const { return *tables_; }
    std::uint32_t q() const { return field_.q; }
    std::uint32_t group_order() const { return field_.q - 1; }

    /// zeta = exp(2 pi i / (q-1)).
    cplx zeta() const { return roots_.size() > 1 ? roots_[1] : cplx{1.0, 0.0}; }
    /// zeta^k for any integer k.
    cplx zeta_pow(std::int64_t k) const;
    /// chi^mu(x) for x != 0.
    cplx character(std::uint32_t mu, gf2n::FieldElement x) const;

private:
    gf2n::FieldSpec field_;
    std::shared_ptr<const gf2n::DlogTables> tables_;
    std::vector<cplx> roots_;  // zeta^k, k in [0, q-2]
};

enum class GaussMethod { direct, dft };

struct GaussTable {
    unsigned n = 0;
    GaussMethod method = GaussMethod::dft;
    /// values[mu] = G(chi^mu) = G(1, chi^mu), mu in [0, q-2].
    std::vector<cplx> values;
};

/// O(q) evaluation of G(a, chi^mu); a must be nonzero.
cplx gauss_sum_direct(const CharContext& c, gf2n::FieldElement a, std::uint32_t mu);

/// All G(chi^mu) as the length-(q-1) transform of t_i = (-1)^{Tr(alpha^i)}.
GaussTable gauss_table(const CharContext& c, GaussMethod method = GaussMethod::dft);

/// G(a, chi^mu) = zeta^{-mu log a} G(chi^mu), read from a table.
cplx gauss_sum_shifted(const CharContext& c, const GaussTable& g, gf2n::FieldElement a,
                       std::uint32_t mu);

struct MomentQuery {
    gf2n::FieldElement a;
    unsigned r = 0;
    /// sum_{mu=1}^{q-2} G(a, chi^mu)^r
    cplx moment;
    /// sum over x_1...x_r = 1 of (-1)^{Tr(a(x_1 + ... + x_r))}; empty when r
    /// exceeds max_oracle_power.
    std::optional<std::int64_t> deligne_sum;
    bool oracle_skipped = false;

    double moment_bound = 0.0;   // 1 + r q^{(r+1)/2}
    double deligne_bound = 0.0;  // r q^{(r-1)/2}
    double identity_tolerance = 0.0;
    double identity_residual = 0.0;  // |moment - ((q-1) deligne_sum - (-1)^r)|

    bool moment_bound_ok() const { return std::abs(moment) <= moment_bound; }
    bool deligne_bound_ok() const {
        return !deligne_sum || std::abs(static_cast<double>(*deligne_sum)) <= deligne_bound;
    }
    bool identity_ok() const { return oracle_skipped || identity_residual <= identity_tolerance; }
};

/// Exhaustive enumeration over (r-1)-tuples; r in [1, max_oracle_power].
std::int64_t deligne_sum(const CharContext& c, gf2n::FieldElement a, unsigned r);

/// Fills the moment from the table and, for small r, checks it against the
/// enumeration through (q-1) deligne_sum = sum_{mu=0}^{q-2} G(a, chi^mu)^r.
/// The identity tolerance is tolerance_scale * q^{r/2}. enumerate = false
/// skips the enumeration for any r.
MomentQuery power_moment(const CharContext& c, const GaussTable& g, gf2n::FieldElement a,
                         unsigned r, double tolerance_scale = 1e-6, bool enumerate = true);

void write_gauss_csv(std::ostream& out, const GaussTable& g);
/// Reads a table written by write_gauss_csv (re, im columns are authoritative).
GaussTable read_gauss_csv(std::istream& in);

const char* to_string(GaussMethod m);

}  // namespace cfnl::charsums
