#pragma once

// Truth tables over GF(2^n), the Walsh-Hadamard transform in trace form,
// nonlinearity, and the S_lambda partial character sums of the
// Carlet-Feng function.

#include "cfnl/gf2n.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cfnl::boolfn {

struct TruthTable {
    unsigned n = 0;
    /// values[x.bits] in {0, 1}.
    std::vector<std::uint8_t> values;

    std::size_t size() const { return values.size(); }
    std::uint64_t weight() const;
};

struct WalshSpectrum {
    unsigned n = 0;
    /// coeffs[lambda] = sum_x (-1)^{f(x) + Tr(lambda x)}, or the dot-product
    /// pairing for spectra produced by wht_dot.
    std::vector<std::int32_t> coeffs;
};

struct SLambdaQuery {
    std::uint32_t ell = 0;  // lambda = alpha^ell
    std::int64_t value = 0;
};

/// Indicator of {0, 1, alpha, ..., alpha^{2^{n-1}-2}}.
TruthTable carlet_feng(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables);

/// In-place unnormalized Walsh-Hadamard butterflies (dot-product pairing).
void fwht_inplace(std::span<std::int32_t> data);

/// Dot-product spectrum: sum_x (-1)^{f(x) + u.x}.
WalshSpectrum wht_dot(const TruthTable& t);

/// Trace-form spectrum: coeffs[lambda] = sum_x (-1)^{f(x) + Tr(lambda x)}.
WalshSpectrum wht(const TruthTable& t, const gf2n::FieldSpec& f);

/// Table of trace_form_vector(lambda) for every lambda, built by linearity.
std::vector<std::uint32_t> trace_pairing_map(const gf2n::FieldSpec& f);

/// 2^{n-1} - max|W|/2 over all lambda (pairing-independent).
std::int64_t nonlinearity(const TruthTable& t);
std::int64_t nonlinearity(const WalshSpectrum& s);

std::int64_t parseval_sum(const WalshSpectrum& s);

/// sum_{i=2^{n-1}-1}^{2^n-2} (-1)^{Tr(alpha^ell alpha^i)}.
std::int64_t s_lambda_direct(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables,
                             std::uint32_t ell);

/// Every S_lambda, indexed by ell, from one trace-form transform.
std::vector<SLambdaQuery> s_lambda_all(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables);

void write_csv(std::ostream& out, const TruthTable& t);
void write_csv(std::ostream& out, const WalshSpectrum& s);

/// Bit-packed, point 0 is the most significant bit of the first nibble.
/// Tables with fewer than 4 points are padded with zero bits.
std::string to_hex(const TruthTable& t);
TruthTable truth_table_from_hex(unsigned n, const std::string& hex);

/// 8 hex digits (two's complement, big-endian) per coefficient.
std::string to_hex(const WalshSpectrum& s);

}  // namespace cfnl::boolfn
