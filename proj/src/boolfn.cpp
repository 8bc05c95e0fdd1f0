#include "cfnl/boolfn.hpp"

#include "cfnl/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <ostream>

namespace cfnl::boolfn {

std::uint64_t TruthTable::weight() const {
    return static_cast<std::uint64_t>(std::count(values.begin(), values.end(), std::uint8_t{1}));
}

TruthTable carlet_feng(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables) {
    TruthTable t{f.n, std::vector<std::uint8_t>(f.q, 0)};
    t.values[0] = 1;
    const std::uint32_t last = f.q / 2 - 2;  // support is alpha^0 .. alpha^{q/2-2}
    for (std::uint32_t i = 0; i <= last; ++i) t.values[tables.exp[i]] = 1;
    return t;
}

void fwht_inplace(std::span<std::int32_t> data) {
    const std::size_t len = data.size();
    for (std::size_t half = 1; half < len; half <<= 1) {
        for (std::size_t block = 0; block < len; block += 2 * half) {
            for (std::size_t j = block; j < block + half; ++j) {
                const std::int32_t a = data[j];
                const std::int32_t b = data[j + half];
                data[j] = a + b;
                data[j + half] = a - b;
            }
        }
    }
}

WalshSpectrum wht_dot(const TruthTable& t) {
    WalshSpectrum s{t.n, std::vector<std::int32_t>(t.size())};
    std::transform(t.values.begin(), t.values.end(), s.coeffs.begin(),
                   [](std::uint8_t v) { return v ? -1 : 1; });
    fwht_inplace(s.coeffs);
    return s;
}

std::vector<std::uint32_t> trace_pairing_map(const gf2n::FieldSpec& f) {
    std::vector<std::uint32_t> columns(f.n);
    for (unsigned j = 0; j < f.n; ++j)
        columns[j] = gf2n::trace_form_vector(f, gf2n::FieldElement{1u << j});
    std::vector<std::uint32_t> map(f.q, 0);
    for (std::uint32_t lambda = 1; lambda < f.q; ++lambda) {
        map[lambda] = map[lambda & (lambda - 1)] ^ columns[std::countr_zero(lambda)];
    }
    return map;
}

WalshSpectrum wht(const TruthTable& t, const gf2n::FieldSpec& f) {
    if (t.n != f.n) throw Error(ErrorKind::out_of_range, "truth table and field degrees differ");
    const WalshSpectrum dot = wht_dot(t);
    const auto map = trace_pairing_map(f);
    WalshSpectrum s{t.n, std::vector<std::int32_t>(t.size())};
    for (std::uint32_t lambda = 0; lambda < f.q; ++lambda) s.coeffs[lambda] = dot.coeffs[map[lambda]];
    return s;
}

std::int64_t nonlinearity(const WalshSpectrum& s) {
    std::int64_t peak = 0;
    for (std::int32_t c : s.coeffs) peak = std::max<std::int64_t>(peak, std::abs(static_cast<std::int64_t>(c)));
    return (std::int64_t{1} << (s.n - 1)) - peak / 2;
}

std::int64_t nonlinearity(const TruthTable& t) { return nonlinearity(wht_dot(t)); }

std::int64_t parseval_sum(const WalshSpectrum& s) {
    std::int64_t sum = 0;
    for (std::int32_t c : s.coeffs) sum += static_cast<std::int64_t>(c) * c;
    return sum;
}

std::int64_t s_lambda_direct(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables,
                             std::uint32_t ell) {
    const std::uint32_t order = f.q - 1;
    if (ell >= order) throw Error(ErrorKind::out_of_range, "ell must lie in [0, q-2]");
    std::int64_t sum = 0;
    for (std::uint32_t i = f.q / 2 - 1; i <= f.q - 2; ++i) {
        const std::uint32_t x = tables.exp[(static_cast<std::uint64_t>(ell) + i) % order];
        sum += gf2n::trace(f, gf2n::FieldElement{x}) ? -1 : 1;
    }
    return sum;
}

std::vector<SLambdaQuery> s_lambda_all(const gf2n::FieldSpec& f, const gf2n::DlogTables& tables) {
    const WalshSpectrum s = wht(carlet_feng(f, tables), f);
    std::vector<SLambdaQuery> out(f.q - 1);
    for (std::uint32_t ell = 0; ell + 1 < f.q; ++ell) {
        out[ell] = {ell, s.coeffs[tables.exp[ell]] / 2};
    }
    return out;
}

void write_csv(std::ostream& out, const TruthTable& t) {
    out << "index,value\n";
    for (std::size_t i = 0; i < t.size(); ++i) out << i << ',' << int{t.values[i]} << '\n';
}

void write_csv(std::ostream& out, const WalshSpectrum& s) {
    out << "index,value\n";
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) out << i << ',' << s.coeffs[i] << '\n';
}

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";
}

std::string to_hex(const TruthTable& t) {
    const std::size_t nibbles = (t.size() + 3) / 4;
    std::string out(nibbles, '0');
    for (std::size_t k = 0; k < nibbles; ++k) {
        unsigned nib = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t idx = 4 * k + b;
            nib = (nib << 1) | (idx < t.size() ? t.values[idx] : 0u);
        }
        out[k] = kHexDigits[nib];
    }
    return out;
}

TruthTable truth_table_from_hex(unsigned n, const std::string& hex) {
    const std::size_t size = std::size_t{1} << n;
    if (hex.size() != (size + 3) / 4)
        throw Error(ErrorKind::parse, "hex truth table has wrong length for n=" + std::to_string(n));
    TruthTable t{n, std::vector<std::uint8_t>(size)};
    for (std::size_t k = 0; k < hex.size(); ++k) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[k])));
        const char* pos = std::find(std::begin(kHexDigits), std::end(kHexDigits) - 1, c);
        if (pos == std::end(kHexDigits) - 1) throw Error(ErrorKind::parse, "invalid hex digit");
        const unsigned nib = static_cast<unsigned>(pos - kHexDigits);
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t idx = 4 * k + b;
            if (idx < size) t.values[idx] = static_cast<std::uint8_t>((nib >> (3 - b)) & 1u);
        }
    }
    return t;
}

std::string to_hex(const WalshSpectrum& s) {
    std::string out;
    out.reserve(8 * s.coeffs.size());
    for (std::int32_t c : s.coeffs) {
        const auto u = static_cast<std::uint32_t>(c);
        for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kHexDigits[(u >> shift) & 0xf]);
    }
    return out;
}

}  // namespace cfnl::boolfn
