#pragma once

// Arithmetic in GF(2^n) over a polynomial basis, with primitive-element
// discovery and cached exp/log tables.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfnl::gf2n {

/// Polynomial over GF(2); bit i is the coefficient of x^i.
using Poly = std::uint64_t;

inline constexpr unsigned min_degree = 2;
inline constexpr unsigned max_degree = 24;

struct FieldElement {
    std::uint32_t bits = 0;

    friend constexpr FieldElement operator+(FieldElement a, FieldElement b) {
        return {a.bits ^ b.bits};
    }
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

enum class FieldSource { builtin_table, user_supplied };

struct FieldSpec {
    unsigned n = 0;
    std::uint32_t q = 0;
    Poly modulus = 0;
    FieldElement alpha;
    FieldSource source = FieldSource::builtin_table;
    /// Tr(a) = parity(a & trace_mask).
    std::uint32_t trace_mask = 0;
    /// Distinct primes dividing q-1 (the primitivity certificate).
    std::vector<std::uint32_t> order_primes;

    std::uint32_t group_order() const { return q - 1; }
};

/// Lowest-weight, then numerically smallest, irreducible polynomial of degree n.
Poly default_modulus(unsigned n);

struct IrreducibilityResult {
    bool irreducible = false;
    /// Human-readable name of the first check that failed; empty on success.
    std::string failed_check;
};

/// Rabin-style test: gcd(x^{2^d} - x, f) = 1 for d | n, d < n, and f | x^{2^n} - x.
IrreducibilityResult check_irreducible(Poly modulus, unsigned n);

unsigned poly_degree(Poly p);
Poly poly_mod(Poly a, Poly m);
Poly poly_gcd(Poly a, Poly b);

/// Builds GF(2^n). When `alpha` is given it must have full order.
FieldSpec build_field(unsigned n, std::optional<Poly> modulus = std::nullopt,
                      std::optional<std::uint32_t> alpha = std::nullopt);

FieldElement mul(const FieldSpec& f, FieldElement a, FieldElement b);
FieldElement pow(const FieldSpec& f, FieldElement a, std::uint64_t e);
FieldElement square(const FieldSpec& f, FieldElement a);

/// Trace through the precomputed linear functional.
int trace(const FieldSpec& f, FieldElement a);
/// Trace by the definition a + a^2 + ... + a^{2^{n-1}}; O(n) multiplications.
int trace_by_frobenius(const FieldSpec& f, FieldElement a);

/// Vector u with parity(u & x) = Tr(lambda * x) for every x.
std::uint32_t trace_form_vector(const FieldSpec& f, FieldElement lambda);

/// Multiplicative order of a nonzero element.
std::uint64_t multiplicative_order(const FieldSpec& f, FieldElement a);

bool is_primitive(const FieldSpec& f, FieldElement a);

/// Distinct prime factors, ascending.
std::vector<std::uint32_t> distinct_prime_factors(std::uint64_t m);

struct DlogTables {
    static constexpr std::uint32_t undefined_log = 0xFFFFFFFFu;

    /// exp[i] = alpha^i, i in [0, q-2].
    std::vector<std::uint32_t> exp;
    /// log[exp[i]] = i; log[0] = undefined_log.
    std::vector<std::uint32_t> log;

    friend bool operator==(const DlogTables&, const DlogTables&) = default;
};

DlogTables compute_dlog_tables(const FieldSpec& f);

struct CacheOptions {
    bool enabled = true;
    /// Empty means default_cache_dir().
    std::filesystem::path dir;
    /// Receives warnings such as checksum mismatches. Defaults to stderr.
    std::function<void(std::string_view)> warn;
};

/// $CFNL_CACHE_DIR, else $XDG_CACHE_HOME/cfnl, else $HOME/.cache/cfnl.
std::filesystem::path default_cache_dir();

/// gf2_<n>_<modulus-hex>.tbl
std::string cache_file_name(const FieldSpec& f);

/// Computes the tables, or reloads them from the on-disk cache.
std::shared_ptr<const DlogTables> dlog_tables(const FieldSpec& f,
                                              const CacheOptions& cache = {});

// Cache file codec, exposed for tests.
std::vector<std::uint8_t> encode_cache(const FieldSpec& f, const DlogTables& t);
/// Returns nullopt (with a reason) when the blob is corrupt or keyed differently.
std::optional<DlogTables> decode_cache(const FieldSpec& f,
                                       const std::vector<std::uint8_t>& blob,
                                       std::string* reason = nullptr);

std::string to_hex(Poly p);
std::string poly_to_string(Poly p);

}  // namespace cfnl::gf2n
