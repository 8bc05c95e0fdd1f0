#include "cfnl/gf2n.hpp"

#include "cfnl/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace cfnl::gf2n {

namespace {

// Lowest weight first, then smallest value. Index = degree.
constexpr std::array<Poly, max_degree + 1> kDefaultModuli = {
    0, 0, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009,
    0x201b, 0x4021, 0x8003, 0x1002b, 0x20009, 0x40009, 0x80027, 0x100009,
    0x200005, 0x400003, 0x800021, 0x100001b,
};

constexpr std::uint32_t kCacheVersion = 1;
constexpr std::array<std::uint8_t, 8> kCacheMagic = {'C', 'F', 'N', 'L', 'G', 'F', '2', 0};

// Multiplication modulo an arbitrary (possibly reducible) degree-n modulus.
std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, Poly modulus, unsigned n) {
    std::uint64_t acc = 0;
    std::uint64_t aa = a;
    while (b != 0) {
        if (b & 1u) acc ^= aa;
        b >>= 1;
        aa <<= 1;
    }
    for (int bit = 2 * static_cast<int>(n) - 2; bit >= static_cast<int>(n); --bit) {
        if ((acc >> bit) & 1u) acc ^= modulus << (bit - static_cast<int>(n));
    }
    return static_cast<std::uint32_t>(acc);
}

void require_degree(unsigned n) {
    if (n < min_degree || n > max_degree) {
        throw Error(ErrorKind::out_of_range,
                    "extension degree n=" + std::to_string(n) + " outside [" +
                        std::to_string(min_degree) + ", " + std::to_string(max_degree) + "]");
    }
}

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}
std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

// magic(8) version(4) n(4) modulus(8) alpha(4) count(4) checksum(8)
constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 8 + 4 + 4 + 8;

}  // namespace

Poly default_modulus(unsigned n) {
    require_degree(n);
    return kDefaultModuli[n];
}

unsigned poly_degree(Poly p) {
    return p == 0 ? 0 : static_cast<unsigned>(std::bit_width(p) - 1);
}

Poly poly_mod(Poly a, Poly m) {
    const unsigned dm = poly_degree(m);
    while (a != 0 && poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    while (b != 0) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

IrreducibilityResult check_irreducible(Poly modulus, unsigned n) {
    if (poly_degree(modulus) != n || modulus == 0) {
        return {false, "degree of modulus is not " + std::to_string(n)};
    }
    // x^{2^d} mod f by repeated squaring of x.
    std::uint32_t power = 0b10;
    for (unsigned d = 1; d <= n; ++d) {
        power = mulmod(power, power, modulus, n);
        if (d < n && n % d == 0) {
            const Poly g = poly_gcd(modulus, static_cast<Poly>(power) ^ 0b10);
            if (g != 1) {
                return {false, "gcd(x^(2^" + std::to_string(d) + ") - x, f) = " +
                                   poly_to_string(g) + " is nontrivial (factor of degree dividing " +
                                   std::to_string(d) + ")"};
            }
        }
    }
    if (power != 0b10) return {false, "f does not divide x^(2^" + std::to_string(n) + ") - x"};
    return {true, {}};
}

std::vector<std::uint32_t> distinct_prime_factors(std::uint64_t m) {
    std::vector<std::uint32_t> primes;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(static_cast<std::uint32_t>(p));
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(static_cast<std::uint32_t>(m));
    return primes;
}

FieldElement mul(const FieldSpec& f, FieldElement a, FieldElement b) {
    return {mulmod(a.bits, b.bits, f.modulus, f.n)};
}

FieldElement square(const FieldSpec& f, FieldElement a) { return mul(f, a, a); }

FieldElement pow(const FieldSpec& f, FieldElement a, std::uint64_t e) {
    FieldElement result{1};
    while (e != 0) {
        if (e & 1u) result = mul(f, result, a);
        a = mul(f, a, a);
        e >>= 1;
    }
    return result;
}

int trace(const FieldSpec& f, FieldElement a) {
    return std::popcount(a.bits & f.trace_mask) & 1;
}

int trace_by_frobenius(const FieldSpec& f, FieldElement a) {
    FieldElement acc = a;
    FieldElement conj = a;
    for (unsigned i = 1; i < f.n; ++i) {
        conj = square(f, conj);
        acc = acc + conj;
    }
    // The trace lies in the prime field, so acc is 0 or 1.
    return static_cast<int>(acc.bits);
}

std::uint32_t trace_form_vector(const FieldSpec& f, FieldElement lambda) {
    std::uint32_t u = 0;
    for (unsigned i = 0; i < f.n; ++i) {
        const FieldElement prod = mul(f, lambda, FieldElement{1u << i});
        u |= static_cast<std::uint32_t>(trace(f, prod)) << i;
    }
    return u;
}

std::uint64_t multiplicative_order(const FieldSpec& f, FieldElement a) {
    if (a.bits == 0) throw Error(ErrorKind::out_of_range, "zero has no multiplicative order");
    std::uint64_t order = f.q - 1;
    for (std::uint32_t p : f.order_primes) {
        while (order % p == 0 && pow(f, a, order / p).bits == 1) order /= p;
    }
    return order;
}

bool is_primitive(const FieldSpec& f, FieldElement a) {
    if (a.bits == 0 || a.bits >= f.q) return false;
    if (pow(f, a, f.q - 1).bits != 1) return false;
    return std::ranges::none_of(f.order_primes, [&](std::uint32_t p) {
        return pow(f, a, (f.q - 1) / p).bits == 1;
    });
}

FieldSpec build_field(unsigned n, std::optional<Poly> modulus, std::optional<std::uint32_t> alpha) {
    require_degree(n);
    FieldSpec f;
    f.n = n;
    f.q = 1u << n;
    if (modulus) {
        if (poly_degree(*modulus) != n) {
            throw Error(ErrorKind::out_of_range, "modulus " + to_hex(*modulus) + " has degree " +
                                                     std::to_string(poly_degree(*modulus)) +
                                                     ", expected " + std::to_string(n));
        }
        const auto check = check_irreducible(*modulus, n);
        if (!check.irreducible) {
            throw Error(ErrorKind::reducible,
                        "modulus " + to_hex(*modulus) + " is reducible: " + check.failed_check);
        }
        f.modulus = *modulus;
        f.source = FieldSource::user_supplied;
    } else {
        f.modulus = default_modulus(n);
        f.source = FieldSource::builtin_table;
    }
    f.order_primes = distinct_prime_factors(f.q - 1);

    for (unsigned j = 0; j < n; ++j) {
        if (trace_by_frobenius(f, FieldElement{1u << j}) != 0) f.trace_mask |= 1u << j;
    }

    if (alpha) {
        if (*alpha == 0 || *alpha >= f.q)
            throw Error(ErrorKind::out_of_range, "alpha " + to_hex(*alpha) + " is not a nonzero element of GF(2^" +
                                                     std::to_string(n) + ")");
        if (!is_primitive(f, FieldElement{*alpha})) {
            throw Error(ErrorKind::not_primitive,
                        "alpha " + to_hex(*alpha) + " is not a primitive element of GF(2^" +
                            std::to_string(n) + ") mod " + to_hex(f.modulus));
        }
        f.alpha = FieldElement{*alpha};
    } else {
        for (std::uint32_t c = 2; c < f.q; ++c) {
            if (is_primitive(f, FieldElement{c})) {
                f.alpha = FieldElement{c};
                break;
            }
        }
    }
    return f;
}

DlogTables compute_dlog_tables(const FieldSpec& f) {
    DlogTables t;
    const std::uint32_t order = f.q - 1;
    t.exp.resize(order);
    t.log.assign(f.q, DlogTables::undefined_log);
    FieldElement x{1};
    for (std::uint32_t i = 0; i < order; ++i) {
        t.exp[i] = x.bits;
        t.log[x.bits] = i;
        x = mul(f, x, f.alpha);
    }
    return t;
}

std::filesystem::path default_cache_dir() {
    if (const char* d = std::getenv("CFNL_CACHE_DIR"); d != nullptr && *d != '\0') return d;
    if (const char* d = std::getenv("XDG_CACHE_HOME"); d != nullptr && *d != '\0')
        return std::filesystem::path(d) / "cfnl";
    if (const char* d = std::getenv("HOME"); d != nullptr && *d != '\0')
        return std::filesystem::path(d) / ".cache" / "cfnl";
    return std::filesystem::temp_directory_path() / "cfnl";
}

std::string cache_file_name(const FieldSpec& f) {
    return "gf2_" + std::to_string(f.n) + "_" + to_hex(f.modulus) + ".tbl";
}

std::vector<std::uint8_t> encode_cache(const FieldSpec& f, const DlogTables& t) {
    std::vector<std::uint8_t> payload;
    payload.reserve(4 * t.exp.size());
    for (std::uint32_t v : t.exp) put_u32(payload, v);

    std::vector<std::uint8_t> out(kCacheMagic.begin(), kCacheMagic.end());
    put_u32(out, kCacheVersion);
    put_u32(out, f.n);
    put_u64(out, f.modulus);
    put_u32(out, f.alpha.bits);
    put_u32(out, static_cast<std::uint32_t>(t.exp.size()));
    put_u64(out, fnv1a(payload.data(), payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::optional<DlogTables> decode_cache(const FieldSpec& f, const std::vector<std::uint8_t>& blob,
                                       std::string* reason) {
    auto fail = [&](const char* why) -> std::optional<DlogTables> {
        if (reason != nullptr) *reason = why;
        return std::nullopt;
    };
    if (blob.size() < kHeaderSize) return fail("truncated header");
    if (!std::equal(kCacheMagic.begin(), kCacheMagic.end(), blob.begin())) return fail("bad magic");
    const std::uint8_t* p = blob.data() + kCacheMagic.size();
    if (get_u32(p) != kCacheVersion) return fail("version mismatch");
    if (get_u32(p + 4) != f.n) return fail("degree mismatch");
    if (get_u64(p + 8) != f.modulus) return fail("modulus mismatch");
    if (get_u32(p + 16) != f.alpha.bits) return fail("alpha mismatch");
    const std::uint32_t count = get_u32(p + 20);
    const std::uint64_t checksum = get_u64(p + 24);
    if (count != f.q - 1) return fail("table length mismatch");
    if (blob.size() != kHeaderSize + 4ull * count) return fail("payload length mismatch");
    const std::uint8_t* payload = blob.data() + kHeaderSize;
    if (fnv1a(payload, 4ull * count) != checksum) return fail("checksum mismatch");

    DlogTables t;
    t.exp.resize(count);
    t.log.assign(f.q, DlogTables::undefined_log);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t v = get_u32(payload + 4ull * i);
        if (v == 0 || v >= f.q || t.log[v] != DlogTables::undefined_log)
            return fail("payload is not a permutation of F_q^*");
        t.exp[i] = v;
        t.log[v] = i;
    }
    return t;
}

std::shared_ptr<const DlogTables> dlog_tables(const FieldSpec& f, const CacheOptions& cache) {
    if (!cache.enabled) return std::make_shared<const DlogTables>(compute_dlog_tables(f));

    auto warn = [&](const std::string& msg) {
        if (cache.warn)
            cache.warn(msg);
        else
            std::cerr << "warning: " << msg << '\n';
    };

    const std::filesystem::path dir = cache.dir.empty() ? default_cache_dir() : cache.dir;
    const std::filesystem::path path = dir / cache_file_name(f);

    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        std::ifstream in(path, std::ios::binary);
        std::vector<std::uint8_t> blob((std::istreambuf_iterator<char>(in)),
                                       std::istreambuf_iterator<char>());
        std::string reason;
        if (auto t = decode_cache(f, blob, &reason)) return std::make_shared<const DlogTables>(std::move(*t));
        warn("discarding cache file " + path.string() + " (" + reason + "); recomputing");
    }

    auto tables = std::make_shared<const DlogTables>(compute_dlog_tables(f));
    std::filesystem::create_directories(dir, ec);
    // Write-then-rename so concurrent readers never see a partial file.
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (out) {
            const auto blob = encode_cache(f, *tables);
            out.write(reinterpret_cast<const char*>(blob.data()),
                      static_cast<std::streamsize>(blob.size()));
        }
        if (!out) {
            warn("could not write cache file " + tmp.string());
            return tables;
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) warn("could not install cache file " + path.string() + ": " + ec.message());
    return tables;
}

std::string to_hex(Poly p) {
    std::ostringstream os;
    os << "0x" << std::hex << p;
    return os.str();
}

std::string poly_to_string(Poly p) {
    if (p == 0) return "0";
    std::string s;
    for (int i = static_cast<int>(poly_degree(p)); i >= 0; --i) {
        if (((p >> i) & 1u) == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0)
            s += "1";
        else if (i == 1)
            s += "x";
        else
            s += "x^" + std::to_string(i);
    }
    return s;
}

}  // namespace cfnl::gf2n
