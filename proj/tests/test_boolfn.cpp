#include "oracles.hpp"

#include "cfnl/boolfn.hpp"
#include "cfnl/error.hpp"

#include <doctest.h>

#include <sstream>

using namespace cfnl;
using namespace cfnl::boolfn;

namespace {

struct Fixture {
    gf2n::FieldSpec f;
    gf2n::DlogTables t;
    explicit Fixture(unsigned n) : f(gf2n::build_field(n)), t(gf2n::compute_dlog_tables(f)) {}
};

}  // namespace

TEST_CASE("Carlet-Feng support") {
    Fixture k2(2);
    const auto t2 = carlet_feng(k2.f, k2.t);
    CHECK(t2.weight() == 2);
    CHECK(t2.values == std::vector<std::uint8_t>{1, 1, 0, 0});

    Fixture k4(4);
    const auto t4 = carlet_feng(k4.f, k4.t);
    std::vector<std::uint8_t> expect(16, 0);
    for (std::uint32_t x : {0x0u, 0x1u, 0x2u, 0x4u, 0x8u, 0x3u, 0x6u, 0xcu}) expect[x] = 1;
    CHECK(t4.values == expect);

    for (unsigned n = 2; n <= 16; ++n) {
        Fixture k(n);
        CHECK(carlet_feng(k.f, k.t).weight() == k.f.q / 2);
    }
}

TEST_CASE("trace-form transform matches the double sum") {
    for (unsigned n = 2; n <= 8; ++n) {
        Fixture k(n);
        const auto tt = carlet_feng(k.f, k.t);
        const auto w = wht(tt, k.f);
        const auto ref = oracle::walsh(tt, k.f.modulus);
        for (std::uint32_t l = 0; l < k.f.q; ++l) REQUIRE_MESSAGE(w.coeffs[l] == ref[l], "n=" << n << " l=" << l);
    }
}

TEST_CASE("transform of simple functions") {
    Fixture k(6);
    TruthTable zero{6, std::vector<std::uint8_t>(64, 0)};
    const auto w0 = wht(zero, k.f);
    CHECK(w0.coeffs[0] == 64);
    for (std::uint32_t l = 1; l < 64; ++l) CHECK(w0.coeffs[l] == 0);
    CHECK(nonlinearity(zero) == 0);

    TruthTable tr{6, std::vector<std::uint8_t>(64)};
    for (std::uint32_t x = 0; x < 64; ++x) tr.values[x] = static_cast<std::uint8_t>(gf2n::trace(k.f, {x}));
    const auto wt = wht(tr, k.f);
    CHECK(wt.coeffs[1] == 64);
    for (std::uint32_t l = 0; l < 64; ++l)
        if (l != 1) CHECK(wt.coeffs[l] == 0);
    CHECK(nonlinearity(tr) == 0);

    TruthTable ip{6, std::vector<std::uint8_t>(64)};
    for (std::uint32_t x = 0; x < 64; ++x)
        ip.values[x] = static_cast<std::uint8_t>(((x & 1) & (x >> 1 & 1)) ^ ((x >> 2 & 1) & (x >> 3 & 1)) ^
                                                 ((x >> 4 & 1) & (x >> 5 & 1)));
    CHECK(nonlinearity(ip) == 32 - 4);
}

TEST_CASE("Parseval and column sum") {
    for (unsigned n = 2; n <= 16; ++n) {
        Fixture k(n);
        const auto tt = carlet_feng(k.f, k.t);
        const auto w = wht(tt, k.f);
        CHECK(parseval_sum(w) == (std::int64_t{1} << (2 * n)));
        std::int64_t col = 0;
        for (auto c : w.coeffs) col += c;
        CHECK(col == static_cast<std::int64_t>(k.f.q) * (tt.values[0] ? -1 : 1));
        CHECK(w.coeffs[0] == 0);
        CHECK(nonlinearity(w) == nonlinearity(tt));
    }
}

TEST_CASE("nonlinearity equals affine distance") {
    for (unsigned n = 2; n <= 8; ++n) {
        Fixture k(n);
        const auto tt = carlet_feng(k.f, k.t);
        CHECK_MESSAGE(nonlinearity(tt) == oracle::affine_distance(tt), "n=" << n);
    }
}

TEST_CASE("S_lambda") {
    Fixture k4(4);
    std::int64_t by_hand = 0;
    for (std::uint32_t i = 7; i <= 14; ++i) by_hand += oracle::trace(k4.f.modulus, k4.t.exp[i]) ? -1 : 1;
    const auto s0 = s_lambda_direct(k4.f, k4.t, 0);
    CHECK(s0 == by_hand);
    CHECK(std::abs(s0) <= 8);
    CHECK(s0 % 2 == 0);

    for (unsigned n = 2; n <= 14; ++n) {
        Fixture k(n);
        const auto all = s_lambda_all(k.f, k.t);
        const auto w = wht(carlet_feng(k.f, k.t), k.f);
        std::int64_t peak = 0;
        for (std::uint32_t l = 0; l + 1 < k.f.q; ++l) {
            const auto d = s_lambda_direct(k.f, k.t, l);
            REQUIRE(all[l].ell == l);
            REQUIRE(all[l].value == d);
            REQUIRE(w.coeffs[k.t.exp[l]] == 2 * d);
            REQUIRE(std::abs(d) <= k.f.q / 2);
            REQUIRE((d - k.f.q / 2) % 2 == 0);
            if (n <= 10) {
                std::int64_t head = 0;
                for (std::uint32_t i = 0; i + 1 < k.f.q / 2; ++i)
                    head += gf2n::trace(k.f, {gf2n::mul(k.f, {k.t.exp[l]}, {k.t.exp[i]}).bits}) ? -1 : 1;
                REQUIRE(head + d == -1);
            }
            peak = std::max<std::int64_t>(peak, std::abs(d));
        }
        CHECK(nonlinearity(carlet_feng(k.f, k.t)) == (std::int64_t{1} << (n - 1)) - peak);
    }
    CHECK_THROWS_AS(s_lambda_direct(k4.f, k4.t, 15), Error);
}

TEST_CASE("export formats") {
    Fixture k(4);
    const auto tt = carlet_feng(k.f, k.t);
    CHECK(to_hex(tt) == "fa88");
    const auto back = truth_table_from_hex(4, to_hex(tt));
    CHECK(back.values == tt.values);
    Fixture k2(2);
    CHECK(to_hex(carlet_feng(k2.f, k2.t)) == "c");
    CHECK(truth_table_from_hex(2, "c").values == carlet_feng(k2.f, k2.t).values);
    CHECK_THROWS_AS(truth_table_from_hex(4, "fa8"), Error);
    CHECK_THROWS_AS(truth_table_from_hex(4, "fz88"), Error);

    WalshSpectrum s{2, {4, -4, 0, 1}};
    CHECK(to_hex(s) == "00000004fffffffc0000000000000001");

    std::ostringstream os;
    write_csv(os, tt);
    CHECK(os.str().rfind("index,value\n0,1\n1,1\n2,1\n3,1\n4,1\n5,0\n", 0) == 0);
}
