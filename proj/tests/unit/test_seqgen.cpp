// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "mwclab/error.hpp"
#include "mwclab/seqgen.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <bit>
#include <complex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace mwclab;

namespace {

// Straight from the recurrence, no shared code with the library.
std::vector<int> lfsr_bits(std::vector<int> taps, int n, std::size_t count)
{
    std::vector<int> s(static_cast<std::size_t>(n), 1);
    while (s.size() < count) {
        int next = 0;
        for (int t : taps)
            next ^= s[s.size() - static_cast<std::size_t>(n) + static_cast<std::size_t>(t)];
        s.push_back(next);
    }
    s.resize(count);
    return s;
}

std::set<long> correlation_values(const BinarySequence& a, const BinarySequence& b, bool skip_zero)
{
    std::set<long> out;
    const std::size_t M = a.size();
    for (std::size_t l = skip_zero ? 1 : 0; l < M; ++l) {
        long c = 0;
        for (std::size_t n = 0; n < M; ++n)
            c += a[n] * b[(n + l) % M];
        out.insert(c);
    }
    return out;
}

std::size_t euler_phi(std::size_t n)
{
    std::size_t r = n;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            r -= r / p;
        }
    if (n > 1)
        r -= r / n;
    return r;
}

BinarySequence random_sequence(std::size_t M, std::mt19937& rng)
{
    std::vector<std::int8_t> v(M);
    for (auto& x : v)
        x = (rng() & 1) ? 1 : -1;
    return BinarySequence(v);
}

} // namespace

TEST_CASE("x^3 + x + 1 from the all-ones state")
{
    const auto seq = lfsr_msequence(Gf2Polynomial::from_exponents({3, 1, 0}));
    const auto expect = lfsr_bits({0, 1}, 3, 7);
    REQUIRE(seq.size() == 7);
    for (std::size_t k = 0; k < 7; ++k)
        CHECK(seq[k] == 1 - 2 * expect[k]);
    CHECK(seq.bits() == std::vector<std::uint8_t>{1, 1, 1, 0, 0, 1, 0});
}

TEST_CASE("x^5 + x^2 + 1 matches the recurrence oracle")
{
    const auto seq = lfsr_msequence(Gf2Polynomial::from_exponents({5, 2, 0}), 0b00001);
    // state 0b00001: s0 = 1, s1..s4 = 0
    std::vector<int> s = {1, 0, 0, 0, 0};
    while (s.size() < 31)
        s.push_back(s[s.size() - 5] ^ s[s.size() - 3]);
    for (std::size_t k = 0; k < 31; ++k)
        CHECK(seq[k] == 1 - 2 * s[k]);
}

TEST_CASE("non-primitive polynomials and zero state are rejected")
{
    CHECK_THROWS_AS(lfsr_msequence(Gf2Polynomial::from_exponents({4, 2, 0})), ValidationError);
    CHECK_THROWS_AS(lfsr_msequence(Gf2Polynomial::from_exponents({3, 1, 0}), 0), ValidationError);
    CHECK(lfsr_period(Gf2Polynomial::from_exponents({4, 2, 0}), 1) < 15);
}

TEST_CASE("primitive polynomial counts equal phi(2^n - 1) / n")
{
    for (int n = 3; n <= 13; ++n) {
        const std::size_t M = (std::size_t{1} << n) - 1;
        CHECK(primitive_polynomials(n).size() == euler_phi(M) / static_cast<std::size_t>(n));
    }
    CHECK_THROWS_AS(primitive_polynomials(2), ValidationError);
}

TEST_CASE("m-sequences: balance, full period, two-valued autocorrelation")
{
    for (int n = 3; n <= 9; ++n) {
        const std::size_t M = (std::size_t{1} << n) - 1;
        for (auto poly : primitive_polynomials(n)) {
            const auto seq = lfsr_msequence(Gf2Polynomial{poly});
            const auto b = seq.bits();
            CHECK(std::count(b.begin(), b.end(), 1) == static_cast<long>((M + 1) / 2));
            CHECK(seq.period() == M);
            if (n <= 7)
                CHECK(correlation_values(seq, seq, true) == std::set<long>{-1});
        }
    }
}

TEST_CASE("shift, reversal and product semantics")
{
    const BinarySequence a({1, -1, -1, 1, 1});
    const auto s = a.shifted(2);
    for (std::size_t n = 0; n < 5; ++n)
        CHECK(s[n] == a[(n + 2) % 5]);
    const auto r = a.reversed();
    CHECK(r[0] == a[0]);
    for (std::size_t n = 1; n < 5; ++n)
        CHECK(r[n] == a[5 - n]);
    CHECK((a * a) == BinarySequence({1, 1, 1, 1, 1}));
    CHECK(a.shifted(5) == a);
    CHECK_THROWS_AS(BinarySequence({1}), ValidationError);
    CHECK_THROWS_AS(BinarySequence({1, 0, -1}), ValidationError);
}

TEST_CASE("Gold families are three-valued")
{
    for (int n : {5, 7}) {
        const auto fam = gold_family(n);
        const long t = 1 + (1L << ((n + 1) / 2));
        const std::set<long> allowed{-1, -t, t - 2};
        REQUIRE(fam.size() == (std::size_t{1} << n) + 1);
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i; j < fam.size(); ++j)
                for (long v : correlation_values(fam[i], fam[j], i == j))
                    CHECK(allowed.count(v) == 1);
    }
    CHECK_THROWS_AS(gold_family(8), ValidationError);
    CHECK_FALSE(gold_preferred_pair(13).has_value());
}

TEST_CASE("a non-preferred pair is refused")
{
    const PreferredPair bad{Gf2Polynomial::from_exponents({5, 2, 0}), Gf2Polynomial::from_exponents({5, 3, 0})};
    CHECK_THROWS_AS(gold_family(5, bad), ValidationError);
}

TEST_CASE("small Kasami sets meet the three-valued spectrum")
{
    for (int n : {4, 6, 8}) {
        const auto fam = kasami_small_family(n);
        const long s = 1L << (n / 2);
        REQUIRE(fam.size() == static_cast<std::size_t>(s));
        const std::set<long> allowed{-1, -(s + 1), s - 1};
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i; j < fam.size(); ++j)
                for (long v : correlation_values(fam[i], fam[j], i == j))
                    CHECK(allowed.count(v) == 1);
    }
    CHECK_THROWS_AS(kasami_small_family(5), ValidationError);
}

TEST_CASE("Hadamard rows are orthogonal")
{
    for (std::size_t M : {8u, 64u, 512u}) {
        const auto rows = hadamard_family(M);
        REQUIRE(rows.size() == M);
        for (std::size_t i = 0; i < M; i += 7)
            for (std::size_t j = 0; j < M; ++j) {
                long dot = 0;
                for (std::size_t k = 0; k < M; ++k)
                    dot += rows[i][k] * rows[j][k];
                CHECK(dot == (i == j ? static_cast<long>(M) : 0));
            }
    }
    CHECK(hadamard_family(8)[1].period() == 2);
    CHECK_THROWS_AS(hadamard_family(12), ValidationError);
}

TEST_CASE("cyclic convolution agrees with an FFT oracle")
{
    std::mt19937 rng(2024);
    Eigen::FFT<double> fft;
    for (std::size_t M : {7u, 31u, 63u, 255u}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const auto a = random_sequence(M, rng);
            const auto b = random_sequence(M, rng);
            std::vector<double> av(a.signs().begin(), a.signs().end()), bv(b.signs().begin(), b.signs().end());
            std::vector<std::complex<double>> fa, fb, prod(M);
            fft.fwd(fa, av);
            fft.fwd(fb, bv);
            for (std::size_t k = 0; k < M; ++k)
                prod[k] = fa[k] * fb[k];
            std::vector<std::complex<double>> back;
            fft.inv(back, prod);
            const auto c = cyclic_convolution(a, b);
            for (std::size_t l = 0; l < M; ++l)
                REQUIRE(c[l] == std::llround(back[l].real()));
        }
    }
}

TEST_CASE("periodic correlation is convolution with the reversal")
{
    std::mt19937 rng(5);
    const auto a = random_sequence(31, rng);
    const auto b = random_sequence(31, rng);
    const auto corr = periodic_correlation(a, b);
    const auto conv = cyclic_convolution(a.reversed(), b);
    CHECK(corr == conv);
}

TEST_CASE("family parsing and length resolution")
{
    CHECK(parse_family("kasami-small") == Family::kasami_small);
    CHECK(parse_family("kasami") == Family::kasami_small);
    CHECK_THROWS_AS(parse_family("walsh"), ValidationError);

    FamilySpec s;
    s.family = Family::gold;
    s.register_length = 9;
    CHECK(s.resolved_length() == 511);
    s.length = 255;
    CHECK_THROWS_AS(s.resolved_length(), ValidationError);

    FamilySpec h;
    h.family = Family::hadamard;
    h.register_length = 9;
    CHECK(h.resolved_length() == 512);
}

TEST_CASE("population limits are enforced")
{
    FamilySpec k{Family::kasami_small, 8, 0, 17, 0};
    CHECK(family_population(k) == 16);
    CHECK_THROWS_AS(build_sign_matrix(k), ValidationError);
    FamilySpec h{Family::hadamard, 0, 8, 8, 0};
    CHECK_THROWS_AS(build_sign_matrix(h), ValidationError); // row 0 is never used
    h.channels = 7;
    CHECK(build_sign_matrix(h).channels() == 7);
}

TEST_CASE("selection policies")
{
    const auto maximal = build_sign_matrix({Family::maximal, 5, 0, 10, 0});
    const auto polys = primitive_polynomials(5);
    const std::size_t P = polys.size();
    for (std::size_t j = 0; j < 10; ++j)
        CHECK(maximal.row(j) == lfsr_msequence(Gf2Polynomial{polys[j % P]}).shifted(j / P));

    const auto had = build_sign_matrix({Family::hadamard, 0, 16, 4, 0});
    const auto rows = hadamard_family(16);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(had.row(j) == rows[j + 1]);

    const auto gold = build_sign_matrix({Family::gold, 5, 0, 33, 0});
    CHECK(gold.rows() == gold_family(5));
}

TEST_CASE("random matrices are reproducible and duplicate-free")
{
    const FamilySpec spec{Family::random, 0, 6, 60, 99};
    const auto a = build_sign_matrix(spec);
    const auto b = build_sign_matrix(spec);
    CHECK(a == b);
    std::set<std::vector<std::int8_t>> distinct;
    for (const auto& r : a.rows())
        distinct.emplace(r.signs().begin(), r.signs().end());
    CHECK(distinct.size() == 60);
    auto other = spec;
    other.seed = 100;
    CHECK_FALSE(build_sign_matrix(other) == a);
    // nested: a smaller m is a prefix
    auto fewer = spec;
    fewer.channels = 10;
    const auto c = build_sign_matrix(fewer);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(c.row(i) == a.row(i));
}

TEST_CASE("pattern files round-trip")
{
    const auto S = build_sign_matrix({Family::random, 0, 31, 5, 7});
    std::stringstream ss;
    write_patterns(ss, S);
    const std::string text = ss.str();
    CHECK(text.rfind("5 31 random 7\n", 0) == 0);
    const auto back = read_patterns(ss);
    CHECK(back == S);

    const auto G = build_sign_matrix({Family::gold, 5, 0, 3, 0});
    std::stringstream gs;
    write_patterns(gs, G);
    CHECK(gs.str().rfind("3 31 gold -\n", 0) == 0);
    CHECK(read_patterns(gs) == G);
}

TEST_CASE("malformed pattern files are rejected")
{
    auto bad = [](const std::string& text) {
        std::istringstream in(text);
        return read_patterns(in);
    };
    CHECK_THROWS_AS(bad(""), ValidationError);
    CHECK_THROWS_AS(bad("2 3 x -\n1 1 1\n"), ValidationError);          // missing row
    CHECK_THROWS_AS(bad("1 3 x -\n1 0 1\n"), ValidationError);          // bad entry
    CHECK_THROWS_AS(bad("1 3 x -\n1 1\n"), ValidationError);            // short row
    CHECK_THROWS_AS(bad("1 3 x -\n1 1 1\n1 1 1\n"), ValidationError);   // extra row
    CHECK_THROWS_AS(bad("1 3 x\n1 1 1\n"), ValidationError);            // short header
}
