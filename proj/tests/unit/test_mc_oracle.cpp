// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "mwclab/error.hpp"
#include "mwclab/mc_oracle.hpp"

#include <cstdlib>
#include <numbers>
#include <set>

using namespace mwclab;

namespace {

const NonzeroDistribution kComplexNormal{DistributionKind::complex_normal, 1.0};

SensingMatrix unitary_phi(std::size_t M)
{
    // Full Hadamard rows give Phi = H F / M, which is unitary.
    return sensing_matrix(SignMatrix(hadamard_family(M), "hadamard"));
}

struct ThreadsOverride {
    explicit ThreadsOverride(const char* v) { setenv("MWCLAB_THREADS", v, 1); }
    ~ThreadsOverride() { unsetenv("MWCLAB_THREADS"); }
};

} // namespace

TEST_CASE("sparse vectors have K distinct in-range indices")
{
    Engine rng = make_stream(1);
    for (int t = 0; t < 200; ++t) {
        const auto u = sample_sparse_vector(50, 7, kComplexNormal, rng);
        std::set<std::size_t> s(u.support.begin(), u.support.end());
        CHECK(s.size() == 7);
        CHECK(*s.rbegin() < 50);
    }
    const auto full = sample_sparse_vector(9, 9, kComplexNormal, rng);
    CHECK(std::set<std::size_t>(full.support.begin(), full.support.end()).size() == 9);

    const auto b = sample_sparse_vector(30, 5, {DistributionKind::bernoulli_sign, 2.5}, rng);
    for (auto v : b.values)
        CHECK((v == std::complex<double>(2.5, 0) || v == std::complex<double>(-2.5, 0)));
    CHECK(b.norm_sq() == 5 * 6.25);
    CHECK(b.dense().size() == 30);
    CHECK_THROWS_AS(sample_sparse_vector(5, 6, kComplexNormal, rng), ValidationError);
}

TEST_CASE("support is uniform")
{
    Engine rng = make_stream(42);
    const std::size_t M = 195, K = 12, draws = 100'000;
    std::vector<std::size_t> hits(M, 0);
    for (std::size_t t = 0; t < draws; ++t)
        for (auto i : sample_sparse_vector(M, K, kComplexNormal, rng).support)
            ++hits[i];
    const double p = static_cast<double>(K) / M;
    const double sigma = std::sqrt(draws * p * (1 - p));
    std::size_t outside = 0;
    for (auto h : hits)
        outside += std::abs(static_cast<double>(h) - draws * p) > 3 * sigma;
    // 0.27% expected beyond 3 sigma; allow a few of 195
    CHECK(outside <= 4);
}

TEST_CASE("unitary Phi is an exact isometry")
{
    const auto phi = unitary_phi(64);
    const auto est = empirical_exrip(phi, 8, 1e-6, kComplexNormal, 2000, 3);
    CHECK(est.empirical_p == 1.0);
    CHECK(std::abs(est.moment2 - 1.0) < 1e-12);
    CHECK(std::abs(est.moment4 - 1.0) < 1e-12);
    CHECK(est.max_deviation < 1e-12);
}

TEST_CASE("delta above the largest deviation gives p = 1")
{
    const auto S = build_sign_matrix({Family::random, 0, 63, 10, 4});
    const auto phi = sensing_matrix(S);
    const auto first = empirical_exrip(phi, 4, 0.3, kComplexNormal, 1000, 5);
    const auto wide = empirical_exrip(phi, 4, std::min(0.999999, first.max_deviation + 1e-9), kComplexNormal, 1000, 5);
    if (first.max_deviation < 0.999999)
        CHECK(wide.empirical_p == 1.0);
    CHECK(wide.max_deviation == first.max_deviation);
}

TEST_CASE("estimates do not depend on the worker count")
{
    const auto S = build_sign_matrix({Family::random, 0, 195, 40, 2});
    const auto phi = sensing_matrix(S);
    ExripEstimate one, four;
    {
        ThreadsOverride t("1");
        one = empirical_exrip(phi, 24, kBasisPursuitDelta, kComplexNormal, 3000, 17);
    }
    {
        ThreadsOverride t("4");
        four = empirical_exrip(phi, 24, kBasisPursuitDelta, kComplexNormal, 3000, 17);
    }
    CHECK(one.empirical_p == four.empirical_p);
    CHECK(one.moment2 == four.moment2);
    CHECK(one.moment4 == four.moment4);
}

TEST_CASE("the random 40 x 195 bound holds and Z^2 has mean one")
{
    const auto S = build_sign_matrix({Family::random, 0, 195, 40, 6});
    const auto rep = bound_validity_report(S, 24, kBasisPursuitDelta, kComplexNormal, 20'000, 8,
                                           MonteCarloSampling{200'000, 8});
    CHECK(rep.bound_holds);
    CHECK(rep.mean_is_one);
    CHECK(rep.passed());
    CHECK(rep.theory.probability > 0.8);
    CHECK(rep.empirical.empirical_p + 3 * rep.empirical.p_stderr >= rep.theory.probability);
}

TEST_CASE("too few trials are rejected")
{
    const auto phi = unitary_phi(8);
    CHECK_THROWS_AS(empirical_exrip(phi, 2, 0.3, kComplexNormal, 999, 1), ValidationError);
}
