// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "mwclab/matrixlab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace mwclab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SignMatrix random_matrix(std::size_t m, std::size_t M, std::uint64_t seed)
{
    return build_sign_matrix({Family::random, 0, M, m, seed});
}

SignMatrix constant_matrix(std::size_t m, std::size_t M)
{
    return SignMatrix(std::vector<BinarySequence>(m, BinarySequence(std::vector<std::int8_t>(M, 1))), "ones");
}

// Direct evaluation of the three defining sums.
struct Brute {
    long long row = 0, conv = 0, rev = 0;
};

Brute brute_energies(const SignMatrix& S)
{
    Brute b;
    const std::size_t m = S.channels(), M = S.length();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            long long dot = 0, dot_rev = 0;
            for (std::size_t n = 0; n < M; ++n) {
                dot += S(i, n) * S(k, n);
                dot_rev += S(i, n) * S(k, (M - n) % M);
            }
            b.row += dot * dot;
            b.rev += dot_rev * dot_rev;
            for (std::size_t l = 0; l < M; ++l) {
                long long c = 0;
                for (std::size_t n = 0; n < M; ++n)
                    c += S(i, n) * S(k, (l + M - n) % M);
                b.conv += c * c;
            }
        }
    return b;
}

Eigen::MatrixXcd explicit_phi(const SignMatrix& S)
{
    const std::size_t m = S.channels(), M = S.length();
    Eigen::MatrixXcd phi(m, M);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < M; ++j) {
            std::complex<double> acc = 0;
            for (std::size_t k = 0; k < M; ++k)
                acc += static_cast<double>(S(i, k)) *
                       std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * j % M) / static_cast<double>(M));
            phi(i, j) = acc / std::sqrt(static_cast<double>(m * M));
        }
    return phi;
}

double brute_mu(const Eigen::MatrixXcd& phi)
{
    double mu = 0;
    for (Eigen::Index a = 0; a < phi.cols(); ++a)
        for (Eigen::Index b = a + 1; b < phi.cols(); ++b) {
            const double na = phi.col(a).norm(), nb = phi.col(b).norm();
            if (na * na < 1e-10 || nb * nb < 1e-10)
                continue;
            mu = std::max(mu, std::abs(phi.col(a).dot(phi.col(b))) / (na * nb));
        }
    return mu;
}

} // namespace

TEST_CASE("DFT matrix entries")
{
    const auto F = dft_matrix(7);
    CHECK(std::abs(F(0, 3) - 1.0) < 1e-15);
    CHECK(std::abs(F(1, 1) - std::polar(1.0, -2 * std::numbers::pi / 7)) < 1e-15);
    CHECK(std::abs(F(6, 6) - std::polar(1.0, -2 * std::numbers::pi * 36 / 7)) < 1e-14);
    CHECK((F * F.adjoint() - 7.0 * Eigen::MatrixXcd::Identity(7, 7)).norm() < 1e-12);
}

TEST_CASE("sensing matrix matches the explicit construction")
{
    const auto S = random_matrix(6, 31, 3);
    const auto phi = sensing_matrix(S);
    CHECK(phi.channels() == 6);
    CHECK(phi.columns() == 31);
    CHECK_THAT(phi.scaling, WithinRel(1.0 / std::sqrt(6.0 * 31.0), 1e-15));
    CHECK((phi.entries - explicit_phi(S)).norm() < 1e-11);
    // ||Phi||_F^2 = M, so the mean squared column norm is 1
    CHECK_THAT(phi.entries.squaredNorm(), WithinRel(31.0, 1e-12));
}

TEST_CASE("alpha, beta, gamma equal the defining sums")
{
    for (std::uint64_t seed : {1, 2, 3, 4}) {
        for (std::size_t M : {7u, 31u, 63u}) {
            const auto S = random_matrix(5, M, seed);
            const auto e = correlation_energies(S);
            const auto b = brute_energies(S);
            CHECK(e.row == b.row);
            CHECK(e.conv == b.conv);
            CHECK(e.reversed == b.rev);
        }
    }
    const auto G = build_sign_matrix({Family::gold, 5, 0, 8, 0});
    const auto e = correlation_energies(G);
    const auto b = brute_energies(G);
    CHECK(e.conv == b.conv);
    CHECK(e.reversed == b.rev);
}

TEST_CASE("extremal sign matrices")
{
    const auto ones = correlation_measures(constant_matrix(4, 31));
    CHECK(ones.alpha == 1.0);
    CHECK(ones.beta == 1.0);
    CHECK(ones.gamma == 1.0);

    const auto H = build_sign_matrix({Family::hadamard, 0, 64, 16, 0});
    CHECK(correlation_measures(H).alpha == 1.0 / 16.0);
}

TEST_CASE("measures are invariant under row permutation, common shift and row negation")
{
    const auto S = random_matrix(9, 63, 11);
    const auto base = correlation_measures(S);

    auto rows = S.rows();
    std::reverse(rows.begin(), rows.end());
    const auto perm = correlation_measures(SignMatrix(rows, "p"));

    std::vector<BinarySequence> shifted, negated;
    for (std::size_t i = 0; i < S.channels(); ++i) {
        shifted.push_back(S.row(i).shifted(17));
        auto v = std::vector<std::int8_t>(S.row(i).signs().begin(), S.row(i).signs().end());
        if (i % 2)
            for (auto& x : v)
                x = static_cast<std::int8_t>(-x);
        negated.emplace_back(v);
    }
    const auto shift = correlation_measures(SignMatrix(shifted, "s"));
    const auto neg = correlation_measures(SignMatrix(negated, "n"));
    for (const auto& other : {perm, shift, neg}) {
        CHECK(other.alpha == base.alpha);
        CHECK(other.beta == base.beta);
    }
    CHECK(perm.gamma == base.gamma);
    CHECK(neg.gamma == base.gamma);
}

TEST_CASE("column gram and sensing gram")
{
    const auto S = random_matrix(7, 15, 5);
    Eigen::MatrixXd Sr(7, 15);
    for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 15; ++k)
            Sr(i, k) = S(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    CHECK((column_gram(S) - Sr.transpose() * Sr).norm() == 0.0);

    // both gram routes (m < M and m >= M)
    for (std::size_t m : {5u, 31u, 40u}) {
        const auto T = random_matrix(m, 31, 8);
        const auto phi = explicit_phi(T);
        CHECK((sensing_gram(T) - phi.adjoint() * phi).norm() < 1e-10);
    }
}

TEST_CASE("coherence agrees with brute force")
{
    for (std::size_t m : {4u, 20u, 40u, 64u}) {
        const auto S = random_matrix(m, 31, 21);
        CHECK_THAT(coherence(S).mu, WithinAbs(brute_mu(explicit_phi(S)), 1e-12));
    }
}

TEST_CASE("zero columns are skipped and counted")
{
    const auto c = coherence(constant_matrix(3, 15));
    CHECK(c.zero_columns == 14);
    CHECK(c.mu == 0.0);
}

TEST_CASE("spectral norm matches an SVD")
{
    for (std::size_t m : {5u, 31u, 50u}) {
        const auto S = random_matrix(m, 31, 2);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(explicit_phi(S));
        const double s = svd.singularValues()(0);
        CHECK_THAT(spectral_norm_sq(S), WithinRel(s * s, 1e-10));
    }
}

TEST_CASE("bound suite slacks")
{
    const auto ones = quality_bounds_check(quality_measures(constant_matrix(4, 31)));
    CHECK(ones.passed());
    CHECK(ones.at("alpha <= 1").slack == 0.0);
    CHECK(ones.at("beta <= 1").slack == 0.0);
    CHECK(ones.at("gamma <= 1").slack == 0.0);

    const auto H = quality_bounds_check(quality_measures(build_sign_matrix({Family::hadamard, 0, 64, 16, 0})));
    CHECK(H.at("alpha >= 1/m").slack == 0.0);
    CHECK(H.at("alpha >= 1/m").holds);
    CHECK_THROWS(H.at("delta <= 1"));

    QualityReport bad;
    bad.m = 4;
    bad.M = 31;
    bad.alpha = 0.1;
    bad.beta = 0.5;
    bad.gamma = 0.5;
    const auto chk = quality_bounds_check(bad);
    CHECK_FALSE(chk.passed());
    CHECK(chk.violations() == std::vector<std::string>{"alpha >= 1/m"});
}

TEST_CASE("beta never drops below 1/M")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto S = random_matrix(1 + seed % 9, 31, seed);
        CHECK(correlation_measures(S).beta >= 1.0 / 31.0 - 1e-15);
    }
    CHECK_THAT(welch_floor(40, 195), WithinRel(79.0 / 15599.0, 1e-15));
}
