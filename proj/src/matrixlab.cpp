// SPDX-License-Identifier: Apache-2.0
#include "mwclab/matrixlab.hpp"

#include "mwclab/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace mwclab {

namespace {

struct DftParts {
    Eigen::MatrixXd cos; // Re F
    Eigen::MatrixXd sin; // -Im F
};

DftParts dft_parts(std::size_t M)
{
    DftParts p{Eigen::MatrixXd(M, M), Eigen::MatrixXd(M, M)};
    std::vector<double> c(M), s(M);
    for (std::size_t t = 0; t < M; ++t) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(M);
        c[t] = std::cos(phase);
        s[t] = std::sin(phase);
    }
    for (std::size_t j = 0; j < M; ++j)
        for (std::size_t k = 0; k < M; ++k) {
            const std::size_t t = (j * k) % M;
            p.cos(j, k) = c[t];
            p.sin(j, k) = s[t];
        }
    return p;
}

Eigen::MatrixXd as_real(const SignMatrix& S)
{
    Eigen::MatrixXd out(S.channels(), S.length());
    for (std::size_t i = 0; i < S.channels(); ++i)
        for (std::size_t k = 0; k < S.length(); ++k)
            out(i, k) = S(i, k);
    return out;
}

// Bit-packed sign vectors; bit set means -1. For equal-length vectors
// a . b = len - 2 popcount(a ^ b).
class PackedSigns {
public:
    PackedSigns(std::size_t count, std::size_t len) : len_(len), words_((len + 63) / 64), data_(count * words_, 0) {}

    void set_negative(std::size_t vec, std::size_t pos) { data_[vec * words_ + pos / 64] |= std::uint64_t{1} << (pos % 64); }

    std::int64_t dot(std::size_t a, std::size_t b) const
    {
        const std::uint64_t* pa = &data_[a * words_];
        const std::uint64_t* pb = &data_[b * words_];
        std::int64_t diff = 0;
        for (std::size_t w = 0; w < words_; ++w)
            diff += std::popcount(pa[w] ^ pb[w]);
        return static_cast<std::int64_t>(len_) - 2 * diff;
    }

private:
    std::size_t len_;
    std::size_t words_;
    std::vector<std::uint64_t> data_;
};

} // namespace

Eigen::MatrixXcd dft_matrix(std::size_t M)
{
    const DftParts p = dft_parts(M);
    Eigen::MatrixXcd F(M, M);
    F.real() = p.cos;
    F.imag() = -p.sin;
    return F;
}

SensingMatrix sensing_matrix(const SignMatrix& S)
{
    const std::size_t m = S.channels();
    const std::size_t M = S.length();
    const DftParts p = dft_parts(M);
    const Eigen::MatrixXd Sr = as_real(S);
    const double scaling = 1.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(M));

    SensingMatrix out;
    out.entries.resize(m, M);
    out.entries.real() = scaling * (Sr * p.cos);
    out.entries.imag() = -scaling * (Sr * p.sin);
    out.source = std::make_shared<const SignMatrix>(S);
    out.scaling = scaling;
    return out;
}

SensingMatrix sensing_matrix_from(Eigen::MatrixXcd entries)
{
    require(entries.rows() >= 1 && entries.cols() >= 1, "sensing matrix must be non-empty");
    SensingMatrix out;
    out.entries = std::move(entries);
    out.scaling = 1.0;
    return out;
}

CorrelationEnergies correlation_energies(const SignMatrix& S)
{
    const std::size_t m = S.channels();
    const std::size_t M = S.length();

    // Vectors 0..m-1 are the rows, m..2m-1 the reversed rows.
    PackedSigns packed(2 * m, M);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < M; ++k) {
            if (S(i, k) < 0)
                packed.set_negative(i, k);
            if (S(i, (M - k) % M) < 0)
                packed.set_negative(m + i, k);
        }

    CorrelationEnergies e;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const std::int64_t r = packed.dot(i, k);
            const std::int64_t g = packed.dot(i, m + k);
            e.row += r * r;
            e.reversed += g * g;
        }

    // Wiener-Khinchin: with R[l] the periodic autocorrelation summed over all
    // rows, sum_{i,k} ||S_i (*) S_k||^2 = (1/M) sum_f (sum_i |DFT S_i|^2)^2
    // = sum_l R[l]^2, exactly, in integers.
    std::vector<std::int64_t> R(M, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto s = S.row(i).signs();
        for (std::size_t l = 0; l < M; ++l) {
            std::int64_t acc = 0;
            for (std::size_t n = 0; n + l < M; ++n)
                acc += s[n] * s[n + l];
            for (std::size_t n = M - l; n < M; ++n)
                acc += s[n] * s[n + l - M];
            R[l] += acc;
        }
    }
    for (std::int64_t r : R)
        e.conv += r * r;
    return e;
}

Eigen::MatrixXd column_gram(const SignMatrix& S)
{
    const std::size_t m = S.channels();
    const std::size_t M = S.length();
    PackedSigns cols(M, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < M; ++k)
            if (S(i, k) < 0)
                cols.set_negative(k, i);
    Eigen::MatrixXd A(M, M);
    for (std::size_t k = 0; k < M; ++k) {
        A(k, k) = static_cast<double>(m);
        for (std::size_t l = k + 1; l < M; ++l)
            A(k, l) = A(l, k) = static_cast<double>(cols.dot(k, l));
    }
    return A;
}

Eigen::MatrixXcd sensing_gram(const SignMatrix& S)
{
    const std::size_t m = S.channels();
    const std::size_t M = S.length();
    if (m < M) {
        const SensingMatrix phi = sensing_matrix(S);
        return phi.entries.adjoint() * phi.entries;
    }
    // F^H A F with A = S^T S real symmetric and F = C - iN:
    //   Re = C A C + N A N,  Im = X - X^T with X = N A C.
    const DftParts p = dft_parts(M);
    const Eigen::MatrixXd A = column_gram(S);
    const Eigen::MatrixXd AC = A * p.cos;
    const Eigen::MatrixXd AN = A * p.sin;
    const Eigen::MatrixXd X = p.sin * AC;
    const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(M));
    Eigen::MatrixXcd G(M, M);
    G.real() = scale * (p.cos * AC + p.sin * AN);
    G.imag() = scale * (X - X.transpose());
    return G;
}

CoherenceSummary coherence_of_gram(const Eigen::MatrixXcd& gram)
{
    const auto M = gram.rows();
    std::vector<double> norm(static_cast<std::size_t>(M));
    CoherenceSummary out;
    for (Eigen::Index j = 0; j < M; ++j) {
        const double d = gram(j, j).real();
        norm[static_cast<std::size_t>(j)] = d < kZeroColumnTolerance ? 0.0 : std::sqrt(d);
        if (d < kZeroColumnTolerance)
            ++out.zero_columns;
    }
    require(out.zero_columns < static_cast<std::size_t>(M), "every column of the sensing matrix is zero");
    for (Eigen::Index j = 0; j < M; ++j) {
        const double nj = norm[static_cast<std::size_t>(j)];
        if (nj == 0.0)
            continue;
        for (Eigen::Index l = j + 1; l < M; ++l) {
            const double nl = norm[static_cast<std::size_t>(l)];
            if (nl == 0.0)
                continue;
            out.mu = std::max(out.mu, std::abs(gram(j, l)) / (nj * nl));
        }
    }
    out.mu = std::min(out.mu, 1.0);
    return out;
}

CoherenceSummary coherence(const SignMatrix& S) { return coherence_of_gram(sensing_gram(S)); }

double spectral_norm_sq(const SignMatrix& S)
{
    const std::size_t m = S.channels();
    const std::size_t M = S.length();
    Eigen::MatrixXd gram;
    if (m <= M) {
        const Eigen::MatrixXd Sr = as_real(S);
        gram = Sr * Sr.transpose();
    } else {
        gram = column_gram(S);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff() / static_cast<double>(m);
}

CorrelationMeasures correlation_measures(const SignMatrix& S)
{
    const CorrelationEnergies e = correlation_energies(S);
    const double M = static_cast<double>(S.length());
    const double mM = static_cast<double>(S.channels()) * M;
    return {static_cast<double>(e.row) / (mM * mM), static_cast<double>(e.conv) / (mM * mM * M),
            static_cast<double>(e.reversed) / (mM * mM)};
}

QualityReport quality_measures(const SignMatrix& S)
{
    const CorrelationMeasures corr = correlation_measures(S);
    QualityReport r;
    r.m = S.channels();
    r.M = S.length();
    r.alpha = corr.alpha;
    r.beta = corr.beta;
    r.gamma = corr.gamma;
    const CoherenceSummary c = coherence(S);
    r.mu = c.mu;
    r.zero_columns = c.zero_columns;
    r.spectral_norm_sq = spectral_norm_sq(S);
    return r;
}

double welch_floor(std::size_t m, std::size_t M)
{
    const double mm = static_cast<double>(m);
    return (2.0 * mm - 1.0) / (2.0 * mm * static_cast<double>(M) - 1.0);
}

bool BoundsCheck::passed() const
{
    return std::all_of(bounds.begin(), bounds.end(), [](const BoundSlack& b) { return b.holds; });
}

std::vector<std::string> BoundsCheck::violations() const
{
    std::vector<std::string> out;
    for (const auto& b : bounds)
        if (!b.holds)
            out.push_back(b.inequality);
    return out;
}

const BoundSlack& BoundsCheck::at(const std::string& inequality) const
{
    for (const auto& b : bounds)
        if (b.inequality == inequality)
            return b;
    throw std::out_of_range("no bound named '" + inequality + "'");
}

BoundsCheck quality_bounds_check(const QualityReport& report)
{
    require(report.m >= 1 && report.M >= 2, "quality report has invalid dimensions");
    // Floating noise on exact extremes (alpha = 1/m, all-ones = 1) stays
    // within a few ulps.
    constexpr double tolerance = 1e-12;
    const double alpha_floor = 1.0 / static_cast<double>(report.m);
    const double floor = welch_floor(report.m, report.M);

    BoundsCheck out;
    auto add = [&](std::string name, double slack) {
        out.bounds.push_back({std::move(name), slack, slack >= -tolerance});
    };
    add("alpha >= 1/m", report.alpha - alpha_floor);
    add("alpha <= 1", 1.0 - report.alpha);
    add("beta >= (2m-1)/(2mM-1)", report.beta - floor);
    add("beta <= 1", 1.0 - report.beta);
    add("gamma >= (2m-1)/(2mM-1)", report.gamma - floor);
    add("gamma <= 1", 1.0 - report.gamma);
    return out;
}

} // namespace mwclab
