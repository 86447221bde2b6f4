// SPDX-License-Identifier: Apache-2.0
#include "mwclab/mc_oracle.hpp"

#include "mwclab/error.hpp"
#include "mwclab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mwclab {

Eigen::VectorXcd SparseVector::dense() const
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(length));
    for (std::size_t i = 0; i < support.size(); ++i)
        out(static_cast<Eigen::Index>(support[i])) = values[i];
    return out;
}

double SparseVector::norm_sq() const
{
    double s = 0.0;
    for (const auto& v : values)
        s += std::norm(v);
    return s;
}

SparseVector sample_sparse_vector(std::size_t M, std::size_t K, const NonzeroDistribution& dist, Engine& rng)
{
    if (K < 1 || K > M)
        throw ValidationError("sparse vector needs 1 <= K <= M (K = " + std::to_string(K) + ", M = " +
                              std::to_string(M) + ")");
    std::vector<std::size_t> index(M);
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < K; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, M - 1);
        std::swap(index[i], index[pick(rng)]);
    }
    SparseVector v;
    v.length = M;
    v.support.assign(index.begin(), index.begin() + static_cast<std::ptrdiff_t>(K));
    v.values.resize(K);
    for (auto& x : v.values)
        x = dist.sample(rng);
    return v;
}

ExripEstimate empirical_exrip(const SensingMatrix& phi, std::size_t K, double delta, const NonzeroDistribution& dist,
                              std::size_t trials, std::uint64_t seed)
{
    require(trials >= kMinExripTrials, "empirical ExRIP needs at least " + std::to_string(kMinExripTrials) + " trials");
    require(delta > 0.0, "delta must be positive");
    const std::size_t M = phi.columns();
    const Eigen::Index m = phi.entries.rows();

    std::vector<double> z2(trials);
    std::vector<std::size_t> redraws(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        Engine rng = make_stream(seed, stream::kExripTrial, t);
        SparseVector u = sample_sparse_vector(M, K, dist, rng);
        double norm = u.norm_sq();
        while (norm < 1e-300) {
            ++redraws[t];
            u = sample_sparse_vector(M, K, dist, rng);
            norm = u.norm_sq();
        }
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m);
        for (std::size_t i = 0; i < K; ++i)
            y += phi.entries.col(static_cast<Eigen::Index>(u.support[i])) * u.values[i];
        z2[t] = y.squaredNorm() / norm;
    });

    ExripEstimate e;
    e.trials = trials;
    e.K = K;
    e.delta = delta;
    e.seed = seed;
    std::size_t inside = 0;
    double s2 = 0, s2sq = 0, s4 = 0, s4sq = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const double z = z2[t];
        const double dev = std::abs(z - 1.0);
        inside += dev <= delta;
        e.max_deviation = std::max(e.max_deviation, dev);
        s2 += z;
        s2sq += z * z;
        s4 += z * z;
        s4sq += z * z * z * z;
        e.redraws += redraws[t];
    }
    const double n = static_cast<double>(trials);
    auto stderr_of = [n](double sum, double sumsq) {
        const double mean = sum / n;
        return std::sqrt(std::max(0.0, (sumsq / n - mean * mean) * n / (n - 1.0)) / n);
    };
    e.empirical_p = static_cast<double>(inside) / n;
    e.p_stderr = std::sqrt(e.empirical_p * (1.0 - e.empirical_p) / n);
    e.moment2 = s2 / n;
    e.moment2_stderr = stderr_of(s2, s2sq);
    e.moment4 = s4 / n;
    e.moment4_stderr = stderr_of(s4, s4sq);
    return e;
}

ValidityReport bound_validity_report(const SignMatrix& S, std::size_t K, double delta,
                                     const NonzeroDistribution& dist, std::size_t trials, std::uint64_t seed,
                                     const MomentMethod& moments)
{
    const MomentConstants constants = moment_constants(dist, K, moments);
    ValidityReport r;
    r.theory = exrip_probability(exrip_inputs(correlation_measures(S), S.channels(), S.length(), K, delta, constants));
    r.empirical = empirical_exrip(sensing_matrix(S), K, delta, dist, trials, seed);

    const auto& e = r.empirical;
    r.bound_holds = e.empirical_p + 3.0 * e.p_stderr >= r.theory.probability;
    // Exact isometries give stderr 0; allow rounding noise.
    r.mean_is_one = std::abs(e.moment2 - 1.0) <= 3.0 * e.moment2_stderr + 1e-12;
    r.moment4_prediction = 1.0 + delta * delta * (1.0 - r.theory.raw_value);
    r.moment4_gap = e.moment4 - r.moment4_prediction;
    return r;
}

} // namespace mwclab
