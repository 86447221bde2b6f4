// SPDX-License-Identifier: Apache-2.0
//
// Brute-force Monte Carlo check of ExRIP claims: draw random sparse vectors,
// measure Z^2 = ||Phi u||^2 / ||u||^2 and compare with the analytic bound.
#pragma once

#include "mwclab/distributions.hpp"
#include "mwclab/guarantees.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/rng.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace mwclab {

struct SparseVector {
    std::size_t length = 0;
    std::vector<std::size_t> support;            // K distinct indices, draw order
    std::vector<std::complex<double>> values;    // values[i] sits at support[i]

    Eigen::VectorXcd dense() const;
    double norm_sq() const;
};

/// Uniform support via partial Fisher-Yates over [0, M), then K i.i.d. draws.
SparseVector sample_sparse_vector(std::size_t M, std::size_t K, const NonzeroDistribution& dist, Engine& rng);

struct ExripEstimate {
    std::size_t trials = 0;
    std::size_t K = 0;
    double delta = 0.0;
    double empirical_p = 0.0;   // fraction with |Z^2 - 1| <= delta
    double p_stderr = 0.0;      // binomial
    double moment2 = 0.0;       // E[Z^2]
    double moment2_stderr = 0.0;
    double moment4 = 0.0;       // E[Z^4]
    double moment4_stderr = 0.0;
    double max_deviation = 0.0; // max |Z^2 - 1| observed
    std::size_t redraws = 0;    // draws rejected for ||u||^2 < 1e-300
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinExripTrials = 1000;

/// Trial t draws from its own stream keyed by (seed, t), so the estimate is
/// identical for any worker count.
ExripEstimate empirical_exrip(const SensingMatrix& phi, std::size_t K, double delta, const NonzeroDistribution& dist,
                              std::size_t trials, std::uint64_t seed);

struct ValidityReport {
    GuaranteeResult theory;
    ExripEstimate empirical;
    bool bound_holds = false;  // empirical_p + 3 p_stderr >= theoretical p
    bool mean_is_one = false;  // |E[Z^2] - 1| <= 3 stderr
    // Informational: E[Z^4] against 1 + delta^2 (1 - raw bound).
    double moment4_prediction = 0.0;
    double moment4_gap = 0.0;

    bool passed() const { return bound_holds && mean_is_one; }
};

ValidityReport bound_validity_report(const SignMatrix& S, std::size_t K, double delta,
                                     const NonzeroDistribution& dist, std::size_t trials, std::uint64_t seed,
                                     const MomentMethod& moments = MonteCarloSampling{});

} // namespace mwclab
