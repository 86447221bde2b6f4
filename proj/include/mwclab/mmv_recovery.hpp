// SPDX-License-Identifier: Apache-2.0
//
// Synthetic multiple-measurement-vector problems V = Phi U (+ noise) and
// row-support recovery by simultaneous orthogonal matching pursuit.
#pragma once

#include "mwclab/distributions.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/seqgen.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace mwclab {

struct MMVInstance {
    SensingMatrix phi;
    std::vector<std::size_t> support; // sorted row indices of U
    Eigen::MatrixXcd U;               // M x r, zero off the support
    Eigen::MatrixXcd V;               // m x r
    double noise_sigma = 0.0;         // E|n|^2 per entry
    bool degenerate = false;          // empty support without noise: V = 0
};

/// U rows on `support` are i.i.d. from `dist`; V = Phi U plus circular complex
/// Gaussian noise with E|n|^2 = noise_sigma^2.
MMVInstance synthesize_mmv(const SensingMatrix& phi, std::vector<std::size_t> support, std::size_t r,
                           const NonzeroDistribution& dist, double noise_sigma, std::uint64_t seed);

struct SompResult {
    std::vector<std::size_t> selected; // selection order
    bool stopped_early = false;        // selected columns became rank deficient

    std::vector<std::size_t> support() const; // sorted
};

/// Each iteration picks the column with the largest ||Phi_j^H R||_2 (ties go to
/// the lowest index) and re-projects V onto the selected columns.
SompResult somp(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& V, std::size_t k_target);

/// sigma with 10 log10(E||Phi U||_F^2 / E||N||_F^2) = snr_db under uniform
/// supports. E||Phi U||_F^2 = K r E|u|^2 because the columns of Phi have unit
/// mean squared norm.
double noise_sigma_for_snr(double snr_db, std::size_t K_rows, std::size_t m, const NonzeroDistribution& dist);

struct RecoveryParams {
    FamilySpec family;
    std::size_t K_rows = 1;
    std::size_t r = 1;
    std::optional<double> noise_sigma; // takes precedence over snr_db
    std::optional<double> snr_db;
    NonzeroDistribution dist;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
};

struct TrialOutcome {
    std::size_t trial = 0;
    std::vector<std::size_t> true_support;
    std::vector<std::size_t> estimated_support;
    bool exact_match = false;
    bool stopped_early = false;
};

struct RecoveryReport {
    RecoveryParams params;
    double noise_sigma = 0.0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    double rate_stderr = 0.0;
    std::vector<TrialOutcome> outcomes;
};

/// The sign matrix is built once from params.family; every trial draws a fresh
/// support, U and noise from the stream keyed by (seed, trial).
RecoveryReport recovery_experiment(const RecoveryParams& params);

} // namespace mwclab
