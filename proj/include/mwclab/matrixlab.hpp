// SPDX-License-Identifier: Apache-2.0
//
// The scaled MWC sensing matrix Phi = S F / sqrt(mM) and the sign-matrix
// quality measures that feed the ExRIP bound.
#pragma once

#include "mwclab/seqgen.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mwclab {

/// F[j, k] = exp(-2 pi i jk / M), unit modulus, no normalisation. The phase
/// index jk is reduced mod M before evaluating the exponential.
Eigen::MatrixXcd dft_matrix(std::size_t M);

struct SensingMatrix {
    Eigen::MatrixXcd entries;                 // m x M
    std::shared_ptr<const SignMatrix> source;
    double scaling = 0.0;                     // 1 / sqrt(mM)

    std::size_t channels() const { return static_cast<std::size_t>(entries.rows()); }
    std::size_t columns() const { return static_cast<std::size_t>(entries.cols()); }
};

SensingMatrix sensing_matrix(const SignMatrix& S);

/// Wrap an arbitrary complex matrix (tests, isometry checks). No source.
SensingMatrix sensing_matrix_from(Eigen::MatrixXcd entries);

/// Unnormalised integer sums behind alpha, beta and gamma:
///   row       sum_{i,k} (S_i . S_k)^2
///   conv      sum_{i,k} ||S_i (*) S_k||^2   (cyclic convolution)
///   reversed  sum_{i,k} (S_i . S_k^-)^2,    S^-[n] = S[-n mod M]
struct CorrelationEnergies {
    std::int64_t row = 0;
    std::int64_t conv = 0;
    std::int64_t reversed = 0;
};

CorrelationEnergies correlation_energies(const SignMatrix& S);

struct CorrelationMeasures {
    double alpha = 0.0; // row / (mM)^2
    double beta = 0.0;  // conv / (m^2 M^3)
    double gamma = 0.0; // reversed / (mM)^2
};

/// alpha, beta, gamma only; skips the Gram and eigenvalue work.
CorrelationMeasures correlation_measures(const SignMatrix& S);

/// S^T S as a dense M x M matrix (exact small integers).
Eigen::MatrixXd column_gram(const SignMatrix& S);

/// Gram matrix Phi^H Phi of the scaled sensing matrix.
Eigen::MatrixXcd sensing_gram(const SignMatrix& S);

struct CoherenceSummary {
    double mu = 0.0;
    std::size_t zero_columns = 0;
};

/// Largest normalised inner product between distinct nonzero columns of Phi.
/// Columns with ||Phi_j||^2 below kZeroColumnTolerance are skipped.
CoherenceSummary coherence(const SignMatrix& S);
CoherenceSummary coherence_of_gram(const Eigen::MatrixXcd& gram);

inline constexpr double kZeroColumnTolerance = 1e-10;

/// ||Phi||^2 = lambda_max(S S^T) / m (F F^H = M I).
double spectral_norm_sq(const SignMatrix& S);

struct QualityReport {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
    double spectral_norm_sq = 0.0;
    std::size_t m = 0;
    std::size_t M = 0;
    std::size_t zero_columns = 0;
};

QualityReport quality_measures(const SignMatrix& S);

/// (2m - 1) / (2mM - 1), the Welch-type floor for beta and gamma.
double welch_floor(std::size_t m, std::size_t M);

struct BoundSlack {
    std::string inequality;
    double slack = 0.0; // >= 0 when the inequality holds
    bool holds = true;
};

struct BoundsCheck {
    std::vector<BoundSlack> bounds; // alpha lo/hi, beta lo/hi, gamma lo/hi
    bool passed() const;
    std::vector<std::string> violations() const;
    const BoundSlack& at(const std::string& inequality) const;
};

/// Evaluates 1/m <= alpha <= 1 and floor <= beta, gamma <= 1 with slacks.
BoundsCheck quality_bounds_check(const QualityReport& report);

} // namespace mwclab
