// SPDX-License-Identifier: Apache-2.0
#include "mwclab/mmv_recovery.hpp"

#include "mwclab/error.hpp"
#include "mwclab/parallel.hpp"
#include "mwclab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mwclab {

namespace {

std::vector<std::size_t> uniform_support(std::size_t M, std::size_t K, Engine& rng)
{
    std::vector<std::size_t> index(M);
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < K; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, M - 1);
        std::swap(index[i], index[pick(rng)]);
    }
    index.resize(K);
    std::sort(index.begin(), index.end());
    return index;
}

} // namespace

MMVInstance synthesize_mmv(const SensingMatrix& phi, std::vector<std::size_t> support, std::size_t r,
                           const NonzeroDistribution& dist, double noise_sigma, std::uint64_t seed)
{
    require(r >= 1, "MMV needs r >= 1 measurement vectors");
    require(noise_sigma >= 0.0 && std::isfinite(noise_sigma), "noise sigma must be finite and >= 0");
    const std::size_t M = phi.columns();
    std::sort(support.begin(), support.end());
    require(std::adjacent_find(support.begin(), support.end()) == support.end(), "support indices must be distinct");
    require(support.empty() || support.back() < M, "support index out of range");

    Engine rng = make_stream(seed, stream::kMmvTrial);
    MMVInstance inst;
    inst.phi = phi;
    inst.support = std::move(support);
    inst.noise_sigma = noise_sigma;
    inst.U = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(r));
    for (std::size_t j : inst.support)
        for (std::size_t c = 0; c < r; ++c)
            inst.U(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) = dist.sample(rng);

    inst.V = phi.entries * inst.U;
    if (noise_sigma > 0.0) {
        std::normal_distribution<double> n(0.0, noise_sigma / std::sqrt(2.0));
        for (Eigen::Index i = 0; i < inst.V.rows(); ++i)
            for (Eigen::Index c = 0; c < inst.V.cols(); ++c) {
                const double re = n(rng);
                inst.V(i, c) += std::complex<double>(re, n(rng));
            }
    }
    inst.degenerate = inst.support.empty() && noise_sigma == 0.0;
    return inst;
}

std::vector<std::size_t> SompResult::support() const
{
    std::vector<std::size_t> out = selected;
    std::sort(out.begin(), out.end());
    return out;
}

SompResult somp(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& V, std::size_t k_target)
{
    require(phi.rows() == V.rows(), "Phi and V must have the same number of rows");
    require(k_target <= static_cast<std::size_t>(phi.rows()), "k_target must not exceed m");
    require(k_target <= static_cast<std::size_t>(phi.cols()), "k_target must not exceed M");

    SompResult out;
    std::vector<bool> taken(static_cast<std::size_t>(phi.cols()), false);
    Eigen::MatrixXcd residual = V;
    for (std::size_t it = 0; it < k_target; ++it) {
        const Eigen::MatrixXcd corr = phi.adjoint() * residual;
        std::size_t best = 0;
        double best_score = -1.0;
        for (Eigen::Index j = 0; j < phi.cols(); ++j) {
            if (taken[static_cast<std::size_t>(j)])
                continue;
            const double score = corr.row(j).squaredNorm();
            if (score > best_score) {
                best_score = score;
                best = static_cast<std::size_t>(j);
            }
        }

        out.selected.push_back(best);
        Eigen::MatrixXcd sub(phi.rows(), static_cast<Eigen::Index>(out.selected.size()));
        for (std::size_t c = 0; c < out.selected.size(); ++c)
            sub.col(static_cast<Eigen::Index>(c)) = phi.col(static_cast<Eigen::Index>(out.selected[c]));
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sub);
        if (qr.rank() < sub.cols()) {
            out.selected.pop_back();
            out.stopped_early = true;
            break;
        }
        taken[best] = true;
        residual = V - sub * qr.solve(V);
    }
    return out;
}

double noise_sigma_for_snr(double snr_db, std::size_t K_rows, std::size_t m, const NonzeroDistribution& dist)
{
    require(std::isfinite(snr_db), "SNR must be finite");
    require(m >= 1 && K_rows >= 1, "SNR scaling needs m >= 1 and K_rows >= 1");
    const double signal = static_cast<double>(K_rows) * dist.mean_power();
    return std::sqrt(signal / (static_cast<double>(m) * std::pow(10.0, snr_db / 10.0)));
}

RecoveryReport recovery_experiment(const RecoveryParams& params)
{
    require(params.trials >= 1, "recovery experiment needs at least one trial");
    require(params.r >= 1, "r must be >= 1");
    const SignMatrix S = build_sign_matrix(params.family);
    const SensingMatrix phi = sensing_matrix(S);
    const std::size_t M = S.length();
    require(params.K_rows >= 1 && params.K_rows <= std::min(M, S.channels()),
            "K_rows must lie in [1, min(m, M)]");

    RecoveryReport rep;
    rep.params = params;
    rep.noise_sigma = params.noise_sigma  ? *params.noise_sigma
                      : params.snr_db     ? noise_sigma_for_snr(*params.snr_db, params.K_rows, S.channels(), params.dist)
                                          : 0.0;
    rep.trials = params.trials;
    rep.outcomes.resize(params.trials);

    parallel_for(params.trials, [&](std::size_t t) {
        Engine rng = make_stream(params.seed, stream::kMmvTrial, t);
        auto support = uniform_support(M, params.K_rows, rng);
        const std::uint64_t values_seed = rng();
        const MMVInstance inst = synthesize_mmv(phi, support, params.r, params.dist, rep.noise_sigma, values_seed);
        const SompResult found = somp(phi.entries, inst.V, params.K_rows);

        TrialOutcome& o = rep.outcomes[t];
        o.trial = t;
        o.true_support = inst.support;
        o.estimated_support = found.support();
        o.exact_match = o.estimated_support == o.true_support;
        o.stopped_early = found.stopped_early;
    });

    for (const auto& o : rep.outcomes)
        rep.successes += o.exact_match;
    const double n = static_cast<double>(rep.trials);
    rep.success_rate = static_cast<double>(rep.successes) / n;
    rep.rate_stderr = std::sqrt(rep.success_rate * (1.0 - rep.success_rate) / n);
    return rep;
}

} // namespace mwclab
