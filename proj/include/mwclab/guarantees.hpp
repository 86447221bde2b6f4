// SPDX-License-Identifier: Apache-2.0
//
// Recovery guarantees for a given sign matrix: the ExRIP probability bound
// driven by (alpha, beta, gamma), its 1 - 1/(m delta^2) approximation, and the
// coherence, RIP and StRIP guarantees it is compared against.
#pragma once

#include "mwclab/distributions.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/seqgen.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace mwclab {

/// sqrt(2) - 1, the isometry level at which basis pursuit recovery of
/// K-sparse vectors is guaranteed from delta_2K.
inline const double kBasisPursuitDelta = std::sqrt(2.0) - 1.0;

// --- moment constants ------------------------------------------------------

enum class MomentSource { closed_form, monte_carlo };

/// C_K = E{sum |u_i|^4 / ||u||^4},  B_K = E{|sum u_i^2|^2 / ||u||^4}.
struct MomentConstants {
    double B = 1.0;
    double C = 1.0;
    std::size_t K = 1;
    MomentSource source = MomentSource::closed_form;
    std::size_t samples = 0;
    double B_stderr = 0.0;
    double C_stderr = 0.0;
};

struct ClosedForm {};
struct MonteCarloSampling {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
};
using MomentMethod = std::variant<ClosedForm, MonteCarloSampling>;

inline constexpr std::size_t kMinMomentSamples = 100'000;

/// Closed form exists for K = 1 (B = C = 1) and real_normal (C = 3/(K + 2),
/// B = 1). Monte Carlo needs at least kMinMomentSamples draws and is
/// reproducible from the seed regardless of worker count. Real-valued kinds
/// always report B = 1.
MomentConstants moment_constants(const NonzeroDistribution& dist, std::size_t K, const MomentMethod& method);

// --- results ---------------------------------------------------------------

/// Output of one probability-valued bound. `probability` is raw_value clamped
/// to [0, 1] when the bound's hypotheses hold, and 0 otherwise (with `reason`).
/// raw_value is NaN when the formula is undefined for the inputs.
struct GuaranteeResult {
    std::string bound;
    double probability = 0.0;
    double raw_value = 0.0;
    bool feasible = true;
    std::string reason;
    std::map<std::string, double> params;
};

// --- ExRIP -----------------------------------------------------------------

struct ExripInputs {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::size_t m = 0;
    std::size_t M = 0;
    std::size_t K = 0;   // sparsity in the bound (2K when reproducing tables)
    double delta = 0.0;  // isometry constant in (0, 1)
    MomentConstants constants;

    double rho() const { return static_cast<double>(M) / static_cast<double>(M - 1); }
};

ExripInputs exrip_inputs(const CorrelationMeasures& measures, std::size_t m, std::size_t M, std::size_t K,
                         double delta, const MomentConstants& constants);
ExripInputs exrip_inputs(const QualityReport& report, std::size_t K, double delta,
                         const MomentConstants& constants);

/// p = 1 - [(1-C) rho (1 + alpha - 2 beta) + (B-C) rho (gamma - beta) + C M beta - 1] / delta^2
GuaranteeResult exrip_probability(const ExripInputs& in);

/// p ~ 1 - 1 / (m delta^2)
GuaranteeResult exrip_approx(std::size_t m, double delta);

// --- coherence guarantees --------------------------------------------------

struct CandesPlanCheck {
    bool evaluable = false;
    bool coherence_ok = false; // mu < c / log M
    bool sparsity_ok = false;  // K <= c M / (||Phi||^2 log M)
    std::string reason;
};

struct CoherenceGuarantees {
    double mu = 0.0;
    std::optional<std::size_t> donoho_elad_max_k; // nullopt: unbounded (mu = 0)
    std::optional<std::size_t> tropp_max_k;       // nullopt: unbounded (mu = 0)
    CandesPlanCheck candes_plan;
};

/// Donoho-Elad: K <= (1 + 1/mu) / 2.  Tropp: K <= 1 / (3 mu).
/// Candes-Plan is evaluated at sparsity `K` only when `candes_plan_c` is given.
CoherenceGuarantees coherence_guarantees(double mu, std::size_t M, double spectral_norm_sq,
                                         std::optional<double> candes_plan_c, std::size_t K = 1);

// --- RIP sample bound ------------------------------------------------------

inline constexpr double kSubGaussianSignConstant = 7.0 / 18.0;

struct RipRequirement {
    std::size_t m = 0;        // smallest integer satisfying the bound
    double bound = 0.0;       // right-hand side before rounding up
    double log_binomial = 0.0; // ln (M choose K) via lgamma
    double t = 0.0;           // -ln(1 - prob)
};

/// m >= 2/(c delta) (ln(2 L) + K ln(12/delta) + t), L = (M choose K), t = -ln(1-prob).
RipRequirement rip_min_m(std::size_t M, std::size_t K, double delta, double prob,
                         double c = kSubGaussianSignConstant);

// --- StRIP -----------------------------------------------------------------

/// Needs (K-1)/(M-1) < delta < 1;
/// p = 1 - [2K/m + (2K+7)/(M-3)] / (delta - (K-1)/(M-1))^2.
GuaranteeResult strip_calderbank(std::size_t m, std::size_t M, std::size_t K, double delta);

/// Needs delta > 1/(M-1); p = 1 - 2 exp(-(delta - 1/(M-1))^2 / (16 mu^2 K)).
GuaranteeResult strip_gan(double mu, std::size_t M, std::size_t K, double delta);

/// Feasible when sqrt(144 mu^2 K t log(K/2 + 1)) + (2K/M) ||Phi||^2 <= e^{-1/4} delta
/// and K >= 2; then p = 1 - (K/2)^{-t}. Requires t >= 1.
GuaranteeResult strip_tropp(double mu, double spectral_norm_sq, std::size_t M, std::size_t K, double delta,
                            double t);

// --- minimal channel search ------------------------------------------------

enum class BoundName { exrip, exrip_approx, donoho_elad, tropp_coherence, candes_plan, rip, calderbank, gan, tropp_strip };

std::string_view to_string(BoundName bound);
BoundName parse_bound(std::string_view name);
/// True when the bound depends on the realised sign matrix (best-of-N applies).
bool is_instance_dependent(BoundName bound);

struct SearchTarget {
    std::size_t M = 0;
    std::size_t K = 1;
    double delta = kBasisPursuitDelta;
    NonzeroDistribution dist;
    double target_prob = 0.0;           // probability bounds
    std::optional<double> candes_plan_c;
    double tropp_t = 1.0;
    double rip_c = kSubGaussianSignConstant;
    std::optional<MomentConstants> constants; // exrip; estimated when absent
};

struct SearchOptions {
    FamilySpec family;            // channels and seed are overwritten per candidate
    std::size_t attempts = 1;     // best-of-N for instance-dependent bounds
    std::size_t ceiling = 1 << 15;
    std::uint64_t seed = 1;
    MonteCarloSampling moment_sampling{};
};

struct SearchResult {
    std::string bound;
    std::optional<std::size_t> m; // nullopt when the ceiling was exhausted
    bool ceiling_exhausted = false;
    std::optional<std::uint64_t> witness_seed;
    double witness_value = 0.0;   // probability, or mu for coherence bounds
    std::size_t evaluations = 0;
    std::string note;
};

/// Smallest m (doubling from 1, then bisection) at which the bound is met.
/// Instance-dependent bounds draw `attempts` sign matrices per candidate m and
/// keep the best one (lowest mu, or highest probability).
SearchResult min_channels_search(BoundName bound, const SearchTarget& target, const SearchOptions& options);

} // namespace mwclab
