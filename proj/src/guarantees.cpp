// SPDX-License-Identifier: Apache-2.0
#include "mwclab/guarantees.hpp"

#include "mwclab/error.hpp"
#include "mwclab/parallel.hpp"
#include "mwclab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace mwclab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

GuaranteeResult make_result(std::string bound, double raw, bool feasible, std::string reason,
                            std::map<std::string, double> params)
{
    GuaranteeResult r;
    r.bound = std::move(bound);
    r.raw_value = std::isfinite(raw) ? raw : kNaN;
    r.feasible = feasible;
    r.probability = feasible && std::isfinite(raw) ? clamp01(raw) : 0.0;
    r.reason = std::move(reason);
    r.params = std::move(params);
    return r;
}

void require_delta(double delta)
{
    require(delta > 0.0 && delta < 1.0, "isometry constant delta must lie in (0, 1)");
}

// Floors of exact ratios such as 0.5 * (1 + 23) can land a few ulps low.
std::size_t floor_count(double x)
{
    return static_cast<std::size_t>(std::floor(x + 1e-9));
}

} // namespace

// --- moment constants ------------------------------------------------------

MomentConstants moment_constants(const NonzeroDistribution& dist, std::size_t K, const MomentMethod& method)
{
    require(K >= 1, "sparsity K must be >= 1");
    require(dist.scale > 0.0 && std::isfinite(dist.scale), "distribution scale must be positive");

    MomentConstants out;
    out.K = K;

    if (std::holds_alternative<ClosedForm>(method)) {
        out.source = MomentSource::closed_form;
        if (K == 1)
            return out;
        require(dist.kind == DistributionKind::real_normal,
                "closed-form moment constants exist only for real_normal or K = 1, not " +
                    std::string(to_string(dist.kind)));
        const double k = static_cast<double>(K);
        out.C = 3.0 * k / (2.0 * k + k * k);
        out.B = 1.0;
        return out;
    }

    const auto& mc = std::get<MonteCarloSampling>(method);
    require(mc.samples >= kMinMomentSamples,
            "Monte Carlo moment estimation needs at least " + std::to_string(kMinMomentSamples) + " samples");
    out.source = MomentSource::monte_carlo;
    out.samples = mc.samples;
    if (K == 1)
        return out;

    constexpr std::size_t block_size = 4096;
    const std::size_t blocks = (mc.samples + block_size - 1) / block_size;
    struct Sums {
        double c = 0, c2 = 0, b = 0, b2 = 0;
    };
    std::vector<Sums> partial(blocks);
    parallel_for(blocks, [&](std::size_t blk) {
        Engine rng = make_stream(mc.seed, stream::kMoments, blk);
        const std::size_t count = std::min(block_size, mc.samples - blk * block_size);
        Sums s;
        for (std::size_t n = 0; n < count; ++n) {
            double norm2 = 0.0, fourth = 0.0;
            std::complex<double> squares = 0.0;
            do {
                norm2 = fourth = 0.0;
                squares = 0.0;
                for (std::size_t i = 0; i < K; ++i) {
                    const std::complex<double> u = dist.sample(rng);
                    const double p = std::norm(u);
                    norm2 += p;
                    fourth += p * p;
                    squares += u * u;
                }
            } while (norm2 < 1e-300);
            const double c = fourth / (norm2 * norm2);
            const double b = std::norm(squares) / (norm2 * norm2);
            s.c += c;
            s.c2 += c * c;
            s.b += b;
            s.b2 += b * b;
        }
        partial[blk] = s;
    });

    Sums total;
    for (const auto& s : partial) {
        total.c += s.c;
        total.c2 += s.c2;
        total.b += s.b;
        total.b2 += s.b2;
    }
    const double n = static_cast<double>(mc.samples);
    auto stderr_of = [n](double sum, double sum2) {
        const double mean = sum / n;
        const double var = std::max(0.0, (sum2 / n - mean * mean) * n / (n - 1.0));
        return std::sqrt(var / n);
    };
    out.C = total.c / n;
    out.C_stderr = stderr_of(total.c, total.c2);
    if (dist.is_complex()) {
        out.B = total.b / n;
        out.B_stderr = stderr_of(total.b, total.b2);
    } else {
        out.B = 1.0;
    }
    return out;
}

// --- ExRIP -----------------------------------------------------------------

ExripInputs exrip_inputs(const CorrelationMeasures& measures, std::size_t m, std::size_t M, std::size_t K,
                         double delta, const MomentConstants& constants)
{
    ExripInputs in;
    in.alpha = measures.alpha;
    in.beta = measures.beta;
    in.gamma = measures.gamma;
    in.m = m;
    in.M = M;
    in.K = K;
    in.delta = delta;
    in.constants = constants;
    return in;
}

ExripInputs exrip_inputs(const QualityReport& report, std::size_t K, double delta, const MomentConstants& constants)
{
    return exrip_inputs(CorrelationMeasures{report.alpha, report.beta, report.gamma}, report.m, report.M, K, delta,
                        constants);
}

GuaranteeResult exrip_probability(const ExripInputs& in)
{
    require_delta(in.delta);
    require(in.K >= 1, "sparsity K must be >= 1");
    require(in.M > in.K, "ExRIP bound needs M > K");
    require(in.m >= 1, "channel count m must be >= 1");
    for (double q : {in.alpha, in.beta, in.gamma})
        require(q >= 0.0 && q <= 1.0 + 1e-12, "quality measures must lie in [0, 1]");
    const double B = in.constants.B;
    const double C = in.constants.C;
    require(C > 0.0 && C <= 1.0 + 1e-12 && B > 0.0 && B <= 1.0 + 1e-12, "moment constants must lie in (0, 1]");

    const double rho = in.rho();
    const double M = static_cast<double>(in.M);
    const double excess = (1.0 - C) * rho * (1.0 + in.alpha - 2.0 * in.beta) +
                          (B - C) * rho * (in.gamma - in.beta) + C * M * in.beta - 1.0;
    const double raw = 1.0 - excess / (in.delta * in.delta);

    return make_result("exrip", raw, true, {},
                       {{"alpha", in.alpha},
                        {"beta", in.beta},
                        {"gamma", in.gamma},
                        {"m", static_cast<double>(in.m)},
                        {"M", M},
                        {"K", static_cast<double>(in.K)},
                        {"delta", in.delta},
                        {"B_K", B},
                        {"C_K", C},
                        {"rho_M", rho}});
}

GuaranteeResult exrip_approx(std::size_t m, double delta)
{
    require(m >= 1, "channel count m must be >= 1");
    require_delta(delta);
    const double raw = 1.0 - 1.0 / (static_cast<double>(m) * delta * delta);
    return make_result("exrip_approx", raw, true, {}, {{"m", static_cast<double>(m)}, {"delta", delta}});
}

// --- coherence -------------------------------------------------------------

CoherenceGuarantees coherence_guarantees(double mu, std::size_t M, double spectral_norm_sq,
                                         std::optional<double> candes_plan_c, std::size_t K)
{
    require(mu >= 0.0 && mu <= 1.0, "coherence must lie in [0, 1]");
    require(M >= 2, "need M >= 2 columns");

    CoherenceGuarantees out;
    out.mu = mu;
    if (mu > 0.0) {
        out.donoho_elad_max_k = floor_count(0.5 * (1.0 + 1.0 / mu));
        out.tropp_max_k = floor_count(1.0 / (3.0 * mu));
    }

    if (!candes_plan_c) {
        out.candes_plan.reason = "constant c not supplied";
        return out;
    }
    require(*candes_plan_c > 0.0, "Candes-Plan constant must be positive");
    require(spectral_norm_sq > 0.0, "spectral norm must be positive");
    const double logM = std::log(static_cast<double>(M));
    out.candes_plan.evaluable = true;
    out.candes_plan.coherence_ok = mu < *candes_plan_c / logM;
    out.candes_plan.sparsity_ok =
        static_cast<double>(K) <= *candes_plan_c * static_cast<double>(M) / (spectral_norm_sq * logM);
    return out;
}

// --- RIP -------------------------------------------------------------------

RipRequirement rip_min_m(std::size_t M, std::size_t K, double delta, double prob, double c)
{
    require_delta(delta);
    require(prob > 0.0 && prob < 1.0, "target probability must lie in (0, 1)");
    require(c > 0.0, "distribution constant c must be positive");
    require(K >= 1 && K <= M, "need 1 <= K <= M");

    RipRequirement r;
    const double Md = static_cast<double>(M);
    const double Kd = static_cast<double>(K);
    r.log_binomial = std::lgamma(Md + 1.0) - std::lgamma(Kd + 1.0) - std::lgamma(Md - Kd + 1.0);
    r.t = -std::log1p(-prob);
    r.bound = 2.0 / (c * delta) * (std::log(2.0) + r.log_binomial + Kd * std::log(12.0 / delta) + r.t);
    r.m = static_cast<std::size_t>(std::ceil(r.bound));
    return r;
}

// --- StRIP -----------------------------------------------------------------

GuaranteeResult strip_calderbank(std::size_t m, std::size_t M, std::size_t K, double delta)
{
    require(m >= 1 && K >= 1, "need m >= 1 and K >= 1");
    require(M > 3, "Calderbank bound needs M > 3");
    require(delta > 0.0, "delta must be positive");
    const double Md = static_cast<double>(M);
    const double Kd = static_cast<double>(K);
    const double floor = (Kd - 1.0) / (Md - 1.0);
    const bool feasible = floor < delta && delta < 1.0;
    const double gap = delta - floor;
    const double raw = 1.0 - (2.0 * Kd / static_cast<double>(m) + (2.0 * Kd + 7.0) / (Md - 3.0)) / (gap * gap);
    return make_result("calderbank", raw, feasible, feasible ? "" : "requires (K-1)/(M-1) < delta < 1",
                       {{"m", static_cast<double>(m)}, {"M", Md}, {"K", Kd}, {"delta", delta}});
}

GuaranteeResult strip_gan(double mu, std::size_t M, std::size_t K, double delta)
{
    require(mu >= 0.0 && mu <= 1.0, "coherence must lie in [0, 1]");
    require(M >= 2 && K >= 1, "need M >= 2 and K >= 1");
    const double Md = static_cast<double>(M);
    const double Kd = static_cast<double>(K);
    const double gap = delta - 1.0 / (Md - 1.0);
    const bool feasible = gap > 0.0;
    const double raw = mu == 0.0 ? 1.0 : 1.0 - 2.0 * std::exp(-(gap * gap) / (16.0 * mu * mu * Kd));
    return make_result("gan", raw, feasible, feasible ? "" : "requires delta > 1/(M-1)",
                       {{"mu", mu}, {"M", Md}, {"K", Kd}, {"delta", delta}});
}

GuaranteeResult strip_tropp(double mu, double spectral_norm_sq, std::size_t M, std::size_t K, double delta,
                            double t)
{
    require(t >= 1.0, "Tropp StRIP bound needs t >= 1");
    require(mu >= 0.0 && mu <= 1.0, "coherence must lie in [0, 1]");
    require(spectral_norm_sq >= 0.0, "spectral norm must be non-negative");
    require(M >= 1 && K >= 1, "need M >= 1 and K >= 1");
    const double Kd = static_cast<double>(K);
    const double Md = static_cast<double>(M);
    const double lhs = std::sqrt(144.0 * mu * mu * Kd * t * std::log(Kd / 2.0 + 1.0)) +
                       2.0 * Kd / Md * spectral_norm_sq;
    const double rhs = std::exp(-0.25) * delta;
    const double raw = 1.0 - std::pow(Kd / 2.0, -t);

    std::string reason;
    bool feasible = true;
    if (K < 2) {
        feasible = false;
        reason = "requires K >= 2";
    } else if (lhs > rhs) {
        feasible = false;
        reason = "conditioning inequality fails";
    }
    return make_result("tropp_strip", raw, feasible, reason,
                       {{"mu", mu},
                        {"spectral_norm_sq", spectral_norm_sq},
                        {"M", Md},
                        {"K", Kd},
                        {"delta", delta},
                        {"t", t},
                        {"lhs", lhs},
                        {"rhs", rhs}});
}

// --- search ----------------------------------------------------------------

std::string_view to_string(BoundName bound)
{
    switch (bound) {
    case BoundName::exrip: return "exrip";
    case BoundName::exrip_approx: return "exrip_approx";
    case BoundName::donoho_elad: return "donoho_elad";
    case BoundName::tropp_coherence: return "tropp_coherence";
    case BoundName::candes_plan: return "candes_plan";
    case BoundName::rip: return "rip";
    case BoundName::calderbank: return "calderbank";
    case BoundName::gan: return "gan";
    case BoundName::tropp_strip: return "tropp_strip";
    }
    return "unknown";
}

BoundName parse_bound(std::string_view name)
{
    std::string key(name);
    std::replace(key.begin(), key.end(), '-', '_');
    for (auto b : {BoundName::exrip, BoundName::exrip_approx, BoundName::donoho_elad, BoundName::tropp_coherence,
                   BoundName::candes_plan, BoundName::rip, BoundName::calderbank, BoundName::gan,
                   BoundName::tropp_strip})
        if (key == to_string(b))
            return b;
    throw ValidationError("unknown bound '" + std::string(name) + "'");
}

bool is_instance_dependent(BoundName bound)
{
    switch (bound) {
    case BoundName::exrip_approx:
    case BoundName::rip:
    case BoundName::calderbank: return false;
    default: return true;
    }
}

namespace {

struct Evaluation {
    bool satisfied = false;
    double value = 0.0; // probability or mu
    std::optional<std::uint64_t> seed;
};

bool lower_is_better(BoundName bound)
{
    return bound == BoundName::donoho_elad || bound == BoundName::tropp_coherence || bound == BoundName::candes_plan;
}

class Evaluator {
public:
    Evaluator(BoundName bound, const SearchTarget& target, const SearchOptions& options)
        : bound_(bound), target_(target), options_(options)
    {
        if (bound == BoundName::exrip) {
            if (target.constants) {
                constants_ = *target.constants;
            } else if (target.K == 1 || target.dist.kind == DistributionKind::real_normal) {
                constants_ = moment_constants(target.dist, target.K, ClosedForm{});
            } else {
                constants_ = moment_constants(target.dist, target.K, options.moment_sampling);
            }
        }
    }

    Evaluation operator()(std::size_t m) const
    {
        if (!is_instance_dependent(bound_))
            return closed(m);

        const bool random = options_.family.family == Family::random;
        const std::size_t attempts = random ? std::max<std::size_t>(1, options_.attempts) : 1;
        std::vector<Evaluation> evals(attempts);
        parallel_for(attempts, [&](std::size_t a) {
            FamilySpec spec = options_.family;
            spec.channels = m;
            std::optional<std::uint64_t> seed;
            if (random) {
                Engine derive = make_stream(options_.seed, (stream::kSearch << 32) | m, a);
                seed = derive();
                spec.seed = *seed;
            }
            evals[a] = instance(build_sign_matrix(spec));
            evals[a].seed = seed;
        });

        std::size_t best = 0;
        for (std::size_t a = 1; a < attempts; ++a) {
            const auto& c = evals[a];
            const auto& b = evals[best];
            if (c.satisfied != b.satisfied) {
                if (c.satisfied)
                    best = a;
                continue;
            }
            if (lower_is_better(bound_) ? c.value < b.value : c.value > b.value)
                best = a;
        }
        return evals[best];
    }

private:
    Evaluation closed(std::size_t m) const
    {
        switch (bound_) {
        case BoundName::exrip_approx: {
            const auto r = exrip_approx(m, target_.delta);
            return {r.probability >= target_.target_prob, r.probability, std::nullopt};
        }
        case BoundName::rip: {
            const auto r = rip_min_m(target_.M, target_.K, target_.delta, target_.target_prob, target_.rip_c);
            return {m >= r.m, static_cast<double>(r.m), std::nullopt};
        }
        case BoundName::calderbank: {
            const auto r = strip_calderbank(m, target_.M, target_.K, target_.delta);
            return {r.feasible && r.probability >= target_.target_prob, r.probability, std::nullopt};
        }
        default: throw std::logic_error("bound is instance dependent");
        }
    }

    Evaluation instance(const SignMatrix& S) const
    {
        const std::size_t K = target_.K;
        switch (bound_) {
        case BoundName::exrip: {
            const auto r = exrip_probability(
                exrip_inputs(correlation_measures(S), S.channels(), S.length(), K, target_.delta, constants_));
            return {r.probability >= target_.target_prob, r.probability, std::nullopt};
        }
        case BoundName::donoho_elad:
        case BoundName::tropp_coherence: {
            const double mu = coherence(S).mu;
            const auto g = coherence_guarantees(mu, S.length(), 1.0, std::nullopt);
            const auto& limit = bound_ == BoundName::donoho_elad ? g.donoho_elad_max_k : g.tropp_max_k;
            return {!limit || K <= *limit, mu, std::nullopt};
        }
        case BoundName::candes_plan: {
            const double mu = coherence(S).mu;
            const auto g = coherence_guarantees(mu, S.length(), spectral_norm_sq(S), target_.candes_plan_c, K);
            return {g.candes_plan.coherence_ok && g.candes_plan.sparsity_ok, mu, std::nullopt};
        }
        case BoundName::gan: {
            const auto r = strip_gan(coherence(S).mu, S.length(), K, target_.delta);
            return {r.feasible && r.probability >= target_.target_prob, r.probability, std::nullopt};
        }
        case BoundName::tropp_strip: {
            const auto r =
                strip_tropp(coherence(S).mu, spectral_norm_sq(S), S.length(), K, target_.delta, target_.tropp_t);
            return {r.feasible && r.probability >= target_.target_prob, r.probability, std::nullopt};
        }
        default: throw std::logic_error("bound is not instance dependent");
        }
    }

    BoundName bound_;
    const SearchTarget& target_;
    const SearchOptions& options_;
    MomentConstants constants_;
};

} // namespace

SearchResult min_channels_search(BoundName bound, const SearchTarget& target, const SearchOptions& options)
{
    require(target.M >= 2, "search needs M >= 2");
    require(options.ceiling >= 1, "search ceiling must be >= 1");
    SearchResult result;
    result.bound = std::string(to_string(bound));

    if (bound == BoundName::candes_plan && !target.candes_plan_c) {
        result.note = "not evaluable: Candes-Plan constant c not supplied";
        return result;
    }

    FamilySpec family = options.family;
    family.length = family.family == Family::random || family.family == Family::hadamard ? target.M : 0;
    if (family.family == Family::hadamard)
        family.register_length = 0;
    family.channels = 1;
    require(family.resolved_length() == target.M, "family length does not match M = " + std::to_string(target.M));
    const std::size_t ceiling = std::min(options.ceiling, family_population(family));

    SearchOptions opts = options;
    opts.family = family;
    const Evaluator evaluate(bound, target, opts);

    std::map<std::size_t, Evaluation> cache;
    auto probe = [&](std::size_t m) -> const Evaluation& {
        auto it = cache.find(m);
        if (it == cache.end()) {
            it = cache.emplace(m, evaluate(m)).first;
            ++result.evaluations;
        }
        return it->second;
    };

    std::size_t lo = 0; // largest m known to fail (0: none)
    std::size_t hi = 0; // smallest m known to pass
    for (std::size_t m = 1;; m *= 2) {
        const std::size_t candidate = std::min(m, ceiling);
        if (probe(candidate).satisfied) {
            hi = candidate;
            break;
        }
        lo = candidate;
        if (candidate == ceiling) {
            result.ceiling_exhausted = true;
            result.note = "bound not met at the ceiling m = " + std::to_string(ceiling);
            return result;
        }
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (probe(mid).satisfied)
            hi = mid;
        else
            lo = mid;
    }
    const Evaluation& best = cache.at(hi);
    result.m = hi;
    result.witness_seed = best.seed;
    result.witness_value = best.value;
    return result;
}

} // namespace mwclab
