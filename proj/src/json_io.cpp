// SPDX-License-Identifier: Apache-2.0
#include "mwclab/json_io.hpp"

#include <cmath>

namespace mwclab {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json optional_or_null(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

void to_json(Json& j, const QualityReport& r)
{
    j = Json{{"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}, {"mu", r.mu},
             {"spectral_norm_sq", r.spectral_norm_sq}, {"m", r.m}, {"M", r.M}, {"zero_columns", r.zero_columns}};
}

void to_json(Json& j, const BoundsCheck& r)
{
    Json list = Json::array();
    for (const auto& b : r.bounds)
        list.push_back({{"inequality", b.inequality}, {"slack", b.slack}, {"holds", b.holds}});
    j = Json{{"passed", r.passed()}, {"bounds", list}};
}

void to_json(Json& j, const MomentConstants& r)
{
    j = Json{{"B", r.B},
             {"C", r.C},
             {"K", r.K},
             {"source", r.source == MomentSource::closed_form ? "closed_form" : "monte_carlo"},
             {"samples", r.samples},
             {"B_stderr", r.B_stderr},
             {"C_stderr", r.C_stderr}};
}

void to_json(Json& j, const GuaranteeResult& r)
{
    Json params = Json::object();
    for (const auto& [k, v] : r.params)
        params[k] = number_or_null(v);
    j = Json{{"bound", r.bound},
             {"probability", r.probability},
             {"raw_value", number_or_null(r.raw_value)},
             {"feasible", r.feasible},
             {"reason", r.reason},
             {"params", params}};
}

void to_json(Json& j, const CoherenceGuarantees& r)
{
    j = Json{{"mu", r.mu},
             {"donoho_elad_max_k", optional_or_null(r.donoho_elad_max_k)},
             {"tropp_max_k", optional_or_null(r.tropp_max_k)},
             {"candes_plan",
              {{"evaluable", r.candes_plan.evaluable},
               {"coherence_ok", r.candes_plan.coherence_ok},
               {"sparsity_ok", r.candes_plan.sparsity_ok},
               {"reason", r.candes_plan.reason}}}};
}

void to_json(Json& j, const RipRequirement& r)
{
    j = Json{{"m", r.m}, {"bound", r.bound}, {"log_binomial", r.log_binomial}, {"t", r.t}};
}

void to_json(Json& j, const SearchResult& r)
{
    j = Json{{"bound", r.bound},
             {"m", optional_or_null(r.m)},
             {"ceiling_exhausted", r.ceiling_exhausted},
             {"witness_seed", optional_or_null(r.witness_seed)},
             {"witness_value", number_or_null(r.witness_value)},
             {"evaluations", r.evaluations},
             {"note", r.note}};
}

void to_json(Json& j, const ExripEstimate& r)
{
    j = Json{{"trials", r.trials},
             {"K", r.K},
             {"delta", r.delta},
             {"empirical_p", r.empirical_p},
             {"p_stderr", r.p_stderr},
             {"moment2", r.moment2},
             {"moment2_stderr", r.moment2_stderr},
             {"moment4", r.moment4},
             {"moment4_stderr", r.moment4_stderr},
             {"max_deviation", r.max_deviation},
             {"redraws", r.redraws},
             {"seed", r.seed}};
}

void to_json(Json& j, const ValidityReport& r)
{
    j = Json{{"theory", r.theory},
             {"empirical", r.empirical},
             {"verdict",
              {{"bound_holds", r.bound_holds},
               {"mean_is_one", r.mean_is_one},
               {"passed", r.passed()}}},
             {"moment4_prediction", number_or_null(r.moment4_prediction)},
             {"moment4_gap", number_or_null(r.moment4_gap)}};
}

void to_json(Json& j, const FamilySpec& r)
{
    j = Json{{"family", std::string(to_string(r.family))},
             {"register_length", r.register_length},
             {"length", r.length},
             {"channels", r.channels},
             {"seed", r.seed}};
}

void to_json(Json& j, const RecoveryReport& r)
{
    const auto& p = r.params;
    j = Json{{"params",
              {{"family", p.family},
               {"K_rows", p.K_rows},
               {"r", p.r},
               {"noise_sigma", optional_or_null(p.noise_sigma)},
               {"snr_db", optional_or_null(p.snr_db)},
               {"dist", std::string(to_string(p.dist.kind))},
               {"trials", p.trials},
               {"seed", p.seed}}},
             {"noise_sigma", r.noise_sigma},
             {"trials", r.trials},
             {"successes", r.successes},
             {"success_rate", r.success_rate},
             {"rate_stderr", r.rate_stderr}};
}

void to_json(Json& j, const RunRecord& r)
{
    j = Json{{"command", r.command},    {"preset", r.preset},   {"seed", r.seed},
             {"threads", r.threads},    {"outputs", r.outputs}, {"wall_time_s", r.wall_time_s}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace mwclab
