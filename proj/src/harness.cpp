// SPDX-License-Identifier: Apache-2.0
#include "mwclab/harness.hpp"

#include "mwclab/error.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace mwclab {

namespace {

#include "mwclab/presets_embed.inc"

using nlohmann::json;

const std::set<std::string, std::less<>> kPresetKeys = {
    "family", "n", "M", "m", "k", "delta", "dist", "trials", "seed", "bounds", "target_prob", "rip_prob",
    "calderbank_m", "attempts", "ceiling", "candes_plan_c", "tropp_t", "m_min", "m_max", "r", "noise_sigma",
    "snr_db"};

template <class T>
T get_as(const json& obj, const std::string& key, const std::string& preset)
{
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError("preset '" + preset + "': bad value for '" + key + "'");
    }
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& preset)
{
    const auto& v = obj.at(key);
    require(v.is_number_unsigned(), "preset '" + preset + "': '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

Preset parse_preset(const std::string& name, const json& obj)
{
    require(obj.is_object(), "preset '" + name + "' must be an object");
    for (const auto& [key, _] : obj.items())
        require(kPresetKeys.count(key) == 1, "preset '" + name + "': unknown key '" + key + "'");
    require(obj.contains("family"), "preset '" + name + "' has no family");

    Preset p;
    p.name = name;
    p.family.family = parse_family(get_as<std::string>(obj, "family", name));
    if (obj.contains("n"))
        p.family.register_length = static_cast<int>(get_count(obj, "n", name));
    if (obj.contains("M"))
        p.family.length = get_count(obj, "M", name);
    if (obj.contains("m"))
        p.family.channels = get_count(obj, "m", name);
    if (obj.contains("seed"))
        p.seed = get_as<std::uint64_t>(obj, "seed", name);
    p.family.seed = p.seed;
    p.family.resolved_length();

    if (obj.contains("k"))
        p.K = get_count(obj, "k", name);
    if (obj.contains("delta"))
        p.delta = get_as<double>(obj, "delta", name);
    if (obj.contains("dist"))
        p.dist.kind = parse_distribution(get_as<std::string>(obj, "dist", name));
    if (obj.contains("trials"))
        p.trials = get_count(obj, "trials", name);
    if (obj.contains("bounds"))
        for (const auto& b : obj.at("bounds"))
            p.bounds.push_back(parse_bound(b.get<std::string>()));
    if (obj.contains("target_prob"))
        p.target_prob = get_as<double>(obj, "target_prob", name);
    if (obj.contains("rip_prob"))
        p.rip_prob = get_as<double>(obj, "rip_prob", name);
    if (obj.contains("calderbank_m"))
        p.calderbank_m = get_count(obj, "calderbank_m", name);
    if (obj.contains("attempts"))
        p.attempts = get_count(obj, "attempts", name);
    if (obj.contains("ceiling"))
        p.ceiling = get_count(obj, "ceiling", name);
    if (obj.contains("candes_plan_c"))
        p.candes_plan_c = get_as<double>(obj, "candes_plan_c", name);
    if (obj.contains("tropp_t"))
        p.tropp_t = get_as<double>(obj, "tropp_t", name);
    if (obj.contains("m_min"))
        p.m_min = get_count(obj, "m_min", name);
    if (obj.contains("m_max"))
        p.m_max = get_count(obj, "m_max", name);
    if (obj.contains("r"))
        p.r = get_count(obj, "r", name);
    if (obj.contains("noise_sigma"))
        p.noise_sigma = get_as<double>(obj, "noise_sigma", name);
    if (obj.contains("snr_db"))
        p.snr_db = get_as<double>(obj, "snr_db", name);

    require(p.K >= 1, "preset '" + name + "': k must be >= 1");
    require(p.delta > 0.0 && p.delta < 1.0, "preset '" + name + "': delta must lie in (0, 1)");
    require(p.m_min <= p.m_max, "preset '" + name + "': m_min must not exceed m_max");
    return p;
}

std::string fixed3(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join_indices(const std::vector<std::size_t>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ';';
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace

// --- presets ----------------------------------------------------------------

PresetCatalog PresetCatalog::parse(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("preset file is not valid JSON: ") + e.what());
    }
    require(doc.is_object(), "preset file must hold a JSON object of named presets");
    PresetCatalog cat;
    for (const auto& [name, obj] : doc.items())
        cat.presets_.emplace(name, parse_preset(name, obj));
    return cat;
}

PresetCatalog PresetCatalog::load(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open preset file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const PresetCatalog& PresetCatalog::builtin()
{
    static const PresetCatalog cat = parse(kBuiltinPresetsJson);
    return cat;
}

const Preset& PresetCatalog::at(std::string_view name) const
{
    auto it = presets_.find(name);
    require(it != presets_.end(), "unknown preset '" + std::string(name) + "'");
    return it->second;
}

bool PresetCatalog::contains(std::string_view name) const { return presets_.find(name) != presets_.end(); }

std::vector<std::string> PresetCatalog::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, _] : presets_)
        out.push_back(name);
    return out;
}

std::vector<std::string> table2_preset_names()
{
    return {"table2_maximal", "table2_gold", "table2_hadamard", "table2_random1", "table2_kasami", "table2_random2"};
}

// --- Table II ---------------------------------------------------------------

std::vector<Table2Row> table2_report(const std::vector<Preset>& presets, std::uint64_t seed,
                                     std::size_t moment_samples)
{
    const NonzeroDistribution normal{DistributionKind::complex_normal, 1.0};
    const NonzeroDistribution uniform{DistributionKind::complex_uniform, 1.0};
    std::map<std::pair<int, std::size_t>, MomentConstants> cache;
    auto constants = [&](const NonzeroDistribution& d, std::size_t K) {
        const auto key = std::make_pair(static_cast<int>(d.kind), K);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, moment_constants(d, K, MonteCarloSampling{moment_samples, seed})).first;
        return it->second;
    };

    std::vector<Table2Row> rows;
    for (const auto& preset : presets) {
        Table2Row row;
        row.family = preset.name.rfind("table2_", 0) == 0 ? preset.name.substr(7) : preset.name;
        row.K = preset.K;
        try {
            FamilySpec spec = preset.family;
            if (spec.family == Family::random)
                spec.seed = seed;
            const SignMatrix S = build_sign_matrix(spec);
            row.m = S.channels();
            row.M = S.length();
            const auto cm = correlation_measures(S);
            row.alpha = cm.alpha;
            row.beta = cm.beta;
            row.gamma = cm.gamma;
            row.p_normal =
                exrip_probability(exrip_inputs(cm, row.m, row.M, row.K, preset.delta, constants(normal, row.K)))
                    .probability;
            row.p_uniform =
                exrip_probability(exrip_inputs(cm, row.m, row.M, row.K, preset.delta, constants(uniform, row.K)))
                    .probability;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows)
{
    out << "family,m,M,2K,alpha_x100,beta_x100,gamma_x100,p_normal,p_uniform,status\n";
    for (const auto& r : rows) {
        out << csv_field(r.family) << ',';
        if (!r.ok) {
            out << ",," << r.K << ",,,,,," << csv_field("failed: " + r.error) << '\n';
            continue;
        }
        out << r.m << ',' << r.M << ',' << r.K << ',' << fixed3(100 * r.alpha) << ',' << fixed3(100 * r.beta) << ','
            << fixed3(100 * r.gamma) << ',' << fixed3(r.p_normal) << ',' << fixed3(r.p_uniform) << ",ok\n";
    }
}

// --- Fig. 2 -----------------------------------------------------------------

SweepParams sweep_params(const Preset& preset)
{
    SweepParams p;
    p.family = preset.family;
    p.K = preset.K;
    p.delta = preset.delta;
    p.dist = preset.dist;
    p.m_min = preset.m_min;
    p.m_max = preset.m_max;
    p.seed = preset.seed;
    return p;
}

std::vector<SweepRow> fig2_sweep(const SweepParams& params)
{
    require(params.m_min >= 1 && params.m_min <= params.m_max, "sweep needs 1 <= m_min <= m_max");
    const MomentConstants c = params.K == 1 || params.dist.kind == DistributionKind::real_normal
                                  ? moment_constants(params.dist, params.K, ClosedForm{})
                                  : moment_constants(params.dist, params.K,
                                                     MonteCarloSampling{params.moment_samples, params.seed});
    const std::size_t count = params.m_max - params.m_min + 1;
    std::vector<SweepRow> rows(count);
    parallel_for(count, [&](std::size_t i) {
        const std::size_t m = params.m_min + i;
        FamilySpec spec = params.family;
        spec.channels = m;
        spec.seed = params.seed;
        const SignMatrix S = build_sign_matrix(spec);
        const auto cm = correlation_measures(S);
        rows[i].m = m;
        rows[i].p_exact = exrip_probability(exrip_inputs(cm, m, S.length(), params.K, params.delta, c)).probability;
        rows[i].p_approx = exrip_approx(m, params.delta).probability;
    });
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "m,p_exact,p_approx\n";
    for (const auto& r : rows)
        out << r.m << ',' << fixed3(r.p_exact) << ',' << fixed3(r.p_approx) << '\n';
}

// --- Table I ----------------------------------------------------------------

std::vector<Table1Row> table1_report(const Preset& preset, std::uint64_t seed)
{
    const std::size_t M = preset.family.resolved_length();
    const std::size_t K = preset.K;

    SearchOptions opts;
    opts.family = preset.family;
    opts.attempts = preset.attempts;
    opts.ceiling = preset.ceiling;
    opts.seed = seed;
    opts.moment_sampling = MonteCarloSampling{1'000'000, seed};

    auto target_at = [&](std::size_t k) {
        SearchTarget t;
        t.M = M;
        t.K = k;
        t.delta = preset.delta;
        t.dist = preset.dist;
        t.target_prob = preset.target_prob;
        t.candes_plan_c = preset.candes_plan_c;
        t.tropp_t = preset.tropp_t;
        return t;
    };

    auto search_row = [&](BoundName bound, std::size_t k) {
        const auto res = min_channels_search(bound, target_at(k), opts);
        Table1Row row;
        row.bound = res.bound;
        row.K = k;
        row.m = res.m;
        if (res.m) {
            if (bound == BoundName::donoho_elad || bound == BoundName::tropp_coherence ||
                bound == BoundName::candes_plan)
                row.mu = res.witness_value;
            else
                row.probability = res.witness_value;
            if (res.witness_seed)
                row.note = "best of " + std::to_string(preset.attempts) + " draws; witness seed " +
                           std::to_string(*res.witness_seed);
        } else {
            row.note = res.note;
        }
        return row;
    };

    std::vector<Table1Row> rows;
    for (BoundName bound : preset.bounds) {
        switch (bound) {
        case BoundName::exrip:
        case BoundName::exrip_approx: rows.push_back(search_row(bound, 2 * K)); break;
        case BoundName::rip:
            for (std::size_t k : {K, 2 * K}) {
                const auto req = rip_min_m(M, k, preset.delta, preset.rip_prob);
                Table1Row row;
                row.bound = "rip";
                row.K = k;
                row.m = req.m;
                row.probability = preset.rip_prob;
                row.note = "sub-Gaussian constant 7/18; delta_" + std::to_string(k);
                rows.push_back(std::move(row));
            }
            break;
        case BoundName::calderbank: {
            Table1Row row = search_row(bound, K);
            if (preset.calderbank_m > 0) {
                const auto at = strip_calderbank(preset.calderbank_m, M, K, preset.delta);
                row.probability = at.probability;
                row.note = "p at m = " + std::to_string(preset.calderbank_m) + " is " + fixed3(at.probability) +
                           (row.note.empty() ? "" : "; " + row.note);
            }
            rows.push_back(std::move(row));
            break;
        }
        default: rows.push_back(search_row(bound, K));
        }
    }
    return rows;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows)
{
    out << "bound,K,m,probability,mu,note\n";
    for (const auto& r : rows) {
        out << r.bound << ',' << r.K << ',' << (r.m ? std::to_string(*r.m) : "n/a") << ','
            << (r.probability ? fixed3(*r.probability) : "") << ',' << (r.mu ? fixed4(*r.mu) : "") << ','
            << csv_field(r.note) << '\n';
    }
}

// --- MMV --------------------------------------------------------------------

RecoveryParams recovery_params(const Preset& preset)
{
    RecoveryParams p;
    p.family = preset.family;
    p.K_rows = preset.K;
    p.r = preset.r;
    if (preset.snr_db)
        p.snr_db = preset.snr_db;
    else
        p.noise_sigma = preset.noise_sigma;
    p.dist = preset.dist;
    p.trials = preset.trials;
    p.seed = preset.seed;
    return p;
}

void write_recovery_csv(std::ostream& out, const RecoveryReport& report)
{
    out << "trial,exact_match,stopped_early,true_support,estimated_support\n";
    for (const auto& o : report.outcomes)
        out << o.trial << ',' << (o.exact_match ? 1 : 0) << ',' << (o.stopped_early ? 1 : 0) << ','
            << join_indices(o.true_support) << ',' << join_indices(o.estimated_support) << '\n';
}

} // namespace mwclab
