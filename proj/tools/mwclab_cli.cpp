// SPDX-License-Identifier: Apache-2.0
//
// mwclab: command-line front end. Artifacts go to --out (stdout by default);
// --record writes a separate run record including wall time.
#include "mwclab/error.hpp"
#include "mwclab/guarantees.hpp"
#include "mwclab/harness.hpp"
#include "mwclab/json_io.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/mc_oracle.hpp"
#include "mwclab/mmv_recovery.hpp"
#include "mwclab/parallel.hpp"
#include "mwclab/seqgen.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mwclab;

namespace {

struct Flags {
    std::optional<std::string> family;
    std::optional<int> n;
    std::optional<std::size_t> M;
    std::optional<std::size_t> m;
    std::optional<std::size_t> k;
    std::optional<double> delta;
    std::optional<std::string> dist;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
    std::optional<std::string> presets_file;
    std::optional<std::string> patterns;
    std::string out;
    std::string record;

    // subcommand extras
    std::size_t moment_samples = 1'000'000;
    std::optional<std::size_t> r;
    std::optional<double> noise_sigma;
    std::optional<double> snr_db;
    std::string csv;
    std::optional<std::size_t> m_min;
    std::optional<std::size_t> m_max;
    std::vector<std::string> bounds;
    std::optional<std::size_t> attempts;
    std::optional<std::size_t> ceiling;
    std::optional<double> candes_plan_c;
    std::optional<double> target_prob;
    std::vector<std::string> presets;
};

const PresetCatalog& catalog(const Flags& f)
{
    static std::unique_ptr<PresetCatalog> loaded;
    if (!f.presets_file)
        return PresetCatalog::builtin();
    if (!loaded)
        loaded = std::make_unique<PresetCatalog>(PresetCatalog::load(*f.presets_file));
    return *loaded;
}

// Preset (if any) first, then explicit flags on top.
Preset resolve(const Flags& f, const char* fallback_preset = nullptr)
{
    Preset p;
    if (f.preset)
        p = catalog(f).at(*f.preset);
    else if (fallback_preset && !f.family)
        p = catalog(f).at(fallback_preset);
    if (f.family) {
        const Family fam = parse_family(*f.family);
        if (fam != p.family.family) {
            p.family = FamilySpec{};
            p.family.family = fam;
        }
    }
    if (f.n) {
        p.family.register_length = *f.n;
        p.family.length = 0;
    }
    if (f.M) {
        p.family.length = *f.M;
        p.family.register_length = 0;
    }
    if (f.m)
        p.family.channels = *f.m;
    if (f.seed)
        p.seed = *f.seed;
    p.family.seed = p.seed;
    if (f.k)
        p.K = *f.k;
    if (f.delta)
        p.delta = *f.delta;
    if (f.dist)
        p.dist.kind = parse_distribution(*f.dist);
    if (f.trials)
        p.trials = *f.trials;
    if (f.r)
        p.r = *f.r;
    if (f.noise_sigma) {
        p.noise_sigma = *f.noise_sigma;
        p.snr_db.reset();
    }
    if (f.snr_db)
        p.snr_db = *f.snr_db;
    if (f.m_min)
        p.m_min = *f.m_min;
    if (f.m_max)
        p.m_max = *f.m_max;
    if (!f.bounds.empty()) {
        p.bounds.clear();
        for (const auto& b : f.bounds)
            p.bounds.push_back(parse_bound(b));
    }
    if (f.attempts)
        p.attempts = *f.attempts;
    if (f.ceiling)
        p.ceiling = *f.ceiling;
    if (f.candes_plan_c)
        p.candes_plan_c = *f.candes_plan_c;
    if (f.target_prob)
        p.target_prob = *f.target_prob;
    require(p.delta > 0.0 && p.delta < 1.0, "--delta must lie in (0, 1)");
    return p;
}

SignMatrix sign_matrix(const Flags& f, const Preset& p)
{
    if (f.patterns)
        return load_patterns(*f.patterns);
    require(f.family || f.preset, "give --patterns, --preset or --family");
    require(p.family.channels > 0, "--m is required");
    return build_sign_matrix(p.family);
}

MomentConstants constants_for(const Preset& p, std::size_t samples)
{
    if (p.K == 1 || p.dist.kind == DistributionKind::real_normal)
        return moment_constants(p.dist, p.K, ClosedForm{});
    return moment_constants(p.dist, p.K, MonteCarloSampling{samples, p.seed});
}

void emit(const Flags& f, const std::string& text)
{
    if (f.out.empty() || f.out == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(f.out, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + f.out);
    out << text;
}

std::string run(const std::string& cmd, const Flags& f)
{
    std::ostringstream os;
    if (cmd == "gen") {
        const Preset p = resolve(f);
        require(f.family || f.preset, "gen needs --family or --preset");
        require(p.family.channels > 0, "--m is required");
        write_patterns(os, build_sign_matrix(p.family));
    } else if (cmd == "measures") {
        const Preset p = resolve(f);
        const SignMatrix S = sign_matrix(f, p);
        const QualityReport q = quality_measures(S);
        Json j = q;
        j["bounds_check"] = quality_bounds_check(q);
        os << dump(j);
    } else if (cmd == "exrip") {
        const Preset p = resolve(f);
        const SignMatrix S = sign_matrix(f, p);
        const auto cm = correlation_measures(S);
        const MomentConstants c = constants_for(p, f.moment_samples);
        Json j = exrip_probability(exrip_inputs(cm, S.channels(), S.length(), p.K, p.delta, c));
        j["constants"] = c;
        j["approx"] = exrip_approx(S.channels(), p.delta);
        os << dump(j);
    } else if (cmd == "bounds") {
        const Preset p = resolve(f);
        const SignMatrix S = sign_matrix(f, p);
        const QualityReport q = quality_measures(S);
        const MomentConstants c = constants_for(p, f.moment_samples);
        Json j;
        j["measures"] = q;
        j["exrip"] = exrip_probability(exrip_inputs(q, p.K, p.delta, c));
        j["exrip_approx"] = exrip_approx(q.m, p.delta);
        j["coherence"] = coherence_guarantees(q.mu, q.M, q.spectral_norm_sq, p.candes_plan_c, p.K);
        j["rip"] = rip_min_m(q.M, p.K, p.delta, p.rip_prob);
        j["calderbank"] = strip_calderbank(q.m, q.M, p.K, p.delta);
        j["gan"] = strip_gan(q.mu, q.M, p.K, p.delta);
        j["tropp_strip"] = strip_tropp(q.mu, q.spectral_norm_sq, q.M, p.K, p.delta, p.tropp_t);
        os << dump(j);
    } else if (cmd == "verify") {
        const Preset p = resolve(f);
        const SignMatrix S = sign_matrix(f, p);
        require(p.trials > 0, "--trials is required");
        const auto rep = bound_validity_report(S, p.K, p.delta, p.dist, p.trials, p.seed,
                                               MonteCarloSampling{f.moment_samples, p.seed});
        os << dump(Json(rep));
    } else if (cmd == "recover") {
        const Preset p = resolve(f, "recover_mwc");
        const RecoveryReport rep = recovery_experiment(recovery_params(p));
        if (!f.csv.empty()) {
            std::ofstream csv(f.csv, std::ios::binary);
            require(static_cast<bool>(csv), "cannot write " + f.csv);
            write_recovery_csv(csv, rep);
        }
        os << dump(Json(rep));
    } else if (cmd == "sweep") {
        const Preset p = resolve(f, "fig2_sweep");
        SweepParams sp = sweep_params(p);
        sp.moment_samples = f.moment_samples;
        write_sweep_csv(os, fig2_sweep(sp));
    } else if (cmd == "table1") {
        const Preset p = resolve(f, "table1_mwc");
        write_table1_csv(os, table1_report(p, p.seed));
    } else if (cmd == "table2") {
        std::vector<Preset> presets;
        for (const auto& name : f.presets.empty() ? table2_preset_names() : f.presets)
            presets.push_back(catalog(f).at(name));
        write_table2_csv(os, table2_report(presets, f.seed.value_or(1), f.moment_samples));
    }
    return os.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sign-pattern quality, ExRIP guarantees and MMV recovery experiments for MWC sensing"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--family", f.family, "maximal | gold | kasami_small | hadamard | random");
        sub->add_option("--n", f.n, "register length (M = 2^n - 1)");
        sub->add_option("--M", f.M, "sequence length");
        sub->add_option("--m", f.m, "number of channels");
        sub->add_option("--k", f.k, "sparsity");
        sub->add_option("--delta", f.delta, "isometry constant (default sqrt(2) - 1)");
        sub->add_option("--dist", f.dist, "nonzero law, e.g. complex-normal");
        sub->add_option("--trials", f.trials, "Monte Carlo trials");
        sub->add_option("--seed", f.seed, "master seed");
        sub->add_option("--preset", f.preset, "named preset");
        sub->add_option("--presets-file", f.presets_file, "JSON preset file replacing the built-in set");
        sub->add_option("--patterns", f.patterns, "sign-pattern file");
        sub->add_option("--out", f.out, "output path (default stdout)");
        sub->add_option("--record", f.record, "write a run record (JSON) here");
        sub->add_option("--moment-samples", f.moment_samples, "draws for Monte Carlo moment constants")
            ->check(CLI::Range(std::size_t{100'000}, std::size_t{1} << 40));
    };

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"gen", "write a sign-pattern file"},
        {"measures", "alpha, beta, gamma, coherence and spectral norm of a sign matrix"},
        {"exrip", "ExRIP probability of a sign matrix"},
        {"bounds", "every implemented guarantee for one sign matrix"},
        {"verify", "Monte Carlo check of the ExRIP bound"},
        {"recover", "SOMP support recovery experiment"},
        {"sweep", "p_exact and p_approx over a range of m"},
        {"table1", "minimal channel counts per bound"},
        {"table2", "quality measures and ExRIP probabilities per family"}};
    std::map<std::string, CLI::App*> apps;
    for (const auto& [name, help] : subs)
        common(apps[name] = app.add_subcommand(name, help));

    apps["recover"]->add_option("--r", f.r, "measurement vectors per instance");
    apps["recover"]->add_option("--noise-sigma", f.noise_sigma, "noise standard deviation per entry");
    apps["recover"]->add_option("--snr-db", f.snr_db, "signal-to-noise ratio in dB");
    apps["recover"]->add_option("--csv", f.csv, "per-trial outcomes CSV");
    apps["sweep"]->add_option("--m-min", f.m_min, "first m");
    apps["sweep"]->add_option("--m-max", f.m_max, "last m");
    apps["table1"]->add_option("--bounds", f.bounds, "bounds to evaluate, comma separated")->delimiter(',');
    apps["table1"]->add_option("--attempts", f.attempts, "draws per candidate m");
    apps["table1"]->add_option("--ceiling", f.ceiling, "largest m tried");
    apps["table1"]->add_option("--candes-plan-c", f.candes_plan_c, "constant c of the Candes-Plan bound");
    apps["table1"]->add_option("--target-prob", f.target_prob, "probability target for probabilistic bounds");
    apps["table2"]->add_option("--presets", f.presets, "presets to tabulate, comma separated (default: all six)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mwclab: error: " << e.what() << '\n';
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const auto start = std::chrono::steady_clock::now();
        const std::string text = run(cmd, f);
        emit(f, text);
        if (!f.record.empty()) {
            RunRecord rec;
            rec.command.assign(argv, argv + argc);
            rec.preset = f.preset.value_or("");
            rec.seed = f.seed.value_or(0);
            rec.threads = thread_count();
            const bool is_json = !text.empty() && text.front() == '{';
            rec.outputs = Json{{"out", f.out.empty() ? "-" : f.out},
                               {"content", is_json ? Json::parse(text) : Json(text)}};
            rec.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::ofstream out(f.record, std::ios::binary);
            require(static_cast<bool>(out), "cannot write " + f.record);
            out << dump(Json(rec));
        }
    } catch (const ValidationError& e) {
        std::cerr << "mwclab: error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mwclab: internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
