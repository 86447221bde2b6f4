// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "mwclab/error.hpp"
#include "mwclab/harness.hpp"
#include "mwclab/json_io.hpp"

#include <fstream>
#include <sstream>

using namespace mwclab;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                    cur += '"', ++i;
                else if (c == '"')
                    quoted = false;
                else
                    cur += c;
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        rows.push_back(fields);
    }
    return rows;
}

std::vector<std::string> keys(const Json& j)
{
    std::vector<std::string> out;
    for (const auto& [k, _] : j.items())
        out.push_back(k);
    return out;
}

} // namespace

TEST_CASE("built-in presets carry the paper's dimensions")
{
    const auto& cat = PresetCatalog::builtin();
    for (const auto& name : table2_preset_names())
        CHECK(cat.contains(name));
    CHECK(cat.contains("table1_mwc"));
    CHECK(cat.contains("fig2_sweep"));

    const auto& gold = cat.at("table2_gold");
    CHECK(gold.family.resolved_length() == 511);
    CHECK(gold.family.channels == 80);
    CHECK(gold.K == 24);
    CHECK(gold.delta == kBasisPursuitDelta);
    CHECK(cat.at("table2_hadamard").family.resolved_length() == 512);
    CHECK(cat.at("table2_kasami").family.channels == 16);
    CHECK(cat.at("table2_kasami").K == 12);
    CHECK(cat.at("table2_random2").family.resolved_length() == 195);
    CHECK(cat.at("table2_random2").family.channels == 40);
    const auto& t1 = cat.at("table1_mwc");
    CHECK(t1.K == 12);
    CHECK(t1.family.resolved_length() == 195);
    CHECK(t1.attempts == 100);
    CHECK(t1.bounds.size() == 9);
    CHECK_THROWS_AS(cat.at("table3"), ValidationError);
}

TEST_CASE("shipped preset file equals the compiled-in copy")
{
    const auto file = PresetCatalog::load(MWCLAB_SOURCE_DIR "/presets/presets.json");
    const auto& builtin = PresetCatalog::builtin();
    CHECK(file.names() == builtin.names());
    for (const auto& n : file.names()) {
        CHECK(file.at(n).family.resolved_length() == builtin.at(n).family.resolved_length());
        CHECK(file.at(n).K == builtin.at(n).K);
    }
}

TEST_CASE("preset parsing is strict")
{
    CHECK_THROWS_AS(PresetCatalog::parse("{"), ValidationError);
    CHECK_THROWS_AS(PresetCatalog::parse(R"({"a": {"family": "gold", "n": 9, "colour": 1}})"), ValidationError);
    CHECK_THROWS_AS(PresetCatalog::parse(R"({"a": {"n": 9}})"), ValidationError);
    CHECK_THROWS_AS(PresetCatalog::parse(R"({"a": {"family": "gold", "n": 8}})"), ValidationError);
    CHECK_THROWS_AS(PresetCatalog::parse(R"({"a": {"family": "random", "M": 31, "m": -3}})"), ValidationError);
    CHECK_THROWS_AS(PresetCatalog::parse(R"({"a": {"family": "random", "M": 31, "delta": 1.5}})"),
                    ValidationError);
    const auto ok = PresetCatalog::parse(R"({"a": {"family": "random", "M": 31, "m": 4, "dist": "real-uniform"}})");
    CHECK(ok.at("a").dist.kind == DistributionKind::real_uniform);
}

TEST_CASE("table2 report rows and CSV schema")
{
    const auto& cat = PresetCatalog::builtin();
    auto bad = cat.at("table2_gold");
    bad.name = "table2_broken";
    bad.family.channels = 600; // more than the 513 Gold sequences
    const auto rows = table2_report({cat.at("table2_gold"), bad, cat.at("table2_hadamard")}, 1, 100'000);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ok);
    CHECK_FALSE(rows[1].ok);
    CHECK(rows[2].ok);
    CHECK(rows[2].alpha == 1.0 / 80.0);
    CHECK(rows[2].p_normal <= 0.01);
    CHECK(std::abs(rows[0].p_normal - 0.939) < 0.006);

    std::ostringstream os;
    write_table2_csv(os, rows);
    const auto csv = parse_csv(os.str());
    REQUIRE(csv.size() == 4);
    CHECK(csv[0] == std::vector<std::string>{"family", "m", "M", "2K", "alpha_x100", "beta_x100", "gamma_x100",
                                             "p_normal", "p_uniform", "status"});
    for (const auto& r : csv)
        CHECK(r.size() == 10);
    CHECK(csv[1][0] == "gold");
    CHECK(csv[1][4] == "1.255");
    CHECK(csv[2][9].rfind("failed:", 0) == 0);
    CHECK(csv[3][4] == "1.250");
}

TEST_CASE("fig2 sweep is close to the approximation and nearly monotone")
{
    auto params = sweep_params(PresetCatalog::builtin().at("fig2_sweep"));
    params.moment_samples = 200'000;
    const auto rows = fig2_sweep(params);
    REQUIRE(rows.size() == 81);
    CHECK(rows.front().m == 20);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::abs(rows[i].p_exact - rows[i].p_approx) <= 0.01);
        if (i)
            CHECK(rows[i].p_exact >= rows[i - 1].p_exact - 0.005);
    }
    std::ostringstream os;
    write_sweep_csv(os, rows);
    const auto csv = parse_csv(os.str());
    CHECK(csv[0] == std::vector<std::string>{"m", "p_exact", "p_approx"});
    CHECK(csv.size() == 82);
}

TEST_CASE("table1 closed-form rows")
{
    auto p = PresetCatalog::builtin().at("table1_mwc");
    p.bounds = {BoundName::exrip_approx, BoundName::rip, BoundName::calderbank, BoundName::candes_plan};
    const auto rows = table1_report(p, 1);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].bound == "exrip_approx");
    CHECK(rows[0].K == 24);
    CHECK(*rows[0].m == 39);
    CHECK(rows[1].bound == "rip");
    CHECK(rows[1].K == 12);
    CHECK(rows[2].K == 24);
    CHECK(*rows[2].m == rip_min_m(195, 24, p.delta, 0.97).m);
    CHECK(rows[3].bound == "calderbank");
    CHECK(*rows[3].probability == 0.0);
    CHECK_FALSE(rows[3].m.has_value());
    CHECK_FALSE(rows[4].m.has_value());

    std::ostringstream os;
    write_table1_csv(os, rows);
    const auto csv = parse_csv(os.str());
    CHECK(csv[0] == std::vector<std::string>{"bound", "K", "m", "probability", "mu", "note"});
    for (const auto& r : csv)
        CHECK(r.size() == 6);
    CHECK(csv[4][2] == "n/a");
    CHECK(csv[5][5].find("not evaluable") != std::string::npos);
}

TEST_CASE("JSON schemas")
{
    QualityReport q{0.1, 0.2, 0.3, 0.4, 1.5, 40, 195, 0};
    CHECK(keys(Json(q)) ==
          std::vector<std::string>{"alpha", "beta", "gamma", "mu", "spectral_norm_sq", "m", "M", "zero_columns"});

    const auto g = strip_calderbank(150, 195, 12, kBasisPursuitDelta);
    const Json gj = g;
    CHECK(keys(gj) == std::vector<std::string>{"bound", "probability", "raw_value", "feasible", "reason", "params"});
    CHECK(gj["probability"] == 0.0);

    GuaranteeResult nan;
    nan.raw_value = std::nan("");
    CHECK(Json(nan)["raw_value"].is_null());

    auto p = recovery_params(PresetCatalog::builtin().at("recover_mwc"));
    p.trials = 3;
    const Json rj = recovery_experiment(p);
    CHECK(keys(rj) ==
          std::vector<std::string>{"params", "noise_sigma", "trials", "successes", "success_rate", "rate_stderr"});
    CHECK(rj["params"]["family"]["family"] == "random");

    RunRecord rec;
    rec.command = {"mwclab", "gen"};
    CHECK(keys(Json(rec)) ==
          std::vector<std::string>{"command", "preset", "seed", "threads", "outputs", "wall_time_s"});
    // dumps parse back
    CHECK(Json::parse(dump(rj)) == rj);
}

TEST_CASE("recovery CSV schema")
{
    auto p = recovery_params(PresetCatalog::builtin().at("recover_mwc"));
    p.trials = 4;
    std::ostringstream os;
    write_recovery_csv(os, recovery_experiment(p));
    const auto csv = parse_csv(os.str());
    REQUIRE(csv.size() == 5);
    CHECK(csv[0] == std::vector<std::string>{"trial", "exact_match", "stopped_early", "true_support",
                                             "estimated_support"});
    CHECK(std::count(csv[1][3].begin(), csv[1][3].end(), ';') == 11);
}
