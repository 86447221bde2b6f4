// SPDX-License-Identifier: Apache-2.0
//
// Named experiment presets and the drivers that turn them into the Table I,
// Table II and Fig. 2 artifacts.
#pragma once

#include "mwclab/distributions.hpp"
#include "mwclab/guarantees.hpp"
#include "mwclab/mmv_recovery.hpp"
#include "mwclab/seqgen.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mwclab {

struct Preset {
    std::string name;
    FamilySpec family;
    std::size_t K = 1; // the tables' "2K" for ExRIP presets, K for table1_mwc
    double delta = kBasisPursuitDelta;
    NonzeroDistribution dist;
    std::size_t trials = 0;
    std::uint64_t seed = 1;

    // table1
    std::vector<BoundName> bounds;
    double target_prob = 0.85;
    double rip_prob = 0.97;
    std::size_t calderbank_m = 0;
    std::size_t attempts = 1;
    std::size_t ceiling = 1 << 15;
    std::optional<double> candes_plan_c;
    double tropp_t = 1.0;

    // sweep
    std::size_t m_min = 0;
    std::size_t m_max = 0;

    // recovery
    std::size_t r = 1;
    double noise_sigma = 0.0;
    std::optional<double> snr_db;
};

class PresetCatalog {
public:
    /// The presets shipped in presets/presets.json, compiled in.
    static const PresetCatalog& builtin();
    static PresetCatalog parse(std::string_view json_text);
    static PresetCatalog load(const std::string& path);

    const Preset& at(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, Preset, std::less<>> presets_;
};

/// The six Table II presets in the paper's row order.
std::vector<std::string> table2_preset_names();

// --- Table II -------------------------------------------------------------

struct Table2Row {
    std::string family;
    std::size_t m = 0;
    std::size_t M = 0;
    std::size_t K = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double p_normal = 0.0;
    double p_uniform = 0.0;
    bool ok = true;
    std::string error;
};

/// One row per preset. Random families draw their sign matrix from `seed`;
/// p columns use complex_normal and complex_uniform (+-0.5) moment constants
/// estimated from `moment_samples` draws. A failing row is kept with ok = false.
std::vector<Table2Row> table2_report(const std::vector<Preset>& presets, std::uint64_t seed,
                                     std::size_t moment_samples = 1'000'000);
void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows);

// --- Fig. 2 ---------------------------------------------------------------

struct SweepParams {
    FamilySpec family; // channels overwritten per m
    std::size_t K = 24;
    double delta = kBasisPursuitDelta;
    NonzeroDistribution dist;
    std::size_t m_min = 20;
    std::size_t m_max = 100;
    std::uint64_t seed = 1;
    std::size_t moment_samples = 1'000'000;
};

struct SweepRow {
    std::size_t m = 0;
    double p_exact = 0.0;
    double p_approx = 0.0;
};

SweepParams sweep_params(const Preset& preset);
std::vector<SweepRow> fig2_sweep(const SweepParams& params);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// --- Table I --------------------------------------------------------------

struct Table1Row {
    std::string bound;
    std::size_t K = 0;
    std::optional<std::size_t> m;
    std::optional<double> probability;
    std::optional<double> mu;
    std::string note;
};

/// ExRIP rows use sparsity 2K (delta_2K); RIP is reported at both K and 2K;
/// the Calderbank row carries p at preset.calderbank_m; every other bound uses K.
std::vector<Table1Row> table1_report(const Preset& preset, std::uint64_t seed);
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);

// --- MMV ------------------------------------------------------------------

RecoveryParams recovery_params(const Preset& preset);
void write_recovery_csv(std::ostream& out, const RecoveryReport& report);

} // namespace mwclab
