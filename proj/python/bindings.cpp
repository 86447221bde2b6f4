// SPDX-License-Identifier: Apache-2.0
//
// mwclab._core: thin bindings. Records come back as JSON text using the same
// schema as the CLI; the Python package decodes them.
#include "mwclab/error.hpp"
#include "mwclab/guarantees.hpp"
#include "mwclab/harness.hpp"
#include "mwclab/json_io.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/mc_oracle.hpp"
#include "mwclab/mmv_recovery.hpp"
#include "mwclab/seqgen.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mwclab;

namespace {

using SignArray = py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>;

SignMatrix from_array(const SignArray& a, const std::string& tag = "array")
{
    require(a.ndim() == 2, "sign matrix must be two-dimensional");
    const auto m = static_cast<std::size_t>(a.shape(0));
    const auto M = static_cast<std::size_t>(a.shape(1));
    require(m >= 1, "sign matrix needs at least one row");
    auto view = a.unchecked<2>();
    std::vector<BinarySequence> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::int8_t> row(M);
        for (std::size_t k = 0; k < M; ++k)
            row[k] = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(k));
        rows.emplace_back(std::move(row));
    }
    return SignMatrix(std::move(rows), tag);
}

SignArray to_array(const SignMatrix& S)
{
    SignArray out({static_cast<py::ssize_t>(S.channels()), static_cast<py::ssize_t>(S.length())});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < S.channels(); ++i)
        for (std::size_t k = 0; k < S.length(); ++k)
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(k)) = static_cast<std::int8_t>(S(i, k));
    return out;
}

FamilySpec family_spec(const std::string& family, int n, std::size_t M, std::size_t m, std::uint64_t seed)
{
    return FamilySpec{parse_family(family), n, M, m, seed};
}

NonzeroDistribution distribution(const std::string& name) { return {parse_distribution(name), 1.0}; }

MomentConstants constants_for(const NonzeroDistribution& d, std::size_t k, std::size_t samples, std::uint64_t seed)
{
    if (samples == 0)
        return moment_constants(d, k, ClosedForm{});
    return moment_constants(d, k, MonteCarloSampling{samples, seed});
}

template <class T>
std::string as_json(const T& value)
{
    return Json(value).dump();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Sign-pattern quality measures, ExRIP guarantees and MMV recovery for MWC sensing matrices.";
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.attr("BASIS_PURSUIT_DELTA") = kBasisPursuitDelta;

    m.def("sign_matrix",
          [](const std::string& family, std::size_t m_, int n, std::size_t M, std::uint64_t seed) {
              return to_array(build_sign_matrix(family_spec(family, n, M, m_, seed)));
          },
          py::arg("family"), py::arg("m"), py::arg("n") = 0, py::arg("M") = 0, py::arg("seed") = 0);

    m.def("read_patterns", [](const std::string& path) { return to_array(load_patterns(path)); }, py::arg("path"));
    m.def("patterns_text",
          [](const SignArray& S) {
              std::ostringstream os;
              write_patterns(os, from_array(S));
              return os.str();
          },
          py::arg("S"));

    m.def("sensing_matrix", [](const SignArray& S) { return sensing_matrix(from_array(S)).entries; }, py::arg("S"));

    m.def("correlation_measures",
          [](const SignArray& S) {
              const auto c = correlation_measures(from_array(S));
              return py::dict(py::arg("alpha") = c.alpha, py::arg("beta") = c.beta, py::arg("gamma") = c.gamma);
          },
          py::arg("S"));

    m.def("quality_measures_json", [](const SignArray& S) { return as_json(quality_measures(from_array(S))); },
          py::arg("S"));

    m.def("quality_bounds_json",
          [](const SignArray& S) { return as_json(quality_bounds_check(quality_measures(from_array(S)))); },
          py::arg("S"));

    m.def("moment_constants_json",
          [](const std::string& dist, std::size_t k, std::size_t samples, std::uint64_t seed) {
              return as_json(constants_for(distribution(dist), k, samples, seed));
          },
          py::arg("dist"), py::arg("k"), py::arg("samples") = 1'000'000, py::arg("seed") = 1);

    m.def("exrip_json",
          [](const SignArray& S, std::size_t k, double delta, const std::string& dist, std::size_t samples,
             std::uint64_t seed) {
              const SignMatrix sm = from_array(S);
              const auto c = constants_for(distribution(dist), k, samples, seed);
              return as_json(
                  exrip_probability(exrip_inputs(correlation_measures(sm), sm.channels(), sm.length(), k, delta, c)));
          },
          py::arg("S"), py::arg("k"), py::arg("delta") = kBasisPursuitDelta, py::arg("dist") = "complex_normal",
          py::arg("samples") = 1'000'000, py::arg("seed") = 1);

    m.def("exrip_approx_json", [](std::size_t m_, double delta) { return as_json(exrip_approx(m_, delta)); },
          py::arg("m"), py::arg("delta") = kBasisPursuitDelta);

    m.def("coherence",
          [](const SignArray& S) {
              const auto c = coherence(from_array(S));
              return py::make_tuple(c.mu, c.zero_columns);
          },
          py::arg("S"));

    m.def("rip_min_m_json",
          [](std::size_t M, std::size_t k, double delta, double prob, double c) {
              return as_json(rip_min_m(M, k, delta, prob, c));
          },
          py::arg("M"), py::arg("k"), py::arg("delta") = kBasisPursuitDelta, py::arg("prob") = 0.97,
          py::arg("c") = kSubGaussianSignConstant);

    m.def("strip_calderbank_json",
          [](std::size_t m_, std::size_t M, std::size_t k, double delta) {
              return as_json(strip_calderbank(m_, M, k, delta));
          },
          py::arg("m"), py::arg("M"), py::arg("k"), py::arg("delta") = kBasisPursuitDelta);

    m.def("empirical_exrip_json",
          [](const SignArray& S, std::size_t k, double delta, const std::string& dist, std::size_t trials,
             std::uint64_t seed) {
              py::gil_scoped_release release;
              return as_json(empirical_exrip(sensing_matrix(from_array(S)), k, delta, distribution(dist), trials, seed));
          },
          py::arg("S"), py::arg("k"), py::arg("delta") = kBasisPursuitDelta, py::arg("dist") = "complex_normal",
          py::arg("trials") = 100'000, py::arg("seed") = 1);

    m.def("somp",
          [](const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& V, std::size_t k) {
              const auto r = somp(phi, V, k);
              return py::make_tuple(r.selected, r.stopped_early);
          },
          py::arg("phi"), py::arg("V"), py::arg("k"));

    m.def("recovery_json",
          [](const std::string& family, std::size_t m_, int n, std::size_t M, std::size_t k_rows, std::size_t r,
             double noise_sigma, std::size_t trials, std::uint64_t seed) {
              RecoveryParams p;
              p.family = family_spec(family, n, M, m_, seed);
              p.K_rows = k_rows;
              p.r = r;
              p.noise_sigma = noise_sigma;
              p.trials = trials;
              p.seed = seed;
              py::gil_scoped_release release;
              return as_json(recovery_experiment(p));
          },
          py::arg("family"), py::arg("m"), py::arg("n") = 0, py::arg("M") = 0, py::arg("k_rows") = 1,
          py::arg("r") = 1, py::arg("noise_sigma") = 0.0, py::arg("trials") = 100, py::arg("seed") = 1);

    m.def("preset_names", [] { return PresetCatalog::builtin().names(); });

    m.def("table2_csv",
          [](std::uint64_t seed, std::size_t samples) {
              std::vector<Preset> ps;
              for (const auto& name : table2_preset_names())
                  ps.push_back(PresetCatalog::builtin().at(name));
              std::ostringstream os;
              write_table2_csv(os, table2_report(ps, seed, samples));
              return os.str();
          },
          py::arg("seed") = 1, py::arg("samples") = 1'000'000);

    m.def("sweep_csv",
          [](std::size_t m_min, std::size_t m_max, std::size_t samples) {
              auto sp = sweep_params(PresetCatalog::builtin().at("fig2_sweep"));
              sp.m_min = m_min;
              sp.m_max = m_max;
              sp.moment_samples = samples;
              std::ostringstream os;
              write_sweep_csv(os, fig2_sweep(sp));
              return os.str();
          },
          py::arg("m_min") = 20, py::arg("m_max") = 100, py::arg("samples") = 1'000'000);
}
