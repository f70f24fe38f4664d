#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ofdmjam/ofdmjam.hpp"

namespace py = pybind11;
using namespace ofdmjam;

namespace {

ChannelRealization jammer_realization(const std::vector<CMatrix>& per_antenna) {
  if (per_antenna.empty()) throw ConfigError("need at least one jammer antenna");
  const Index b = per_antenna.front().rows();
  Index longest = 0;
  for (const CMatrix& m : per_antenna) {
    if (m.rows() != b) throw DimensionError("all jammer antennas need the same number of receive antennas");
    longest = std::max(longest, m.cols());
  }
  ChannelRealization ch;
  ch.legit = TapTensor(b, 1, 1);
  ch.jammer = TapTensor(b, static_cast<Index>(per_antenna.size()), longest);
  for (std::size_t i = 0; i < per_antenna.size(); ++i)
    for (Index r = 0; r < b; ++r)
      for (Index t = 0; t < per_antenna[i].cols(); ++t) ch.jammer.taps[t](r, static_cast<Index>(i)) = per_antenna[i](r, t);
  return ch;
}

py::dict sim_result_dict(const SimResult& r) {
  py::list points;
  for (const SimPoint& p : r.points) {
    py::dict d;
    d["snr_db"] = p.snr_db;
    d["bits"] = p.bits;
    d["bit_errors"] = p.bit_errors;
    d["erased_bits"] = p.erased_bits;
    d["ber"] = p.ber();
    points.append(d);
  }
  py::dict out;
  out["scenario_id"] = r.scenario_id;
  out["jammer_mode"] = std::string(to_string(r.jammer_mode));
  out["null_dims"] = r.null_dims;
  out["points"] = points;
  return out;
}

SimResult sim_result_from(const Scenario& sc, const py::dict& d) {
  SimResult r;
  r.scenario_id = d.contains("scenario_id") ? d["scenario_id"].cast<std::string>() : sc.id;
  r.jammer_mode = sc.jammer.mode;
  r.null_dims = sc.null_dims;
  for (auto item : d["points"].cast<py::list>()) {
    const auto p = item.cast<py::dict>();
    r.points.push_back({p["snr_db"].cast<double>(), p["bits"].cast<std::uint64_t>(),
                        p["bit_errors"].cast<std::uint64_t>(), 0});
  }
  return r;
}

}  // namespace

PYBIND11_MODULE(_ofdmjam, m) {
  m.doc() = "MIMO-OFDM jamming and spatial-nulling simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<FramingError>(m, "FramingError", base.ptr());
  py::register_exception<IllPosedError>(m, "IllPosedError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<OfdmConfig>(m, "OfdmConfig")
      .def(py::init([](int n, int p, std::optional<std::vector<int>> data, int symbols) {
             OfdmConfig cfg;
             cfg.n_subcarriers = n;
             cfg.cp_len = p;
             cfg.data_subcarriers = data ? *data : OfdmConfig::default_data_subcarriers(n);
             cfg.symbols_per_block = symbols;
             cfg.validate();
             return cfg;
           }),
           py::arg("n_subcarriers") = 64, py::arg("cp_len") = 16, py::arg("data_subcarriers") = py::none(),
           py::arg("symbols_per_block") = 50)
      .def_readwrite("n_subcarriers", &OfdmConfig::n_subcarriers)
      .def_readwrite("cp_len", &OfdmConfig::cp_len)
      .def_readwrite("data_subcarriers", &OfdmConfig::data_subcarriers)
      .def_readwrite("symbols_per_block", &OfdmConfig::symbols_per_block)
      .def("frame_len", &OfdmConfig::frame_len)
      .def("validate", &OfdmConfig::validate);

  m.def("dft", py::overload_cast<const TimeSeq&>(&dft), py::arg("x"), "Unitary DFT");
  m.def("idft", py::overload_cast<const FreqSymbol&>(&idft), py::arg("X"), "Unitary inverse DFT");
  m.def("add_cyclic_prefix", &add_cyclic_prefix, py::arg("x"), py::arg("cfg"));
  m.def("strip_and_window", &strip_and_window, py::arg("y"), py::arg("cfg"), py::arg("frame_start") = 0);

  m.def("build_toeplitz_jb", &build_toeplitz_jb, py::arg("taps"), py::arg("cfg"));
  m.def("build_jb_prefix", &build_jb_prefix, py::arg("jb"));
  m.def(
      "build_effective_channel",
      [](const std::vector<CMatrix>& taps, const OfdmConfig& cfg, int k) {
        return build_effective_channel(jammer_realization(taps), cfg, k).matrix;
      },
      py::arg("taps"), py::arg("cfg"), py::arg("k"),
      "Effective jammer channel at subcarrier k; taps holds one B x L matrix per jammer antenna");
  m.def(
      "extract_effective_input",
      [](const SampleStack& frames, const OfdmConfig& cfg, int k) { return extract_effective_input(frames, cfg, k); },
      py::arg("frames"), py::arg("cfg"), py::arg("k"), "Rows of frames are jammer antennas");
  m.def("numerical_rank", py::overload_cast<const CMatrix&>(&numerical_rank), py::arg("m"));

  m.def("zf_detect", &zf_detect, py::arg("channel"), py::arg("y"));
  m.def(
      "qpsk_map", [](const std::vector<std::uint8_t>& bits) { return qpsk_map(bits); }, py::arg("bits"));
  m.def(
      "qpsk_demap", [](const std::vector<cd>& symbols) { return qpsk_demap(symbols); }, py::arg("symbols"));

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_static("from_json", [](const std::string& text) { return scenario_from_json(text); }, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_scenario(path); }, py::arg("path"))
      .def("to_json", [](const Scenario& sc) { return scenario_to_json(sc); })
      .def("validate", &Scenario::validate)
      .def_readwrite("id", &Scenario::id)
      .def_readwrite("ofdm", &Scenario::ofdm)
      .def_readwrite("rx_antennas", &Scenario::rx_antennas)
      .def_readwrite("streams", &Scenario::streams)
      .def_readwrite("legit_taps", &Scenario::legit_taps)
      .def_readwrite("null_dims", &Scenario::null_dims)
      .def_readwrite("snr_db", &Scenario::snr_db)
      .def_readwrite("blocks", &Scenario::blocks)
      .def_readwrite("seed", &Scenario::seed)
      .def_property(
          "jammer_mode", [](const Scenario& sc) { return std::string(to_string(sc.jammer.mode)); },
          [](Scenario& sc, const std::string& mode) {
            const JammerMode parsed = parse_jammer_mode(mode);
            const int taps = sc.jammer.taps_per_antenna.empty() ? sc.legit_taps : sc.jammer.taps_per_antenna.front();
            sc.jammer = JammerSpec::make(parsed, std::max(sc.jammer.antennas, 1), taps, sc.jammer.rel_energy_db);
          })
      .def_property(
          "jammer_taps", [](const Scenario& sc) { return sc.jammer.taps_per_antenna; },
          [](Scenario& sc, const std::vector<int>& taps) {
            sc.jammer.taps_per_antenna = taps;
            sc.jammer.antennas = static_cast<int>(taps.size());
          })
      .def_property(
          "jammer_rel_energy_db", [](const Scenario& sc) { return sc.jammer.rel_energy_db; },
          [](Scenario& sc, double db) { sc.jammer.rel_energy_db = db; })
      .def_property(
          "subspace", [](const Scenario& sc) { return std::string(to_string(sc.subspace)); },
          [](Scenario& sc, const std::string& mode) { sc.subspace = parse_subspace_mode(mode); });

  m.def(
      "run_block",
      [](const Scenario& sc, double snr_db, std::uint64_t seed) {
        sc.validate();
        Rng rng(seed);
        const BlockCounts c = run_block(sc, snr_db, rng);
        py::dict d;
        d["bits"] = c.bits;
        d["bit_errors"] = c.bit_errors;
        d["erased_bits"] = c.erased_bits;
        return d;
      },
      py::arg("scenario"), py::arg("snr_db"), py::arg("seed"), "One coherence block; snr_db=inf runs noise-free");
  m.def(
      "sweep",
      [](const Scenario& sc, int threads) {
        SimResult r;
        {
          py::gil_scoped_release release;
          r = sweep(sc, {threads, 0});
        }
        return sim_result_dict(r);
      },
      py::arg("scenario"), py::arg("threads") = 0);
  m.def(
      "format_ber_csv",
      [](const Scenario& sc, const py::dict& result) { return format_ber_csv({sim_result_from(sc, result)}); },
      py::arg("scenario"), py::arg("result"));
  m.def(
      "rank_study",
      [](int rx_antennas, const std::vector<int>& taps, std::uint64_t draws, std::uint64_t seed,
         std::optional<OfdmConfig> cfg, int threads) {
        RankCaseResult r;
        {
          py::gil_scoped_release release;
          r = rank_study(RankCase{rx_antennas, taps}, cfg.value_or(OfdmConfig{}), draws, seed, threads);
        }
        py::dict d;
        d["expected_rank"] = r.rank_case.expected_rank();
        d["draws"] = r.draws;
        d["conforming_draws"] = r.conforming_draws;
        d["channel_conforming_draws"] = r.channel_conforming_draws;
        d["min_rank"] = r.draws ? r.min_rank : 0;
        d["max_rank"] = r.max_rank;
        return d;
      },
      py::arg("rx_antennas"), py::arg("jammer_taps"), py::arg("draws") = 100, py::arg("seed") = 1,
      py::arg("cfg") = py::none(), py::arg("threads") = 0);
  m.def(
      "fraction_study",
      [](const Scenario& sc, double snr_db, bool squared, int threads) {
        FractionStudyResult r;
        {
          py::gil_scoped_release release;
          r = fraction_study(sc, snr_db, squared ? FractionMode::energy : FractionMode::singular, threads);
        }
        py::dict d;
        d["mean"] = r.stats.mean;
        d["std"] = r.stats.stddev;
        d["samples"] = r.stats.samples;
        d["support_histogram"] = r.support_histogram;
        return d;
      },
      py::arg("scenario"), py::arg("snr_db") = std::numeric_limits<double>::infinity(), py::arg("squared") = false,
      py::arg("threads") = 0);
}
