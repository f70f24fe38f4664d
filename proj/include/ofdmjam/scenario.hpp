#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmjam/jammer.hpp"
#include "ofdmjam/ofdm.hpp"

namespace ofdmjam {

enum class SubspaceMode {
  genie,      // noise-free jammer contribution over the data symbols
  estimated,  // jammer plus noise over a silent training period of M symbols
};

std::string_view to_string(SubspaceMode mode);
SubspaceMode parse_subspace_mode(std::string_view text);

/// Everything needed to reproduce one BER curve. Defaults are the 8 x 2
/// MIMO-OFDM link with N = 64, 48 data subcarriers, P = 16, M = 50,
/// 4-tap Rayleigh channels and a 25 dB single-antenna jammer.
struct Scenario {
  std::string id = "default";
  OfdmConfig ofdm;
  int rx_antennas = 8;
  int streams = 2;
  int legit_taps = 4;
  JammerSpec jammer = JammerSpec::make(JammerMode::violating, 1, 4);
  int null_dims = 1;
  std::vector<double> snr_db = snr_range(0.0, 20.0, 2.0);
  std::uint64_t blocks = 2000;
  std::uint64_t seed = 1;
  SubspaceMode subspace = SubspaceMode::genie;

  void validate() const;

  /// Inclusive arithmetic grid start, start + step, ... <= stop (+ 1e-9 slack).
  static std::vector<double> snr_range(double start, double stop, double step);
};

/// Parses "A:B:STEP" (inclusive) or a single value "A".
std::vector<double> parse_snr_spec(std::string_view text);

/// Reads JSON on top of the defaults; keys absent from the document keep
/// their default value, unknown keys are rejected with ConfigError.
Scenario scenario_from_json(std::string_view json_text, const Scenario& base = Scenario{});
Scenario load_scenario(const std::filesystem::path& path, const Scenario& base = Scenario{});
std::string scenario_to_json(const Scenario& sc);

}  // namespace ofdmjam
