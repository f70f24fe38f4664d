#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmjam/analysis.hpp"
#include "ofdmjam/scenario.hpp"
#include "ofdmjam/simulation.hpp"
#include "ofdmjam/studies.hpp"

namespace ofdmjam {

inline constexpr std::string_view kBerCsvHeader = "scenario_id,jammer_mode,null_dims,snr_db,bits,bit_errors,ber";
inline constexpr std::string_view kFractionCsvHeader = "dim_index,mean_fraction,std_fraction";
inline constexpr std::string_view kRankCsvHeader =
    "rx_antennas,jammer_antennas,jammer_taps,expected_rank,draws,conforming_draws,channel_conforming_draws,"
    "subcarrier_samples,conforming_samples,min_rank,max_rank";

/// One CSV row per (result, SNR point). Reals use the shortest
/// representation that parses back to the same double.
std::string format_ber_csv(const std::vector<SimResult>& results);

struct BerRow {
  std::string scenario_id;
  JammerMode jammer_mode = JammerMode::none;
  int null_dims = 0;
  double snr_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
};

/// Inverse of format_ber_csv; throws ConfigError on malformed input.
std::vector<BerRow> parse_ber_csv(std::string_view text);

/// dim_index is the 1-based position in the descending singular-value order.
std::string format_fraction_csv(const SingularFractionStats& stats);
std::string format_rank_csv(const std::vector<RankCaseResult>& results);

/// Writes `text` to `path`, creating parent directories. Failures raise
/// IoError naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// ber.csv plus scenario.json (provenance) inside out_dir.
void emit_results(const std::vector<SimResult>& results, const Scenario& scenario,
                  const std::filesystem::path& out_dir);

}  // namespace ofdmjam
