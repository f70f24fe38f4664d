#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ofdmjam/analysis.hpp"
#include "ofdmjam/ofdm.hpp"
#include "ofdmjam/scenario.hpp"

namespace ofdmjam {

/// One receiver/jammer geometry for the interference-rank study.
struct RankCase {
  int rx_antennas = 8;
  std::vector<int> jammer_taps{4};  // nonzero taps per (violating) jammer antenna

  /// min(B, sum of taps): the rank expected for generic channel draws.
  int expected_rank() const;
};

struct RankCaseResult {
  RankCase rank_case;
  std::uint64_t draws = 0;
  // A draw conforms when every data subcarrier shows the expected rank.
  std::uint64_t conforming_draws = 0;          // measured on simulated interference samples
  std::uint64_t channel_conforming_draws = 0;  // rank of the effective channel matrices
  std::uint64_t subcarrier_samples = 0;
  std::uint64_t conforming_samples = 0;
  int min_rank = std::numeric_limits<int>::max();
  int max_rank = 0;

  double conforming_fraction() const {
    return draws == 0 ? 0.0 : static_cast<double>(conforming_draws) / static_cast<double>(draws);
  }
};

/// Noise-free violating-jammer interference over one block of
/// cfg.symbols_per_block symbols per draw; ranks measured per data subcarrier.
RankCaseResult rank_study(const RankCase& rank_case, const OfdmConfig& cfg, std::uint64_t draws,
                          std::uint64_t seed, int threads = 0);

struct FractionStudyResult {
  SingularFractionStats stats;
  // support_histogram[r]: samples with exactly r fractions above support_threshold.
  std::vector<std::uint64_t> support_histogram;
  double support_threshold = 1e-6;
};

/// Singular fractions of the receive interference (jammer plus noise at
/// snr_db, +inf for noise-free) over sc.blocks blocks, all data subcarriers.
FractionStudyResult fraction_study(const Scenario& sc, double snr_db, FractionMode mode, int threads = 0);

}  // namespace ofdmjam
