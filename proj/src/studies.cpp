#include "ofdmjam/studies.hpp"

#include <algorithm>
#include <numeric>

#include "ofdmjam/channel.hpp"
#include "ofdmjam/errors.hpp"
#include "ofdmjam/jammer.hpp"
#include "ofdmjam/receiver.hpp"
#include "ofdmjam/simulation.hpp"

namespace ofdmjam {

int RankCase::expected_rank() const {
  const int taps = std::accumulate(jammer_taps.begin(), jammer_taps.end(), 0);
  return std::min(rx_antennas, taps);
}

namespace {

struct DrawRanks {
  std::vector<int> measured;
  std::vector<int> channel;
};

DrawRanks rank_draw(const RankCase& rc, const OfdmConfig& cfg, Rng& rng) {
  ChannelRealization ch;
  ch.jammer = draw_rayleigh_taps(rc.rx_antennas, rc.jammer_taps, rng);
  JammerSpec spec;
  spec.mode = JammerMode::violating;
  spec.antennas = static_cast<int>(rc.jammer_taps.size());
  spec.taps_per_antenna = rc.jammer_taps;
  const Index total = static_cast<Index>(cfg.symbols_per_block) * cfg.frame_len();
  const SampleStack w = gen_jammer_stream(spec, cfg, total, rng);
  const SampleStack y = apply_channel(ch.jammer, w).leftCols(total);

  DrawRanks out;
  out.measured = measured_rank(demodulate_grid(y, cfg, 0, cfg.symbols_per_block));
  for (int k : cfg.data_subcarriers) out.channel.push_back(numerical_rank(build_effective_channel(ch, cfg, k).matrix));
  return out;
}

}  // namespace

RankCaseResult rank_study(const RankCase& rank_case, const OfdmConfig& cfg, std::uint64_t draws,
                          std::uint64_t seed, int threads) {
  cfg.validate();
  if (rank_case.rx_antennas < 1) throw ConfigError("rank_study: rx_antennas must be positive");
  if (rank_case.jammer_taps.empty()) throw ConfigError("rank_study: need at least one jammer antenna");
  for (int l : rank_case.jammer_taps) {
    if (l < 1 || l - 1 > cfg.cp_len) throw ConfigError("rank_study: jammer taps must lie in [1, P + 1]");
  }

  std::vector<DrawRanks> per_draw(draws);
  parallel_for(draws, resolve_thread_count(threads), [&](std::uint64_t d) {
    Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(rank_case.rx_antennas),
                                         static_cast<std::uint64_t>(rank_case.expected_rank()), d});
    per_draw[d] = rank_draw(rank_case, cfg, rng);
  });

  RankCaseResult result;
  result.rank_case = rank_case;
  result.draws = draws;
  const int expected = rank_case.expected_rank();
  for (const DrawRanks& r : per_draw) {
    bool ok = true;
    for (int rank : r.measured) {
      ++result.subcarrier_samples;
      result.conforming_samples += rank == expected ? 1 : 0;
      ok = ok && rank == expected;
      result.min_rank = std::min(result.min_rank, rank);
      result.max_rank = std::max(result.max_rank, rank);
    }
    result.conforming_draws += ok ? 1 : 0;
    result.channel_conforming_draws +=
        std::all_of(r.channel.begin(), r.channel.end(), [&](int rank) { return rank == expected; }) ? 1 : 0;
  }
  return result;
}

FractionStudyResult fraction_study(const Scenario& sc, double snr_db, FractionMode mode, int threads) {
  sc.validate();
  if (sc.jammer.mode == JammerMode::none) throw ConfigError("fraction_study: scenario has no jammer");
  const double noise_var = noise_variance_for_snr(sc, snr_db);
  const auto b_ant = static_cast<std::size_t>(sc.rx_antennas);

  struct BlockPart {
    FractionAccumulator acc;
    std::vector<std::uint64_t> support;
  };
  std::vector<BlockPart> parts(sc.blocks);
  FractionStudyResult result;
  parallel_for(sc.blocks, resolve_thread_count(threads), [&](std::uint64_t b) {
    Rng rng = Rng::derive(sc.seed, {0, b});
    const BlockSignals sig = synthesize_block(sc, noise_var, rng);
    const SubcarrierGrid grid =
        demodulate_grid(SampleStack(sig.jammer_rx + sig.noise), sc.ofdm, sig.data_first_frame, sc.ofdm.symbols_per_block);
    BlockPart& part = parts[b];
    part.support.assign(b_ant + 1, 0);
    for (const RVector& lambda : singular_fractions(grid, mode)) {
      part.acc.add(lambda);
      ++part.support[static_cast<std::size_t>((lambda.array() > result.support_threshold).count())];
    }
  });

  FractionAccumulator total;
  result.support_histogram.assign(b_ant + 1, 0);
  for (const BlockPart& part : parts) {
    total.merge(part.acc);
    for (std::size_t r = 0; r <= b_ant; ++r) result.support_histogram[r] += part.support[r];
  }
  result.stats = total.stats();
  return result;
}

}  // namespace ofdmjam
