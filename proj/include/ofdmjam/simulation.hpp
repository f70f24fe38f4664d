#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofdmjam/channel.hpp"
#include "ofdmjam/jammer.hpp"
#include "ofdmjam/rng.hpp"
#include "ofdmjam/scenario.hpp"

namespace ofdmjam {

/// SNR reference: average legitimate receive energy per antenna and data
/// subcarrier (ensemble mean U * L_h for unit-variance taps and unit-energy
/// symbols) over the per-subcarrier noise variance N0.
double noise_variance_for_snr(const Scenario& sc, double snr_db);

/// All time-domain signals of one coherence block. Streams are
/// frames * (N + P) samples long; in estimated-subspace mode the first M
/// frames are a training period in which only the jammer transmits.
struct BlockSignals {
  ChannelRealization channel;
  double jammer_gain = 0.0;    // amplitude applied to the unit-variance jammer stream
  Index data_first_frame = 0;  // first frame carrying legitimate data
  Index frames = 0;

  std::vector<std::vector<std::uint8_t>> bits;  // per stream, frame-major then subcarrier
  SampleStack jammer_tx;                        // I x T, gain applied
  SampleStack legit_rx;                         // B x T
  SampleStack jammer_rx;                        // B x T, noise-free
  SampleStack noise;                            // B x T

  SampleStack rx() const { return legit_rx + jammer_rx + noise; }
};

/// Draws channel, data, jammer and noise for one block. The block rng only
/// seeds three sub-streams (legitimate, jammer, noise), so scenarios that
/// differ in jammer or nulling settings share channels and data.
BlockSignals synthesize_block(const Scenario& sc, double noise_var, Rng& rng);

struct BlockCounts {
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t erased_bits = 0;  // bits on rank-deficient subcarriers, half of them counted as errors

  BlockCounts& operator+=(const BlockCounts& o) {
    bits += o.bits;
    bit_errors += o.bit_errors;
    erased_bits += o.erased_bits;
    return *this;
  }
};

/// Detection stage on already synthesized signals.
BlockCounts detect_block(const Scenario& sc, const BlockSignals& signals);

/// One coherence block end to end; snr_db = +inf runs noise-free.
BlockCounts run_block(const Scenario& sc, double snr_db, Rng& rng);

struct SimPoint {
  double snr_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t erased_bits = 0;

  double ber() const { return bits == 0 ? 0.0 : static_cast<double>(bit_errors) / static_cast<double>(bits); }
};

struct SimResult {
  std::string scenario_id;
  JammerMode jammer_mode = JammerMode::none;
  int null_dims = 0;
  std::vector<SimPoint> points;

  /// Adds counts of a result over the same SNR grid (disjoint blocks).
  void merge(const SimResult& other);
};

struct SweepOptions {
  int threads = 0;                // 0: OFDMJAM_THREADS or hardware concurrency
  std::uint64_t first_block = 0;  // block indices first_block .. first_block + blocks - 1
};

/// Thread count: explicit request, else the OFDMJAM_THREADS environment
/// variable, else the hardware concurrency.
int resolve_thread_count(int requested);

/// Runs sc.blocks blocks at every SNR point. Block (s, b) uses the stream
/// Rng::derive(seed, {s, b}), so results do not depend on thread count.
SimResult sweep(const Scenario& sc, const SweepOptions& options = {});

/// Runs fn(i) for i in [0, count) on `threads` workers.
template <typename Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn);

}  // namespace ofdmjam

#include "ofdmjam/detail/parallel.hpp"
