#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ofdmjam/channel.hpp"
#include "ofdmjam/ofdm.hpp"
#include "ofdmjam/rng.hpp"
#include "ofdmjam/types.hpp"

namespace ofdmjam {

enum class JammerMode {
  none,       // no jammer
  compliant,  // sends a synchronized cyclic prefix with the legitimate numerology
  violating,  // continuous i.i.d. Gaussian samples, no frame structure
};

std::string_view to_string(JammerMode mode);
/// Throws ConfigError for anything other than none/compliant/violating.
JammerMode parse_jammer_mode(std::string_view text);

struct JammerSpec {
  JammerMode mode = JammerMode::none;
  int antennas = 0;
  double rel_energy_db = 25.0;
  // Nonzero taps of each jammer antenna's channel; size() == antennas.
  std::vector<int> taps_per_antenna;

  /// Jammer with `antennas` antennas of `taps` taps each (0 antennas for none).
  static JammerSpec make(JammerMode mode, int antennas, int taps, double rel_energy_db = 25.0);

  void validate(const OfdmConfig& cfg) const;
};

/// Unit-variance jammer transmit samples, one row per jammer antenna.
///
/// Violating: i.i.d. CN(0, 1) samples. Compliant: i.i.d. CN(0, 1) frequency
/// symbols per OFDM frame, modulated with the legitimate numerology and
/// aligned with the legitimate frame grid (frame 0 starts at sample 0).
SampleStack gen_jammer_stream(const JammerSpec& spec, const OfdmConfig& cfg, Index total_len, Rng& rng);

/// N x (N + P) Toeplitz map from the jammer samples w[-P+1..N] of one frame
/// to the N windowed receive samples at one antenna.
CMatrix build_toeplitz_jb(const CVector& taps, const OfdmConfig& cfg);

/// First P columns of a Toeplitz map from build_toeplitz_jb.
CMatrix build_jb_prefix(const CMatrix& jb);

/// Effective per-subcarrier jammer channel [sqrt(N) j[k], R[k]], B x (P+1)
/// per jammer antenna, antennas concatenated horizontally.
struct EffectiveJammerChannel {
  int subcarrier = 0;
  CMatrix matrix;
};

EffectiveJammerChannel build_effective_channel(const ChannelRealization& ch, const OfdmConfig& cfg, int k);

/// [w*[k]; Delta] for one frame of jammer samples w[-P+1..N] (the first
/// N + P entries of `frame`), where w*[k] is bin k of the DFT of w[1..N]
/// and Delta[t] = w[-P+t] - w[N-P+t] is the deviation from a cyclic prefix.
CVector extract_effective_input(const TimeSeq& frame, const OfdmConfig& cfg, int k);

/// Multi-antenna version; rows of `frames` are jammer antennas and the
/// per-antenna inputs are stacked in antenna order.
CVector extract_effective_input(const SampleStack& frames, const OfdmConfig& cfg, int k);

/// Singular values above max(rows, cols) * sigma_max * 2^-40 are nonzero.
double rank_tolerance(const RVector& singular_values, Index rows, Index cols);
int numerical_rank(const RVector& singular_values, Index rows, Index cols);
int numerical_rank(const CMatrix& m);

/// Expected jammer receive energy per antenna and data subcarrier for unit
/// transmit variance, averaged over the data subcarriers.
double jammer_rx_energy(const ChannelRealization& ch, const OfdmConfig& cfg, JammerMode mode);

}  // namespace ofdmjam
