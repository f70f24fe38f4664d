#pragma once

#include <span>
#include <vector>

#include "ofdmjam/ofdm.hpp"
#include "ofdmjam/rng.hpp"
#include "ofdmjam/types.hpp"

namespace ofdmjam {

/// Multi-tap MIMO impulse response. taps[t] is the (receive x transmit)
/// matrix of delay t, so the response of link (b, u) is taps[0..L-1](b, u).
struct TapTensor {
  std::vector<CMatrix> taps;

  TapTensor() = default;
  TapTensor(Index rx, Index tx, Index length);

  Index rx() const { return taps.empty() ? 0 : taps.front().rows(); }
  Index tx() const { return taps.empty() ? 0 : taps.front().cols(); }
  Index length() const { return static_cast<Index>(taps.size()); }
  bool empty() const { return taps.empty() || tx() == 0; }

  /// Impulse response of one link, length L.
  CVector link(Index rx_antenna, Index tx_antenna) const;
  void set_link(Index rx_antenna, Index tx_antenna, const CVector& response);
};

/// One block-fading draw of all links. Held fixed for symbols_per_block OFDM
/// symbols.
struct ChannelRealization {
  TapTensor legit;   // B x U x L_h
  TapTensor jammer;  // B x I x L_j; zero width without a jammer
  double noise_var = 0.0;
};

/// Per-subcarrier DFT of the zero-padded tap sequences (no sqrt(N) factor).
struct FreqResponse {
  std::vector<CMatrix> legit;   // N entries of B x U
  std::vector<CMatrix> jammer;  // N entries of B x I
};

/// i.i.d. CN(0, 1) taps; transmit antenna u gets taps_per_tx[u] nonzero
/// taps and is zero-padded to the longest response.
TapTensor draw_rayleigh_taps(Index rx, std::span<const int> taps_per_tx, Rng& rng);

/// Draws i.i.d. CN(0, 1) taps for every link. jammer_antennas may be zero.
ChannelRealization draw_channel(int rx_antennas, int streams, int jammer_antennas, int legit_taps,
                                int jammer_taps, Rng& rng);

/// As above, but jammer antenna i gets jammer_taps[i] nonzero taps; shorter
/// responses are zero-padded to the longest one.
ChannelRealization draw_channel(int rx_antennas, int streams, int legit_taps,
                                std::span<const int> jammer_taps, Rng& rng);

/// Linear convolution of every (rx, tx) link, summed over transmitters.
/// x has one row per transmit antenna; the result has S + L - 1 columns.
SampleStack apply_channel(const TapTensor& taps, const SampleStack& x);

/// Frequency response of a tap tensor on all N subcarriers.
std::vector<CMatrix> freq_response(const TapTensor& taps, const OfdmConfig& cfg);
FreqResponse freq_response(const ChannelRealization& ch, const OfdmConfig& cfg);

/// Adds i.i.d. CN(0, noise_var) to every sample.
SampleStack add_noise(const SampleStack& y, double noise_var, Rng& rng);
void add_noise_inplace(SampleStack& y, double noise_var, Rng& rng);

/// Expected legitimate receive energy per antenna and data subcarrier for
/// unit-energy symbols on every stream: mean over k in the data set of
/// N * ||H[k]||_F^2 / B.
double legit_rx_energy(const ChannelRealization& ch, const OfdmConfig& cfg);

}  // namespace ofdmjam
