#include "ofdmjam/channel.hpp"

#include <algorithm>
#include <string>

#include "ofdmjam/errors.hpp"

namespace ofdmjam {

TapTensor::TapTensor(Index rx, Index tx, Index length)
    : taps(static_cast<std::size_t>(length), CMatrix::Zero(rx, tx)) {}

CVector TapTensor::link(Index rx_antenna, Index tx_antenna) const {
  CVector h(length());
  for (Index t = 0; t < length(); ++t) h[t] = taps[t](rx_antenna, tx_antenna);
  return h;
}

void TapTensor::set_link(Index rx_antenna, Index tx_antenna, const CVector& response) {
  if (response.size() != length()) throw DimensionError("set_link: response length mismatch");
  for (Index t = 0; t < length(); ++t) taps[t](rx_antenna, tx_antenna) = response[t];
}

namespace {

void check_dims(int rx_antennas, int streams, int legit_taps) {
  if (rx_antennas < 1) throw ConfigError("draw_channel: need at least one receive antenna");
  if (streams < 1) throw ConfigError("draw_channel: need at least one transmit stream");
  if (legit_taps < 1) throw ConfigError("draw_channel: legitimate channel needs at least one tap");
}

}  // namespace

TapTensor draw_rayleigh_taps(Index rx, std::span<const int> taps_per_tx, Rng& rng) {
  if (taps_per_tx.empty()) return TapTensor(rx, 0, 1);
  for (int l : taps_per_tx) {
    if (l < 1) throw ConfigError("draw_rayleigh_taps: every transmitter needs at least one tap");
  }
  const int longest = *std::max_element(taps_per_tx.begin(), taps_per_tx.end());
  const auto tx = static_cast<Index>(taps_per_tx.size());
  TapTensor out(rx, tx, longest);
  for (Index u = 0; u < tx; ++u)
    for (Index t = 0; t < taps_per_tx[u]; ++t)
      for (Index b = 0; b < rx; ++b) out.taps[t](b, u) = rng.complex_gaussian();
  return out;
}

ChannelRealization draw_channel(int rx_antennas, int streams, int jammer_antennas, int legit_taps,
                                int jammer_taps, Rng& rng) {
  if (jammer_antennas < 0) throw ConfigError("draw_channel: negative jammer antenna count");
  std::vector<int> per_antenna(static_cast<std::size_t>(jammer_antennas), jammer_taps);
  return draw_channel(rx_antennas, streams, legit_taps, per_antenna, rng);
}

ChannelRealization draw_channel(int rx_antennas, int streams, int legit_taps,
                                std::span<const int> jammer_taps, Rng& rng) {
  check_dims(rx_antennas, streams, legit_taps);
  const std::vector<int> legit(static_cast<std::size_t>(streams), legit_taps);
  ChannelRealization ch;
  ch.legit = draw_rayleigh_taps(rx_antennas, legit, rng);
  ch.jammer = draw_rayleigh_taps(rx_antennas, jammer_taps, rng);
  return ch;
}

SampleStack apply_channel(const TapTensor& taps, const SampleStack& x) {
  if (taps.length() < 1) throw DimensionError("apply_channel: empty tap tensor");
  if (x.rows() != taps.tx()) {
    throw DimensionError("apply_channel: input has " + std::to_string(x.rows()) + " antennas, channel expects " +
                         std::to_string(taps.tx()));
  }
  const Index s = x.cols();
  if (s < 1) throw DimensionError("apply_channel: empty input");
  const Index l = taps.length();
  SampleStack y = SampleStack::Zero(taps.rx(), s + l - 1);
  const Index rx = taps.rx();
  for (Index t = 0; t < l; ++t) {
    const CMatrix& h = taps.taps[t];
    for (Index c = 0; c < s; ++c) {
      cd* out = &y(0, c + t);
      for (Index u = 0; u < x.rows(); ++u) {
        const cd xv = x(u, c);
        const cd* hu = &h(0, u);
        for (Index b = 0; b < rx; ++b) out[b] += hu[b] * xv;
      }
    }
  }
  return y;
}

std::vector<CMatrix> freq_response(const TapTensor& taps, const OfdmConfig& cfg) {
  const int n = cfg.n_subcarriers;
  if (taps.length() > n) {
    throw ConfigError("freq_response: " + std::to_string(taps.length()) + " taps exceed N = " + std::to_string(n));
  }
  const auto twiddle = dft_twiddles(n);
  std::vector<CMatrix> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    CMatrix acc = CMatrix::Zero(taps.rx(), taps.tx());
    for (Index t = 0; t < taps.length(); ++t) acc += twiddle[static_cast<std::size_t>((k * t) % n)] * taps.taps[t];
    out[k] = std::move(acc);
  }
  return out;
}

FreqResponse freq_response(const ChannelRealization& ch, const OfdmConfig& cfg) {
  return {freq_response(ch.legit, cfg), freq_response(ch.jammer, cfg)};
}

void add_noise_inplace(SampleStack& y, double noise_var, Rng& rng) {
  if (!(noise_var >= 0.0)) throw ConfigError("add_noise: noise variance must be non-negative");
  if (noise_var == 0.0) return;
  for (Index c = 0; c < y.cols(); ++c)
    for (Index r = 0; r < y.rows(); ++r) y(r, c) += rng.complex_gaussian(noise_var);
}

SampleStack add_noise(const SampleStack& y, double noise_var, Rng& rng) {
  SampleStack out = y;
  add_noise_inplace(out, noise_var, rng);
  return out;
}

double legit_rx_energy(const ChannelRealization& ch, const OfdmConfig& cfg) {
  const auto response = freq_response(ch.legit, cfg);
  double total = 0.0;
  for (int k : cfg.data_subcarriers) total += response[k].squaredNorm();
  return total * cfg.n_subcarriers /
         (static_cast<double>(ch.legit.rx()) * static_cast<double>(cfg.data_subcarriers.size()));
}

}  // namespace ofdmjam
