#pragma once

#include <vector>

#include "ofdmjam/types.hpp"

namespace ofdmjam {

/// Static OFDM numerology.
///
/// Subcarrier indices are 0-based FFT bins: bin k carries frequency k/N and
/// bins N/2..N-1 are the negative frequencies. The default data set is the
/// 48-bin layout of the 20 MHz legacy 802.11 mode (bins +-1..+-26 without
/// DC and without the pilot bins +-7, +-21).
struct OfdmConfig {
  int n_subcarriers = 64;
  int cp_len = 16;
  std::vector<int> data_subcarriers = default_data_subcarriers(64);
  int symbols_per_block = 50;

  /// Samples occupied by one OFDM symbol on air (prefix plus body).
  int frame_len() const { return n_subcarriers + cp_len; }

  /// Throws ConfigError on non-positive sizes, P > N, duplicate or
  /// out-of-range data subcarriers.
  void validate() const;

  static std::vector<int> default_data_subcarriers(int n_subcarriers);
};

/// Unitary DFT, F_N x. The transform length is the input length.
FreqSymbol dft(const TimeSeq& x);
/// Unitary DFT with a length check against the numerology.
FreqSymbol dft(const TimeSeq& x, const OfdmConfig& cfg);

/// Unitary DFT between caller-owned buffers of equal length.
void dft_inplace(const std::vector<cd>& x, std::vector<cd>& out);

/// Inverse of dft (F_N^H X).
TimeSeq idft(const FreqSymbol& X);
TimeSeq idft(const FreqSymbol& X, const OfdmConfig& cfg);

/// Explicit unitary DFT matrix; entry (k, n) = exp(-j 2 pi k n / N) / sqrt(N).
CMatrix dft_matrix(int n);

/// exp(-j 2 pi m / N) / sqrt(N) for m = 0..N-1; entry (k, n) of the unitary
/// DFT matrix is element (k * n) mod N.
std::vector<cd> dft_twiddles(int n);

/// Row k of the unitary DFT matrix, f[k]^T.
Eigen::RowVectorXcd dft_row(int n, int k);

/// Prepends the last P samples: [x[N-P..N-1], x[0..N-1]].
TimeSeq add_cyclic_prefix(const TimeSeq& x, const OfdmConfig& cfg);

/// Receive window of an OFDM frame starting at sample `frame_start`:
/// drops the P prefix samples and returns the next N.
TimeSeq strip_and_window(const TimeSeq& y, const OfdmConfig& cfg, Index frame_start = 0);

/// Maps M frequency symbols (columns, length N each) to a back-to-back
/// serialized stream of M * (N + P) samples.
TimeSeq modulate_frames(const CMatrix& symbols, const OfdmConfig& cfg);

}  // namespace ofdmjam
