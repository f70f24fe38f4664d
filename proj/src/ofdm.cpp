#include "ofdmjam/ofdm.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include <unsupported/Eigen/FFT>

#include "ofdmjam/errors.hpp"

namespace ofdmjam {

namespace {

// Eigen's FFT caches twiddle tables per length; one instance per thread.
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return engine;
}

void require_length(Index got, int n, const char* what) {
  if (got != n) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace

void OfdmConfig::validate() const {
  if (n_subcarriers < 1) throw ConfigError("n_subcarriers must be positive");
  if (cp_len < 0) throw ConfigError("cp_len must be non-negative");
  if (cp_len > n_subcarriers) {
    throw ConfigError("cp_len (" + std::to_string(cp_len) + ") exceeds n_subcarriers (" +
                      std::to_string(n_subcarriers) + ")");
  }
  if (symbols_per_block < 1) throw ConfigError("symbols_per_block must be positive");
  if (data_subcarriers.empty()) throw ConfigError("data_subcarriers is empty");
  std::unordered_set<int> seen;
  for (int k : data_subcarriers) {
    if (k < 0 || k >= n_subcarriers) {
      throw ConfigError("data subcarrier " + std::to_string(k) + " outside [0, " +
                        std::to_string(n_subcarriers) + ")");
    }
    if (!seen.insert(k).second) throw ConfigError("duplicate data subcarrier " + std::to_string(k));
  }
}

std::vector<int> OfdmConfig::default_data_subcarriers(int n_subcarriers) {
  std::vector<int> bins;
  if (n_subcarriers == 64) {
    for (int f = 1; f <= 26; ++f) {
      if (f != 7 && f != 21) bins.push_back(f);
    }
    for (int f = -26; f <= -1; ++f) {
      if (f != -7 && f != -21) bins.push_back(64 + f);
    }
    return bins;
  }
  for (int k = 1; k < n_subcarriers; ++k) bins.push_back(k);
  return bins;
}

FreqSymbol dft(const TimeSeq& x) {
  if (x.size() == 0) throw DimensionError("dft: empty input");
  // kissfft does not handle length 1; the transform is the identity there.
  if (x.size() == 1) return x;
  const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
  FreqSymbol out(x.size());
  fft_engine().fwd(out, x);
  return out * scale;
}

void dft_inplace(const std::vector<cd>& x, std::vector<cd>& out) {
  if (x.empty() || out.size() != x.size()) throw DimensionError("dft_inplace: buffer sizes differ or are empty");
  if (x.size() == 1) {
    out[0] = x[0];
    return;
  }
  fft_engine().fwd(out.data(), x.data(), static_cast<Index>(x.size()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (cd& v : out) v *= scale;
}

FreqSymbol dft(const TimeSeq& x, const OfdmConfig& cfg) {
  require_length(x.size(), cfg.n_subcarriers, "dft");
  return dft(x);
}

TimeSeq idft(const FreqSymbol& X) {
  if (X.size() == 0) throw DimensionError("idft: empty input");
  if (X.size() == 1) return X;
  const double scale = 1.0 / std::sqrt(static_cast<double>(X.size()));
  TimeSeq out(X.size());
  fft_engine().inv(out, X);
  return out * scale;
}

TimeSeq idft(const FreqSymbol& X, const OfdmConfig& cfg) {
  require_length(X.size(), cfg.n_subcarriers, "idft");
  return idft(X);
}

CMatrix dft_matrix(int n) {
  CMatrix f(n, n);
  for (int k = 0; k < n; ++k) f.row(k) = dft_row(n, k);
  return f;
}

std::vector<cd> dft_twiddles(int n) {
  if (n < 1) throw ConfigError("dft_twiddles: n must be positive");
  std::vector<cd> tw(static_cast<std::size_t>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) tw[m] = std::polar(scale, -2.0 * std::numbers::pi * m / n);
  return tw;
}

Eigen::RowVectorXcd dft_row(int n, int k) {
  if (n < 1) throw ConfigError("dft_row: n must be positive");
  if (k < 0 || k >= n) throw ConfigError("dft_row: subcarrier " + std::to_string(k) + " out of range");
  Eigen::RowVectorXcd row(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int t = 0; t < n; ++t) {
    // Reduce k*t mod n first so the phase stays exact for large products.
    const double phase = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(k) * t) % n) / n;
    row[t] = std::polar(scale, phase);
  }
  return row;
}

TimeSeq add_cyclic_prefix(const TimeSeq& x, const OfdmConfig& cfg) {
  const int n = cfg.n_subcarriers;
  const int p = cfg.cp_len;
  if (p > n) throw ConfigError("add_cyclic_prefix: cp_len exceeds n_subcarriers");
  if (p < 0) throw ConfigError("add_cyclic_prefix: negative cp_len");
  require_length(x.size(), n, "add_cyclic_prefix");
  TimeSeq out(n + p);
  out.head(p) = x.tail(p);
  out.tail(n) = x;
  return out;
}

TimeSeq strip_and_window(const TimeSeq& y, const OfdmConfig& cfg, Index frame_start) {
  const Index n = cfg.n_subcarriers;
  const Index p = cfg.cp_len;
  if (frame_start < 0 || y.size() < frame_start + n + p) {
    throw FramingError("strip_and_window: need " + std::to_string(frame_start + n + p) +
                       " samples, have " + std::to_string(y.size()));
  }
  return y.segment(frame_start + p, n);
}

TimeSeq modulate_frames(const CMatrix& symbols, const OfdmConfig& cfg) {
  require_length(symbols.rows(), cfg.n_subcarriers, "modulate_frames");
  const Index frame = cfg.frame_len();
  TimeSeq out(symbols.cols() * frame);
  for (Index m = 0; m < symbols.cols(); ++m) {
    out.segment(m * frame, frame) = add_cyclic_prefix(idft(symbols.col(m)), cfg);
  }
  return out;
}

}  // namespace ofdmjam
