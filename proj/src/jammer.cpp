#include "ofdmjam/jammer.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ofdmjam/errors.hpp"

namespace ofdmjam {

std::string_view to_string(JammerMode mode) {
  switch (mode) {
    case JammerMode::none:
      return "none";
    case JammerMode::compliant:
      return "compliant";
    case JammerMode::violating:
      return "violating";
  }
  return "unknown";
}

JammerMode parse_jammer_mode(std::string_view text) {
  if (text == "none") return JammerMode::none;
  if (text == "compliant") return JammerMode::compliant;
  if (text == "violating") return JammerMode::violating;
  throw ConfigError("unknown jammer mode '" + std::string(text) + "' (expected none|compliant|violating)");
}

JammerSpec JammerSpec::make(JammerMode mode, int antennas, int taps, double rel_energy_db) {
  JammerSpec spec;
  spec.mode = mode;
  spec.antennas = mode == JammerMode::none ? 0 : antennas;
  spec.rel_energy_db = rel_energy_db;
  spec.taps_per_antenna.assign(static_cast<std::size_t>(spec.antennas), taps);
  return spec;
}

void JammerSpec::validate(const OfdmConfig& cfg) const {
  if (mode == JammerMode::none) {
    if (antennas != 0) throw ConfigError("jammer mode 'none' requires 0 antennas");
    return;
  }
  if (antennas < 1) throw ConfigError("an active jammer needs at least one antenna");
  if (mode == JammerMode::compliant && antennas != 1) {
    throw ConfigError("compliant jammer is modeled with exactly one antenna");
  }
  if (static_cast<int>(taps_per_antenna.size()) != antennas) {
    throw ConfigError("taps_per_antenna must list one tap count per jammer antenna");
  }
  for (int l : taps_per_antenna) {
    if (l < 1) throw ConfigError("jammer tap count must be positive");
    if (l - 1 > cfg.cp_len) {
      throw ConfigError("jammer channel with " + std::to_string(l) + " taps exceeds cyclic prefix " +
                        std::to_string(cfg.cp_len));
    }
  }
  if (!std::isfinite(rel_energy_db)) throw ConfigError("jammer rel_energy_db must be finite");
}

SampleStack gen_jammer_stream(const JammerSpec& spec, const OfdmConfig& cfg, Index total_len, Rng& rng) {
  if (spec.mode == JammerMode::none) return SampleStack(0, total_len);
  if (total_len < 0) throw FramingError("gen_jammer_stream: negative length");
  SampleStack w(spec.antennas, total_len);
  if (spec.mode == JammerMode::violating) {
    for (Index c = 0; c < total_len; ++c)
      for (Index i = 0; i < spec.antennas; ++i) w(i, c) = rng.complex_gaussian();
    return w;
  }
  const Index frame = cfg.frame_len();
  const Index frames = (total_len + frame - 1) / frame;
  for (Index i = 0; i < spec.antennas; ++i) {
    for (Index m = 0; m < frames; ++m) {
      const TimeSeq x = add_cyclic_prefix(idft(rng.complex_gaussian_vector(cfg.n_subcarriers)), cfg);
      const Index start = m * frame;
      const Index count = std::min(frame, total_len - start);
      w.row(i).segment(start, count) = x.head(count).transpose();
    }
  }
  return w;
}

CMatrix build_toeplitz_jb(const CVector& taps, const OfdmConfig& cfg) {
  const Index n = cfg.n_subcarriers;
  const Index p = cfg.cp_len;
  const Index l = taps.size();
  if (l < 1) throw ConfigError("build_toeplitz_jb: empty tap vector");
  if (l > p + 1) {
    throw ConfigError("build_toeplitz_jb: " + std::to_string(l) + " taps need a cyclic prefix of at least " +
                      std::to_string(l - 1) + ", have " + std::to_string(p));
  }
  CMatrix jb = CMatrix::Zero(n, n + p);
  const Index first = p - l + 1;
  for (Index r = 0; r < n; ++r)
    for (Index q = 0; q < l; ++q) jb(r, first + r + q) = taps[l - 1 - q];
  return jb;
}

CMatrix build_jb_prefix(const CMatrix& jb) {
  const Index p = jb.cols() - jb.rows();
  if (p < 0) throw DimensionError("build_jb_prefix: matrix has fewer columns than rows");
  return jb.leftCols(p);
}

EffectiveJammerChannel build_effective_channel(const ChannelRealization& ch, const OfdmConfig& cfg, int k) {
  const int n = cfg.n_subcarriers;
  const int p = cfg.cp_len;
  if (k < 0 || k >= n) throw ConfigError("build_effective_channel: subcarrier " + std::to_string(k) + " out of range");
  const TapTensor& jam = ch.jammer;
  if (jam.empty()) throw ConfigError("build_effective_channel: realization has no jammer");
  if (jam.length() > p + 1) throw ConfigError("build_effective_channel: jammer channel longer than P + 1 taps");
  const Index b_ant = jam.rx();
  const Index antennas = jam.tx();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const auto twiddle = dft_twiddles(n);
  auto f = [&](Index r) { return twiddle[static_cast<std::size_t>((static_cast<long long>(k) * r) % n)]; };

  EffectiveJammerChannel out;
  out.subcarrier = k;
  out.matrix = CMatrix::Zero(b_ant, antennas * (p + 1));
  const Index l = jam.length();
  // Column c of the Toeplitz map holds taps[L-1-q] in row r = c - (P-L+1) - q, so only the
  // prefix columns c >= P-L+1 reach the window and R[k](b, c) = sum_q f_r taps[L-1-q].
  const Index first = p - l + 1;
  for (Index i = 0; i < antennas; ++i) {
    const Index col0 = i * (p + 1);
    for (Index b = 0; b < b_ant; ++b) {
      const CVector taps = jam.link(b, i);
      cd jhat = 0.0;
      for (Index t = 0; t < l; ++t) jhat += f(t) * taps[t];
      out.matrix(b, col0) = sqrt_n * jhat;
      for (Index c = std::max<Index>(first, 0); c < p; ++c) {
        cd acc = 0.0;
        for (Index q = 0; q < l; ++q) {
          const Index r = c - first - q;
          if (r >= 0) acc += f(r) * taps[l - 1 - q];
        }
        out.matrix(b, col0 + 1 + c) = acc;
      }
    }
  }
  return out;
}

CVector extract_effective_input(const TimeSeq& frame, const OfdmConfig& cfg, int k) {
  const Index n = cfg.n_subcarriers;
  const Index p = cfg.cp_len;
  if (frame.size() < n + p) {
    throw FramingError("extract_effective_input: frame has " + std::to_string(frame.size()) +
                       " samples, need " + std::to_string(n + p));
  }
  if (k < 0 || k >= n) throw ConfigError("extract_effective_input: subcarrier out of range");
  CVector out(p + 1);
  out[0] = dft(TimeSeq(frame.segment(p, n)))[k];
  for (Index t = 0; t < p; ++t) out[1 + t] = frame[t] - frame[n + t];
  return out;
}

CVector extract_effective_input(const SampleStack& frames, const OfdmConfig& cfg, int k) {
  const Index p = cfg.cp_len;
  CVector out(frames.rows() * (p + 1));
  for (Index i = 0; i < frames.rows(); ++i) {
    out.segment(i * (p + 1), p + 1) = extract_effective_input(TimeSeq(frames.row(i).transpose()), cfg, k);
  }
  return out;
}

double rank_tolerance(const RVector& singular_values, Index rows, Index cols) {
  const double smax = singular_values.size() ? singular_values.maxCoeff() : 0.0;
  return static_cast<double>(std::max(rows, cols)) * smax * std::ldexp(1.0, -40);
}

int numerical_rank(const RVector& singular_values, Index rows, Index cols) {
  const double tol = rank_tolerance(singular_values, rows, cols);
  int rank = 0;
  for (Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values[i] > tol) ++rank;
  }
  return rank;
}

int numerical_rank(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return numerical_rank(svd.singularValues(), m.rows(), m.cols());
}

double jammer_rx_energy(const ChannelRealization& ch, const OfdmConfig& cfg, JammerMode mode) {
  if (mode == JammerMode::none || ch.jammer.empty()) return 0.0;
  const int n = cfg.n_subcarriers;
  const auto n_data = static_cast<double>(cfg.data_subcarriers.size());
  const TapTensor& jam = ch.jammer;
  double total = 0.0;
  if (mode == JammerMode::compliant) {
    // Cyclic input: subcarrier k sees sqrt(N) j[k] times a unit-variance symbol.
    const auto response = freq_response(jam, cfg);
    for (int k : cfg.data_subcarriers) total += n * response[k].squaredNorm();
  } else {
    // White input through the windowed Toeplitz map gives E|f[k]^T J_b w|^2 = ||f[k]^T J_b||^2. The
    // nonzero part of that row is the linear convolution of f[k] with the reversed taps; in terms
    // of the taps h its energy is sum_{q,q'} h_q conj(h_q') (N - |q - q'|) / N exp(-j 2 pi k (q - q') / N).
    const Index l = jam.length();
    for (Index i = 0; i < jam.tx(); ++i) {
      for (Index b = 0; b < jam.rx(); ++b) {
        const CVector taps = jam.link(b, i);
        for (int k : cfg.data_subcarriers) {
          double energy = 0.0;
          for (Index q = 0; q < l; ++q) {
            for (Index qq = 0; qq < l; ++qq) {
              const Index lag = q - qq;
              const double weight = static_cast<double>(n - std::abs(lag)) / n;
              const cd phase = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * lag) / n);
              energy += weight * (taps[q] * std::conj(taps[qq]) * phase).real();
            }
          }
          total += energy;
        }
      }
    }
  }
  return total / (static_cast<double>(jam.rx()) * n_data);
}

}  // namespace ofdmjam
