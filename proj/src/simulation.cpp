#include "ofdmjam/simulation.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "ofdmjam/errors.hpp"
#include "ofdmjam/receiver.hpp"

namespace ofdmjam {

double noise_variance_for_snr(const Scenario& sc, double snr_db) {
  if (std::isnan(snr_db)) throw ConfigError("SNR is NaN");
  if (snr_db == std::numeric_limits<double>::infinity()) return 0.0;
  const double signal = static_cast<double>(sc.streams) * sc.legit_taps;
  return signal / std::pow(10.0, snr_db / 10.0);
}

BlockSignals synthesize_block(const Scenario& sc, double noise_var, Rng& rng) {
  const OfdmConfig& cfg = sc.ofdm;
  const Index m_sym = cfg.symbols_per_block;
  const Index frame = cfg.frame_len();
  const auto n_data = static_cast<Index>(cfg.data_subcarriers.size());

  Rng legit_rng(rng.engine()());
  Rng jammer_rng(rng.engine()());
  Rng noise_rng(rng.engine()());

  BlockSignals out;
  out.data_first_frame = sc.subspace == SubspaceMode::estimated ? m_sym : 0;
  out.frames = out.data_first_frame + m_sym;
  const Index total = out.frames * frame;

  const std::vector<int> legit_taps(static_cast<std::size_t>(sc.streams), sc.legit_taps);
  out.channel.legit = draw_rayleigh_taps(sc.rx_antennas, legit_taps, legit_rng);
  out.channel.noise_var = noise_var;

  // Legitimate QPSK frames, silent during training.
  SampleStack x = SampleStack::Zero(sc.streams, total);
  out.bits.resize(static_cast<std::size_t>(sc.streams));
  for (Index u = 0; u < sc.streams; ++u) {
    auto& bits = out.bits[u];
    bits.resize(static_cast<std::size_t>(2 * n_data * m_sym));
    for (auto& b : bits) b = legit_rng.bit();
    const std::vector<cd> symbols = qpsk_map(bits);
    CMatrix grid = CMatrix::Zero(cfg.n_subcarriers, m_sym);
    for (Index m = 0; m < m_sym; ++m)
      for (Index i = 0; i < n_data; ++i) grid(cfg.data_subcarriers[i], m) = symbols[m * n_data + i];
    x.row(u).segment(out.data_first_frame * frame, m_sym * frame) = modulate_frames(grid, cfg).transpose();
  }
  out.legit_rx = apply_channel(out.channel.legit, x).leftCols(total);

  if (sc.jammer.mode != JammerMode::none) {
    out.channel.jammer = draw_rayleigh_taps(sc.rx_antennas, sc.jammer.taps_per_antenna, jammer_rng);
    const double unit = jammer_rx_energy(out.channel, cfg, sc.jammer.mode);
    const double target = std::pow(10.0, sc.jammer.rel_energy_db / 10.0) * legit_rx_energy(out.channel, cfg);
    out.jammer_gain = unit > 0.0 ? std::sqrt(target / unit) : 0.0;
    out.jammer_tx = out.jammer_gain * gen_jammer_stream(sc.jammer, cfg, total, jammer_rng);
    out.jammer_rx = apply_channel(out.channel.jammer, out.jammer_tx).leftCols(total);
  } else {
    out.channel.jammer = TapTensor(sc.rx_antennas, 0, 1);
    out.jammer_tx = SampleStack(0, total);
    out.jammer_rx = SampleStack::Zero(sc.rx_antennas, total);
  }

  out.noise = SampleStack::Zero(sc.rx_antennas, total);
  add_noise_inplace(out.noise, noise_var, noise_rng);
  return out;
}

BlockCounts detect_block(const Scenario& sc, const BlockSignals& signals) {
  const OfdmConfig& cfg = sc.ofdm;
  const Index m_sym = cfg.symbols_per_block;
  const auto n_data = static_cast<Index>(cfg.data_subcarriers.size());
  const double sqrt_n = std::sqrt(static_cast<double>(cfg.n_subcarriers));

  const SampleStack rx = signals.rx();
  const SubcarrierGrid grid = demodulate_grid(rx, cfg, signals.data_first_frame, m_sym);

  ProjectionBank bank;
  if (sc.null_dims > 0) {
    const SubcarrierGrid interference = sc.subspace == SubspaceMode::genie
                                            ? demodulate_grid(signals.jammer_rx, cfg, signals.data_first_frame, m_sym)
                                            : demodulate_grid(rx, cfg, 0, m_sym);
    bank = estimate_interference_basis(interference, sc.null_dims);
  }

  const auto response = freq_response(signals.channel.legit, cfg);
  BlockCounts counts;
  const auto sym_bits = static_cast<std::uint64_t>(2 * sc.streams * m_sym);
  for (Index i = 0; i < n_data; ++i) {
    const int k = cfg.data_subcarriers[i];
    CMatrix h = sqrt_n * response[k];
    CMatrix y = grid.samples[i];
    if (sc.null_dims > 0) {
      h = project_channel(bank.bases[i], h);
      y = bank.bases[i].adjoint() * y;
    }
    counts.bits += sym_bits;
    const auto filter = zf_filter(h);
    if (!filter) {
      counts.erased_bits += sym_bits;
      counts.bit_errors += sym_bits / 2;
      continue;
    }
    const CMatrix estimate = *filter * y;  // U x M
    for (Index u = 0; u < sc.streams; ++u) {
      const auto& bits = signals.bits[u];
      for (Index m = 0; m < m_sym; ++m) {
        const cd s = estimate(u, m);
        const std::size_t at = static_cast<std::size_t>(2 * (m * n_data + i));
        counts.bit_errors += static_cast<std::uint64_t>((s.real() < 0.0) != (bits[at] != 0)) +
                             static_cast<std::uint64_t>((s.imag() < 0.0) != (bits[at + 1] != 0));
      }
    }
  }
  return counts;
}

BlockCounts run_block(const Scenario& sc, double snr_db, Rng& rng) {
  const BlockSignals signals = synthesize_block(sc, noise_variance_for_snr(sc, snr_db), rng);
  return detect_block(sc, signals);
}

void SimResult::merge(const SimResult& other) {
  if (other.points.size() != points.size()) throw DimensionError("SimResult::merge: SNR grids differ");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].snr_db != other.points[i].snr_db) throw DimensionError("SimResult::merge: SNR grids differ");
    points[i].bits += other.points[i].bits;
    points[i].bit_errors += other.points[i].bit_errors;
    points[i].erased_bits += other.points[i].erased_bits;
  }
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OFDMJAM_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError(std::string("OFDMJAM_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SimResult sweep(const Scenario& sc, const SweepOptions& options) {
  sc.validate();
  SimResult result;
  result.scenario_id = sc.id;
  result.jammer_mode = sc.jammer.mode;
  result.null_dims = sc.null_dims;
  const std::size_t n_snr = sc.snr_db.size();
  const std::uint64_t blocks = sc.blocks;

  std::vector<BlockCounts> per_task(n_snr * blocks);
  parallel_for(per_task.size(), resolve_thread_count(options.threads), [&](std::uint64_t task) {
    const std::uint64_t s = task / blocks;
    const std::uint64_t b = options.first_block + task % blocks;
    Rng rng = Rng::derive(sc.seed, {s, b});
    per_task[task] = run_block(sc, sc.snr_db[s], rng);
  });

  for (std::size_t s = 0; s < n_snr; ++s) {
    BlockCounts total;
    for (std::uint64_t b = 0; b < blocks; ++b) total += per_task[s * blocks + b];
    result.points.push_back({sc.snr_db[s], total.bits, total.bit_errors, total.erased_bits});
  }
  return result;
}

}  // namespace ofdmjam
