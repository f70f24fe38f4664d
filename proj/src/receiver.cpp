#include "ofdmjam/receiver.hpp"

#include <cmath>
#include <string>

#include "ofdmjam/errors.hpp"
#include "ofdmjam/jammer.hpp"

namespace ofdmjam {

SubcarrierGrid demodulate_grid(const SampleStack& rx, const OfdmConfig& cfg, Index first_frame, Index frames) {
  const Index frame = cfg.frame_len();
  if (first_frame < 0 || frames < 0 || rx.cols() < (first_frame + frames) * frame) {
    throw FramingError("demodulate_grid: stream of " + std::to_string(rx.cols()) + " samples is shorter than " +
                       std::to_string((first_frame + frames) * frame));
  }
  SubcarrierGrid grid;
  grid.subcarriers = cfg.data_subcarriers;
  grid.samples.assign(cfg.data_subcarriers.size(), CMatrix(rx.rows(), frames));
  const Index n = cfg.n_subcarriers;
  std::vector<cd> window(static_cast<std::size_t>(n));
  std::vector<cd> spectrum(static_cast<std::size_t>(n));
  for (Index b = 0; b < rx.rows(); ++b) {
    for (Index m = 0; m < frames; ++m) {
      const Index start = (first_frame + m) * frame + cfg.cp_len;
      for (Index t = 0; t < n; ++t) window[t] = rx(b, start + t);
      dft_inplace(window, spectrum);
      for (std::size_t i = 0; i < grid.subcarriers.size(); ++i) grid.samples[i](b, m) = spectrum[grid.subcarriers[i]];
    }
  }
  return grid;
}

ProjectionBank estimate_interference_basis(const SubcarrierGrid& interference, int null_dims) {
  const Index b = interference.antennas();
  if (null_dims < 0) throw ConfigError("null_dims must be non-negative");
  if (b > 0 && null_dims >= b) {
    throw ConfigError("cannot null " + std::to_string(null_dims) + " of " + std::to_string(b) + " dimensions");
  }
  if (interference.symbols() < null_dims) {
    throw IllPosedError("nulling " + std::to_string(null_dims) + " dimensions needs at least as many samples, have " +
                        std::to_string(interference.symbols()));
  }
  ProjectionBank bank;
  bank.null_dims = null_dims;
  bank.bases.reserve(interference.size());
  for (const CMatrix& y : interference.samples) {
    if (null_dims == 0) {
      bank.bases.push_back(CMatrix::Identity(b, b));
      continue;
    }
    // Left-singular vectors of Y are the eigenvectors of Y Y^H. Eigenvalues
    // come back ascending: the d strongest directions are the last columns.
    const CMatrix gram = y * y.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    bank.bases.push_back(eig.eigenvectors().leftCols(b - null_dims));
  }
  return bank;
}

CMatrix project_channel(const CMatrix& basis, const CMatrix& channel) {
  if (basis.rows() != channel.rows()) throw DimensionError("project_channel: basis and channel row counts differ");
  return basis.adjoint() * channel;
}

SubcarrierGrid project_grid(const SubcarrierGrid& grid, const ProjectionBank& bank) {
  if (bank.bases.size() != grid.size()) throw DimensionError("project_grid: bank and grid subcarrier counts differ");
  SubcarrierGrid out;
  out.subcarriers = grid.subcarriers;
  out.samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (bank.bases[i].rows() != grid.samples[i].rows()) {
      throw DimensionError("project_grid: basis has " + std::to_string(bank.bases[i].rows()) + " rows, grid has " +
                           std::to_string(grid.samples[i].rows()) + " antennas");
    }
    out.samples.push_back(bank.bases[i].adjoint() * grid.samples[i]);
  }
  return out;
}

std::optional<CMatrix> zf_filter(const CMatrix& channel) {
  if (channel.cols() == 0 || channel.rows() < channel.cols()) return std::nullopt;
  Eigen::JacobiSVD<CMatrix> svd(channel);
  if (numerical_rank(svd.singularValues(), channel.rows(), channel.cols()) < channel.cols()) return std::nullopt;
  const CMatrix gram = channel.adjoint() * channel;
  return CMatrix(gram.ldlt().solve(channel.adjoint()));
}

std::optional<CVector> zf_detect(const CMatrix& channel, const CVector& y) {
  if (y.size() != channel.rows()) throw DimensionError("zf_detect: receive vector length differs from channel rows");
  auto w = zf_filter(channel);
  if (!w) return std::nullopt;
  return CVector(*w * y);
}

std::vector<cd> qpsk_map(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw FramingError("qpsk_map: odd number of bits");
  const double a = 1.0 / std::sqrt(2.0);
  std::vector<cd> out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {bits[2 * i] ? -a : a, bits[2 * i + 1] ? -a : a};
  }
  return out;
}

std::vector<std::uint8_t> qpsk_demap(std::span<const cd> symbols) {
  std::vector<std::uint8_t> bits(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

}  // namespace ofdmjam
