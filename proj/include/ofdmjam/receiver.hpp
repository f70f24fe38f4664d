#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ofdmjam/ofdm.hpp"
#include "ofdmjam/types.hpp"

namespace ofdmjam {

/// Receive vectors per subcarrier: samples[i] is the B x M matrix of the
/// M OFDM symbols observed on subcarrier subcarriers[i].
struct SubcarrierGrid {
  std::vector<int> subcarriers;
  std::vector<CMatrix> samples;

  Index antennas() const { return samples.empty() ? 0 : samples.front().rows(); }
  Index symbols() const { return samples.empty() ? 0 : samples.front().cols(); }
  std::size_t size() const { return samples.size(); }
};

/// Windows `frames` consecutive OFDM frames of every antenna stream (frame f
/// starts at sample (first_frame + f) * (N + P)), applies the DFT and keeps
/// the data subcarriers of the config.
SubcarrierGrid demodulate_grid(const SampleStack& rx, const OfdmConfig& cfg, Index first_frame, Index frames);

/// Orthonormal bases U[k] of the subspace kept after nulling d dimensions.
struct ProjectionBank {
  int null_dims = 0;
  std::vector<CMatrix> bases;  // B x (B - d) each, aligned with the grid's subcarriers
};

/// Per subcarrier, the complement of the d leading left-singular vectors of
/// the B x M interference samples. Singular values are taken in descending
/// order; ties keep the decomposition's output order.
ProjectionBank estimate_interference_basis(const SubcarrierGrid& interference, int null_dims);

/// y_bar[k, m] = U[k]^H y[k, m].
SubcarrierGrid project_grid(const SubcarrierGrid& grid, const ProjectionBank& bank);

/// U^H H for a single subcarrier.
CMatrix project_channel(const CMatrix& basis, const CMatrix& channel);

/// Zero-forcing filter (H^H H)^-1 H^H, or nullopt when H has numerically
/// deficient column rank.
std::optional<CMatrix> zf_filter(const CMatrix& channel);

/// Zero-forcing estimate of the transmitted vector; nullopt on rank
/// deficiency (callers count the affected bits as erased).
std::optional<CVector> zf_detect(const CMatrix& channel, const CVector& y);

/// Gray-mapped unit-energy QPSK. Bit pair (b0, b1) maps to
/// ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2), so 00 -> (1 + j) / sqrt(2).
std::vector<cd> qpsk_map(std::span<const std::uint8_t> bits);
/// Per-component sign decision; inverse of qpsk_map on noise-free symbols.
std::vector<std::uint8_t> qpsk_demap(std::span<const cd> symbols);

}  // namespace ofdmjam
