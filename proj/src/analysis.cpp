#include "ofdmjam/analysis.hpp"

#include <cmath>

#include "ofdmjam/errors.hpp"
#include "ofdmjam/jammer.hpp"

namespace ofdmjam {

namespace {

RVector singular_values(const CMatrix& y) {
  const Index b = y.rows();
  RVector sv = RVector::Zero(b);
  if (y.cols() == 0) return sv;
  Eigen::JacobiSVD<CMatrix> svd(y);
  const RVector& s = svd.singularValues();  // descending
  sv.head(s.size()) = s;
  return sv;
}

}  // namespace

std::vector<RVector> singular_fractions(const SubcarrierGrid& interference, FractionMode mode) {
  if (interference.size() == 0 || interference.antennas() == 0) {
    throw IllPosedError("singular_fractions: empty interference grid");
  }
  std::vector<RVector> out;
  out.reserve(interference.size());
  for (const CMatrix& y : interference.samples) {
    RVector s = singular_values(y);
    if (mode == FractionMode::energy) s = s.array().square();
    const double total = s.sum();
    if (total > 0.0) s /= total;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<int> measured_rank(const SubcarrierGrid& interference) {
  std::vector<int> ranks;
  ranks.reserve(interference.size());
  for (const CMatrix& y : interference.samples) {
    ranks.push_back(numerical_rank(singular_values(y), y.rows(), y.cols()));
  }
  return ranks;
}

void FractionAccumulator::add(const RVector& lambda) {
  if (count_ == 0) {
    sum_ = RVector::Zero(lambda.size());
    sum_sq_ = RVector::Zero(lambda.size());
  } else if (lambda.size() != sum_.size()) {
    throw DimensionError("FractionAccumulator: inconsistent fraction vector length");
  }
  sum_ += lambda;
  sum_sq_ += lambda.array().square().matrix();
  ++count_;
}

void FractionAccumulator::merge(const FractionAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  if (other.sum_.size() != sum_.size()) throw DimensionError("FractionAccumulator: inconsistent lengths");
  sum_ += other.sum_;
  sum_sq_ += other.sum_sq_;
  count_ += other.count_;
}

SingularFractionStats FractionAccumulator::stats() const {
  if (count_ == 0) throw IllPosedError("aggregate_stats: no samples");
  SingularFractionStats out;
  out.samples = count_;
  const double n = static_cast<double>(count_);
  out.mean = sum_ / n;
  out.stddev = (sum_sq_ / n - out.mean.array().square().matrix()).cwiseMax(0.0).cwiseSqrt();
  return out;
}

SingularFractionStats aggregate_stats(std::span<const RVector> samples) {
  if (samples.empty()) throw IllPosedError("aggregate_stats: no samples");
  const Index dims = samples.front().size();
  RVector mean = RVector::Zero(dims);
  for (const RVector& s : samples) {
    if (s.size() != dims) throw DimensionError("aggregate_stats: inconsistent fraction vector length");
    mean += s;
  }
  const double n = static_cast<double>(samples.size());
  mean /= n;
  // Two-pass variance so identical samples give exactly zero.
  RVector var = RVector::Zero(dims);
  for (const RVector& s : samples) var += (s - mean).array().square().matrix();
  SingularFractionStats out;
  out.mean = mean;
  out.stddev = (var / n).cwiseSqrt();
  out.samples = static_cast<Index>(samples.size());
  return out;
}

}  // namespace ofdmjam
