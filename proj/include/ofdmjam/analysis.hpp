#pragma once

#include <span>
#include <vector>

#include "ofdmjam/receiver.hpp"
#include "ofdmjam/types.hpp"

namespace ofdmjam {

/// How interference is split over ordered spatial dimensions.
enum class FractionMode {
  singular,  // lambda_b = sigma_b / sum(sigma)
  energy,    // lambda_b = sigma_b^2 / sum(sigma^2)
};

/// Fractions of the interference on each ordered spatial dimension, one
/// length-B vector per subcarrier, non-increasing and summing to one. When
/// M < B the trailing entries are zero. Throws IllPosedError for an empty
/// grid.
std::vector<RVector> singular_fractions(const SubcarrierGrid& interference,
                                        FractionMode mode = FractionMode::singular);

/// Number of singular values of each B x M sample matrix above the
/// scale-relative tolerance used by numerical_rank.
std::vector<int> measured_rank(const SubcarrierGrid& interference);

struct SingularFractionStats {
  RVector mean;
  RVector stddev;  // population standard deviation
  Index samples = 0;
};

SingularFractionStats aggregate_stats(std::span<const RVector> samples);

/// Running accumulator so studies can aggregate without keeping every
/// sample. Merging is order-independent up to rounding.
class FractionAccumulator {
 public:
  void add(const RVector& lambda);
  void merge(const FractionAccumulator& other);
  SingularFractionStats stats() const;
  Index count() const { return count_; }

 private:
  Index count_ = 0;
  RVector sum_;
  RVector sum_sq_;
};

}  // namespace ofdmjam
