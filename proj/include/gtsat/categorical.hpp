#pragma once

#include <span>
#include <vector>

#include "gtsat/noise.hpp"
#include "gtsat/rng.hpp"

namespace gtsat {

// Translates the vector by the midpoint of its two largest entries, so that
// exactly one entry ends up positive and the runner-up is its negation.
// An exact tie between the top two values degenerates to [0, 0]; by
// convention the lower index is then declared positive at +-DBL_EPSILON.
// Requires at least two entries.
std::vector<double> shift(std::span<const double> x);

struct CategoricalSample {
  std::vector<int8_t> signed_values;  // exactly one +1
  int32_t argmax = -1;                // index of the +1
};

// Sign of the shifted, noise-perturbed scores: a one-hot draw in {-1,+1}^K.
// With Gumbel(1) noise the argmax is distributed as softmax(z).
CategoricalSample categorical_gt_sample(std::span<const double> z, const NoiseModel& model,
                                        Rng& rng);

// {-1,+1} -> {0,1}; throws on any other entry.
std::vector<int8_t> rescale_pm1_to_01(std::span<const int8_t> v);

}  // namespace gtsat
