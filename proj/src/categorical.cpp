#include "gtsat/categorical.hpp"

#include <cfloat>
#include <stdexcept>

namespace gtsat {

std::vector<double> shift(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("shift needs at least two entries");
  // Single pass for the top-two; ties resolve to the lowest index.
  size_t top = x[0] >= x[1] ? 0 : 1;
  size_t second = 1 - top;
  for (size_t i = 2; i < x.size(); i++) {
    if (x[i] > x[top]) {
      second = top;
      top = i;
    } else if (x[i] > x[second]) {
      second = i;
    }
  }
  const double mid = (x[top] + x[second]) / 2.0;
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); i++) out[i] = x[i] - mid;
  if (out[top] == 0.0) {
    // Degenerate exact tie of the top two values.
    out[top] = DBL_EPSILON;
    out[second] = -DBL_EPSILON;
  }
  return out;
}

CategoricalSample categorical_gt_sample(std::span<const double> z, const NoiseModel& model,
                                        Rng& rng) {
  if (model.kind == NoiseKind::None)
    throw std::invalid_argument("categorical sampling needs a noise model");
  std::vector<double> perturbed(z.size());
  for (size_t i = 0; i < z.size(); i++) perturbed[i] = z[i] + sample(model, rng);
  const auto shifted = shift(perturbed);
  CategoricalSample out;
  out.signed_values.resize(shifted.size());
  for (size_t i = 0; i < shifted.size(); i++) {
    out.signed_values[i] = shifted[i] > 0.0 ? +1 : -1;
    if (shifted[i] > 0.0) out.argmax = static_cast<int32_t>(i);
  }
  return out;
}

std::vector<int8_t> rescale_pm1_to_01(std::span<const int8_t> v) {
  std::vector<int8_t> out(v.size());
  for (size_t i = 0; i < v.size(); i++) {
    if (v[i] != -1 && v[i] != +1) throw std::invalid_argument("entries must be -1 or +1");
    out[i] = v[i] > 0 ? 1 : 0;
  }
  return out;
}

}  // namespace gtsat
