#pragma once

#include <string>

#include "gtsat/rng.hpp"

namespace gtsat {

enum class NoiseKind { None, Logistic, Uniform, Gumbel };

// A continuous noise distribution for perturbing logits: sampling, the map
// theta(x) = P(x + eps > 0) = 1 - F(-x), and its inverse. `None` stands for
// the unperturbed baseline and only supports sampling (always 0).
struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  double scale = 1.0;   // Logistic / Gumbel
  double a = -1.0;      // Uniform support [a, b]
  double b = 1.0;

  static NoiseModel none() { return {}; }
  static NoiseModel logistic(double scale = 1.0);
  static NoiseModel uniform(double a = -1.0, double b = 1.0);
  static NoiseModel gumbel(double scale = 1.0);

  std::string describe() const;
};

// One i.i.d. draw; None yields 0.
double sample(const NoiseModel& model, Rng& rng);

// P(x + eps > 0). Throws std::invalid_argument for the None model.
double theta(const NoiseModel& model, double x);

// Inverse of theta on p in (0, 1).
double theta_inv(const NoiseModel& model, double p);

}  // namespace gtsat
