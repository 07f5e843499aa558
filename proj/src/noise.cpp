#include "gtsat/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gtsat {

NoiseModel NoiseModel::logistic(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("logistic noise requires scale > 0");
  NoiseModel m;
  m.kind = NoiseKind::Logistic;
  m.scale = scale;
  return m;
}

NoiseModel NoiseModel::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform noise requires a < b");
  NoiseModel m;
  m.kind = NoiseKind::Uniform;
  m.a = a;
  m.b = b;
  return m;
}

NoiseModel NoiseModel::gumbel(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("gumbel noise requires scale > 0");
  NoiseModel m;
  m.kind = NoiseKind::Gumbel;
  m.scale = scale;
  return m;
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case NoiseKind::None: os << "none"; break;
    case NoiseKind::Logistic: os << "logistic(scale=" << scale << ")"; break;
    case NoiseKind::Uniform: os << "uniform(" << a << "," << b << ")"; break;
    case NoiseKind::Gumbel: os << "gumbel(scale=" << scale << ")"; break;
  }
  return os.str();
}

// Sampling goes through the inverse CDF of one uniform draw: constant cost,
// no rejection loop, and the draw count per step stays fixed.
double sample(const NoiseModel& model, Rng& rng) {
  switch (model.kind) {
    case NoiseKind::None:
      return 0.0;
    case NoiseKind::Logistic: {
      const double u = rng.next_open01();
      return model.scale * std::log(u / (1.0 - u));
    }
    case NoiseKind::Uniform:
      return model.a + (model.b - model.a) * rng.next_unit();
    case NoiseKind::Gumbel: {
      const double u = rng.next_open01();
      return -model.scale * std::log(-std::log(u));
    }
  }
  return 0.0;
}

double theta(const NoiseModel& model, double x) {
  switch (model.kind) {
    case NoiseKind::None:
      throw std::invalid_argument("theta undefined for noiseless model");
    case NoiseKind::Logistic:
      return 1.0 / (1.0 + std::exp(-x / model.scale));
    case NoiseKind::Uniform: {
      if (x < -model.b) return 0.0;
      if (x > -model.a) return 1.0;
      return (x + model.b) / (model.b - model.a);
    }
    case NoiseKind::Gumbel:
      // 1 - exp(-exp(x/s))
      return -std::expm1(-std::exp(x / model.scale));
  }
  return 0.0;
}

double theta_inv(const NoiseModel& model, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("theta_inv requires p in (0,1)");
  switch (model.kind) {
    case NoiseKind::None:
      throw std::invalid_argument("theta undefined for noiseless model");
    case NoiseKind::Logistic:
      return model.scale * std::log(p / (1.0 - p));
    case NoiseKind::Uniform:
      return p * (model.b - model.a) - model.b;
    case NoiseKind::Gumbel:
      return model.scale * std::log(-std::log1p(-p));
  }
  return 0.0;
}

}  // namespace gtsat
