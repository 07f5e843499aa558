#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "gtsat/categorical.hpp"

using namespace gtsat;

TEST_CASE("shift fixtures") {
  SUBCASE("three entries") {
    const auto out = shift(std::vector<double>{2.0, 5.0, -1.0});
    CHECK(out[0] == doctest::Approx(-1.5));
    CHECK(out[1] == doctest::Approx(1.5));
    CHECK(out[2] == doctest::Approx(-4.5));
  }
  SUBCASE("two antisymmetric entries are unchanged") {
    const auto out = shift(std::vector<double>{0.3, -0.3});
    CHECK(out[0] == doctest::Approx(0.3));
    CHECK(out[1] == doctest::Approx(-0.3));
  }
  SUBCASE("exact top-two tie resolves to the lower index") {
    const auto out = shift(std::vector<double>{1.0, 1.0});
    CHECK(out[0] == DBL_EPSILON);
    CHECK(out[1] == -DBL_EPSILON);
  }
  SUBCASE("needs at least two entries") {
    CHECK_THROWS_AS(shift(std::vector<double>{1.0}), std::invalid_argument);
  }
}

TEST_CASE("categorical sampling") {
  SUBCASE("uniform scores give uniform argmax frequencies") {
    Rng rng(1);
    const std::vector<double> z{0.0, 0.0, 0.0};
    const int draws = 100000;
    std::vector<int> counts(3, 0);
    for (int d = 0; d < draws; d++) {
      const auto s = categorical_gt_sample(z, NoiseModel::logistic(1.0), rng);
      int positives = 0;
      for (int8_t v : s.signed_values) positives += v > 0;
      REQUIRE(positives == 1);
      counts[s.argmax]++;
    }
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / draws);
    for (int c : counts) CHECK(std::abs(c / double(draws) - 1.0 / 3) <= 3.0 * sigma);
  }
  SUBCASE("gumbel noise reproduces the softmax head") {
    Rng rng(2);
    const std::vector<double> z{std::log(2.0), 0.0, 0.0};
    const int draws = 100000;
    int zero = 0;
    for (int d = 0; d < draws; d++)
      zero += categorical_gt_sample(z, NoiseModel::gumbel(1.0), rng).argmax == 0;
    const double sigma = std::sqrt(0.5 * 0.5 / draws);
    CHECK(std::abs(zero / double(draws) - 0.5) <= 3.0 * sigma);
  }
  SUBCASE("a dominant score always wins") {
    Rng rng(3);
    const std::vector<double> z{1000.0, 0.0, 0.0};
    for (int d = 0; d < 1000; d++)
      CHECK(categorical_gt_sample(z, NoiseModel::uniform(-1, 1), rng).argmax == 0);
  }
  SUBCASE("noiseless model rejected") {
    Rng rng(4);
    CHECK_THROWS_AS(categorical_gt_sample(std::vector<double>{0.0, 0.0}, NoiseModel::none(), rng),
                    std::invalid_argument);
  }
}

TEST_CASE("plus-minus rescaling") {
  CHECK(rescale_pm1_to_01(std::vector<int8_t>{-1, 1, -1}) == std::vector<int8_t>{0, 1, 0});
  CHECK(rescale_pm1_to_01(std::vector<int8_t>{-1, -1}) == std::vector<int8_t>{0, 0});
  CHECK_THROWS_AS(rescale_pm1_to_01(std::vector<int8_t>{0}), std::invalid_argument);

  // Round trip both directions.
  const std::vector<int8_t> v{-1, 1, 1, -1};
  const auto zero_one = rescale_pm1_to_01(v);
  std::vector<int8_t> back(zero_one.size());
  for (size_t i = 0; i < zero_one.size(); i++) back[i] = zero_one[i] ? +1 : -1;
  CHECK(back == v);
}
