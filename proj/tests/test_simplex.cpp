#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isospin/simplex.hpp"

using namespace isospin;

TEST_CASE("quadratic bowl") {
  auto f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0) + 3.0;
  };
  const auto r = nelder_mead(f, {0.0, 0.0}, {1e-14, 0.25, 100000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
}

TEST_CASE("rosenbrock") {
  auto f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto r = nelder_mead(f, {-1.2, 1.0}, {1e-16, 0.5, 100000});
  CHECK(r.converged);
  CHECK(r.value < 1e-10);
}

TEST_CASE("evaluation budget is honoured") {
  int calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  };
  const auto r = nelder_mead(f, {5.0, 5.0, 5.0}, {1e-30, 0.25, 50});
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations <= 50 + 4);
  CHECK(calls == r.evaluations);
}

TEST_CASE("same start gives the same answer") {
  auto f = [](std::span<const double> x) { return std::cos(x[0]) + std::sin(x[1]); };
  const auto a = nelder_mead(f, {0.3, 0.2}, {});
  const auto b = nelder_mead(f, {0.3, 0.2}, {});
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
}
