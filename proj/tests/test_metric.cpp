#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gifs/envelope.hpp"
#include "gifs/error.hpp"
#include "gifs/metric.hpp"

using namespace gifs;
using Catch::Approx;

TEST_CASE("halving map has fixed point zero") {
  const auto f = ContractionMap::custom([](const Point& p) { return Point{p[0] / 2.0, 0.0}; }, 0.5);
  const auto r = fixed_point(f, 0.5, 1e-12, {1.0, 0.0});
  CHECK(std::abs(r.point[0]) <= 1e-12);
  CHECK(r.error_bound <= 1e-12);
  CHECK(std::abs(r.point[0]) <= r.error_bound);
}

TEST_CASE("affine map x/2 + 3/2 converges to 3") {
  // c x + (1-c) a with c = 1/2, a = 3, iterated without the closed form
  const auto f = ContractionMap::custom([](const Point& p) { return Point{0.5 * p[0] + 1.5, 0.0}; }, 0.5);
  const auto r = fixed_point(f, 0.5, 1e-10, {0.0, 0.0});
  CHECK(std::abs(r.point[0] - 3.0) <= r.error_bound);
  CHECK(r.error_bound <= 1e-10);
  CHECK(r.iterations > 0);

  const auto closed = fixed_point(ContractionMap::affine1d(0.5, 1.5), 0.5, 1e-10);
  CHECK(closed.point[0] == 3.0);
  CHECK(closed.iterations == 0);
}

TEST_CASE("z -> 1/(z+1) converges to the golden ratio conjugate") {
  const auto f = ContractionMap::custom(
      [](const Point& p) { return Point{1.0 / (p[0] + 1.0), 0.0}; }, 0.5);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto r = fixed_point(f, 0.5, 1e-12, {1.0, 0.0});
  CHECK(std::abs(r.point[0] - golden) <= r.error_bound + 1e-15);
  CHECK(r.error_bound <= 1e-12);
}

TEST_CASE("error bound equals the a-posteriori collage bound at return") {
  const auto f = ContractionMap::custom([](const Point& p) { return Point{0.3 * p[0] + 0.7, 0.0}; }, 0.3);
  const auto r = fixed_point(f, 0.3, 1e-9, {5.0, 0.0});
  CHECK(r.error_bound == inflate(euclidean(f(r.point), r.point) / (1.0 - 0.3)));
}

TEST_CASE("fixed point is idempotent") {
  const auto f = ContractionMap::custom([](const Point& p) { return Point{0.4 * p[0] - 1.2, 0.0}; }, 0.4);
  const auto first = fixed_point(f, 0.4, 1e-10, {3.0, 0.0});
  const auto second = fixed_point(f, 0.4, 1e-10, first.point);
  CHECK(euclidean(first.point, second.point) <= first.error_bound + second.error_bound);
  CHECK(second.iterations <= first.iterations);
}

TEST_CASE("slow map with an optimistic factor does not converge") {
  const auto f = ContractionMap::custom([](const Point& p) { return Point{0.999 * p[0], 0.0}; }, 0.5);
  CHECK_THROWS_AS(fixed_point(f, 0.5, 1e-9, {1.0, 0.0}), NotConvergedError);
}

TEST_CASE("invalid contraction arguments are rejected") {
  const auto f = ContractionMap::affine1d(0.5, 0.0);
  CHECK_THROWS_AS(fixed_point(f, 1.0, 1e-9), ArgumentError);
  CHECK_THROWS_AS(fixed_point(f, 0.5, 0.0), ArgumentError);
  CHECK_THROWS_AS(fixed_point(f, 0.25, 1e-9), ArgumentError);
}

TEST_CASE("collage bounds on x/2") {
  const auto f = ContractionMap::affine1d(0.5, 0.0);
  const Point z{0.0, 0.0};
  const auto at_z = collage_bounds(f, 0.5, z, z);
  CHECK(at_z.move_bound == 0.0);
  CHECK(at_z.distance_bound == 0.0);

  const auto at_one = collage_bounds(f, 0.5, {1.0, 0.0}, z);
  CHECK(at_one.move_bound == Approx(1.5).epsilon(1e-8));
  CHECK(at_one.distance_bound == Approx(1.0).epsilon(1e-8));
  // actual move 1/2 <= 1.5, actual distance 1 <= 1
  CHECK(0.5 <= at_one.move_bound);
  CHECK(1.0 <= at_one.distance_bound);
}

TEST_CASE("collage relations hold for random affine maps") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> slope(-0.95, 0.95), offset(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double s = slope(rng), o = offset(rng), a = offset(rng);
    const double c = std::max(std::abs(s), 1e-3);
    const auto f = ContractionMap::affine1d(s, o);
    const Point z{o / (1.0 - s), 0.0};
    const auto b = collage_bounds(f, c, {a, 0.0}, z);
    const double move = std::abs(f({a, 0.0})[0] - a);
    const double dist = std::abs(z[0] - a);
    CHECK(move <= b.move_bound * (1.0 + 1e-12) + 1e-12);
    CHECK(dist <= b.distance_bound * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("spaces measure distances and membership") {
  CHECK(Space::real_line().distance({1.0, 0.0}, {-2.0, 0.0}) == 3.0);
  CHECK(Space::unit_disk().contains({0.5, 0.5}));
  CHECK_FALSE(Space::unit_disk().contains({1.0, 0.5}));
  CHECK(Space::interval(0.0, 1.0).farthest_from({0.25, 0.0}) == 0.75);
  CHECK(std::isinf(Space::plane().farthest_from({0.0, 0.0})));
  CHECK(Space::plane().dimension() == 2);
  CHECK(Space::interval(0.0, 1.0).dimension() == 1);
}

TEST_CASE("operator norm of diagonal and rotation matrices") {
  CHECK(operator_norm({0.5, 0.0, 0.0, 0.25}) == Approx(0.5));
  const double t = 0.7;
  CHECK(operator_norm({0.3 * std::cos(t), -0.3 * std::sin(t), 0.3 * std::sin(t), 0.3 * std::cos(t)}) ==
        Approx(0.3));
  CHECK(operator_norm({0.0, 1.0, 0.0, 0.0}) == Approx(1.0));
}

TEST_CASE("geometric envelope tails") {
  const auto env = Envelope::geometric(2.0, 0.5);
  CHECK(env.term_bound(3) == Approx(0.25));
  CHECK(env.tail(3) == Approx(0.5));
}

TEST_CASE("power-law envelope tail dominates the term sum") {
  const auto env = Envelope::power_law(1.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 40u}) {
    double sum = 0.0;
    for (std::size_t j = n; j < 200000; ++j) sum += env.term_bound(j);
    CHECK(sum <= env.tail(n));
  }
}

TEST_CASE("envelope audit names the first violating level") {
  const auto env = Envelope::geometric(1.0, 0.5);
  const auto ok = audit_terms(env, {0.5, 0.25, 0.1});
  CHECK(ok.ok);
  const auto bad = audit_terms(env, {0.5, 0.3, 0.1});
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_violation == 2);
}
