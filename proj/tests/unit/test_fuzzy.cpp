#include "causanet/fuzzy.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"

using namespace causanet;

namespace {

// Test-only numeric oracle: trapezoid-rule integration of x*mu and mu.
double centroid_by_quadrature(const FuzzyLabel& label, std::size_t points) {
  double num = 0.0, den = 0.0;
  double h = 1.0 / points;
  for (std::size_t i = 0; i <= points; ++i) {
    double x = i * h;
    double w = (i == 0 || i == points) ? 0.5 : 1.0;
    double mu = label.membership(x);
    num += w * x * mu;
    den += w * mu;
  }
  return num / den;
}

const double kGrid = 0.05;

}  // namespace

TEST_CASE("piecewise-linear membership evaluation") {
  auto tri = FuzzyLabel::triangular("hp", 0.6, 0.8, 1.0);
  CHECK(tri.membership(0.8) == doctest::Approx(1.0));
  CHECK(tri.membership(0.7) == doctest::Approx(0.5));
  CHECK(tri.membership(0.6) == doctest::Approx(0.0));
  CHECK(tri.membership(1.0) == doctest::Approx(0.0));
  CHECK(tri.membership(0.3) == 0.0);

  auto trap = FuzzyLabel::trapezoidal("unl", 0.0, 0.0, 0.2, 0.4);
  // direct formula oracle for the falling segment: (d-x)/(d-c)
  CHECK(trap.membership(0.3) == doctest::Approx((0.4 - 0.3) / (0.4 - 0.2)));
  CHECK(trap.membership(0.3) == doctest::Approx(0.5));
  CHECK(trap.membership(0.1) == doctest::Approx(1.0));

  auto crisp = FuzzyLabel::crisp("c", 0.3);
  CHECK(crisp.membership(0.3) == 1.0);
  CHECK(crisp.membership(0.31) == 0.0);

  CHECK_THROWS_AS(tri.membership(1.5), Error);
  CHECK_THROWS_AS(tri.membership(-0.1), Error);
}

TEST_CASE("label constructors reject bad breakpoints") {
  CHECK_THROWS_AS(FuzzyLabel::triangular("x", 0.8, 0.6, 1.0), Error);
  CHECK_THROWS_AS(FuzzyLabel::trapezoidal("x", 0.0, 0.5, 0.4, 1.0), Error);
  CHECK_THROWS_AS(FuzzyLabel::crisp("x", 1.5), Error);
}

TEST_CASE("centroid defuzzification") {
  CHECK(FuzzyLabel::triangular("hp", 0.6, 0.8, 1.0).centroid() ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(FuzzyLabel::crisp("c", 0.3).centroid() == 0.3);

  auto trap = FuzzyLabel::trapezoidal("t", 0.5, 0.7, 0.9, 1.0);
  CHECK(trap.centroid() ==
        doctest::Approx(centroid_by_quadrature(trap, 1000000)).epsilon(1e-9));

  auto skew = FuzzyLabel::triangular("s", 0.0, 0.1, 0.7);
  CHECK(skew.centroid() ==
        doctest::Approx(centroid_by_quadrature(skew, 1000000)).epsilon(1e-9));

  CHECK_THROWS_AS(FuzzyLabel::triangular("zero", 0.5, 0.5, 0.5).centroid(),
                  Error);
}

TEST_CASE("centroid lies within the support") {
  RandomSource rng(3);
  for (int i = 0; i < 200; ++i) {
    double v[4] = {rng.uniform01(), rng.uniform01(), rng.uniform01(),
                   rng.uniform01()};
    std::sort(v, v + 4);
    if (v[3] == v[0]) continue;
    auto label = FuzzyLabel::trapezoidal("r", v[0], v[1], v[2], v[3]);
    double centroid = label.centroid();
    CHECK(centroid >= v[0]);
    CHECK(centroid <= v[3]);
  }
}

TEST_CASE("alpha cuts") {
  auto tri = FuzzyLabel::triangular("hp", 0.6, 0.8, 1.0);
  auto core = tri.alpha_cut(1.0);
  CHECK(core.first == doctest::Approx(0.8));
  CHECK(core.second == doctest::Approx(0.8));
  auto half = tri.alpha_cut(0.5);
  CHECK(half.first == doctest::Approx(0.7));
  CHECK(half.second == doctest::Approx(0.9));

  auto trap = FuzzyLabel::trapezoidal("t", 0.1, 0.3, 0.5, 0.9);
  auto support = trap.alpha_cut(1e-12);
  CHECK(support.first == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(support.second == doctest::Approx(0.9).epsilon(1e-9));

  CHECK_THROWS_AS(tri.alpha_cut(0.0), Error);
  CHECK_THROWS_AS(tri.alpha_cut(1.1), Error);

  auto crisp = FuzzyLabel::crisp("c", 0.4);
  CHECK(crisp.alpha_cut(0.5) == std::pair{0.4, 0.4});
}

TEST_CASE("density sampling stays inside the support") {
  auto tri = FuzzyLabel::triangular("hp", 0.6, 0.8, 1.0);
  RandomSource rng(5);
  for (int i = 0; i < 2000; ++i) {
    double x = tri.sample(rng);
    CHECK(x >= 0.6);
    CHECK(x <= 1.0);
  }
  auto crisp = FuzzyLabel::crisp("c", 0.25);
  CHECK(crisp.sample(rng) == 0.25);
}

TEST_CASE("t-norm and t-conorm values quoted or forced") {
  CHECK(tnorm(TNormKind::godel, 0.3, 0.7) == doctest::Approx(0.3));
  CHECK(tnorm(TNormKind::lukasiewicz, 0.3, 0.7) == doctest::Approx(0.0));
  CHECK(tconorm(TNormKind::product, 0.3, 0.7) == doctest::Approx(0.79));
  CHECK_THROWS_AS(tnorm(TNormKind::godel, -0.1, 0.5), Error);
  CHECK_THROWS_AS(tconorm(TNormKind::product, 0.5, 1.2), Error);
}

TEST_CASE("t-norm axioms hold on the 0.05 grid for all kinds") {
  const TNormKind kinds[] = {TNormKind::godel, TNormKind::product,
                             TNormKind::lukasiewicz};
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * kGrid);
  const double tol = 1e-12;
  for (TNormKind kind : kinds) {
    for (double a : grid) {
      CHECK(std::abs(tnorm(kind, a, 1.0) - a) < tol);     // identity 1
      CHECK(std::abs(tconorm(kind, a, 0.0) - a) < tol);   // identity 0
      for (double b : grid) {
        CHECK(std::abs(tnorm(kind, a, b) - tnorm(kind, b, a)) < tol);
        CHECK(std::abs(tconorm(kind, a, b) - tconorm(kind, b, a)) < tol);
        // De Morgan with n(x) = 1-x
        CHECK(std::abs(tconorm(kind, a, b) -
                       (1.0 - tnorm(kind, 1.0 - a, 1.0 - b))) < tol);
        for (double c : grid) {
          CHECK(std::abs(tnorm(kind, a, tnorm(kind, b, c)) -
                         tnorm(kind, tnorm(kind, a, b), c)) < 1e-12);
          if (b <= c) {
            CHECK(tnorm(kind, a, b) <= tnorm(kind, a, c) + tol);
          }
        }
      }
    }
  }
  // pointwise ordering of the families
  for (double a : grid) {
    for (double b : grid) {
      CHECK(tnorm(TNormKind::lukasiewicz, a, b) <=
            tnorm(TNormKind::product, a, b) + 1e-12);
      CHECK(tnorm(TNormKind::product, a, b) <=
            tnorm(TNormKind::godel, a, b) + 1e-12);
    }
  }
}

TEST_CASE("fuzzy event probability is the expectation of the membership") {
  std::vector<double> uniform = {0.25, 0.25, 0.25, 0.25};
  CHECK(fuzzy_event_probability(std::vector<double>{1, 1, 1, 1}, uniform) ==
        doctest::Approx(1.0));
  CHECK(fuzzy_event_probability(std::vector<double>{0, 0, 0, 0}, uniform) ==
        doctest::Approx(0.0));

  // direct sum oracle: (0 + 1/3 + 2/3 + 1) / 4
  std::vector<double> mu = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  double oracle = 0.0;
  for (double v : mu) oracle += v * 0.25;
  CHECK(fuzzy_event_probability(mu, uniform) == doctest::Approx(oracle));
  CHECK(fuzzy_event_probability(mu, uniform) == doctest::Approx(0.5));

  CHECK_THROWS_AS(
      fuzzy_event_probability(std::vector<double>{1.0}, uniform), Error);
  CHECK_THROWS_AS(fuzzy_event_probability(
                      mu, std::vector<double>{0.5, 0.5, 0.5, 0.5}),
                  Error);
}

TEST_CASE("fuzzy event probability is monotone and linear") {
  RandomSource rng(9);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> pmf(4), mu(4), mu_hi(4);
    double total = 0.0;
    for (auto& p : pmf) total += (p = rng.uniform01() + 0.01);
    for (auto& p : pmf) p /= total;
    // renormalize exactly enough for the 1e-9 gate
    for (std::size_t i = 0; i < 4; ++i) {
      mu[i] = rng.uniform01();
      mu_hi[i] = std::min(1.0, mu[i] + rng.uniform01() * (1.0 - mu[i]));
    }
    CHECK(fuzzy_event_probability(mu, pmf) <=
          fuzzy_event_probability(mu_hi, pmf) + 1e-12);

    // linearity in the pmf: p(a*f + (1-a)*g) = a*p(f) + (1-a)*p(g)
    std::vector<double> pmf2(4);
    total = 0.0;
    for (auto& p : pmf2) total += (p = rng.uniform01() + 0.01);
    for (auto& p : pmf2) p /= total;
    double alpha = rng.uniform01();
    std::vector<double> blend(4);
    for (std::size_t i = 0; i < 4; ++i) {
      blend[i] = alpha * pmf[i] + (1 - alpha) * pmf2[i];
    }
    double lhs = fuzzy_event_probability(mu, blend);
    double rhs = alpha * fuzzy_event_probability(mu, pmf) +
                 (1 - alpha) * fuzzy_event_probability(mu, pmf2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("builtin lexicon") {
  REQUIRE(find_builtin_label("highly_probable") != nullptr);
  CHECK(find_builtin_label("highly_probable")->centroid() ==
        doctest::Approx(0.8));
  CHECK(find_builtin_label("unlikely") != nullptr);
  CHECK(find_builtin_label("possible") != nullptr);
  CHECK(find_builtin_label("almost_certain") != nullptr);
  CHECK(find_builtin_label("nope") == nullptr);
}
