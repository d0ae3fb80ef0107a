#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causanet/error.hpp"
#include "causanet/rng.hpp"

namespace causanet {

// A named membership function over the [0,1] probability axis. Supported
// shapes are crisp points and piecewise-linear triangles / trapezoids whose
// breakpoints are ordered and confined to [0,1].
class FuzzyLabel {
 public:
  enum class Shape { crisp, triangular, trapezoidal };

  static FuzzyLabel crisp(std::string name, double v);
  static FuzzyLabel triangular(std::string name, double a, double b, double c);
  static FuzzyLabel trapezoidal(std::string name, double a, double b, double c,
                                double d);

  const std::string& name() const { return name_; }
  Shape shape() const { return shape_; }

  // Breakpoints: crisp -> {v}, triangular -> {a,b,c}, trapezoidal -> {a,b,c,d}.
  std::span<const double> points() const;

  // Piecewise-linear evaluation; crisp labels are 1 at the point, 0 elsewhere.
  double membership(double x) const;

  // Mass centroid of the area under the membership function. Throws on
  // zero-mass shapes (use crisp for point labels).
  double centroid() const;

  // {x : membership(x) >= alpha}, an interval for the supported shapes.
  // alpha must lie in (0,1].
  std::pair<double, double> alpha_cut(double alpha) const;

  // One draw from the normalized membership function treated as a density.
  double sample(RandomSource& rng) const;

  bool operator==(const FuzzyLabel&) const = default;

 private:
  FuzzyLabel(std::string name, Shape shape, std::array<double, 4> p)
      : name_(std::move(name)), shape_(shape), points_(p) {}

  std::string name_;
  Shape shape_ = Shape::crisp;
  std::array<double, 4> points_{};
};

// Lexicon available without a DSL definition: unlikely, possible,
// highly_probable, almost_certain. Documents may redefine these names.
const std::vector<FuzzyLabel>& builtin_labels();
const FuzzyLabel* find_builtin_label(std::string_view name);

enum class TNormKind { godel, product, lukasiewicz };

// godel: min / max; product: a*b / a+b-a*b; lukasiewicz: max(a+b-1,0) /
// min(a+b,1). Inputs must lie in [0,1].
double tnorm(TNormKind kind, double a, double b);
double tconorm(TNormKind kind, double a, double b);

// Probability of a fuzzy event over a discrete outcome space: the expectation
// of the membership degrees under the pmf. Both spans are indexed by outcome;
// the pmf must sum to 1 within 1e-9.
double fuzzy_event_probability(std::span<const double> memberships,
                               std::span<const double> pmf);

}  // namespace causanet
