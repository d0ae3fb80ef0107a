#include "causanet/fuzzy.hpp"

#include <algorithm>
#include <cmath>

namespace causanet {

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(std::string(what) + " must lie in [0,1]");
  }
}

}  // namespace

FuzzyLabel FuzzyLabel::crisp(std::string name, double v) {
  check_unit(v, "crisp value");
  return FuzzyLabel(std::move(name), Shape::crisp, {v, v, v, v});
}

FuzzyLabel FuzzyLabel::triangular(std::string name, double a, double b,
                                  double c) {
  check_unit(a, "breakpoint");
  check_unit(b, "breakpoint");
  check_unit(c, "breakpoint");
  if (!(a <= b && b <= c)) throw Error("triangular breakpoints out of order");
  return FuzzyLabel(std::move(name), Shape::triangular, {a, b, c, c});
}

FuzzyLabel FuzzyLabel::trapezoidal(std::string name, double a, double b,
                                   double c, double d) {
  check_unit(a, "breakpoint");
  check_unit(b, "breakpoint");
  check_unit(c, "breakpoint");
  check_unit(d, "breakpoint");
  if (!(a <= b && b <= c && c <= d)) {
    throw Error("trapezoidal breakpoints out of order");
  }
  return FuzzyLabel(std::move(name), Shape::trapezoidal, {a, b, c, d});
}

std::span<const double> FuzzyLabel::points() const {
  switch (shape_) {
    case Shape::crisp:
      return {points_.data(), 1};
    case Shape::triangular:
      return {points_.data(), 3};
    case Shape::trapezoidal:
      return {points_.data(), 4};
  }
  return {};
}

double FuzzyLabel::membership(double x) const {
  check_unit(x, "membership argument");
  const auto& p = points_;
  switch (shape_) {
    case Shape::crisp:
      return x == p[0] ? 1.0 : 0.0;
    case Shape::triangular: {
      double a = p[0], b = p[1], c = p[2];
      if (x < a || x > c) return 0.0;
      if (x == b) return 1.0;
      if (x < b) return (x - a) / (b - a);
      return (c - x) / (c - b);
    }
    case Shape::trapezoidal: {
      double a = p[0], b = p[1], c = p[2], d = p[3];
      if (x < a || x > d) return 0.0;
      if (x >= b && x <= c) return 1.0;
      if (x < b) return (x - a) / (b - a);
      return (d - x) / (d - c);
    }
  }
  return 0.0;
}

double FuzzyLabel::centroid() const {
  const auto& p = points_;
  switch (shape_) {
    case Shape::crisp:
      return p[0];
    case Shape::triangular: {
      double a = p[0], b = p[1], c = p[2];
      if (c == a) throw Error("centroid of zero-mass label '" + name_ + "'");
      // centroid of the triangle (a,0)-(b,1)-(c,0)
      return (a + b + c) / 3.0;
    }
    case Shape::trapezoidal: {
      double a = p[0], b = p[1], c = p[2], d = p[3];
      double rise_area = (b - a) / 2.0;
      double core_area = c - b;
      double fall_area = (d - c) / 2.0;
      double total = rise_area + core_area + fall_area;
      if (total == 0.0) {
        throw Error("centroid of zero-mass label '" + name_ + "'");
      }
      double moment = rise_area * (a + 2.0 * b) / 3.0 +
                      core_area * (b + c) / 2.0 +
                      fall_area * (2.0 * c + d) / 3.0;
      return moment / total;
    }
  }
  return 0.0;
}

std::pair<double, double> FuzzyLabel::alpha_cut(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must lie in (0,1]");
  const auto& p = points_;
  switch (shape_) {
    case Shape::crisp:
      return {p[0], p[0]};
    case Shape::triangular:
      return {p[0] + alpha * (p[1] - p[0]), p[2] - alpha * (p[2] - p[1])};
    case Shape::trapezoidal:
      return {p[0] + alpha * (p[1] - p[0]), p[3] - alpha * (p[3] - p[2])};
  }
  return {0.0, 0.0};
}

double FuzzyLabel::sample(RandomSource& rng) const {
  const auto& p = points_;
  if (shape_ == Shape::crisp) return p[0];
  double lo = p[0];
  double hi = shape_ == Shape::triangular ? p[2] : p[3];
  if (hi == lo) return lo;
  // Rejection against the unit-height envelope; the peak of every supported
  // shape is 1, so acceptance probability is area/(hi-lo) >= 1/2 for
  // triangles and better for trapezoids.
  for (;;) {
    double x = rng.uniform(lo, hi);
    double y = rng.uniform01();
    if (y < membership(x)) return x;
  }
}

const std::vector<FuzzyLabel>& builtin_labels() {
  static const std::vector<FuzzyLabel> lexicon = {
      FuzzyLabel::trapezoidal("unlikely", 0.0, 0.0, 0.1, 0.3),
      FuzzyLabel::triangular("possible", 0.3, 0.5, 0.7),
      FuzzyLabel::triangular("highly_probable", 0.6, 0.8, 1.0),
      FuzzyLabel::trapezoidal("almost_certain", 0.8, 0.95, 1.0, 1.0),
  };
  return lexicon;
}

const FuzzyLabel* find_builtin_label(std::string_view name) {
  for (const auto& label : builtin_labels()) {
    if (label.name() == name) return &label;
  }
  return nullptr;
}

double tnorm(TNormKind kind, double a, double b) {
  check_unit(a, "tnorm argument");
  check_unit(b, "tnorm argument");
  switch (kind) {
    case TNormKind::godel:
      return std::min(a, b);
    case TNormKind::product:
      return a * b;
    case TNormKind::lukasiewicz:
      return std::max(a + b - 1.0, 0.0);
  }
  return 0.0;
}

double tconorm(TNormKind kind, double a, double b) {
  check_unit(a, "tconorm argument");
  check_unit(b, "tconorm argument");
  switch (kind) {
    case TNormKind::godel:
      return std::max(a, b);
    case TNormKind::product:
      return a + b - a * b;
    case TNormKind::lukasiewicz:
      return std::min(a + b, 1.0);
  }
  return 0.0;
}

double fuzzy_event_probability(std::span<const double> memberships,
                               std::span<const double> pmf) {
  if (memberships.size() != pmf.size()) {
    throw Error("fuzzy_event_probability: mismatched outcome domains");
  }
  double total = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw Error("fuzzy_event_probability: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error("fuzzy_event_probability: pmf does not sum to 1");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    check_unit(memberships[i], "membership degree");
    acc += memberships[i] * pmf[i];
  }
  return acc;
}

}  // namespace causanet
