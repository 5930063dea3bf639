#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rng.hpp"

namespace mcf {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Axis {
  double lo = 0.0;
  double hi = kInf;  // +inf allowed
};

// Domain of a fibred system, either a simplex (all primal domains here) or a
// coordinate box, possibly with infinite upper bounds (all dual domains).
//
// sample() draws a point and returns an importance weight w such that
// E[f(pt) * w] equals the integral of f over the domain: uniform/volume for
// simplices and bounded boxes, a (1+y)^(-3/2) tail density on infinite axes.
class DomainSpec {
 public:
  using Membership = std::function<bool(const Point&)>;

  static DomainSpec simplex(std::vector<Point> vertices, Membership contains,
                            std::string description);
  static DomainSpec box(std::vector<Axis> axes, std::string description);

  enum class Kind { simplex, box };
  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool bounded() const { return bounded_; }
  double volume() const;  // bounded domains only

  bool contains(const Point& x, double tol = 1e-9) const;

  double sample(Rng& rng, Point& out) const;

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::string& description() const { return description_; }

 private:
  DomainSpec() = default;

  Kind kind_ = Kind::simplex;
  int dim_ = 0;
  bool bounded_ = true;
  double volume_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<Axis> axes_;
  Membership contains_;
  std::string description_;
};

// Volume of the simplex spanned by m+1 vertices in R^m.
double simplex_volume(const std::vector<Point>& vertices);

// Uniform barycentric weights on a k-vertex simplex (spacings of sorted
// uniforms, i.e. Dirichlet(1,...,1)).
void dirichlet_weights(Rng& rng, int k, std::vector<double>& out);

// The order simplex {1 >= x_1 >= ... >= x_n >= 0} used by every primal map.
DomainSpec order_simplex(int n);

}  // namespace mcf
