#pragma once

#include <cstdint>
#include <string>

#include "system.hpp"

namespace mcf {

enum class McMethod { change_of_variables = 0, direct_polytope = 1 };

struct McParams {
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000000;
  int workers = 1;
  McMethod method = McMethod::change_of_variables;
  bool antithetic = false;
  double z_crit = 5.0;
};

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  McMethod method = McMethod::change_of_variables;
};

struct SymmetryVerdict {
  MeasureEstimate forward;
  MeasureEstimate reversed;
  double z = 0.0;
  bool violated = false;  // z > z_crit
  bool warning = false;   // 3 < z <= z_crit
  const char* verdict() const { return violated ? "violated" : "consistent"; }
};

// The duality kernel K(x,y) = (1 + <x,y>)^-(n+1).
double kernel(const Point& x, const Point& y);

// Exact integral of K(x, .) over a coordinate box via the alternating corner
// sum; infinite upper bounds drop their corners, axes with x_i below 1e-9
// integrate through the degenerate limit. Throws DivergentIntegral when an
// infinite axis meets x_i = 0.
double kernel_box_integral(const Point& x, const DomainSpec& box);

// Unnormalized invariant density h(x) = integral of K(x, .) over the dual
// domain. Requires a full system with a box dual domain.
double density(const FibredSystem& s, const Point& x);

// Monte Carlo estimate of the invariant measure of the cylinder B(digits).
// An empty digit string measures the whole domain.
MeasureEstimate cylinder_measure(const FibredSystem& s, const DigitString& digits,
                                 const McParams& params);

// The polar measure: the cylinder measure of the reversed digit string.
MeasureEstimate polar_measure(const FibredSystem& s, const DigitString& digits,
                              const McParams& params);

SymmetryVerdict symmetry_test(const FibredSystem& s, const DigitString& digits,
                              const McParams& params);

// |K(Vx,y) w(x) - K(x,V#y) w#(y)| for V = V(k_1..k_s), V# = V#(k_s..k_1).
double kernel_duality_residual(const FibredSystem& s, const DigitString& digits,
                               const Point& x, const Point& y);

}  // namespace mcf
