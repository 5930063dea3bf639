#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "error.hpp"

namespace mcf {

// A projective point: n real coordinates, the homogeneous coordinate x_0 = 1
// is implicit and sits at matrix index 0.
using Point = std::vector<double>;

// Square integer matrix with arbitrary-precision entries, row-major.
// Carrier of every branch matrix, inverse branch and intertwiner; all
// arithmetic on it is exact.
class IntMatrix {
 public:
  explicit IntMatrix(int dim);
  static IntMatrix identity(int dim);
  static IntMatrix from_rows(
      std::initializer_list<std::initializer_list<long>> rows);

  int dim() const { return dim_; }
  const mpz_class& at(int i, int j) const { return e_[idx(i, j)]; }
  mpz_class& at(int i, int j) { return e_[idx(i, j)]; }

  bool operator==(const IntMatrix& o) const {
    return dim_ == o.dim_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  mpz_class determinant() const;  // exact, fraction-free elimination
  bool is_unimodular() const;

  std::string to_string() const;
  std::vector<long long> rows_i64() const;  // throws if an entry overflows

 private:
  int idx(int i, int j) const { return i * dim_ + j; }
  int dim_;
  std::vector<mpz_class> e_;
};

// Projective linear operations on exact integer matrices.
IntMatrix compose(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);
IntMatrix inverse(const IntMatrix& m);  // exact; throws not_unimodular

// Fractional-linear action: y_i = (A_{i0} + sum_j A_{ij} x_j) / (A_{00} + ...).
Point act(const IntMatrix& m, const Point& x);

// |A_00 + sum A_0j x_j|, the homogeneous denominator at x.
double denominator(const IntMatrix& m, const Point& x);

// Jacobian of the map act(m, .) at x for unimodular m: |denominator|^-(n+1).
double jacobian(const IntMatrix& m, const Point& x);

// Double-precision view of an IntMatrix for Monte Carlo hot loops.
// Conversion checks that every entry is exactly representable.
struct LinearMapD {
  int dim = 0;
  std::vector<double> a;  // row-major

  static LinearMapD from(const IntMatrix& m);

  double denom(const Point& x) const {
    double d = a[0];
    for (int j = 1; j < dim; ++j) d += a[j] * x[j - 1];
    return d;
  }
  // Returns the signed denominator; y is valid only if it is nonzero.
  double apply(const Point& x, Point& y) const {
    const double d = denom(x);
    if (d == 0.0) return 0.0;
    y.resize(dim - 1);
    for (int i = 1; i < dim; ++i) {
      double num = a[i * dim];
      for (int j = 1; j < dim; ++j) num += a[i * dim + j] * x[j - 1];
      y[i - 1] = num / d;
    }
    return d;
  }
  double jacobian(const Point& x) const {
    double d = denom(x);
    double p = 1.0;
    d = d < 0 ? -d : d;
    for (int k = 0; k < dim; ++k) p *= d;
    return 1.0 / p;
  }
};

}  // namespace mcf
