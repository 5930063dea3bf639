#include "matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace mcf {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::singular_point: return "SingularPoint";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_unimodular: return "NotUnimodular";
    case ErrorCode::unknown_algorithm: return "UnknownAlgorithm";
    case ErrorCode::unsupported_dimension: return "UnsupportedDimension";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::boundary_point: return "BoundaryPoint";
    case ErrorCode::empty_cylinder: return "EmptyCylinder";
    case ErrorCode::non_full_system: return "NonFullSystem";
    case ErrorCode::divergent_integral: return "DivergentIntegral";
    case ErrorCode::no_known_intertwiner: return "NoKnownIntertwiner";
    case ErrorCode::search_space_exhausted: return "SearchSpaceExhausted";
    case ErrorCode::bad_digit_string: return "BadDigitString";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::io_error: return "IoError";
  }
  return "Error";
}

IntMatrix::IntMatrix(int dim) : dim_(dim), e_(dim * dim) {
  if (dim < 2) fail(ErrorCode::invalid_argument, "matrix side must be >= 2");
}

IntMatrix IntMatrix::identity(int dim) {
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(
    std::initializer_list<std::initializer_list<long>> rows) {
  const int d = static_cast<int>(rows.size());
  IntMatrix m(d);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != d)
      fail(ErrorCode::dimension_mismatch, "ragged matrix literal");
    int j = 0;
    for (long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

// Bareiss fraction-free elimination; every division is exact.
mpz_class IntMatrix::determinant() const {
  const int d = dim_;
  std::vector<mpz_class> a = e_;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < d - 1; ++k) {
    if (a[k * d + k] == 0) {
      int p = -1;
      for (int r = k + 1; r < d; ++r)
        if (a[r * d + k] != 0) { p = r; break; }
      if (p < 0) return 0;
      for (int j = 0; j < d; ++j) std::swap(a[k * d + j], a[p * d + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i) {
      for (int j = k + 1; j < d; ++j) {
        mpz_class t = a[i * d + j] * a[k * d + k] - a[i * d + k] * a[k * d + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i * d + j] = t;
      }
      a[i * d + k] = 0;
    }
    prev = a[k * d + k];
  }
  return sign > 0 ? a[d * d - 1] : mpz_class(-a[d * d - 1]);
}

bool IntMatrix::is_unimodular() const {
  const mpz_class det = determinant();
  return det == 1 || det == -1;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<long long> IntMatrix::rows_i64() const {
  std::vector<long long> out;
  out.reserve(e_.size());
  for (const auto& v : e_) {
    if (!v.fits_slong_p())
      fail(ErrorCode::invalid_argument, "matrix entry exceeds 64 bits");
    out.push_back(v.get_si());
  }
  return out;
}

IntMatrix compose(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim())
    fail(ErrorCode::dimension_mismatch, "compose: dimension mismatch");
  const int d = a.dim();
  IntMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const mpz_class& s = a.at(i, k);
      if (s == 0) continue;
      for (int j = 0; j < d; ++j) out.at(i, j) += s * b.at(k, j);
    }
  return out;
}

IntMatrix transpose(const IntMatrix& m) {
  const int d = m.dim();
  IntMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.at(i, j) = m.at(j, i);
  return out;
}

// Exact inverse through rational Gauss-Jordan; defined only for |det| = 1,
// in which case the result is integral (the adjugate up to sign).
IntMatrix inverse(const IntMatrix& m) {
  const mpz_class det = m.determinant();
  if (det != 1 && det != -1)
    fail(ErrorCode::not_unimodular,
         "inverse requires |det| = 1, got det = " + det.get_str());
  const int d = m.dim();
  std::vector<mpq_class> a(d * 2 * d);
  const int w = 2 * d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[i * w + j] = m.at(i, j);
    a[i * w + d + i] = 1;
  }
  for (int c = 0; c < d; ++c) {
    int p = -1;
    for (int r = c; r < d; ++r)
      if (a[r * w + c] != 0) { p = r; break; }
    for (int j = 0; j < w; ++j) std::swap(a[c * w + j], a[p * w + j]);
    const mpq_class pivot = a[c * w + c];
    for (int j = 0; j < w; ++j) a[c * w + j] /= pivot;
    for (int r = 0; r < d; ++r) {
      if (r == c || a[r * w + c] == 0) continue;
      const mpq_class f = a[r * w + c];
      for (int j = 0; j < w; ++j) a[r * w + j] -= f * a[c * w + j];
    }
  }
  IntMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      mpq_class v = a[i * w + d + j];
      v.canonicalize();
      if (v.get_den() != 1)
        fail(ErrorCode::not_unimodular, "inverse is not integral");
      out.at(i, j) = v.get_num();
    }
  return out;
}

namespace {
constexpr double kDenomEps = 1e-100;
}

double denominator(const IntMatrix& m, const Point& x) {
  if (static_cast<int>(x.size()) != m.dim() - 1)
    fail(ErrorCode::dimension_mismatch, "point/matrix dimension mismatch");
  double d = m.at(0, 0).get_d();
  for (int j = 1; j < m.dim(); ++j) d += m.at(0, j).get_d() * x[j - 1];
  return d;
}

Point act(const IntMatrix& m, const Point& x) {
  const double den = denominator(m, x);
  if (std::abs(den) < kDenomEps)
    fail(ErrorCode::singular_point, "projective denominator vanishes");
  const int d = m.dim();
  Point y(d - 1);
  for (int i = 1; i < d; ++i) {
    double num = m.at(i, 0).get_d();
    for (int j = 1; j < d; ++j) num += m.at(i, j).get_d() * x[j - 1];
    y[i - 1] = num / den;
  }
  return y;
}

double jacobian(const IntMatrix& m, const Point& x) {
  if (!m.is_unimodular())
    fail(ErrorCode::not_unimodular, "jacobian formula requires |det| = 1");
  const double den = std::abs(denominator(m, x));
  if (den < kDenomEps)
    fail(ErrorCode::singular_point, "projective denominator vanishes");
  return std::pow(den, -m.dim());
}

LinearMapD LinearMapD::from(const IntMatrix& m) {
  LinearMapD out;
  out.dim = m.dim();
  out.a.resize(out.dim * out.dim);
  for (int i = 0; i < out.dim; ++i)
    for (int j = 0; j < out.dim; ++j) {
      const mpz_class& v = m.at(i, j);
      const double dv = v.get_d();
      if (mpz_cmp_d(v.get_mpz_t(), dv) != 0)
        fail(ErrorCode::invalid_argument,
             "matrix entry not exactly representable in double");
      out.a[i * out.dim + j] = dv;
    }
  return out;
}

}  // namespace mcf
