#include "domain.hpp"

#include <algorithm>
#include <cmath>

namespace mcf {

double simplex_volume(const std::vector<Point>& vertices) {
  const int n = static_cast<int>(vertices.size()) - 1;
  // |det(v_i - v_0)| / n!
  std::vector<double> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = vertices[i + 1][j] - vertices[0][j];
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[p * n + c])) p = r;
    if (m[p * n + c] == 0.0) return 0.0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m[c * n + j], m[p * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (int j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return std::abs(det) / fact;
}

void dirichlet_weights(Rng& rng, int k, std::vector<double>& out) {
  out.resize(k);
  if (k == 1) { out[0] = 1.0; return; }
  // spacings of k-1 sorted uniforms partition [0,1] into k weights
  for (int i = 0; i + 1 < k; ++i) out[i] = rng.uniform();
  std::sort(out.begin(), out.end() - 1);
  double prev = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    const double u = out[i];
    out[i] = u - prev;
    prev = u;
  }
  out[k - 1] = 1.0 - prev;
}

DomainSpec DomainSpec::simplex(std::vector<Point> vertices, Membership contains,
                               std::string description) {
  DomainSpec d;
  d.kind_ = Kind::simplex;
  d.dim_ = static_cast<int>(vertices.front().size());
  d.bounded_ = true;
  d.volume_ = simplex_volume(vertices);
  d.vertices_ = std::move(vertices);
  d.contains_ = std::move(contains);
  d.description_ = std::move(description);
  return d;
}

DomainSpec DomainSpec::box(std::vector<Axis> axes, std::string description) {
  DomainSpec d;
  d.kind_ = Kind::box;
  d.dim_ = static_cast<int>(axes.size());
  d.bounded_ = std::all_of(axes.begin(), axes.end(),
                           [](const Axis& a) { return std::isfinite(a.hi); });
  if (d.bounded_) {
    d.volume_ = 1.0;
    for (const Axis& a : axes) d.volume_ *= a.hi - a.lo;
  }
  d.axes_ = std::move(axes);
  d.description_ = std::move(description);
  return d;
}

double DomainSpec::volume() const {
  if (!bounded_) fail(ErrorCode::invalid_argument, "volume of unbounded domain");
  return volume_;
}

bool DomainSpec::contains(const Point& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  if (kind_ == Kind::simplex) return contains_(x);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] < axes_[i].lo - tol) return false;
    if (std::isfinite(axes_[i].hi) && x[i] > axes_[i].hi + tol) return false;
  }
  return true;
}

double DomainSpec::sample(Rng& rng, Point& out) const {
  out.assign(dim_, 0.0);
  if (kind_ == Kind::simplex) {
    thread_local std::vector<double> lam;
    dirichlet_weights(rng, static_cast<int>(vertices_.size()), lam);
    for (size_t v = 0; v < vertices_.size(); ++v)
      for (int j = 0; j < dim_; ++j) out[j] += lam[v] * vertices_[v][j];
    return volume_;
  }
  double w = 1.0;
  for (int i = 0; i < dim_; ++i) {
    const Axis& a = axes_[i];
    const double t = rng.uniform_pos();
    if (std::isfinite(a.hi)) {
      out[i] = a.lo + t * (a.hi - a.lo);
      w *= a.hi - a.lo;
    } else {
      // density q(y) = (1/2)(1+y)^(-3/2) on [0, inf); heavy enough a tail to
      // keep pulled-back dual integrands square-integrable for n <= 3
      const double s = 1.0 / (1.0 - t);
      const double y = s * s - 1.0;
      out[i] = a.lo + y;
      w *= 2.0 * s * s * s;
    }
  }
  return w;
}

DomainSpec order_simplex(int n) {
  std::vector<Point> verts(n + 1, Point(n, 0.0));
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < k; ++j) verts[k][j] = 1.0;
  auto member = [n](const Point& x) {
    const double tol = 1e-9;
    if (x[0] > 1.0 + tol) return false;
    for (int i = 0; i + 1 < n; ++i)
      if (x[i + 1] > x[i] + tol) return false;
    return x[n - 1] >= -tol;
  };
  return DomainSpec::simplex(std::move(verts), member,
                             "{1 >= x1 >= ... >= xn >= 0}");
}

}  // namespace mcf
