#include "measure.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <thread>

namespace mcf {

namespace {

constexpr double kAxisEps = 1e-9;     // degenerate-axis threshold
constexpr double kSingularEps = 1e-9; // cylinder-vertex singularity threshold
constexpr int kMaxAxes = 15;

double ipow_inv(double base, int e) {
  double p = 1.0;
  for (int i = 0; i < e; ++i) p *= base;
  return 1.0 / p;
}

inline void neumaier(double& sum, double& comp, double v) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

struct Acc {
  double sum = 0, sumc = 0, sq = 0, sqc = 0;
  std::uint64_t n = 0;
  void add(double t) {
    neumaier(sum, sumc, t);
    neumaier(sq, sqc, t * t);
    ++n;
  }
};

MeasureEstimate finalize(const std::vector<Acc>& accs, const McParams& p) {
  double sum = 0, sumc = 0, sq = 0, sqc = 0;
  std::uint64_t n = 0;
  for (const Acc& a : accs) {
    neumaier(sum, sumc, a.sum + a.sumc);
    neumaier(sq, sqc, a.sq + a.sqc);
    n += a.n;
  }
  MeasureEstimate e;
  e.samples = n;
  e.seed = p.seed;
  e.method = p.method;
  e.value = (sum + sumc) / static_cast<double>(n);
  if (n > 1) {
    double var = ((sq + sqc) - n * e.value * e.value) / static_cast<double>(n - 1);
    if (var < 0) var = 0;
    e.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return e;
}

// Pointwise density evaluator for the Monte Carlo loops. Box dual domains
// (all registry systems) use the closed form; a dual view integrates over the
// base simplex, estimated by pairing each call with one uniform draw.
class DensityEval {
 public:
  explicit DensityEval(const FibredSystem& s) : dual_(&s.dual_domain()) {
    closed_ = dual_->kind() == DomainSpec::Kind::box;
  }
  bool closed_form() const { return closed_; }
  double operator()(const Point& x, Rng& rng) const {
    if (closed_) return kernel_box_integral(x, *dual_);
    thread_local Point z;
    const double w = dual_->sample(rng, z);
    return kernel(x, z) * w;
  }

 private:
  const DomainSpec* dual_;
  bool closed_ = false;
};

// The density carries a 1/x_i factor for every dual-domain axis with an
// infinite bound. The integral over the cylinder simplex diverges when the
// closure meets such a hyperplane in more than a point (two vertices on one
// singular hyperplane) or pinches into a corner of several singular
// hyperplanes at once; a single-vertex touch of one hyperplane stays finite
// because the simplex collapses linearly there.
void check_cylinder_divergence(const FibredSystem& s, const IntMatrix& map) {
  if (s.domain().kind() != DomainSpec::Kind::simplex) return;
  const DomainSpec& dual = s.dual_domain();
  if (dual.kind() != DomainSpec::Kind::box) return;
  std::vector<int> singular;
  for (int i = 0; i < dual.dim(); ++i)
    if (!std::isfinite(dual.axes()[i].hi)) singular.push_back(i);
  if (singular.empty()) return;
  std::vector<int> per_axis(dual.dim(), 0);
  for (const Point& v : s.domain().vertices()) {
    const Point w = act(map, v);
    int axes_here = 0;
    for (int i : singular)
      if (w[i] < kSingularEps) {
        ++axes_here;
        ++per_axis[i];
      }
    if (axes_here >= 2)
      fail(ErrorCode::divergent_integral,
           s.name() + ": cylinder closure pinches a corner of the density "
                      "singularity");
  }
  for (int i : singular)
    if (per_axis[i] >= 2)
      fail(ErrorCode::divergent_integral,
           s.name() + ": cylinder closure touches the density singularity "
                      "{x_" + std::to_string(i + 1) + " = 0}");
}

IntMatrix cylinder_map_or_identity(const FibredSystem& s,
                                   const DigitString& digits, int* depth) {
  if (digits.empty()) {
    *depth = 0;
    return IntMatrix::identity(s.matrix_dim());
  }
  CylinderSpec c = cylinder(s, digits);
  *depth = c.depth;
  return c.map;
}

template <typename Term>
MeasureEstimate run_mc(const McParams& p, Term&& term) {
  if (p.samples == 0)
    fail(ErrorCode::invalid_argument, "sample count must be positive");
  const int workers = p.workers > 0 ? p.workers : 1;
  std::vector<Acc> accs(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](int w) {
    try {
      Rng rng = Rng::substream(p.seed, static_cast<std::uint64_t>(w));
      std::uint64_t count = p.samples / workers +
                            (static_cast<std::uint64_t>(w) < p.samples % workers);
      for (std::uint64_t i = 0; i < count; ++i) {
        double t;
        if (p.antithetic) {
          rng.tape_record();
          const double t1 = term(rng);
          rng.tape_replay();
          const double t2 = term(rng);
          rng.tape_off();
          t = 0.5 * (t1 + t2);
        } else {
          t = term(rng);
        }
        accs[w].add(t);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return finalize(accs, p);
}

}  // namespace

double kernel(const Point& x, const Point& y) {
  if (x.size() != y.size())
    fail(ErrorCode::dimension_mismatch, "kernel arguments differ in dimension");
  double dot = 1.0;
  for (size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  return ipow_inv(dot, static_cast<int>(x.size()) + 1);
}

double kernel_box_integral(const Point& x, const DomainSpec& box) {
  if (box.kind() != DomainSpec::Kind::box)
    fail(ErrorCode::invalid_argument, "kernel_box_integral needs a box");
  const int n = static_cast<int>(x.size());
  if (box.dim() != n)
    fail(ErrorCode::dimension_mismatch, "box/point dimension mismatch");
  if (n > kMaxAxes)
    fail(ErrorCode::invalid_argument, "dimension too large for corner sum");
  const auto& axes = box.axes();

  int active[kMaxAxes], finite[kMaxAxes];
  int m = 0, f = 0;
  double pref = 1.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] < kAxisEps) {
      if (!std::isfinite(axes[i].hi))
        fail(ErrorCode::divergent_integral,
             "kernel integral diverges: x_" + std::to_string(i + 1) +
                 " = 0 on an infinite axis");
      pref *= axes[i].hi - axes[i].lo;  // degenerate-limit factor
    } else {
      active[m++] = i;
      if (std::isfinite(axes[i].hi)) finite[f++] = i;
      pref /= x[i];
    }
  }
  const int p = n + 1;
  for (int j = 1; j <= m; ++j) pref /= static_cast<double>(p - j);
  const int expo = p - m;

  double base = 1.0;
  for (int k = 0; k < m; ++k) base += x[active[k]] * axes[active[k]].lo;

  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << f); ++mask) {
    double dot = base;
    for (int b = 0; b < f; ++b)
      if (mask >> b & 1u) {
        const int i = finite[b];
        dot += x[i] * (axes[i].hi - axes[i].lo);
      }
    const double term = ipow_inv(dot, expo);
    total += (std::popcount(mask) & 1u) ? -term : term;
  }
  return pref * total;
}

double density(const FibredSystem& s, const Point& x) {
  if (!s.is_full())
    fail(ErrorCode::non_full_system,
         s.name() + ": invariant density needs a full system");
  if (s.dual_domain().kind() != DomainSpec::Kind::box)
    fail(ErrorCode::invalid_argument,
         s.name() + ": density of a dual view has no closed form");
  if (!s.domain().contains(x))
    fail(ErrorCode::out_of_domain, s.name() + ": point outside the domain");
  return kernel_box_integral(x, s.dual_domain());
}

MeasureEstimate cylinder_measure(const FibredSystem& s,
                                 const DigitString& digits,
                                 const McParams& params) {
  if (!s.is_full())
    fail(ErrorCode::non_full_system,
         s.name() + ": cylinder measures need a full system");
  int depth = 0;
  const IntMatrix map = cylinder_map_or_identity(s, digits, &depth);
  check_cylinder_divergence(s, map);
  const DensityEval h(s);

  if (params.method == McMethod::direct_polytope) {
    if (s.domain().kind() != DomainSpec::Kind::simplex)
      fail(ErrorCode::invalid_argument,
           "direct-polytope needs a bounded simplex domain");
    std::vector<Point> verts;
    for (const Point& v : s.domain().vertices()) verts.push_back(act(map, v));
    const double vol = simplex_volume(verts);
    if (!(vol > 0))
      fail(ErrorCode::empty_cylinder, "cylinder polytope is degenerate");
    const int k = static_cast<int>(verts.size());
    const int dim = s.n();
    return run_mc(params, [&](Rng& rng) {
      thread_local std::vector<double> lam;
      thread_local Point pt;
      dirichlet_weights(rng, k, lam);
      pt.assign(dim, 0.0);
      for (int v = 0; v < k; ++v)
        for (int j = 0; j < dim; ++j) pt[j] += lam[v] * verts[v][j];
      return h(pt, rng) * vol;
    });
  }

  const LinearMapD v = LinearMapD::from(map);
  const DomainSpec& dom = s.domain();
  const int mdim = s.matrix_dim();
  return run_mc(params, [&](Rng& rng) {
    thread_local Point x, y;
    for (int retry = 0; retry < 64; ++retry) {
      const double w = dom.sample(rng, x);
      const double den = v.apply(x, y);
      const double aden = std::abs(den);
      if (aden < 1e-12) continue;  // zero-measure singular event: resample
      double jac = 1.0;
      for (int i = 0; i < mdim; ++i) jac *= aden;
      return h(y, rng) * w / jac;
    }
    fail(ErrorCode::singular_point, "persistent singular samples");
  });
}

MeasureEstimate polar_measure(const FibredSystem& s, const DigitString& digits,
                              const McParams& params) {
  DigitString rev(digits.rbegin(), digits.rend());
  return cylinder_measure(s, rev, params);
}

SymmetryVerdict symmetry_test(const FibredSystem& s, const DigitString& digits,
                              const McParams& params) {
  SymmetryVerdict v;
  v.forward = cylinder_measure(s, digits, params);
  v.reversed = polar_measure(s, digits, params);
  const double diff = std::abs(v.forward.value - v.reversed.value);
  const double se = std::hypot(v.forward.std_error, v.reversed.std_error);
  if (diff == 0.0)
    v.z = 0.0;
  else
    v.z = se > 0 ? diff / se : std::numeric_limits<double>::infinity();
  v.violated = v.z > params.z_crit;
  v.warning = !v.violated && v.z > 3.0;
  return v;
}

double kernel_duality_residual(const FibredSystem& s, const DigitString& digits,
                               const Point& x, const Point& y) {
  int depth = 0;
  const IntMatrix v = cylinder_map_or_identity(s, digits, &depth);
  IntMatrix vdual = IntMatrix::identity(s.matrix_dim());
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    vdual = compose(vdual, inverse(transpose(s.branch_matrix(*it))));
  const double lhs = kernel(act(v, x), y) * jacobian(v, x);
  const double rhs = kernel(x, act(vdual, y)) * jacobian(vdual, y);
  return std::abs(lhs - rhs);
}

}  // namespace mcf
