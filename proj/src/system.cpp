#include "system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcf {

namespace {

// Slack on the strict side of a cell inequality. Equality there belongs to
// the neighbouring cell, so a graze within the tolerance is ambiguous; the
// closed side keeps its points (the floor/scan convention already decided).
// The tolerance scales with the coordinate magnitude: on unbounded dual
// domains the rounding noise of the comparison grows like 1e-16 * scale and
// an absolute band would misclassify large boundary-grazing points.
void require_open_slack(double slack, const std::string& system,
                        double scale = 1.0) {
  if (slack < kCellEps * (scale > 1.0 ? scale : 1.0))
    fail(ErrorCode::boundary_point, system + ": point on a cell boundary");
}

void require_in(const DomainSpec& dom, const Point& x, const std::string& system) {
  if (!dom.contains(x))
    fail(ErrorCode::out_of_domain, system + ": point outside the domain");
}

// Shift rows 0..i-1 to the right neighbour, then a subtraction row, then the
// identity tail: the common layout of the Selmer/Brun branch families.
IntMatrix insertion_matrix(int n, int i, int sub_col, long long sub_coeff) {
  IntMatrix a(n + 1);
  for (int r = 0; r < i; ++r) a.at(r, r + 1) = 1;
  a.at(i, 0) = 1;
  a.at(i, sub_col) = static_cast<long>(sub_coeff);
  for (int r = i + 1; r <= n; ++r) a.at(r, r) = 1;
  return a;
}

// ---------------------------------------------------------------- Gauss ----
class GaussSystem : public FibredSystem {
 public:
  GaussSystem()
      : FibredSystem("gauss", 1, Digit::Kind::integer, true, order_simplex(1),
                     DomainSpec::box({{0.0, 1.0}}, "[0,1)"), "k >= 1",
                     "all digits") {}

  Digit digit_of(const Point& x) const override {
    require_in(domain_, x, name_);
    const double v = x[0];
    if (v < kCellEps)
      fail(ErrorCode::boundary_point, "gauss: digit diverges at 0");
    const long long k =
        std::max<long long>(1, static_cast<long long>(std::floor(1.0 / v)));
    require_open_slack((k + 1) * v - 1.0, name_);
    return Digit::integer(k);
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    check_digit(d);
    IntMatrix a(2);
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = static_cast<long>(-d.value);
    return a;
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::integer && d.value >= 1;
  }
  std::vector<Digit> probe_digits(int bound) const override {
    std::vector<Digit> out;
    for (int k = 1; k <= bound; ++k) out.push_back(Digit::integer(k));
    return out;
  }
  bool has_dual_partition() const override { return true; }
  Digit dual_digit_of(const Point& y) const override { return digit_of(y); }
  bool selfdual_digit(const Digit& d) const override { return in_alphabet(d); }

 private:
  void check_digit(const Digit& d) const {
    if (!in_alphabet(d))
      fail(ErrorCode::invalid_argument, "gauss digit must be an integer >= 1");
  }
};

// ----------------------------------------------------- Garrity-Schweiger ----
class GsSystem : public FibredSystem {
 public:
  explicit GsSystem(int n)
      : FibredSystem("gs", n, Digit::Kind::integer, true, order_simplex(n),
                     gs_dual_box(n), "k >= 0", "all digits") {}

  static DomainSpec gs_dual_box(int n) {
    std::vector<Axis> axes(n, Axis{0.0, kInf});
    axes[n - 1] = Axis{0.0, 1.0};
    return DomainSpec::box(std::move(axes), "R^(n-1)_>= x [0,1)");
  }

  Digit digit_of(const Point& x) const override {
    require_in(domain_, x, name_);
    const double xn = x[n_ - 1];
    if (xn < kCellEps)
      fail(ErrorCode::boundary_point, "gs: digit diverges at x_n = 0");
    const double t = 1.0 - x[0];
    const long long k =
        std::max<long long>(0, static_cast<long long>(std::floor(t / xn)));
    require_open_slack((k + 1) * xn - t, name_);
    return Digit::integer(k);
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (!in_alphabet(d))
      fail(ErrorCode::invalid_argument, "gs digit must be an integer >= 0");
    IntMatrix a(n_ + 1);
    for (int r = 0; r < n_; ++r) a.at(r, r + 1) = 1;
    a.at(n_, 0) = 1;
    a.at(n_, 1) = -1;
    a.at(n_, n_) += static_cast<long>(-d.value);
    return a;
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::integer && d.value >= 0;
  }
  std::vector<Digit> probe_digits(int bound) const override {
    std::vector<Digit> out;
    for (int k = 0; k <= bound; ++k) out.push_back(Digit::integer(k));
    return out;
  }
  bool has_dual_partition() const override { return true; }
  Digit dual_digit_of(const Point& y) const override {
    require_in(dual_domain_, y, name_);
    const double yn = y[n_ - 1];
    if (yn < kCellEps)
      fail(ErrorCode::boundary_point, "gs dual: digit diverges at x_n = 0");
    const double top = y[n_ - 2];
    const long long k =
        std::max<long long>(0, static_cast<long long>(std::floor(top / yn)));
    require_open_slack((k + 1) * yn - top, name_, top);
    return Digit::integer(k);
  }
  bool selfdual_digit(const Digit& d) const override { return in_alphabet(d); }
};

// ---------------------------------------------------------------- Selmer ----
// The restricted full-branched system on X = Delta(n-1) u Delta(n); the digit
// function classifies on the ambient order simplex.
class SelmerSystem : public FibredSystem {
 public:
  explicit SelmerSystem(int n)
      : FibredSystem("selmer", n, Digit::Kind::integer, true, x_domain(n),
                     DomainSpec::box(std::vector<Axis>(n, Axis{0.0, kInf}),
                                     "R^n_>="),
                     "{n-1, n} (restricted); ambient digits 0..n",
                     "digits {n-1, n}"),
        ambient_(order_simplex(n)) {}

  static DomainSpec x_domain(int n) {
    // X is the simplex on (1,...,1), (1,...,1,0), (1^{n-k}, (1/2)^k), k=2..n.
    std::vector<Point> verts;
    verts.push_back(Point(n, 1.0));
    Point v(n, 1.0);
    v[n - 1] = 0.0;
    verts.push_back(v);
    for (int k = 2; k <= n; ++k) {
      Point u(n, 1.0);
      for (int j = n - k; j < n; ++j) u[j] = 0.5;
      verts.push_back(u);
    }
    auto member = [n](const Point& x) {
      const double tol = 1e-9;
      if (x[0] > 1.0 + tol) return false;
      for (int i = 0; i + 1 < n; ++i)
        if (x[i + 1] > x[i] + tol) return false;
      if (x[n - 1] < -tol) return false;
      const double prev = n >= 2 ? x[n - 2] : 1.0;
      return prev + x[n - 1] >= 1.0 - tol;
    };
    return DomainSpec::simplex(std::move(verts), member,
                               "{x in simplex : x_(n-1) + x_n >= 1}");
  }

  Digit digit_of(const Point& x) const override {
    require_in(ambient_, x, name_);
    const double t = 1.0 - x[n_ - 1];
    return locate_index(x, t, name_);
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (d.kind != Digit::Kind::integer || d.value < 0 || d.value > n_)
      fail(ErrorCode::invalid_argument, "selmer digit must be in 0..n");
    return insertion_matrix(n_, static_cast<int>(d.value), n_, -1);
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::integer &&
           (d.value == n_ - 1 || d.value == n_);
  }
  std::vector<Digit> probe_digits(int) const override {
    return {Digit::integer(n_ - 1), Digit::integer(n_)};
  }
  bool has_dual_partition() const override { return true; }
  Digit dual_digit_of(const Point& y) const override {
    require_in(dual_domain_, y, name_);
    const double a = n_ >= 2 ? y[n_ - 2] : 1.0;
    const double b = y[n_ - 1];
    require_open_slack(std::abs(a - b), name_, std::max(a, b));
    return Digit::integer(a < b ? n_ - 1 : n_);
  }
  bool selfdual_digit(const Digit& d) const override { return in_alphabet(d); }

  // i with x_i > t >= x_{i+1} (x_0 = 1, x_{n+1} = 0).
  Digit locate_index(const Point& x, double t, const std::string& who) const {
    double prev = 1.0;
    for (int i = 0; i <= n_; ++i) {
      const double next = i < n_ ? x[i] : 0.0;
      if (prev > t && t >= next) {
        require_open_slack(prev - t, who);
        return Digit::integer(i);
      }
      prev = next;
    }
    fail(ErrorCode::boundary_point, who + ": point on a cell boundary");
  }

 private:
  DomainSpec ambient_;
};

// ------------------------------------------------------------------ Brun ----
class BrunSystem : public FibredSystem {
 public:
  explicit BrunSystem(int n)
      : FibredSystem("brun", n, Digit::Kind::integer, false, order_simplex(n),
                     brun_dual_box(n), "i in 0..n", "all digits for n = 2") {}

  static DomainSpec brun_dual_box(int n) {
    std::vector<Axis> axes(n, Axis{0.0, 1.0});
    axes[0] = Axis{0.0, kInf};
    return DomainSpec::box(std::move(axes), "R_>= x [0,1)^(n-1)");
  }

  // i with x_i >= t > x_{i+1} for t = 1 - x_1.
  Digit digit_of(const Point& x) const override {
    require_in(domain_, x, name_);
    const double t = 1.0 - x[0];
    if (t < kCellEps)
      fail(ErrorCode::boundary_point, name_ + ": point on a cell boundary");
    double prev = 1.0;
    for (int i = 0; i <= n_; ++i) {
      const double next = i < n_ ? x[i] : 0.0;
      if (prev >= t && t > next) {
        require_open_slack(t - next, name_);
        return Digit::integer(i);
      }
      prev = next;
    }
    fail(ErrorCode::boundary_point, name_ + ": point on a cell boundary");
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (d.kind != Digit::Kind::integer || d.value < 0 || d.value > n_)
      fail(ErrorCode::invalid_argument, "brun digit must be in 0..n");
    return insertion_matrix(n_, static_cast<int>(d.value), 1, -1);
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::integer && d.value >= 0 && d.value <= n_;
  }
  std::vector<Digit> probe_digits(int) const override {
    std::vector<Digit> out;
    for (int i = 0; i <= n_; ++i) out.push_back(Digit::integer(i));
    return out;
  }
  bool has_dual_partition() const override { return true; }
  Digit dual_digit_of(const Point& y) const override {
    require_in(dual_domain_, y, name_);
    if (y[0] >= 1.0) return Digit::integer(0);
    require_open_slack(1.0 - y[0], name_);
    int arg = 0;
    for (int i = 1; i < n_; ++i)
      if (y[i] > y[arg]) arg = i;
    for (int i = 0; i < n_; ++i)
      if (i != arg) require_open_slack(y[arg] - y[i], name_, y[arg]);
    return Digit::integer(arg + 1);
  }
  bool selfdual_digit(const Digit& d) const override {
    if (n_ == 2) return in_alphabet(d);
    return d.kind == Digit::Kind::integer && d.value == 0;
  }
};

// --------------------------------------------------- Brun multiplicative ----
// Digit (i, N): N = floor(1/x_1) zero-branch steps collapsed, then the
// additive index i; cell closed form 1/(N+1) < x_1 <= 1/N,
// x_i >= 1 - N x_1 > x_{i+1}.
class BrunMultSystem : public FibredSystem {
 public:
  explicit BrunMultSystem(int n)
      : FibredSystem("brun-mult", n, Digit::Kind::pair, true, order_simplex(n),
                     DomainSpec::box(std::vector<Axis>(n, Axis{0.0, 1.0}),
                                     "[0,1]^n"),
                     "(i,N), 1 <= i <= n, N >= 1", "none known") {}

  Digit digit_of(const Point& x) const override {
    require_in(domain_, x, name_);
    if (x[0] < kCellEps)
      fail(ErrorCode::boundary_point, "brun-mult: quotient diverges at x_1 = 0");
    const long long q =
        std::max<long long>(1, static_cast<long long>(std::floor(1.0 / x[0])));
    require_open_slack((q + 1) * x[0] - 1.0, name_);
    const double t = 1.0 - q * x[0];
    if (t < kCellEps)
      fail(ErrorCode::boundary_point, name_ + ": point on a cell boundary");
    double prev = x[0];
    for (int i = 1; i <= n_; ++i) {
      const double next = i < n_ ? x[i] : 0.0;
      if (prev >= t && t > next) {
        require_open_slack(t - next, name_);
        return Digit::pair(i, q);
      }
      prev = next;
    }
    fail(ErrorCode::boundary_point, name_ + ": point on a cell boundary");
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (!in_alphabet(d))
      fail(ErrorCode::invalid_argument, "brun-mult digit must be i:N, i in 1..n");
    return insertion_matrix(n_, static_cast<int>(d.value), 1, -d.count);
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::pair && d.value >= 1 && d.value <= n_ &&
           d.count >= 1;
  }
  std::vector<Digit> probe_digits(int bound) const override {
    std::vector<Digit> out;
    for (int i = 1; i <= n_; ++i)
      for (int q = 1; q <= bound; ++q) out.push_back(Digit::pair(i, q));
    return out;
  }
};

// -------------------------------------------------------------- Poincare ----
class PoincareSystem : public FibredSystem {
 public:
  explicit PoincareSystem(int n)
      : FibredSystem("poincare", n, Digit::Kind::perm, true, order_simplex(n),
                     DomainSpec::box(std::vector<Axis>(n, Axis{0.0, kInf}),
                                     "R^n_>"),
                     "sigma in S_(n+1)", "w0 * Inv(S_(n+1))") {}

  // Difference vector (1-x_1, x_1-x_2, ..., x_n); the digit is the inverse of
  // its descending argsort, matching the planar cell labels.
  Digit digit_of(const Point& x) const override {
    require_in(domain_, x, name_);
    const int m = n_ + 1;
    std::vector<double> d(m);
    d[0] = 1.0 - x[0];
    for (int i = 1; i < n_; ++i) d[i] = x[i - 1] - x[i];
    d[m - 1] = x[n_ - 1];
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return d[a] > d[b]; });
    for (int i = 0; i + 1 < m; ++i)
      require_open_slack(d[idx[i]] - d[idx[i + 1]], name_);
    std::vector<int> rho(m);
    for (int i = 0; i < m; ++i) rho[i] = idx[i] + 1;
    return Digit::permutation(Permutation(rho).inverse());
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (!in_alphabet(d))
      fail(ErrorCode::invalid_argument,
           "poincare digit must be a permutation of 1.." + std::to_string(n_ + 1));
    const int m = n_ + 1;
    const Permutation inv = d.perm.inverse();
    IntMatrix a(m);
    for (int i = 0; i < m; ++i) {
      const int r = inv(i + 1) - 1;  // row r of the difference matrix
      a.at(i, r) = 1;
      if (r < m - 1) a.at(i, r + 1) = -1;
    }
    return a;
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::perm && d.perm.size() == n_ + 1;
  }
  std::vector<Digit> probe_digits(int) const override {
    std::vector<Digit> out;
    std::vector<int> img(n_ + 1);
    std::iota(img.begin(), img.end(), 1);
    do {
      out.push_back(Digit::permutation(Permutation(img)));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
  }
  bool has_dual_partition() const override { return true; }
  // Dual cell: (1, y_1, ..., y_n) read off in sigma-increasing order.
  Digit dual_digit_of(const Point& y) const override {
    require_in(dual_domain_, y, name_);
    const int m = n_ + 1;
    std::vector<double> v(m);
    v[0] = 1.0;
    for (int i = 0; i < n_; ++i) v[i + 1] = y[i];
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return v[a] < v[b]; });
    for (int i = 0; i + 1 < m; ++i)
      require_open_slack(v[idx[i + 1]] - v[idx[i]], name_,
                         v[idx[i + 1]]);
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i) img[i] = idx[i] + 1;
    return Digit::permutation(Permutation(img));
  }
  bool selfdual_digit(const Digit& d) const override {
    if (!in_alphabet(d)) return false;
    return Permutation::reversal(n_ + 1).compose(d.perm).is_involution();
  }
};

// -------------------------------------------------------------- Flip-flop ----
// Two branches on the order simplex: digit 0 is the Selmer-0 branch on
// {x_1 + x_n <= 1}, digit 1 the Brun-n branch on {x_1 + x_n > 1}.
class FlipflopSystem : public FibredSystem {
 public:
  explicit FlipflopSystem(int n)
      : FibredSystem("flipflop", n, Digit::Kind::integer, true,
                     order_simplex(n),
                     DomainSpec::box(std::vector<Axis>(n, Axis{0.0, kInf}),
                                     "R^n_>="),
                     "{0 (S-branch), 1 (B-branch)}", "both digits") {}

  Digit digit_of(const Point& x) const override {
    require_in(domain_, x, name_);
    const double s = x[0] + x[n_ - 1] - 1.0;
    if (s > 0.0) require_open_slack(s, name_);
    return Digit::integer(s > 0.0 ? 1 : 0);
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (!in_alphabet(d))
      fail(ErrorCode::invalid_argument, "flipflop digit must be 0 or 1");
    if (d.value == 0) {
      IntMatrix a = IntMatrix::identity(n_ + 1);
      a.at(0, n_) = -1;
      return a;
    }
    return insertion_matrix(n_, n_, 1, -1);
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::integer && (d.value == 0 || d.value == 1);
  }
  std::vector<Digit> probe_digits(int) const override {
    return {Digit::integer(0), Digit::integer(1)};
  }
  bool has_dual_partition() const override { return true; }
  Digit dual_digit_of(const Point& y) const override {
    require_in(dual_domain_, y, name_);
    if (y[n_ - 1] < 1.0) require_open_slack(1.0 - y[n_ - 1], name_);
    return Digit::integer(y[n_ - 1] >= 1.0 ? 0 : 1);
  }
  bool selfdual_digit(const Digit& d) const override { return in_alphabet(d); }
};

// ---------------------------------------------------------- dual wrapper ----
class DualSystem : public FibredSystem {
 public:
  explicit DualSystem(SystemPtr base)
      : FibredSystem("dual(" + base->name() + ")", base->n(),
                     base->digit_kind(), base->is_full(), base->dual_domain(),
                     base->domain(), base->alphabet_note(),
                     base->selfdual_note()),
        base_(std::move(base)) {}

  Digit digit_of(const Point& x) const override {
    return base_->dual_digit_of(x);
  }
  IntMatrix branch_matrix(const Digit& d) const override {
    return transpose(base_->branch_matrix(d));
  }
  bool in_alphabet(const Digit& d) const override {
    return base_->in_alphabet(d);
  }
  std::vector<Digit> probe_digits(int bound) const override {
    return base_->probe_digits(bound);
  }
  bool has_dual_partition() const override { return true; }
  Digit dual_digit_of(const Point& y) const override {
    return base_->digit_of(y);
  }
  bool selfdual_digit(const Digit& d) const override {
    return base_->selfdual_digit(d);
  }
  bool is_dual_view() const override { return true; }

 private:
  SystemPtr base_;
};

// ------------------------------------------------------- jump transform ----
class JumpSystem : public FibredSystem {
 public:
  explicit JumpSystem(SystemPtr flipflop)
      : FibredSystem("jump(flipflop)", flipflop->n(), Digit::Kind::integer,
                     true, order_simplex(flipflop->n()),
                     GsSystem::gs_dual_box(flipflop->n()), "k >= 0",
                     "all digits"),
        ff_(std::move(flipflop)),
        s0_(ff_->branch_matrix(Digit::integer(0))),
        b_(ff_->branch_matrix(Digit::integer(1))) {}

  Digit digit_of(const Point& x) const override {
    Point y = x;
    long long k = 0;
    while (ff_->digit_of(y).value == 0) {
      y = act(s0_, y);
      if (++k > 1000000)
        fail(ErrorCode::boundary_point, "jump: S0 run does not terminate");
    }
    return Digit::integer(k);
  }

  IntMatrix branch_matrix(const Digit& d) const override {
    if (!in_alphabet(d))
      fail(ErrorCode::invalid_argument, "jump digit must be an integer >= 0");
    IntMatrix m = b_;
    IntMatrix p = IntMatrix::identity(n_ + 1);
    for (long long i = 0; i < d.value; ++i) p = compose(p, s0_);
    return compose(m, p);
  }

  bool in_alphabet(const Digit& d) const override {
    return d.kind == Digit::Kind::integer && d.value >= 0;
  }
  std::vector<Digit> probe_digits(int bound) const override {
    std::vector<Digit> out;
    for (int k = 0; k <= bound; ++k) out.push_back(Digit::integer(k));
    return out;
  }

 private:
  SystemPtr ff_;
  IntMatrix s0_;
  IntMatrix b_;
};

}  // namespace

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names = {
      "gauss", "gs", "selmer", "brun", "brun-mult", "poincare", "flipflop"};
  return names;
}

SystemPtr make_system(const std::string& name, int n) {
  if (name == "gauss") {
    if (n != 1)
      fail(ErrorCode::unsupported_dimension, "gauss is defined for n = 1");
    return std::make_shared<GaussSystem>();
  }
  const bool known =
      std::find(system_names().begin(), system_names().end(), name) !=
      system_names().end();
  if (!known) fail(ErrorCode::unknown_algorithm, "unknown algorithm: " + name);
  if (n < 2)
    fail(ErrorCode::unsupported_dimension, name + " requires n >= 2");
  if (name == "gs") return std::make_shared<GsSystem>(n);
  if (name == "selmer") return std::make_shared<SelmerSystem>(n);
  if (name == "brun") return std::make_shared<BrunSystem>(n);
  if (name == "brun-mult") return std::make_shared<BrunMultSystem>(n);
  if (name == "poincare") return std::make_shared<PoincareSystem>(n);
  return std::make_shared<FlipflopSystem>(n);
}

SystemPtr dualize(const SystemPtr& system) {
  return std::make_shared<DualSystem>(system);
}

SystemPtr jump_over_s0(const SystemPtr& flipflop) {
  if (flipflop->name() != "flipflop")
    fail(ErrorCode::invalid_argument, "jump transformation expects flipflop");
  return std::make_shared<JumpSystem>(flipflop);
}

std::pair<Digit, Point> step(const FibredSystem& s, const Point& x) {
  Digit d = s.digit_of(x);
  return {d, act(s.branch_matrix(d), x)};
}

ExpandResult expand(const FibredSystem& s, const Point& x, int steps) {
  if (steps < 0) fail(ErrorCode::invalid_argument, "steps must be >= 0");
  ExpandResult r;
  r.final_point = x;
  if (steps > 0 && !s.domain().contains(x))
    fail(ErrorCode::out_of_domain, s.name() + ": point outside the domain");
  for (int i = 0; i < steps; ++i) {
    try {
      auto [d, y] = step(s, r.final_point);
      r.digits.push_back(d);
      r.final_point = y;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::boundary_point) {
        r.hit_boundary = true;
        break;
      }
      throw;
    }
  }
  return r;
}

CylinderSpec cylinder(const FibredSystem& s, const DigitString& digits) {
  if (digits.empty())
    fail(ErrorCode::invalid_argument, "cylinder needs at least one digit");
  for (const Digit& d : digits)
    if (!s.in_alphabet(d))
      fail(ErrorCode::empty_cylinder,
           s.name() + ": digit " + d.str() + " outside the alphabet");
  IntMatrix m = inverse(s.branch_matrix(digits[0]));
  for (size_t i = 1; i < digits.size(); ++i)
    m = compose(m, inverse(s.branch_matrix(digits[i])));
  CylinderSpec spec{s.name(), digits, m, static_cast<int>(digits.size())};
  if (!s.is_full() && !s.is_dual_view()) {
    // Admissibility by sampling: some digit string must re-expand.
    Rng rng(0x9e3779b9);
    Point y, x;
    int hits = 0;
    for (int trial = 0; trial < 400 && hits == 0; ++trial) {
      s.domain().sample(rng, y);
      try {
        x = act(m, y);
        if (!s.domain().contains(x)) continue;
        ExpandResult e = expand(s, x, spec.depth);
        if (e.digits == digits) ++hits;
      } catch (const Error&) {
        continue;
      }
    }
    if (hits == 0)
      fail(ErrorCode::empty_cylinder,
           s.name() + ": digits " + format_digit_string(digits) +
               " never re-expand (inadmissible)");
  }
  return spec;
}

std::vector<Point> cylinder_vertices(const FibredSystem& s,
                                     const CylinderSpec& cyl) {
  if (s.domain().kind() != DomainSpec::Kind::simplex)
    fail(ErrorCode::invalid_argument,
         "cylinder vertices need a simplex domain");
  std::vector<Point> out;
  out.reserve(s.domain().vertices().size());
  for (const Point& v : s.domain().vertices()) out.push_back(act(cyl.map, v));
  return out;
}

bool sample_cell(const FibredSystem& s, const Digit& d, Rng& rng, Point& out) {
  const IntMatrix v = inverse(s.branch_matrix(d));
  Point y;
  for (int trial = 0; trial < 200; ++trial) {
    s.domain().sample(rng, y);
    try {
      out = act(v, y);
      if (s.digit_of(out) == d) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

bool sample_dual_cell(const FibredSystem& s, const Digit& d, Rng& rng,
                      Point& out) {
  const IntMatrix v = inverse(transpose(s.branch_matrix(d)));
  Point y;
  for (int trial = 0; trial < 200; ++trial) {
    s.dual_domain().sample(rng, y);
    try {
      out = act(v, y);
      if (s.dual_digit_of(out) == d) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

const std::vector<CatalogueRow>& catalogue() {
  static const std::vector<CatalogueRow> rows = {
      {"gauss", "1", "integer", "k >= 1", "[0,1)", true, true, "all digits"},
      {"gs", ">= 2", "integer", "k >= 0", "order simplex", true, true,
       "all digits"},
      {"selmer", ">= 2", "integer", "{n-1, n}",
       "{x in simplex : x_(n-1) + x_n >= 1}", true, true, "{n-1, n}"},
      {"brun", ">= 2", "integer", "0..n", "order simplex", false, true,
       "all digits (n = 2); {0} via a closed-form map (n >= 3)"},
      {"brun-mult", ">= 2", "pair", "i:N, 1 <= i <= n, N >= 1",
       "order simplex", true, false, "none known"},
      {"poincare", ">= 2", "permutation", "sigma in S_(n+1)", "order simplex",
       true, true, "w0 * Inv(S_(n+1))"},
      {"flipflop", ">= 2", "integer", "{0, 1}", "order simplex", true, true,
       "both digits"},
  };
  return rows;
}

}  // namespace mcf
