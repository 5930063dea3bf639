#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "measure.hpp"
#include "testutil.hpp"

using namespace mcf;
namespace tu = mcf::testutil;

namespace {

McParams quick(std::uint64_t samples = 200000, std::uint64_t seed = 42) {
  McParams p;
  p.samples = samples;
  p.seed = seed;
  return p;
}

double gauss_cylinder_oracle(long long a) {
  return std::log((1.0 + 1.0 / a) / (1.0 + 1.0 / (a + 1)));
}

void check_within(const MeasureEstimate& e, double truth, double sigmas) {
  CHECK(std::abs(e.value - truth) <= sigmas * e.std_error);
}

DigitString ints(std::initializer_list<long long> ks) {
  DigitString out;
  for (long long k : ks) out.push_back(Digit::integer(k));
  return out;
}

}  // namespace

TEST_CASE("kernel: closed-form values and symmetry") {
  CHECK(kernel({0.0}, {0.7}) == doctest::Approx(1.0));
  CHECK(kernel({1.0}, {1.0}) == doctest::Approx(0.25));
  CHECK(kernel({1.0, 1.0}, {1.0, 1.0}) == doctest::Approx(1.0 / 27));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Point x = tu::interior_point(rng, 3);
    const Point y = tu::interior_point(rng, 3);
    CHECK(kernel(x, y) == kernel(y, x));
  }
}

TEST_CASE("kernel_box_integral: worked examples") {
  CHECK(kernel_box_integral({1.0}, DomainSpec::box({{0, 1}}, "")) ==
        doctest::Approx(0.5).epsilon(1e-14));
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const double x = 0.05 + rng.uniform();
    CHECK(kernel_box_integral({x}, DomainSpec::box({{0, 1}}, "")) ==
          doctest::Approx(1.0 / (1.0 + x)).epsilon(1e-13));
  }
  // GS density form: box [0,inf) x [0,1) at (1/2, 1/2) integrates to 2/3
  CHECK(kernel_box_integral({0.5, 0.5},
                            DomainSpec::box({{0, kInf}, {0, 1}}, "")) ==
        doctest::Approx(2.0 / 3).epsilon(1e-13));
}

TEST_CASE("kernel_box_integral: quadrature oracle on random boxes") {
  Rng rng(7);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Axis> axes;
      std::vector<std::pair<double, double>> qbox;
      Point x;
      for (int d = 0; d < dim; ++d) {
        const double hi = 0.3 + 2.0 * rng.uniform();
        axes.push_back({0.0, hi});
        qbox.push_back({0.0, hi});
        x.push_back(0.05 + rng.uniform());
      }
      const double closed =
          kernel_box_integral(x, DomainSpec::box(axes, ""));
      const double quad = tu::quad_box(
          qbox, [&](const Point& y) { return kernel(x, y); });
      CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
    }
  }
}

TEST_CASE("kernel_box_integral: degenerate axis limit") {
  // x_i ~ 0 on a finite axis integrates the remaining axes with the
  // exponent unchanged
  const Point x{1e-12, 0.6};
  const double closed =
      kernel_box_integral(x, DomainSpec::box({{0, 1}, {0, 2}}, ""));
  const double quad = tu::quad_box(
      {{0.0, 1.0}, {0.0, 2.0}}, [&](const Point& y) { return kernel(x, y); });
  CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
  // divergence on an infinite axis
  CHECK_THROWS_AS(
      kernel_box_integral({0.0, 0.5}, DomainSpec::box({{0, kInf}, {0, 1}}, "")),
      Error);
}

TEST_CASE("density: gauss, gs, poincare values; brun refuses") {
  const auto gauss = make_system("gauss", 1);
  CHECK(density(*gauss, {0.5}) == doctest::Approx(2.0 / 3).epsilon(1e-13));
  const auto gs = make_system("gs", 2);
  CHECK(density(*gs, {0.5, 0.5}) == doctest::Approx(2.0 / 3).epsilon(1e-13));
  const auto poincare = make_system("poincare", 2);
  CHECK(density(*poincare, {0.5, 0.25}) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK_THROWS_AS(density(*make_system("brun", 2), {0.6, 0.2}), Error);
  CHECK_THROWS_AS(density(*gauss, {1.4}), Error);
}

TEST_CASE("density: gauss ratio law at 100 points") {
  const auto gauss = make_system("gauss", 1);
  const double h0 = density(*gauss, {0.5}) * 1.5;  // normalization constant
  for (int i = 1; i <= 100; ++i) {
    const double x = i / 101.0;
    const double ratio = density(*gauss, {x}) * (1.0 + x) / h0;
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cylinder_measure: gauss digit cells match the log oracle") {
  const auto gauss = make_system("gauss", 1);
  for (long long a = 1; a <= 3; ++a) {
    const auto e = cylinder_measure(*gauss, ints({a}), quick());
    check_within(e, gauss_cylinder_oracle(a), 3.0);
  }
  SUBCASE("direct-polytope agrees with the oracle and the other method") {
    McParams p = quick();
    p.method = McMethod::direct_polytope;
    for (long long a = 1; a <= 3; ++a) {
      const auto ep = cylinder_measure(*gauss, ints({a}), p);
      check_within(ep, gauss_cylinder_oracle(a), 3.0);
      const auto ec = cylinder_measure(*gauss, ints({a}), quick());
      CHECK(std::abs(ep.value - ec.value) <=
            3.0 * std::hypot(ep.std_error, ec.std_error));
    }
  }
}

TEST_CASE("cylinder_measure: gs totals and ratios") {
  const auto gs = make_system("gs", 2);
  const auto total = cylinder_measure(*gs, {}, quick(400000));
  check_within(total, M_PI * M_PI / 24, 3.5);  // independent quadrature value
  const auto cell0 = cylinder_measure(*gs, ints({0}), quick(400000));
  CHECK(cell0.value > 0);
  CHECK(cell0.value < total.value);
}

TEST_CASE("cylinder_measure: methods agree across systems") {
  McParams cov = quick(150000);
  McParams poly = quick(150000);
  poly.method = McMethod::direct_polytope;
  struct Case {
    const char* name;
    int n;
    DigitString digits;
  };
  const std::vector<Case> cases = {
      {"gs", 2, ints({0, 1})},
      {"selmer", 2, ints({2, 1})},
      {"brun-mult", 2, {Digit::pair(1, 1), Digit::pair(2, 1)}},
      {"flipflop", 2, ints({1, 1})},
  };
  for (const auto& c : cases) {
    const auto s = make_system(c.name, c.n);
    const auto a = cylinder_measure(*s, c.digits, cov);
    const auto b = cylinder_measure(*s, c.digits, poly);
    CHECK(std::abs(a.value - b.value) <=
          3.0 * std::hypot(a.std_error, b.std_error));
  }
}

TEST_CASE("cylinder_measure: poincare cells match the quadrature oracles") {
  // Values from adaptive quadrature of 1/(2 x1 x2) over the exact cylinder
  // triangles ((2/3,1/3),(3/4,1/4),(2/3,1/6)) and ((1/2,1/2),(2/3,2/3),(2/3,1/2)).
  const auto s = make_system("poincare", 2);
  const auto sig12 = Digit::permutation(Permutation::parse_cycles("(12)", 3));
  const auto sig123 = Digit::permutation(Permutation::parse_cycles("(123)", 3));
  const auto fwd = cylinder_measure(*s, {sig12, sig123}, quick(400000));
  const auto rev = cylinder_measure(*s, {sig123, sig12}, quick(400000));
  check_within(fwd, 0.020410244771, 3.5);
  check_within(rev, 0.020690243703, 3.5);
}

TEST_CASE("cylinder_measure: errors") {
  CHECK_THROWS_AS(cylinder_measure(*make_system("brun", 2), ints({1}), quick()),
                  Error);  // NonFullSystem
  const auto poincare = make_system("poincare", 2);
  const auto e = Digit::permutation(Permutation::identity(3));
  // the identity cell hugs the singular faces: rejected as divergent
  CHECK_THROWS_WITH_AS(cylinder_measure(*poincare, {e}, quick()),
                       doctest::Contains("singular"), Error);
  const auto ff = make_system("flipflop", 2);
  CHECK_THROWS_AS(cylinder_measure(*ff, ints({0}), quick()), Error);
  // mirrored rejection: both orders of a singular pair are refused
  const auto sig12 = Digit::permutation(Permutation::parse_cycles("(12)", 3));
  CHECK_THROWS_AS(cylinder_measure(*poincare, {e, sig12}, quick()), Error);
  CHECK_THROWS_AS(cylinder_measure(*poincare, {sig12, e}, quick()), Error);
  // a single-vertex pinch on one singular hyperplane stays measurable
  const auto sig132 = Digit::permutation(Permutation::parse_cycles("(132)", 3));
  const auto est = cylinder_measure(*poincare, {e, sig132}, quick(50000));
  CHECK(est.value > 0);
}

TEST_CASE("reproducibility: same seed bit-identical, workers deterministic") {
  const auto gs = make_system("gs", 2);
  const auto a = cylinder_measure(*gs, ints({1}), quick(100000, 7));
  const auto b = cylinder_measure(*gs, ints({1}), quick(100000, 7));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  const auto c = cylinder_measure(*gs, ints({1}), quick(100000, 8));
  CHECK(a.value != c.value);

  McParams par = quick(100000, 7);
  par.workers = 3;
  const auto d1 = cylinder_measure(*gs, ints({1}), par);
  const auto d2 = cylinder_measure(*gs, ints({1}), par);
  CHECK(d1.value == d2.value);
  CHECK(std::abs(d1.value - a.value) <=
        4.0 * std::hypot(d1.std_error, a.std_error));
}

TEST_CASE("antithetic sampling stays unbiased") {
  const auto gauss = make_system("gauss", 1);
  McParams p = quick(150000);
  p.antithetic = true;
  const auto e = cylinder_measure(*gauss, ints({1}), p);
  check_within(e, gauss_cylinder_oracle(1), 3.5);
}

TEST_CASE("polar_measure: palindromes are bit-identical") {
  const auto gs = make_system("gs", 2);
  const DigitString pal = ints({1, 0, 1});
  const auto a = cylinder_measure(*gs, pal, quick(50000));
  const auto b = polar_measure(*gs, pal, quick(50000));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("symmetry_test: verdicts on the worked examples") {
  const auto gs = make_system("gs", 2);
  const auto v1 = symmetry_test(*gs, ints({1, 2}), quick(400000));
  CHECK_FALSE(v1.violated);
  CHECK(v1.z <= 3.0);

  const auto gauss = make_system("gauss", 1);
  const auto v2 = symmetry_test(*gauss, ints({1, 2}), quick(400000));
  CHECK_FALSE(v2.violated);

  const auto selmer = make_system("selmer", 2);
  const auto v3 = symmetry_test(*selmer, ints({1, 2, 2}), quick(400000));
  CHECK_FALSE(v3.violated);
  CHECK(v3.z <= 3.0);

  const auto poincare = make_system("poincare", 2);
  const DigitString pd = {
      Digit::permutation(Permutation::parse_cycles("(12)", 3)),
      Digit::permutation(Permutation::parse_cycles("(123)", 3))};
  const auto v4 = symmetry_test(*poincare, pd, quick(1000000));
  CHECK(v4.violated);
  CHECK(v4.z > 5.0);
}

TEST_CASE("kernel_duality_residual: examples and property sweep") {
  const auto gauss = make_system("gauss", 1);
  CHECK(kernel_duality_residual(*gauss, {}, {0.3}, {0.7}) == 0.0);
  CHECK(kernel_duality_residual(*gauss, ints({3}), {0.3}, {0.7}) < 1e-12);

  Rng rng(71);
  const auto gs = make_system("gs", 3);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DigitString digits = tu::random_digits(*gs, rng, 3);
    Point x, y;
    gs->domain().sample(rng, x);
    gs->dual_domain().sample(rng, y);
    worst = std::max(worst,
                     kernel_duality_residual(*gs, digits, x, y));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("lemma cross-check: dual measures of reversed strings agree") {
  struct Case {
    const char* name;
    int n;
    DigitString digits;
  };
  const std::vector<Case> cases = {
      {"gauss", 1, ints({1, 2})},
      {"gs", 2, ints({0, 1})},
      {"gs", 2, ints({1})},
      {"selmer", 2, ints({1, 2})},
      {"brun-mult", 2, {Digit::pair(1, 1), Digit::pair(2, 1)}},
      {"flipflop", 2, ints({1, 1, 0})},
  };
  for (const auto& c : cases) {
    const auto s = make_system(c.name, c.n);
    const auto dual = dualize(s);
    const auto fwd = cylinder_measure(*s, c.digits, quick(400000));
    DigitString rev(c.digits.rbegin(), c.digits.rend());
    const auto bwd = cylinder_measure(*dual, rev, quick(400000, 43));
    CHECK(std::abs(fwd.value - bwd.value) <=
          3.5 * std::hypot(fwd.std_error, bwd.std_error));
  }
}
