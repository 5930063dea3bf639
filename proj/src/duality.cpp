#include "duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

namespace mcf {

namespace {

// phi(x) = (1/(1+x1), x2/(1+x1), x2 x3/(1+x1), ..., x2...xn/(1+x1)),
// the Brun Delta(0) closed form.
Point brun_phi(const Point& x) {
  const int n = static_cast<int>(x.size());
  Point z(n);
  const double d = 1.0 + x[0];
  z[0] = 1.0 / d;
  double prod = 1.0;
  for (int i = 1; i < n; ++i) {
    prod *= x[i];
    z[i] = prod / d;
  }
  return z;
}

Point brun_phi_inverse(const Point& z) {
  const int n = static_cast<int>(z.size());
  Point x(n);
  x[0] = 1.0 / z[0] - 1.0;
  for (int i = 1; i < n; ++i) x[i] = z[i] / z[i - 1];
  return x;
}

IntMatrix gs_phi(int n) {
  IntMatrix a(n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + i <= n - 1; ++j) a.at(i, j) = 1;
  a.at(n, n) = 1;
  return a;
}

IntMatrix selmer_phi(int n) {
  IntMatrix a(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i + j <= n - 2)
        a.at(i, j) = 2;
      else if (i == n && j == n)
        a.at(i, j) = 0;
      else
        a.at(i, j) = 1;
    }
  return a;
}

IntMatrix antitriangular_ones(int n) {
  IntMatrix a(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) a.at(i, j) = 1;
  return a;
}

}  // namespace

Point Intertwiner::apply(const Point& x) const {
  if (kind == Kind::matrix) return act(*matrix, x);
  return brun_phi(x);
}

Point Intertwiner::apply_inverse(const Point& x) const {
  if (kind == Kind::matrix) return act(inverse(*matrix), x);
  return brun_phi_inverse(x);
}

Intertwiner known_intertwiner(const std::string& name, int n) {
  Intertwiner phi;
  phi.system = name;
  phi.n = n;
  if (name == "gauss") {
    phi.matrix = IntMatrix::identity(2);
    phi.digit_note = "all digits";
    return phi;
  }
  if (name == "gs") {
    phi.matrix = gs_phi(n);
    phi.digit_note = "all digits";
    return phi;
  }
  if (name == "selmer") {
    phi.matrix = selmer_phi(n);
    phi.digit_note = "{n-1, n}";
    return phi;
  }
  if (name == "brun") {
    if (n == 2) {
      phi.matrix = IntMatrix::from_rows({{1, 1, 0}, {1, 0, 0}, {0, 0, 1}});
      phi.digit_note = "all digits";
    } else {
      phi.kind = Intertwiner::Kind::closed_form;
      phi.digit_note = "{0}";
    }
    return phi;
  }
  if (name == "poincare") {
    phi.matrix = antitriangular_ones(n);
    phi.digit_note = "w0 * Inv(S_(n+1))";
    return phi;
  }
  if (name == "flipflop") {
    phi.matrix = antitriangular_ones(n);
    phi.digit_note = "both digits";
    return phi;
  }
  fail(ErrorCode::no_known_intertwiner,
       "no known intertwiner for " + name + " (n = " + std::to_string(n) + ")");
}

std::vector<CommutationResult> verify_commutation(
    const FibredSystem& s, const Intertwiner& phi,
    const std::vector<Digit>& probe, std::uint64_t samples,
    std::uint64_t seed) {
  std::vector<CommutationResult> out;
  out.reserve(probe.size());
  if (phi.kind == Intertwiner::Kind::matrix) {
    for (const Digit& d : probe) {
      const IntMatrix a = s.branch_matrix(d);
      const bool pass =
          compose(*phi.matrix, transpose(a)) == compose(a, *phi.matrix);
      out.push_back({d, pass, 0.0});
    }
    return out;
  }
  // Closed-form map: sampled functional check of phi(T#(x)) = T(phi(x)) on
  // the dual cells of each probed digit.
  for (const Digit& d : probe) {
    Rng rng(seed);
    double worst = 0.0;
    std::uint64_t done = 0;
    Point y;
    for (std::uint64_t i = 0; i < samples; ++i) {
      if (!sample_dual_cell(s, d, rng, y)) break;
      try {
        const Point lhs = phi.apply(act(transpose(s.branch_matrix(d)), y));
        const Point rhs = step(s, phi.apply(y)).second;
        for (size_t j = 0; j < lhs.size(); ++j)
          worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
        ++done;
      } catch (const Error&) {
        continue;  // boundary-grazing sample
      }
    }
    out.push_back({d, done > 0 && worst < 1e-10, worst});
  }
  return out;
}

CellMappingStats verify_cell_mapping(const FibredSystem& s,
                                     const Intertwiner& phi, const Digit& d,
                                     std::uint64_t samples,
                                     std::uint64_t seed) {
  CellMappingStats st;
  st.digit = d;
  Rng rng(seed);
  Point p;
  // Images grazing a cell boundary within tolerance are excluded (they are a
  // measure-zero set the digit function refuses to classify); anything else
  // counts, and a landing outside the target cell is a miss.
  auto tally = [](bool inside, std::uint64_t& in, std::uint64_t& total) {
    ++total;
    if (inside) ++in;
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (!sample_dual_cell(s, d, rng, p)) break;
    try {
      const Point z = phi.apply(p);
      tally(s.domain().contains(z) && s.digit_of(z) == d, st.forward_in,
            st.forward_total);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::boundary_point) continue;
      tally(false, st.forward_in, st.forward_total);
    }
  }
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (!sample_cell(s, d, rng, p)) break;
    try {
      const Point w = phi.apply_inverse(p);
      tally(s.dual_domain().contains(w) && s.dual_digit_of(w) == d,
            st.backward_in, st.backward_total);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::boundary_point) continue;
      tally(false, st.backward_in, st.backward_total);
    }
  }
  st.pass = st.forward_total > 0 && st.backward_total > 0 &&
            st.forward_in == st.forward_total &&
            st.backward_in == st.backward_total;
  return st;
}

DualityReport dual_check(const FibredSystem& s, int digit_bound,
                         std::uint64_t samples, std::uint64_t seed) {
  const Intertwiner phi = known_intertwiner(s.name(), s.n());
  DualityReport rep;
  rep.system = s.name();
  rep.n = s.n();
  rep.digit_note = phi.digit_note;
  std::vector<Digit> probe;
  for (const Digit& d : s.probe_digits(digit_bound))
    if (s.selfdual_digit(d)) probe.push_back(d);
  rep.commutation = verify_commutation(s, phi, probe, samples, seed);
  bool ok = !probe.empty();
  for (const auto& c : rep.commutation) ok = ok && c.pass;
  for (const Digit& d : probe) {
    rep.cells.push_back(verify_cell_mapping(s, phi, d, samples, seed));
    ok = ok && rep.cells.back().pass;
  }
  rep.pass = ok;
  return rep;
}

std::vector<SearchCandidate> search_intertwiner(const FibredSystem& s,
                                                int entry_bound,
                                                int digit_bound,
                                                std::uint64_t sample_budget,
                                                std::uint64_t seed,
                                                int workers) {
  const int m = s.matrix_dim();
  if (m > 5)
    fail(ErrorCode::invalid_argument, "search limited to matrix side <= 5");
  if (entry_bound < 1 || entry_bound > 3)
    fail(ErrorCode::invalid_argument, "entry bound must be in 1..3");
  const int vars = m * (m + 1) / 2;
  const long long radix = 2 * entry_bound + 1;
  double space = 1.0;
  for (int i = 0; i < vars; ++i) space *= static_cast<double>(radix);
  if (space > 4e9)
    fail(ErrorCode::search_space_exhausted,
         "candidate space too large to enumerate");
  const std::uint64_t total = static_cast<std::uint64_t>(space);

  std::vector<Digit> probe = s.probe_digits(digit_bound);
  std::vector<IntMatrix> branches, branches_t;
  for (const Digit& d : probe) {
    branches.push_back(s.branch_matrix(d));
    branches_t.push_back(transpose(branches.back()));
  }

  const int nworkers = std::max(1, workers);
  std::vector<std::vector<IntMatrix>> found(nworkers);
  auto run = [&](int w) {
    const std::uint64_t lo = total * w / nworkers;
    const std::uint64_t hi = total * (w + 1) / nworkers;
    std::vector<long> v(vars);
    for (std::uint64_t code = lo; code < hi; ++code) {
      std::uint64_t c = code;
      bool zero = true;
      for (int i = 0; i < vars; ++i) {
        v[i] = static_cast<long>(c % radix) - entry_bound;
        if (v[i] != 0) zero = false;
        c /= radix;
      }
      if (zero) continue;
      IntMatrix cand(m);
      int k = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          cand.at(i, j) = v[k];
          cand.at(j, i) = v[k];
          ++k;
        }
      bool ok = true;
      for (size_t b = 0; ok && b < branches.size(); ++b)
        ok = compose(cand, branches_t[b]) == compose(branches[b], cand);
      if (!ok || cand.determinant() == 0) continue;
      found[w].push_back(cand);
    }
  };
  if (nworkers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < nworkers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  // Normalize by gcd and sign, deduplicate.
  std::set<std::string> seen;
  std::vector<SearchCandidate> out;
  for (const auto& chunk : found)
    for (const IntMatrix& raw : chunk) {
      mpz_class g = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          mpz_class a = abs(raw.at(i, j));
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
      int sign = 0;
      for (int i = 0; i < m * m && sign == 0; ++i) {
        const mpz_class& e = raw.at(i / m, i % m);
        if (e != 0) sign = e > 0 ? 1 : -1;
      }
      IntMatrix norm(m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          norm.at(i, j) = sign * raw.at(i, j) / g;
      if (!seen.insert(norm.to_string()).second) continue;

      SearchCandidate sc{norm, 0.0};
      Intertwiner phi;
      phi.system = s.name();
      phi.n = s.n();
      phi.matrix = norm;
      if (norm.is_unimodular()) {
        std::uint64_t per_digit =
            std::max<std::uint64_t>(50, sample_budget / std::max<size_t>(1, probe.size()));
        int pass = 0;
        for (const Digit& d : probe) {
          auto st = verify_cell_mapping(s, phi, d, per_digit, seed);
          if (st.pass) ++pass;
        }
        sc.cell_fraction = static_cast<double>(pass) / probe.size();
      }
      out.push_back(std::move(sc));
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.cell_fraction != b.cell_fraction)
      return a.cell_fraction > b.cell_fraction;
    return a.matrix.to_string() < b.matrix.to_string();
  });
  return out;
}

std::vector<Permutation> involutions(int m) {
  if (m < 1 || m > 9)
    fail(ErrorCode::invalid_argument, "involutions limited to m <= 9");
  std::vector<Permutation> out;
  std::vector<int> img(m);
  std::iota(img.begin(), img.end(), 1);
  do {
    Permutation p(img);
    if (p.is_involution()) out.push_back(p);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::vector<Permutation> w0_coset(int m) {
  const Permutation w0 = Permutation::reversal(m);
  std::vector<Permutation> out;
  for (const Permutation& s : involutions(m)) out.push_back(w0.compose(s));
  std::sort(out.begin(), out.end());
  return out;
}

bool involution_criterion_check(int m) {
  if (m < 2 || m > 6)
    fail(ErrorCode::invalid_argument, "criterion check limited to m <= 6");
  IntMatrix rev(m);
  for (int i = 0; i < m; ++i) rev.at(i, m - 1 - i) = 1;
  std::vector<Permutation> satisfied;
  std::vector<int> img(m);
  std::iota(img.begin(), img.end(), 1);
  do {
    const Permutation sigma(img);
    const Permutation inv = sigma.inverse();
    IntMatrix p(m);  // monomial support of the branch: row i = e_{sigma^-1(i)}
    for (int i = 1; i <= m; ++i) p.at(i - 1, inv(i) - 1) = 1;
    if (compose(rev, transpose(p)) == compose(p, rev)) satisfied.push_back(sigma);
  } while (std::next_permutation(img.begin(), img.end()));
  std::sort(satisfied.begin(), satisfied.end());
  return satisfied == w0_coset(m);
}

}  // namespace mcf
