#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "digits.hpp"
#include "domain.hpp"
#include "matrix.hpp"

namespace mcf {

// Tolerance on the defining cell inequalities; points closer than this to a
// cell boundary are rejected as BoundaryPoint.
constexpr double kCellEps = 1e-12;

// A multidimensional continued fraction: digit function, exact branch
// matrices, domain and dual-domain descriptors.
class FibredSystem {
 public:
  virtual ~FibredSystem() = default;

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int matrix_dim() const { return n_ + 1; }
  Digit::Kind digit_kind() const { return kind_; }
  bool is_full() const { return full_; }
  const DomainSpec& domain() const { return domain_; }
  const DomainSpec& dual_domain() const { return dual_domain_; }
  const std::string& alphabet_note() const { return alphabet_note_; }
  const std::string& selfdual_note() const { return selfdual_note_; }

  virtual Digit digit_of(const Point& x) const = 0;
  virtual IntMatrix branch_matrix(const Digit& d) const = 0;
  virtual bool in_alphabet(const Digit& d) const = 0;

  // Finite probe of the digit alphabet: integer digits up to `bound`,
  // pairs with N <= bound, or all of S_{n+1}.
  virtual std::vector<Digit> probe_digits(int bound) const = 0;

  virtual bool has_dual_partition() const { return false; }
  virtual Digit dual_digit_of(const Point&) const {
    fail(ErrorCode::invalid_argument, name_ + ": no dual partition available");
  }

  // Digit subset D on which algebraic self-duality is claimed.
  virtual bool selfdual_digit(const Digit&) const { return false; }

  virtual bool is_dual_view() const { return false; }

 protected:
  FibredSystem(std::string name, int n, Digit::Kind kind, bool full,
               DomainSpec domain, DomainSpec dual_domain,
               std::string alphabet_note, std::string selfdual_note)
      : name_(std::move(name)),
        n_(n),
        kind_(kind),
        full_(full),
        domain_(std::move(domain)),
        dual_domain_(std::move(dual_domain)),
        alphabet_note_(std::move(alphabet_note)),
        selfdual_note_(std::move(selfdual_note)) {}

  std::string name_;
  int n_;
  Digit::Kind kind_;
  bool full_;
  DomainSpec domain_;
  DomainSpec dual_domain_;
  std::string alphabet_note_;
  std::string selfdual_note_;
};

using SystemPtr = std::shared_ptr<const FibredSystem>;

// Registry of the named algorithms. Throws UnknownAlgorithm or
// UnsupportedDimension.
SystemPtr make_system(const std::string& name, int n);
const std::vector<std::string>& system_names();

// The dual system: transposed branch matrices on the dual domain.
SystemPtr dualize(const SystemPtr& system);

// Jump transformation of the flip-flop map over its S0 cell; equals the
// Garrity-Schweiger system branch for branch.
SystemPtr jump_over_s0(const SystemPtr& flipflop);

std::pair<Digit, Point> step(const FibredSystem& s, const Point& x);

struct ExpandResult {
  DigitString digits;
  Point final_point;
  bool hit_boundary = false;
};
ExpandResult expand(const FibredSystem& s, const Point& x, int steps);

struct CylinderSpec {
  std::string system;
  DigitString digits;
  IntMatrix map;  // V(k_1) ... V(k_s), exact
  int depth;
};
CylinderSpec cylinder(const FibredSystem& s, const DigitString& digits);

// Vertex images of the domain simplex under the cylinder map.
std::vector<Point> cylinder_vertices(const FibredSystem& s,
                                     const CylinderSpec& cyl);

// Interior sample of the cell B(d): inverse-branch image of a domain sample,
// re-checked against digit_of. Returns false if the check keeps failing.
bool sample_cell(const FibredSystem& s, const Digit& d, Rng& rng, Point& out);
bool sample_dual_cell(const FibredSystem& s, const Digit& d, Rng& rng,
                      Point& out);

struct CatalogueRow {
  std::string name;
  std::string n_range;
  std::string digit_kind;
  std::string alphabet;
  std::string domain;
  bool is_full;
  bool has_known_intertwiner;
  std::string selfdual_digits;
};
const std::vector<CatalogueRow>& catalogue();

}  // namespace mcf
