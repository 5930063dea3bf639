#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "system.hpp"

namespace mcf {

// A self-duality witness: an integer matrix acting fractional-linearly, or
// the one closed-form map (Brun, n >= 3, valid on digit 0).
struct Intertwiner {
  enum class Kind { matrix, closed_form };
  Kind kind = Kind::matrix;
  std::string system;
  int n = 0;
  std::optional<IntMatrix> matrix;
  std::string digit_note;  // description of the digit subset D

  Point apply(const Point& x) const;
  Point apply_inverse(const Point& x) const;
};

// The published intertwiners. Throws NoKnownIntertwiner where none is known.
Intertwiner known_intertwiner(const std::string& name, int n);

struct CommutationResult {
  Digit digit;
  bool pass = false;
  double residual = 0.0;  // 0 for exact matrix checks
};

// Exact check of A_phi A_T#(d) = A_T(d) A_phi per digit; the closed-form map
// gets a sampled functional check phi(T#(x)) = T(phi(x)) instead.
std::vector<CommutationResult> verify_commutation(
    const FibredSystem& s, const Intertwiner& phi,
    const std::vector<Digit>& probe, std::uint64_t samples = 10000,
    std::uint64_t seed = 42);

struct CellMappingStats {
  Digit digit;
  std::uint64_t forward_in = 0, forward_total = 0;
  std::uint64_t backward_in = 0, backward_total = 0;
  bool pass = false;  // 100% containment both ways
};

// Samples the dual cell, applies phi, counts membership in the primal cell,
// and the other way around with the inverse.
CellMappingStats verify_cell_mapping(const FibredSystem& s,
                                     const Intertwiner& phi, const Digit& d,
                                     std::uint64_t samples, std::uint64_t seed);

struct DualityReport {
  std::string system;
  int n = 0;
  std::string digit_note;
  std::vector<CommutationResult> commutation;
  std::vector<CellMappingStats> cells;
  bool pass = false;
};

// Full battery over the self-dual digit set: commutation + cell mapping.
DualityReport dual_check(const FibredSystem& s, int digit_bound,
                         std::uint64_t samples, std::uint64_t seed);

struct SearchCandidate {
  IntMatrix matrix;
  double cell_fraction = 0.0;  // fraction of probed digits passing cell checks
};

// Enumerates symmetric integer matrices with entries in [-entry_bound,
// entry_bound], keeps those commuting exactly with every probed branch pair
// and mapping cells correctly under sampling. Desk scale only.
std::vector<SearchCandidate> search_intertwiner(const FibredSystem& s,
                                                int entry_bound,
                                                int digit_bound,
                                                std::uint64_t sample_budget,
                                                std::uint64_t seed,
                                                int workers = 1);

std::vector<Permutation> involutions(int m);
std::vector<Permutation> w0_coset(int m);

// Brute force over S_m: the permutation-support matrices commuting with the
// reversal matrix are exactly the w0 coset of the involutions.
bool involution_criterion_check(int m);

}  // namespace mcf
