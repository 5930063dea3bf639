#pragma once

#include <string>
#include <vector>

#include "error.hpp"

namespace mcf {

// Permutation of {1..m} in one-line notation. Composition follows
// (sigma*rho)(i) = sigma(rho(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int m);
  static Permutation reversal(int m);  // i -> m+1-i (the w0 element)

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }  // 1-based
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  Permutation compose(const Permutation& rho) const;
  bool is_identity() const;
  bool is_involution() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  std::string cycle_string() const;  // "e", "(12)", "(123)(45)"
  static Permutation parse_cycles(const std::string& text, int m);

 private:
  std::vector<int> img_;
};

// A digit of a fibred system: a nonnegative integer (Gauss/GS/Selmer/Brun/
// Flip-flop), an (index, quotient) pair (Brun multiplicative), or a
// permutation (Poincare).
struct Digit {
  enum class Kind { integer, pair, perm };

  Kind kind = Kind::integer;
  long long value = 0;  // k, or the index i of a pair
  long long count = 1;  // N of a pair
  Permutation perm;

  static Digit integer(long long k) { return Digit{Kind::integer, k, 1, {}}; }
  static Digit pair(long long i, long long n) {
    return Digit{Kind::pair, i, n, {}};
  }
  static Digit permutation(Permutation p) {
    return Digit{Kind::perm, 0, 1, std::move(p)};
  }

  bool operator==(const Digit& o) const;
  bool operator!=(const Digit& o) const { return !(*this == o); }
  bool operator<(const Digit& o) const;

  std::string str() const;  // "3", "2:5", "(12)"
};

using DigitString = std::vector<Digit>;

// Comma-separated digit tokens: integers, "i:N" pairs, or cycle-notation
// permutations with "e" for the identity.
DigitString parse_digit_string(const std::string& text, Digit::Kind kind,
                               int perm_size);
std::string format_digit_string(const DigitString& digits);

}  // namespace mcf
