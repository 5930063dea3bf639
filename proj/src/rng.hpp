#pragma once

#include <cstdint>
#include <vector>

namespace mcf {

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that a (seed, stream)
// pair yields the same values on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { seed_state(seed, 0); }
  Rng(std::uint64_t seed, std::uint64_t stream) { seed_state(seed, stream); }

  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(seed, stream);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0,1)
  double uniform() {
    if (replaying_) {
      if (pos_ < tape_.size()) return 1.0 - tape_[pos_++];
      return raw_uniform();  // tape exhausted: fall back to fresh draws
    }
    const double u = raw_uniform();
    if (recording_) tape_.push_back(u);
    return u;
  }

  // uniform in (0,1)
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0 || u >= 1.0);
    return u;
  }

  // Antithetic support: record the uniforms of one draw, then replay their
  // complements 1-u for the mirrored draw.
  void tape_record() {
    tape_.clear();
    recording_ = true;
    replaying_ = false;
  }
  void tape_replay() {
    recording_ = false;
    replaying_ = true;
    pos_ = 0;
  }
  void tape_off() {
    recording_ = replaying_ = false;
    tape_.clear();
  }

 private:
  double raw_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  void seed_state(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& s : s_) s = splitmix(x);
  }

  std::uint64_t s_[4];
  std::vector<double> tape_;
  bool recording_ = false;
  bool replaying_ = false;
  std::size_t pos_ = 0;
};

}  // namespace mcf
