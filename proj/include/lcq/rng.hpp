#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace lcq::rng {

// Counter-based random streams. Every variate is a pure function of
// (seed, tag, index, counter), so estimates do not depend on how samples
// are partitioned across threads.

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline uint64_t mix64(uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t hash_tag(std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One logical stream of i.i.d. variates; cheap to construct and copy.
class Stream {
 public:
  Stream() = default;
  Stream(uint64_t seed, std::string_view tag, uint64_t index = 0)
      : key_(mix64(mix64(seed ^ hash_tag(tag)) + index * kGolden)) {}

  // Derived stream for a sub-purpose (e.g. per-sample, per-subspace).
  Stream sub(uint64_t index) const {
    Stream s;
    s.key_ = mix64(key_ + 0x6a09e667f3bcc909ULL + index * kGolden);
    return s;
  }

  uint64_t bits(uint64_t counter) const { return mix64(key_ + counter * kGolden); }

  // Uniform in the open interval (0,1); never returns 0 or 1.
  double u01(uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1p-53;
  }

  // Standard normal via Box-Muller; one variate per counter.
  double normal(uint64_t counter) const {
    const double u1 = u01(2 * counter);
    const double u2 = u01(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  uint64_t key() const { return key_; }

 private:
  uint64_t key_ = 0;
};

// Sequential cursor over a stream, for consumers that need a variable
// number of variates (e.g. rejection sampling). Each sample owns its own
// stream, so the consumption count never leaks across samples.
class Cursor {
 public:
  explicit Cursor(Stream s) : s_(s) {}
  double u01() { return s_.u01(n_++); }
  double normal() {
    const double u1 = u01(), u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }
  // Exponential with unit rate.
  double exponential() { return -std::log(u01()); }

 private:
  Stream s_;
  uint64_t n_ = 0;
};

}  // namespace lcq::rng
