#pragma once

// Seeded randomness. Uniform deviates are built from raw mt19937_64 bits so
// that streams are identical across standard library implementations.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ltk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, used to fold suite names into seeds.
inline std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed for case k of a named stream derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t k) {
  return splitmix64(splitmix64(master ^ splitmix64(hash_name(stream))) + k);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double log_uniform(double lo, double hi) {
    return lo * std::exp(uniform() * std::log(hi / lo));
  }
  // Standard normal via Box-Muller on our own uniforms.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ltk
