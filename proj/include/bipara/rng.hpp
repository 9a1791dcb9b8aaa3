#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

// Counter-based deterministic randomness. Every draw is a pure function of
// (seed, tag, a, b), so replaying a run or changing the thread count can never
// change a sampled value. The mixer is the splitmix64 finalizer.
namespace bipara::rng {

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t draw(std::uint64_t seed, std::string_view tag,
                          std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t x = mix(seed ^ tag_hash(tag));
  x = mix(x ^ (a * 0xd6e8feb86659fd93ull));
  x = mix(x ^ (b * 0xa3b195354a39b70dull));
  return x;
}

// Uniform in [0,1) with 53 random mantissa bits.
inline double uniform01(std::uint64_t seed, std::string_view tag,
                        std::uint64_t a = 0, std::uint64_t b = 0) {
  return static_cast<double>(draw(seed, tag, a, b) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; the pair (a,b) selects the counter, the
// two required uniforms come from sub-counters 2b and 2b+1.
inline double normal(std::uint64_t seed, std::string_view tag,
                     std::uint64_t a = 0, std::uint64_t b = 0) {
  double u1 = uniform01(seed, tag, a, 2 * b);
  double u2 = uniform01(seed, tag, a, 2 * b + 1);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

inline int sign(std::uint64_t seed, std::string_view tag, std::uint64_t a = 0,
                std::uint64_t b = 0) {
  return (draw(seed, tag, a, b) & 1u) ? 1 : -1;
}

// Uniform integer in [0, m); m must be positive. Rejection-free modulo is
// fine here: m is tiny compared to 2^64, the bias is unobservable.
inline std::uint64_t below(std::uint64_t seed, std::string_view tag,
                           std::uint64_t m, std::uint64_t a = 0,
                           std::uint64_t b = 0) {
  return draw(seed, tag, a, b) % m;
}

}  // namespace bipara::rng
