#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace sfma {

// Seed derivation for reproducible Monte Carlo drops. Every random quantity
// is drawn from an engine seeded by mixing a root seed with a stream name and
// a list of indices, so a drop can be regenerated in isolation and the
// scheduling order of parallel workers never leaks into the results.

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, used only to turn stream names into 64-bit tags.
inline constexpr std::uint64_t stream_tag(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t root,
                                 std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

using Engine = std::mt19937_64;

inline Engine make_stream(std::uint64_t seed, std::string_view name) {
  return Engine(derive_seed(seed, {stream_tag(name)}));
}

}  // namespace sfma
