#include "screenforge/util/rng.hpp"

#include <limits>

namespace screenforge {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::uint64_t stable_hash(std::initializer_list<std::string_view> parts) {
  std::uint64_t h = kFnvOffset;
  for (std::string_view part : parts) {
    h = fnv(h, part);
    h = fnv(h, std::string_view("\x1f", 1));  // unit separator keeps ("ab","c") != ("a","bc")
  }
  return mix(h);
}

std::uint64_t stable_hash(std::uint64_t seed, std::initializer_list<std::string_view> parts) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((seed >> (8 * i)) & 0xff);
  std::uint64_t h = fnv(kFnvOffset, std::string_view(bytes, 8));
  for (std::string_view part : parts) {
    h = fnv(h, part);
    h = fnv(h, std::string_view("\x1f", 1));
  }
  return mix(h);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling on the top of the range removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return draw % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  return lo + static_cast<std::int64_t>(below(span));
}

}  // namespace screenforge
