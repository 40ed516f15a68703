#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>

namespace ncanon {

/// Object and morphism indices of a FinCategory. Distinct enum types keep the
/// two index spaces from being mixed up; morphism equality is index equality
/// within one category.
enum class ObjId : std::uint32_t {};
enum class MorId : std::uint32_t {};

inline constexpr MorId kNoMorphism{std::numeric_limits<std::uint32_t>::max()};

constexpr std::size_t index(ObjId x) noexcept { return static_cast<std::size_t>(x); }
constexpr std::size_t index(MorId m) noexcept { return static_cast<std::size_t>(m); }
constexpr ObjId to_obj(std::size_t i) noexcept { return static_cast<ObjId>(i); }
constexpr MorId to_mor(std::size_t i) noexcept { return static_cast<MorId>(i); }

inline std::ostream& operator<<(std::ostream& os, ObjId x) { return os << index(x); }
inline std::ostream& operator<<(std::ostream& os, MorId m) {
  if (m == kNoMorphism) return os << "none";
  return os << '#' << index(m);
}

}  // namespace ncanon
