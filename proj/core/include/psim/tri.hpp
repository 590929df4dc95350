#pragma once

#include <cstdint>
#include <string_view>

namespace psim {

// Strong Kleene three-valued truth.
enum class Tri : std::uint8_t { False, True, Unknown };

constexpr Tri from_bool(bool b) noexcept { return b ? Tri::True : Tri::False; }

constexpr Tri operator!(Tri a) noexcept {
  switch (a) {
    case Tri::True: return Tri::False;
    case Tri::False: return Tri::True;
    default: return Tri::Unknown;
  }
}

constexpr Tri operator&&(Tri a, Tri b) noexcept {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

constexpr Tri operator||(Tri a, Tri b) noexcept {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

constexpr std::string_view to_string(Tri t) noexcept {
  switch (t) {
    case Tri::True: return "True";
    case Tri::False: return "False";
    default: return "Unknown";
  }
}

}  // namespace psim
