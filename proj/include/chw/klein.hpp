#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chw {

// Element of the Klein four-group Z_2[tau] = {0, 1, tau, 1+tau}.
// Bit 0 marks the "1" component, bit 1 the "tau" component, so the group
// law is XOR and the numeric order is 0 < 1 < tau < 1+tau.
enum class Klein : std::uint8_t { Zero = 0, One = 1, Tau = 2, OneTau = 3 };

inline constexpr std::array<Klein, 4> kAllKlein{Klein::Zero, Klein::One, Klein::Tau, Klein::OneTau};

constexpr Klein operator+(Klein a, Klein b) noexcept {
  return static_cast<Klein>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr Klein& operator+=(Klein& a, Klein b) noexcept { return a = a + b; }
constexpr Klein& operator-=(Klein& a, Klein b) noexcept { return a = a + b; }

// Every element is its own inverse.
constexpr Klein operator-(Klein a, Klein b) noexcept { return a + b; }

constexpr Klein klein_add(Klein a, Klein b) noexcept { return a + b; }

/// Swaps tau and 1+tau, fixes 0 and 1.
constexpr Klein gamma(Klein a) noexcept {
  auto v = static_cast<std::uint8_t>(a);
  return static_cast<Klein>(v ^ (v >> 1));
}

/// Swaps 1 and 1+tau, fixes 0 and tau.
constexpr Klein delta(Klein a) noexcept {
  auto v = static_cast<std::uint8_t>(a);
  return static_cast<Klein>(v ^ ((v & 1u) << 1));
}

/// Multiplies tau by an integer coefficient (only its parity matters).
constexpr Klein tau_times(long long c) noexcept { return (c % 2 != 0) ? Klein::Tau : Klein::Zero; }

inline std::string_view to_string(Klein a) noexcept {
  switch (a) {
    case Klein::Zero: return "0";
    case Klein::One: return "1";
    case Klein::Tau: return "t";
    case Klein::OneTau: return "1+t";
  }
  return "?";
}

// Exact, case-sensitive tokens: "0", "1", "t", "1+t".
inline std::optional<Klein> parse_klein(std::string_view s) noexcept {
  if (s == "0") return Klein::Zero;
  if (s == "1") return Klein::One;
  if (s == "t") return Klein::Tau;
  if (s == "1+t") return Klein::OneTau;
  return std::nullopt;
}

/// A point of (Z_4)^2, used as the 4-torsion of one elliptic curve.
/// Basis: the diagonal 2-torsion point is (2,0), t is (0,2) and the fixed
/// square root of t is (0,1).
struct E4Point {
  std::uint8_t a = 0;
  std::uint8_t b = 0;

  constexpr E4Point() = default;
  constexpr E4Point(int a_, int b_) noexcept
      : a(static_cast<std::uint8_t>(((a_ % 4) + 4) % 4)), b(static_cast<std::uint8_t>(((b_ % 4) + 4) % 4)) {}

  friend constexpr E4Point operator+(E4Point p, E4Point q) noexcept { return {p.a + q.a, p.b + q.b}; }
  friend constexpr E4Point operator-(E4Point p, E4Point q) noexcept { return {p.a - q.a + 4, p.b - q.b + 4}; }
  friend constexpr E4Point operator-(E4Point p) noexcept { return {4 - p.a, 4 - p.b}; }
  friend constexpr E4Point operator*(long long c, E4Point p) noexcept {
    int m = static_cast<int>(((c % 4) + 4) % 4);
    return {m * p.a, m * p.b};
  }
  friend constexpr bool operator==(E4Point, E4Point) = default;

  constexpr bool is_two_torsion() const noexcept { return a % 2 == 0 && b % 2 == 0; }
};

inline constexpr E4Point kDiagonalPoint{2, 0};
inline constexpr E4Point kTorsionT{0, 2};
inline constexpr E4Point kSqrtT{0, 1};

/// Inverse of the identification of the 2-torsion of a curve with Z_2[tau].
constexpr E4Point kappa_inv(Klein a) noexcept {
  auto v = static_cast<std::uint8_t>(a);
  return {(v & 1u) ? 2 : 0, (v & 2u) ? 2 : 0};
}

}  // namespace chw
