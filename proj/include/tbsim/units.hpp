#pragma once

#include <array>
#include <string>

namespace tbsim {

/// Exponents of (length, time, energy).
struct Dimension {
  double length = 0.0;
  double time = 0.0;
  double energy = 0.0;

  bool operator==(const Dimension&) const = default;
  std::string str() const;
};

namespace dims {
inline constexpr Dimension kNone{0, 0, 0};
inline constexpr Dimension kLength{1, 0, 0};
inline constexpr Dimension kTime{0, 1, 0};
inline constexpr Dimension kFrequency{0, -1, 0};
inline constexpr Dimension kVelocity{1, -1, 0};
inline constexpr Dimension kEnergy{0, 0, 1};
inline constexpr Dimension kGammaSpdc{-1, 0.5, -0.5};
inline constexpr Dimension kGammaSfwm{-0.5, 0.5, -1};
inline constexpr Dimension kGammaXpm{-1, 1, -1};
inline constexpr Dimension kZeta{1, -1, 0};
inline constexpr Dimension kEnvelope{-0.5, 0, 0};
}  // namespace dims

/// A parsed unit expression: value_SI = value * factor.
struct Unit {
  double factor = 1.0;
  Dimension dim;
};

/// Parses expressions like "mm", "rad/ps", "m^-1 J^-1/2 s^1/2", "um/fs", "eV".
/// Throws ConfigError(field, ...) for unknown symbols.
Unit parse_unit(const std::string& expr, const std::string& field);

/// Reference scales of the dimensionless system (SI): L0 = v_p / sigma, T0 = 1 / sigma, E0 = hbar omega_p.
struct UnitSystem {
  double length = 1.0;
  double time = 1.0;
  double energy = 1.0;
  bool physical = false;  ///< false: inputs are already dimensionless

  static UnitSystem from_pump(double sigma_si, double v_p_si, double hbar_omega_p_si);
  /// SI value of one internal unit of `dim`.
  double scale(const Dimension& dim) const;
  double to_internal(double value_si, const Dimension& dim) const { return value_si / scale(dim); }
  double to_si(double value_internal, const Dimension& dim) const { return value_internal * scale(dim); }
};

}  // namespace tbsim
