#pragma once

#include "axitherm/units.hpp"

namespace axitherm {

/// Molar gas constant, J/(mol K). Only the ideal-gas model uses it.
inline constexpr double kGasConstant = 8.314462618;

/// Constitutive constants of an ideal gas: amount, molar isochoric heat
/// capacity, and the derived heat-capacity ratio gamma = 1 + R / c_V.
class GasSpec {
 public:
  /// Throws std::invalid_argument unless moles > 0 and molar_cv > 0.
  GasSpec(double moles, double molar_cv);

  static GasSpec monatomic(double moles = 1.0);
  static GasSpec diatomic(double moles = 1.0);
  /// Throws unless gamma > 1.
  static GasSpec from_gamma(double moles, double gamma);

  double moles() const { return moles_; }
  double molar_cv() const { return molar_cv_; }
  double gamma() const { return 1.0 + kGasConstant / molar_cv_; }

  friend bool operator==(const GasSpec&, const GasSpec&) = default;

 private:
  double moles_;
  double molar_cv_;
};

/// A point of the ideal-gas state space (R+)^2.
struct GasState {
  Pressure p;
  Volume v;
};

/// U = c_V p V / R, i.e. n c_V T with p V = n R T.
Energy internal_energy(const GasSpec& spec, const GasState& state);

}  // namespace axitherm
