#pragma once

#include <cmath>
#include <compare>

namespace axitherm {

// Thin dimension-tagged wrapper around a double, SI units throughout.
template <class Tag>
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr explicit Quantity(double v) : value_(v) {}

  constexpr double value() const { return value_; }

  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity& operator+=(Quantity o) {
    value_ += o.value_;
    return *this;
  }
  constexpr Quantity& operator-=(Quantity o) {
    value_ -= o.value_;
    return *this;
  }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
  friend constexpr Quantity operator*(Quantity a, double s) { return Quantity(a.value_ * s); }
  friend constexpr Quantity operator*(double s, Quantity a) { return Quantity(a.value_ * s); }
  friend constexpr Quantity operator/(Quantity a, double s) { return Quantity(a.value_ / s); }
  friend constexpr double operator/(Quantity a, Quantity b) { return a.value_ / b.value_; }

  friend constexpr auto operator<=>(Quantity, Quantity) = default;

 private:
  double value_ = 0.0;
};

using Energy = Quantity<struct EnergyTag>;      // J
using Pressure = Quantity<struct PressureTag>;  // Pa
using Volume = Quantity<struct VolumeTag>;      // m^3

constexpr Energy operator*(Pressure p, Volume v) { return Energy(p.value() * v.value()); }
constexpr Energy operator*(Volume v, Pressure p) { return Energy(p.value() * v.value()); }
constexpr Pressure operator/(Energy e, Volume v) { return Pressure(e.value() / v.value()); }

template <class Tag>
Quantity<Tag> abs(Quantity<Tag> q) {
  return Quantity<Tag>(std::fabs(q.value()));
}

namespace literals {
constexpr Energy operator""_J(long double v) { return Energy(static_cast<double>(v)); }
constexpr Energy operator""_J(unsigned long long v) { return Energy(static_cast<double>(v)); }
constexpr Pressure operator""_Pa(long double v) { return Pressure(static_cast<double>(v)); }
constexpr Pressure operator""_Pa(unsigned long long v) { return Pressure(static_cast<double>(v)); }
constexpr Volume operator""_m3(long double v) { return Volume(static_cast<double>(v)); }
constexpr Volume operator""_m3(unsigned long long v) { return Volume(static_cast<double>(v)); }
}  // namespace literals

}  // namespace axitherm
