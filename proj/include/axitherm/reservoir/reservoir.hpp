#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "axitherm/core/process.hpp"
#include "axitherm/core/system.hpp"
#include "axitherm/gas/spec.hpp"
#include "axitherm/units.hpp"

namespace axitherm {

class ReservoirError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Reservoir;

namespace testing {
struct HiddenAccess;
}

/// Opaque "kind" of a heat reservoir. Two reservoirs are copies of the same
/// reservoir iff their kinds compare equal. The underlying empirical scale is
/// not part of the public API; temperatures have to be derived from heat
/// flows.
class KindParam {
 public:
  /// Throws std::invalid_argument unless scale > 0.
  explicit KindParam(double scale);

  friend bool operator==(const KindParam&, const KindParam&) = default;

 private:
  double scale_;

  friend class Reservoir;
  friend struct testing::HiddenAccess;
};

enum class ReservoirModel { ideal, finite_tank };

std::string_view model_name(ReservoirModel model);

struct EnergyWindow {
  Energy min;
  Energy max;
};

/// Default reference energy of a reservoir. Only differences matter; a large
/// offset keeps canonical state comparison tolerant of heat-matching residuals.
inline constexpr double kReservoirReferenceEnergy = 1.0e6;

/// Molar heat capacity used to convert a tank's heat capacity into a mole
/// count for its default energy window, J/(mol K) (liquid water).
inline constexpr double kTankMolarHeatCapacity = 75.3;

/// Default window half-width per sqrt(mol), J.
inline constexpr double kTankWindowScale = 1.0e3;

/// A heat reservoir: an ideal one with an unbounded energy range, or a finite
/// water-tank approximation with heat capacity C and an energy window. The
/// state is the internal energy.
class Reservoir {
 public:
  static Reservoir ideal(std::string label, KindParam kind,
                         Energy initial = Energy(kReservoirReferenceEnergy));

  /// Window defaults to E0 +/- kTankWindowScale * sqrt(C / kTankMolarHeatCapacity).
  static Reservoir finite_tank(std::string label, KindParam kind, double heat_capacity,
                               std::optional<EnergyWindow> window = std::nullopt,
                               Energy initial = Energy(kReservoirReferenceEnergy));

  const Leaf& leaf() const { return leaf_; }
  SystemId system() const { return SystemId(leaf_); }
  const std::string& label() const { return leaf_.label; }
  const KindParam& kind() const { return kind_; }
  ReservoirModel model() const { return model_; }
  Energy energy() const { return energy_; }
  ReservoirState state() const { return ReservoirState{energy_}; }
  /// Energy at which the tank's imposed isotherm equals its kind's.
  Energy reference_energy() const { return reference_; }
  std::optional<EnergyWindow> window() const { return window_; }
  /// J/K; infinite for the ideal model.
  double heat_capacity() const;
  bool permits_work_extraction() const { return leaky_; }

  /// Same kind and same model: interchangeable copies.
  bool same_kind(const Reservoir& other) const;

  /// The product p V a gas settles to when held in contact with this
  /// reservoir in its current state (n R theta_eff).
  Energy imposed_isotherm(const GasSpec& gas) const;

  /// Exponent k of the quasi-static contact path p V^(1+k) = const;
  /// n R / (C + n c_V) for a finite tank, 0 for an ideal reservoir.
  double drift_exponent(const GasSpec& gas) const;

  /// Same reservoir (same leaf) in another state. Throws ReservoirError
  /// ("reservoir approximation violated") outside the window.
  Reservoir with_energy(Energy e) const;

  /// An independent copy: new leaf, same kind and model, reference state.
  Reservoir fresh_copy(std::string label) const;

  /// Ledger entry skeleton for this leaf (in = out = current state, no work).
  LedgerEntry ledger_entry() const;

 private:
  Reservoir(Leaf leaf, KindParam kind, ReservoirModel model, Energy initial, double heat_capacity,
            std::optional<EnergyWindow> window);

  double scale_at(Energy e) const;

  Leaf leaf_;
  KindParam kind_;
  ReservoirModel model_;
  Energy energy_;
  Energy reference_;
  double heat_capacity_;
  std::optional<EnergyWindow> window_;
  bool leaky_ = false;

  friend struct testing::HiddenAccess;
};

/// E' = E + q.
Reservoir exchange_heat(const Reservoir& r, Energy q);

/// E' = E + w for w >= 0. Negative w throws ReservoirError("second-kind
/// perpetual motion attempt") unless the reservoir is a deliberately broken
/// test model.
Reservoir invest_work(const Reservoir& r, Energy w);

struct MergeResult {
  Reservoir fresh;          // new copy, in its initial state
  Reservoir fresh_after;    // after supplying q_total
  Energy q_total;
  Reservoir restored_a;
  Reservoir restored_b;
};

/// Replace two copies that supplied heats q_a and q_b by one fresh copy
/// supplying q_a + q_b. `a` and `b` are the copies' states after supplying;
/// the restored values are their states before. Throws ReservoirError
/// ("postulate (iii) requires identical reservoirs") on a kind mismatch.
MergeResult merge_copies(const Reservoir& a, const Reservoir& b, Energy q_a, Energy q_b);

/// Segment investing work w into the reservoir.
Segment work_investment_segment(const Reservoir& r, Energy w);

/// Segment moving heat q from `source` to `sink` (both in their current states).
Segment heat_exchange_segment(const Reservoir& source, const Reservoir& sink, Energy q);

struct ProcessMerge {
  Process process;
  Reservoir fresh;  // in its initial state
  Energy supplied;  // heat the fresh copy supplies to the rest
};

/// Merge construction on a whole process: two same-kind copies taking part in
/// p are restored to their input states by a fresh copy, which then supplies
/// their combined heat. Ledgers of all other leaves are untouched. `a` and `b`
/// identify the copies (their states are read from the process).
ProcessMerge merge_in_process(const Process& p, const Reservoir& a, const Reservoir& b,
                              const std::string& fresh_label);

/// Current value of a reservoir after process p (its ledger out-state).
Reservoir reservoir_after(const Process& p, const Reservoir& r);

}  // namespace axitherm
