#pragma once

#include <string>
#include <utility>

#include "axitherm/core/process.hpp"
#include "axitherm/gas/ideal_gas.hpp"
#include "axitherm/reservoir/reservoir.hpp"

namespace axitherm {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Working-gas configuration for cycle construction.
struct MachineConfig {
  GasSpec gas = GasSpec::monatomic(1.0);
  Volume v_a{0.01};
  Volume v_b{0.02};
  QuadratureOptions quad;
};

/// A machine run between two reservoirs. Q1, Q2 are heats flowing from the
/// reservoirs into the machine; W is the work invested into the machine.
/// r1 and r2 hold the reservoirs' states before the run.
struct EngineRun {
  Process process;
  SystemId machine;
  Reservoir r1;
  Reservoir r2;
  Energy q1;
  Energy q2;
  Energy work;
  bool reversible = false;
};

/// Reads Q1, Q2 and W off a process. reversible is true iff every segment is.
EngineRun make_run(Process process, SystemId machine, const Reservoir& r1, const Reservoir& r2);

/// |W + Q1 + Q2| relative to max(|Q1|, |Q2|, 1).
double energy_balance_residual(const EngineRun& run);

/// Reversible four-segment cycle of a fresh gas: isothermal expansion on
/// r_hot from V_a to V_b, adiabat to r_cold's isotherm, isothermal stroke on
/// r_cold, closing adiabat. Q1 > 0 always; r_hot need not be the hotter one.
/// Throws EngineError("integrator inconsistency") if the cycle fails to close.
EngineRun build_carnot_cycle(const GasSpec& gas, const Reservoir& r_hot, const Reservoir& r_cold, Volume v_a,
                             Volume v_b, const QuadratureOptions& quad = {}, const std::string& label = "S");

EngineRun build_carnot_cycle(const MachineConfig& config, const Reservoir& r_hot, const Reservoir& r_cold,
                             const std::string& label = "S");

enum class HeatSide { first, second };

/// Like build_carnot_cycle, with V_b chosen so that |Q1| (side first) or
/// |Q2| (side second) equals `target`.
EngineRun build_carnot_cycle_for_heat(const GasSpec& gas, const Reservoir& r1, const Reservoir& r2, Volume v_a,
                                      HeatSide side, Energy target, const QuadratureOptions& quad = {},
                                      const std::string& label = "S");

/// Irreversible variant: at the start of the cold stroke, friction dissipates
/// loss * |W_rev| into the gas and a contact dumps it into r_cold. W_rev is
/// the reversible cycle's work, or Q1 when that vanishes (equal kinds).
EngineRun build_lossy_cycle(const MachineConfig& config, const Reservoir& r_hot, const Reservoir& r_cold,
                            double loss, const std::string& label = "S");

/// The run reversed: heats and work negate. Throws EngineError for
/// irreversible runs.
EngineRun reverse_run(const EngineRun& run);

struct CopyScaling {
  long long k = 1;
  long long l = 1;
};

/// Smallest copy counts with |k Q2_a - l Q2_b| <= 1e-9 |k Q2_a| (magnitudes),
/// denominators capped at 1e6. Throws EngineError with the achieved precision
/// otherwise.
CopyScaling scale_engines(const EngineRun& a, const EngineRun& b);

/// Copy counts are materialized as separate systems; their sum is capped.
inline constexpr long long kMaxMaterializedCopies = 256;

struct CoupledMachine {
  Process process;
  SystemId machine;  // every participant except the surviving R1 copy
  Reservoir survivor;
  Energy net_heat;  // heat from the survivor into the machine
  CopyScaling scaling;
};

/// Runs k copies of `run` alongside l copies of `reversed`, a reversed
/// reversible engine on the same kinds, then merges the R2 copies and the R1
/// copies. The result is one cyclic machine touching a single R1 copy.
CoupledMachine couple_against_reverse(const EngineRun& run, const EngineRun& reversed);

/// Couples run_12 (Q2 < 0) with run_23 (Q2' = -Q2) through a merged internal
/// copy of the shared reservoir. The returned run is between run_12.r1 and
/// run_23.r2.
EngineRun chain_engines(const EngineRun& run_12, const EngineRun& run_23);

}  // namespace axitherm
