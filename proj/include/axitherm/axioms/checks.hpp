#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "axitherm/axioms/report.hpp"
#include "axitherm/carnot/engine.hpp"

namespace axitherm {

struct CheckOptions {
  double tolerance = 1e-9;
  MachineConfig machine;
};

/// Work-process paths between seeded random gas state pairs: each path's work
/// must equal dU, and all paths between one pair must agree.
CheckReport check_first_law(const GasSpec& spec, std::size_t samples, std::uint64_t seed,
                            const CheckOptions& options = {});

/// Kelvin form: W_s(p) >= 0 for p cyclic on s with W_r(p) = 0. Skipped when
/// those preconditions do not hold or other systems take part.
CheckReport check_second_law(const Process& p, const Reservoir& r, const SystemId& s,
                             const CheckOptions& options = {});

/// A cyclic gas machine runs a Carnot cycle from `source` into `partner`, then
/// partner is restored: by extracting work from it if it permits that, else
/// by running the cycle backwards. The result goes through check_second_law
/// with machine c(gas, partner).
CheckReport check_kelvin_probe(const Reservoir& source, const Reservoir& partner, const CheckOptions& options = {});

/// Heat signs of a machine run: one heat negative; for reversible runs the
/// other positive.
CheckReport check_lemma1(const EngineRun& run, const CheckOptions& options = {});

/// tau(k,k) = 1, tau(a,b) tau(b,a) = 1, tau(a,b) tau(b,c) = tau(a,c), and the
/// chained engine through b agrees with the direct a-c measurement.
CheckReport check_lemma2(const std::array<Reservoir, 3>& triple, const CheckOptions& options = {});

/// Friction-lossy engines on random machines never beat the reversible ratio,
/// and each, coupled against a reversed reversible engine, obeys the Kelvin
/// statement.
CheckReport check_carnot_bound(double loss, const Reservoir& hot, const Reservoir& cold, std::size_t trials,
                               std::uint64_t seed, const CheckOptions& options = {});

/// tau = 1 is reflexive, symmetric and transitive over the given reservoirs,
/// and its classes are exactly the equal-temperature classes.
CheckReport check_zeroth_law(const std::vector<Reservoir>& reservoirs, const CheckOptions& options = {});

/// Heat walks are invertible, work extraction is rejected, and merging two
/// copies leaves a third system's ledger bit-identical.
CheckReport check_reservoir_postulates(const Reservoir& r, std::size_t trials, std::uint64_t seed,
                                       const CheckOptions& options = {});

}  // namespace axitherm
