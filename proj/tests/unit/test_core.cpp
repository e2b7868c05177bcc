#include <doctest.h>

#include <string>

#include "axitherm/core/process.hpp"
#include "axitherm/gas/ideal_gas.hpp"
#include "axitherm/units.hpp"

using namespace axitherm;
using namespace axitherm::literals;

TEST_CASE("units combine dimensionally") {
  const Energy e = 2.0_Pa * 3.0_m3;
  CHECK(e.value() == 6.0);
  CHECK((e / 3.0_m3).value() == 2.0);
  CHECK((e + 1_J).value() == 7.0);
  CHECK(e / 2.0_J == 3.0);
  CHECK(abs(-e) == e);
  CHECK(1_J < 2_J);
}

TEST_CASE("composition is order- and nesting-insensitive") {
  const SystemId a(make_leaf(SystemKind::gas, "a"));
  const SystemId b(make_leaf(SystemKind::reservoir, "b"));
  const SystemId c(make_leaf(SystemKind::gas, "c"));
  CHECK(compose(a, b) == compose(b, a));
  CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  CHECK(compose_all({c, a, b}) == compose(a, compose(b, c)));
  CHECK(compose(a, b).kind() == SystemKind::composite);
  CHECK(a.kind() == SystemKind::gas);
  CHECK(compose(a, b).describe() == "c(a,b)");
  CHECK(compose(a, b).contains(b.leaves().front().id));
  CHECK_FALSE(a == b);
}

TEST_CASE("a system cannot be composed with itself") {
  const SystemId a(make_leaf(SystemKind::gas, "a"));
  const SystemId b(make_leaf(SystemKind::gas, "b"));
  CHECK_THROWS_WITH_AS(compose(a, a), "systems must be distinct instances", SystemError);
  CHECK_THROWS_AS(compose(compose(a, b), b), SystemError);
}

TEST_CASE("canonical state comparison") {
  CHECK(same_state(LeafState{ReservoirState{Energy(1e6)}}, LeafState{ReservoirState{Energy(1e6 + 1e-8)}}));
  CHECK_FALSE(same_state(LeafState{ReservoirState{Energy(1.0)}}, LeafState{ReservoirState{Energy(1.0 + 1e-10)}}));
  CHECK_FALSE(identical_state(LeafState{ReservoirState{Energy(1e6)}}, LeafState{ReservoirState{Energy(1e6 + 1e-8)}}));
  const LeafState g = GasState{Pressure(1e5), Volume(0.01)};
  CHECK_FALSE(same_state(g, LeafState{ReservoirState{Energy(1e5)}}));
  CHECK(canonical(0.1 + 0.2) == canonical(0.3));
}

namespace {

struct Fixture {
  Gas gas = make_gas("S", GasSpec::monatomic(1.0));
  GasState start{Pressure(1e5), Volume(0.01)};
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "concatenation adds works and checks states") {
  const GasSegment a = adiabatic_segment(gas, start, Volume(0.02));
  const GasSegment f = friction_segment(gas, a.gas, Energy(15.0));
  const Process p = concat(Process(a.segment), Process(f.segment));
  CHECK(work_of(p, gas.system()).value() == doctest::Approx((a.segment.changes[0].work + Energy(15.0)).value()));
  CHECK(heat_of(p, gas.system()).value() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(energy_change(p, gas.system()) == work_of(p, gas.system()));
  CHECK_FALSE(is_cyclic_on(p, gas.system()));
  // Second segment does not start where the first ended.
  CHECK_THROWS_WITH_AS(concat(Process(a.segment), Process(friction_segment(gas, start, Energy(1.0)).segment)),
                       "non-composable processes: state mismatch on S", ProcessError);
}

TEST_CASE_FIXTURE(Fixture, "disjoint processes compose in parallel") {
  const Gas other = make_gas("T", GasSpec::diatomic(2.0));
  const Process p = concat(Process(friction_segment(gas, start, Energy(1.0)).segment),
                           Process(friction_segment(other, start, Energy(2.0)).segment));
  CHECK(p.participants().size() == 2);
  CHECK(work_of(p, compose(gas.system(), other.system())).value() == doctest::Approx(3.0));
}

TEST_CASE_FIXTURE(Fixture, "identity and empty processes") {
  const Process id = Process::identity({gas_entry(gas, start)});
  CHECK(is_cyclic_on(id, gas.system()));
  CHECK(work_of(id, gas.system()) == Energy(0.0));
  const Process none;
  CHECK(none.participants().empty());
  CHECK(is_cyclic_on(none, gas.system()));
  CHECK_THROWS_AS(none.entry(gas.leaf.id), ProcessError);
}

TEST_CASE_FIXTURE(Fixture, "reversal swaps states and negates work") {
  const GasSegment a = adiabatic_segment(gas, start, Volume(0.03));
  const GasSegment b = adiabatic_segment(gas, a.gas, Volume(0.015));
  const Process p = concat(Process(a.segment), Process(b.segment));
  const auto r = reverse(p);
  REQUIRE(std::holds_alternative<Process>(r));
  const Process& q = std::get<Process>(r);
  CHECK(work_of(q, gas.system()) == -work_of(p, gas.system()));
  CHECK(identical_state(q.entry(gas.leaf.id).in, p.entry(gas.leaf.id).out));
  CHECK(same_state(q.entry(gas.leaf.id).out, p.entry(gas.leaf.id).in));
  CHECK(is_cyclic_on(concat(p, q), gas.system()));
}

TEST_CASE_FIXTURE(Fixture, "friction blocks reversal") {
  const GasSegment a = adiabatic_segment(gas, start, Volume(0.03));
  const GasSegment f = friction_segment(gas, a.gas, Energy(4.0));
  const auto r = reverse(concat(Process(a.segment), Process(f.segment)));
  REQUIRE(std::holds_alternative<NotReversible>(r));
  CHECK(std::get<NotReversible>(r).segment_index == 1);
  CHECK(std::get<NotReversible>(r).reason == "friction segment is irreversible");
}

TEST_CASE_FIXTURE(Fixture, "relabel moves a process onto fresh systems") {
  const Process p(adiabatic_segment(gas, start, Volume(0.02)).segment);
  const Leaf copy = make_leaf(SystemKind::gas, "S#1");
  const Process q = relabel(p, {{gas.leaf.id, copy}});
  CHECK_FALSE(q.participates(gas.leaf.id));
  REQUIRE(q.participates(copy.id));
  CHECK(q.entry(copy.id).work == p.entry(gas.leaf.id).work);
  CHECK(concat(p, q).participants().size() == 2);
}

TEST_CASE("segment validation") {
  const Gas g = make_gas("S", GasSpec::monatomic());
  Segment s = friction_segment(g, GasState{Pressure(1.0), Volume(1.0)}, Energy(1.0)).segment;
  s.changes.push_back(s.changes.front());
  CHECK_THROWS_AS(Process{s}, ProcessError);
  s.changes.clear();
  CHECK_THROWS_AS(Process{s}, ProcessError);
}
