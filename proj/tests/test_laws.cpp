#include <doctest.h>

#include "dcont/laws.hpp"

using namespace dcont;

namespace {

Value num(std::int64_t n) { return Value::integer(n); }

bool same(const Value& a, const Value& b) { return value_eq(a, b, Fuel{16}) == Tri::Equal; }

// The laws-module running example: suffix subshapes with a broken root.
DirectedContainer broken_root_dc() {
  DirectedContainer e = nonempty_suffix_dc();
  e.name = "broken-root";
  e.root = [](const Value& s) { return s.whnf(); };
  return e;
}

// Violates law 2 (and so gates law 5): plus projects onto its first argument.
DirectedContainer broken_plus_dc() {
  DirectedContainer e = nonempty_suffix_dc();
  e.name = "broken-plus";
  e.plus = [](const Value&, const Value& p, const Value&) { return p.whnf(); };
  return e;
}

std::string dump_report(const LawReport& r) {
  std::string out;
  for (const auto& e : r.entries) {
    out += e.id + "=" + to_string(e.status) + "/" + std::to_string(e.cases);
    for (const auto& b : e.counterexample) out += " " + b.var + ":" + b.rendered;
    out += ";";
  }
  return out;
}

}  // namespace

TEST_CASE("check_dc_laws passes on suffix and cyclic up to shape 6") {
  Bounds b;
  for (const auto& e : {nonempty_suffix_dc(), nonempty_cyclic_dc()}) {
    LawReport r = check_dc_laws(e, b);
    REQUIRE(r.entries.size() == 5);
    for (const auto& entry : r.entries) {
      CAPTURE(entry.id);
      CHECK(entry.status == LawStatus::Pass);
    }
  }
}

TEST_CASE("broken root: law 1 fails at s = 1 and law 4 is gated") {
  Bounds b;
  LawReport r = check_dc_laws(broken_root_dc(), b);
  const LawEntry* l1 = r.find("dc-law-1");
  REQUIRE(l1 != nullptr);
  CHECK(l1->status == LawStatus::Fail);
  REQUIRE(!l1->counterexample.empty());
  CHECK(l1->counterexample[0].var == "s");
  CHECK(same(l1->counterexample[0].value, num(1)));  // 1 down 1 = 0 != 1
  const LawEntry* l4 = r.find("dc-law-4");
  REQUIRE(l4 != nullptr);
  CHECK(l4->status == LawStatus::Exhausted);
  CHECK(l4->note.find("dc-law-1") != std::string::npos);
}

TEST_CASE("broken plus: law 2 fails and law 5 is gated") {
  Bounds b;
  LawReport r = check_dc_laws(broken_plus_dc(), b);
  CHECK(r.find("dc-law-2")->status == LawStatus::Fail);
  CHECK(r.find("dc-law-5")->status == LawStatus::Exhausted);
  CHECK(r.find("dc-law-5")->note.find("dc-law-2") != std::string::npos);
}

TEST_CASE("soundness of fail: counterexamples replay to inequalities") {
  Bounds b;
  DirectedContainer e = broken_root_dc();
  LawReport r = check_dc_laws(e, b);
  const LawEntry* l1 = r.find("dc-law-1");
  REQUIRE(l1 != nullptr);
  REQUIRE(l1->status == LawStatus::Fail);
  Value s = l1->counterexample[0].value;
  CHECK(value_eq(e.down(s, e.root(s)), s, b.position_fuel) == Tri::Unequal);

  LawReport rm = check_dc_morphism_laws(dc_reversal_over_suffix(), b);
  const LawEntry* m1 = rm.find("m1");
  REQUIRE(m1 != nullptr);
  REQUIRE(m1->status == LawStatus::Fail);
  Value ms = m1->counterexample[0].value;
  Value mp = m1->counterexample[1].value;
  const DCMorphism h = dc_reversal_over_suffix();
  CHECK(value_eq(h.morphism.shape_map(h.source.down(ms, h.morphism.position_map(ms, mp))),
                 h.target.down(h.morphism.shape_map(ms), mp),
                 b.position_fuel) == Tri::Unequal);
}

TEST_CASE("reports are deterministic") {
  Bounds b;
  CHECK(dump_report(check_dc_laws(broken_root_dc(), b)) ==
        dump_report(check_dc_laws(broken_root_dc(), b)));
  CHECK(dump_report(check_roundtrips(nonempty_suffix_dc(), b)) ==
        dump_report(check_roundtrips(nonempty_suffix_dc(), b)));
}

TEST_CASE("monotonicity: a failure persists (same or earlier) under larger bounds") {
  Bounds small;
  small.shape_bound = 3;
  small.position_fuel = Fuel{4};
  Bounds big;
  big.shape_bound = 8;
  big.position_fuel = Fuel{10};
  LawReport rs = check_dc_laws(broken_root_dc(), small);
  LawReport rb = check_dc_laws(broken_root_dc(), big);
  const LawEntry* es = rs.find("dc-law-1");
  const LawEntry* eb = rb.find("dc-law-1");
  REQUIRE(es->status == LawStatus::Fail);
  REQUIRE(eb->status == LawStatus::Fail);
  CHECK(eb->counterexample[0].value.as_int() <= es->counterexample[0].value.as_int());
}

TEST_CASE("comonad laws for interpreted directed containers") {
  Bounds b;
  b.shape_bound = 4;
  b.position_fuel = Fuel{6};
  CHECK(check_comonad_laws(nonempty_suffix_dc(), b).all_ok());
  CHECK(check_comonad_laws(identity_dc(), b).all_ok());
  CHECK(check_comonad_laws(list_zipper_dc(), b).all_ok());

  // the broken-root witness fails precisely the right-counit law
  LawReport r = check_comonad_laws(broken_root_dc(), b);
  CHECK(r.find("right-counit")->status == LawStatus::Fail);
}

TEST_CASE("comonad laws accept a hand-rolled witness") {
  // The suffix comonad presented directly on the container, without going
  // through a DirectedContainer.
  Container ne = nonempty_list_container();
  ComonadWitness w{
      ne, [](const DataStructure& d) { return d.payload(num(0)); },
      [ne](const DataStructure& d) {
        Value s = d.shape;
        auto payload = d.payload;
        return DataStructure{ne, s, [ne, s, payload](const Value& p) {
                               std::int64_t pi = p.whnf().as_int();
                               std::int64_t sub = s.whnf().as_int() - pi;
                               std::vector<Value> items;
                               for (std::int64_t q = 0; q <= sub; ++q)
                                 items.push_back(payload(num(pi + q)));
                               return Value::pair(num(sub), Value::sequence(std::move(items)));
                             }};
      }};
  Bounds b;
  b.shape_bound = 4;
  b.position_fuel = Fuel{6};
  CHECK(check_comonad_laws(w, b).all_ok());

  // and dc_from_comonad recovers the suffix operations from it
  DirectedContainer e = dc_from_comonad(w);
  CHECK(same(e.down(num(5), num(2)), num(3)));
  CHECK(same(e.root(num(5)), num(0)));
  CHECK(same(e.plus(num(5), num(2), num(1)), num(3)));
}

TEST_CASE("check_roundtrips on builtins") {
  Bounds b;
  b.shape_bound = 4;
  b.position_fuel = Fuel{6};
  for (const char* name : {"nonempty-suffix", "nonempty-cyclic", "list-zipper"}) {
    CAPTURE(name);
    LawReport r = check_roundtrips(builtin(name), b);
    REQUIRE(r.entries.size() == 4);
    for (const auto& e : r.entries) {
      CAPTURE(e.id);
      CHECK(e.status == LawStatus::Pass);
    }
  }
  // stream: exhausted on the unbounded position quantifiers, but no failures
  LawReport r = check_roundtrips(stream_dc(), b);
  CHECK(r.all_ok());
  bool any_exhausted = false;
  for (const auto& e : r.entries)
    if (e.status == LawStatus::Exhausted) any_exhausted = true;
  CHECK(any_exhausted);
}

namespace {

// Quote round-trip on an explicit shape sample (for morphisms that are
// partial at small shapes, e.g. anything factoring through tail at the
// empty-list shape).
bool quote_agrees_at(const ContainerMorphism& h, const std::vector<Value>& shapes, int fuel) {
  ContainerMorphism quoted = quote_transformation(
      [h](const DataStructure& d) { return apply_morphism(h, d); }, h.source, h.target);
  for (const auto& s : shapes) {
    if (value_eq(quoted.shape_map(s), h.shape_map(s), Fuel{fuel}) != Tri::Equal) return false;
    for (const auto& p : h.target.positions(h.shape_map(s)).take(64))
      if (value_eq(quoted.position_map(s, p), h.position_map(s, p), Fuel{fuel}) != Tri::Equal)
        return false;
  }
  return true;
}

}  // namespace

TEST_CASE("quote round-trip for the full morphism catalog") {
  Bounds b;
  b.shape_bound = 5;
  b.position_fuel = Fuel{8};
  std::vector<std::pair<std::string, ContainerMorphism>> catalog = {
      {"cid", identity_morphism(nonempty_list_container())},
      {"head", head_morphism()},
      {"tail", tail_morphism()},
      {"drop-even", dropeven_morphism()},
      {"self-append", selfappend_morphism()},
      {"reversal", reversal_morphism()},
  };
  for (const auto& [name, h] : catalog) {
    CAPTURE(name);
    LawReport r = check_quote_roundtrip(h, name, b);
    CHECK(r.all_ok());
  }

  // morphisms partial at the empty-list shape: restrict to shapes >= 1
  std::vector<Value> shapes = {num(1), num(2), num(3), num(4), num(5)};
  CHECK(quote_agrees_at(list_tail_morphism(), shapes, 8));
  CHECK(quote_agrees_at(compose_morphisms(list_head_morphism(), tail_morphism()), shapes, 8));
  CHECK(quote_agrees_at(compose_morphisms(list_tail_morphism(), tail_morphism()), shapes, 8));
}
