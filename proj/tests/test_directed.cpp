#include <doctest.h>

#include "dcont/laws.hpp"

using namespace dcont;

namespace {

Value num(std::int64_t n) { return Value::integer(n); }
Value sym(const char* s) { return Value::symbol(s); }

bool same(const Value& a, const Value& b) { return value_eq(a, b, Fuel{16}) == Tri::Equal; }

DataStructure ne_list(std::vector<Value> payloads) {
  auto items = std::make_shared<std::vector<Value>>(std::move(payloads));
  return DataStructure{nonempty_list_container(),
                       num(static_cast<std::int64_t>(items->size()) - 1),
                       [items](const Value& p) { return (*items)[p.whnf().as_int()]; }};
}

// Independent oracle: all suffixes of a concrete vector, by direct slicing.
std::vector<std::vector<Value>> suffixes_oracle(const std::vector<Value>& xs) {
  std::vector<std::vector<Value>> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.emplace_back(xs.begin() + static_cast<std::ptrdiff_t>(i), xs.end());
  return out;
}

// Independent oracle: all rotations of a concrete vector.
std::vector<std::vector<Value>> rotations_oracle(const std::vector<Value>& xs) {
  std::vector<std::vector<Value>> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Value> rot;
    for (std::size_t j = 0; j < xs.size(); ++j) rot.push_back(xs[(i + j) % xs.size()]);
    out.push_back(std::move(rot));
  }
  return out;
}

Value encode_vector(std::int64_t shape, const std::vector<Value>& xs) {
  return Value::pair(num(shape), Value::sequence(xs));
}

}  // namespace

TEST_CASE("dc_counit") {
  DataStructure d = ne_list({sym("a"), sym("b"), sym("c")});
  CHECK(same(dc_counit(nonempty_suffix_dc(), d), sym("a")));

  // stream: head of s |-> a_s is a_0
  DirectedContainer st = stream_dc();
  DataStructure stream{st.base, Value::unit(), [](const Value& p) {
                         return Value::pair(sym("a"), p);
                       }};
  CHECK(same(dc_counit(st, stream), Value::pair(sym("a"), num(0))));

  // focussed container extracts at the focus
  DirectedContainer f = focus_of(nonempty_list_container());
  DataStructure focussed{f.base, Value::pair(num(2), num(1)),
                         [](const Value& p) { return Value::pair(sym("x"), p); }};
  CHECK(same(dc_counit(f, focussed), Value::pair(sym("x"), num(1))));
}

TEST_CASE("dc_comult against the suffix oracle") {
  std::vector<Value> xs = {sym("a"), sym("b"), sym("c")};
  DataStructure d = ne_list(xs);
  DataStructure dd = dc_comult(nonempty_suffix_dc(), d);
  CHECK(same(dd.shape, num(2)));
  auto expected = suffixes_oracle(xs);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    Value enc = dd.payload(num(static_cast<std::int64_t>(i)));
    CHECK(same(enc, encode_vector(static_cast<std::int64_t>(expected[i].size()) - 1,
                                  expected[i])));
  }
}

TEST_CASE("dc_comult against the rotation oracle") {
  std::vector<Value> xs = {sym("a"), sym("b")};
  DataStructure d = ne_list(xs);
  DataStructure dd = dc_comult(nonempty_cyclic_dc(), d);
  CHECK(same(dd.shape, num(1)));
  auto expected = rotations_oracle(xs);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    Value enc = dd.payload(num(static_cast<std::int64_t>(i)));
    CHECK(same(enc, encode_vector(1, expected[i])));
  }
}

TEST_CASE("dc_comult on a focussed structure refocusses the same table") {
  DirectedContainer f = focus_of(nonempty_list_container());
  Value shape = Value::pair(num(2), num(0));
  DataStructure d{f.base, shape, [](const Value& p) { return Value::pair(sym("v"), p); }};
  DataStructure dd = dc_comult(f, d);
  for (std::int64_t p = 0; p <= 2; ++p) {
    Value enc = dd.payload(num(p)).whnf();
    CHECK(same(enc.first(), Value::pair(num(2), num(p))));  // same table, focus moved
    DataStructure sub = decode_structure(f.base, enc);
    for (std::int64_t q = 0; q <= 2; ++q)
      CHECK(same(sub.payload(num(q)), Value::pair(sym("v"), num(q))));
  }
}

TEST_CASE("dc_extend") {
  DirectedContainer e = nonempty_suffix_dc();
  DataStructure d = ne_list({sym("a"), sym("b"), sym("c")});

  // f = counit: extend recovers the structure itself
  DataStructure ext = dc_extend(e, [&](const DataStructure& sub) {
    return dc_counit(e, sub);
  }, d);
  CHECK(same(encode_structure(ext), encode_structure(d)));

  // f = suffix length (from the oracle: lengths 3,2,1 i.e. shapes 2,1,0)
  DataStructure lens = dc_extend(e, [](const DataStructure& sub) { return sub.shape; }, d);
  CHECK(same(encode_structure(lens), encode_vector(2, {num(2), num(1), num(0)})));

  // f = constant
  DataStructure c = dc_extend(e, [](const DataStructure&) { return sym("k"); }, d);
  for (std::int64_t p = 0; p <= 2; ++p) CHECK(same(c.payload(num(p)), sym("k")));
}

TEST_CASE("dc_from_comonad round-trips the suffix structure") {
  DirectedContainer e = nonempty_suffix_dc();
  DirectedContainer e2 = dc_from_comonad(witness_of(e));
  for (std::int64_t s = 0; s <= 5; ++s) {
    CHECK(same(e2.root(num(s)), num(0)));
    for (std::int64_t p = 0; p <= s; ++p) {
      CHECK(same(e2.down(num(s), num(p)), num(s - p)));
      for (std::int64_t q = 0; q <= s - p; ++q)
        CHECK(same(e2.plus(num(s), num(p), num(q)), num(p + q)));
    }
  }
}

TEST_CASE("dc_from_comonad on the identity comonad") {
  DirectedContainer id = identity_dc();
  DirectedContainer e2 = dc_from_comonad(witness_of(id));
  CHECK(same(e2.root(Value::unit()), Value::unit()));
  CHECK(same(e2.down(Value::unit(), Value::unit()), Value::unit()));
  CHECK(same(e2.plus(Value::unit(), Value::unit(), Value::unit()), Value::unit()));
}

TEST_CASE("dc_from_comonad rejects shape-changing comultiplication") {
  Container ne = nonempty_list_container();
  ComonadWitness broken{
      ne, [](const DataStructure& d) { return d.payload(num(0)); },
      [ne](const DataStructure& d) {
        // drops every structure to shape 0
        auto payload = d.payload;
        return DataStructure{ne, num(0), [payload](const Value&) {
                               return Value::pair(num(0), Value::sequence({payload(num(0))}));
                             }};
      }};
  DirectedContainer bad = dc_from_comonad(broken);
  CHECK_THROWS_WITH_AS((void)bad.down(num(1), num(0)),
                       doctest::Contains("shape-not-preserved"), Error);
}

TEST_CASE("builtin registry") {
  for (const auto& name : builtin_names()) CHECK(builtin(name).name == name);
  CHECK_THROWS_WITH_AS(builtin("no-such-thing"), doctest::Contains("unknown-name"), Error);
  // paper-style aliases
  CHECK(builtin("focus(list)").base.shapes().at(0).has_value());
  CHECK(builtin("cofree-recursive(maybe)").base.shapes().at(0).has_value());
}

TEST_CASE("builtin numeric pins") {
  DirectedContainer sx = nonempty_suffix_dc();
  CHECK(same(sx.down(num(5), num(2)), num(3)));
  CHECK(same(sx.plus(num(5), num(2), num(1)), num(3)));

  DirectedContainer cy = nonempty_cyclic_dc();
  CHECK(same(cy.plus(num(5), num(4), num(3)), num(1)));  // (4+3) mod 6

  DirectedContainer z = list_zipper_dc();
  Value s = Value::pair(num(5), num(6));
  CHECK(same(z.plus(s, num(4), num(-7)), num(-3)));
  CHECK(same(z.down(s, num(4)), Value::pair(num(9), num(2))));
  CHECK(same(z.down(s, num(-3)), Value::pair(num(2), num(9))));

  DirectedContainer st = stream_dc();
  CHECK(same(st.root(Value::unit()), num(0)));
  CHECK(same(st.plus(Value::unit(), num(2), num(2)), num(4)));
}

TEST_CASE("all five laws for every builtin, small bounds") {
  Bounds b;
  b.shape_bound = 4;
  b.position_fuel = Fuel{5};
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    LawReport r = check_dc_laws(builtin(name), b);
    CHECK(r.all_ok());
  }
}

TEST_CASE("morphism classification of the example morphisms") {
  Bounds b;
  b.shape_bound = 5;
  b.position_fuel = Fuel{6};

  CHECK(check_dc_morphism_laws(dc_head_over_suffix(), b).all_ok());
  CHECK(check_dc_morphism_laws(dc_dropeven_over_suffix(), b).all_ok());
  CHECK(check_dc_morphism_laws(dc_head_over_cyclic(), b).all_ok());
  CHECK(check_dc_morphism_laws(dc_selfappend_over_cyclic(), b).all_ok());

  // reversal over suffix fails with a concrete counterexample
  LawReport rev = check_dc_morphism_laws(dc_reversal_over_suffix(), b);
  CHECK(!rev.all_ok());
  const LawEntry* m2 = rev.find("m2");
  REQUIRE(m2 != nullptr);
  CHECK(m2->status == LawStatus::Fail);
  REQUIRE(!m2->counterexample.empty());
  CHECK(m2->counterexample[0].var == "s");
  CHECK(same(m2->counterexample[0].value, num(1)));

  // self-append over suffix fails
  CHECK(!check_dc_morphism_laws(dc_selfappend_over_suffix(), b).all_ok());

  // the paper also claims drop-even over cyclic; exhaustive checking finds
  // the m3 counterexample s=2, p=1, p'=1 ((2+2) mod 3 = 1 vs 2*((1+1) mod 2))
  LawReport de = check_dc_morphism_laws(dc_dropeven_over_cyclic(), b);
  const LawEntry* m3 = de.find("m3");
  REQUIRE(m3 != nullptr);
  CHECK(m3->status == LawStatus::Fail);
  REQUIRE(m3->counterexample.size() >= 3);
  CHECK(same(m3->counterexample[0].value, num(2)));
  CHECK(same(m3->counterexample[1].value, num(1)));
  CHECK(same(m3->counterexample[2].value, num(1)));
}

TEST_CASE("monoid_dc wraps a monoid as a one-shape directed container") {
  MonoidSpec add{"nat-plus", nat_enum(), num(0),
                 [](const Value& a, const Value& b) {
                   return num(checked_add(a.whnf().as_int(), b.whnf().as_int()));
                 }};
  DirectedContainer m = monoid_dc(add);
  Bounds b;
  b.shape_bound = 1;
  b.position_fuel = Fuel{6};
  CHECK(check_dc_laws(m, b).all_ok());
  CHECK(same(m.plus(Value::unit(), num(2), num(5)), num(7)));
}
