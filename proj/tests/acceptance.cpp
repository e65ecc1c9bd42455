// Acceptance suite: one checked criterion per test case, one printed
// pass/fail line each. Bounds are pinned here: shape bound 6, position fuel
// 8, three injective payload assignments, exact equality throughout.

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcont/cli.hpp"
#include "oracles.hpp"

using namespace dcont;
using namespace dcont::testing;

namespace {

Bounds accept_bounds() {
  Bounds b;
  b.shape_bound = 6;
  b.position_fuel = Fuel{8};
  b.payload_samples = 3;
  return b;
}

void verdict(const char* id, bool ok) {
  std::printf("[acceptance] %-38s %s\n", id, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
}

bool no_failures(const LawReport& r) {
  for (const auto& e : r.entries)
    if (e.status == LawStatus::Fail) return false;
  return true;
}

bool all_pass(const LawReport& r) {
  for (const auto& e : r.entries)
    if (e.status != LawStatus::Pass) return false;
  return true;
}

std::string example(const std::string& name) {
  return std::string(DCONT_EXAMPLES_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("criterion 1: directed container law suite over all builtins") {
  Bounds b = accept_bounds();
  bool ok = true;
  for (const auto& name : builtin_names()) {
    LawReport r = check_dc_laws(builtin(name), b);
    REQUIRE(r.entries.size() == 5);
    bool clean = no_failures(r);
    // every builtin with finite position sets must be exactly exhaustive
    if (name != "stream") clean = clean && all_pass(r);
    CAPTURE(name);
    CHECK(clean);
    ok = ok && clean;
  }
  verdict("1 dc-laws(builtins)", ok);
}

TEST_CASE("criterion 2: comonad law suite over all builtins") {
  Bounds b = accept_bounds();
  bool ok = true;
  for (const auto& name : builtin_names()) {
    LawReport r = check_comonad_laws(builtin(name), b);
    REQUIRE(r.entries.size() == 3);
    bool clean = no_failures(r);
    CAPTURE(name);
    CHECK(clean);
    ok = ok && clean;
  }
  verdict("2 comonad-laws(builtins)", ok);
}

TEST_CASE("criterion 3: interpret/quote round-trips and shape preservation") {
  Bounds b = accept_bounds();
  bool ok = true;
  for (const auto& name : builtin_names()) {
    LawReport r = check_roundtrips(builtin(name), b);
    CAPTURE(name);
    bool clean = no_failures(r);
    REQUIRE(r.find("shape-preservation") != nullptr);
    REQUIRE(r.find("dc-roundtrip") != nullptr);
    REQUIRE(r.find("comonad-roundtrip") != nullptr);
    CHECK(clean);
    ok = ok && clean;
  }
  verdict("3 pullback-roundtrips(builtins)", ok);
}

TEST_CASE("criterion 4: morphism classification of the example catalog") {
  Bounds b = accept_bounds();

  bool head_ok = check_dc_morphism_laws(dc_head_over_suffix(), b).all_ok();
  bool dropeven_ok = check_dc_morphism_laws(dc_dropeven_over_suffix(), b).all_ok();
  bool cyclic_selfappend_ok = check_dc_morphism_laws(dc_selfappend_over_cyclic(), b).all_ok();
  CHECK(head_ok);
  CHECK(dropeven_ok);
  CHECK(cyclic_selfappend_ok);

  // negatives fail with concrete, replayable counterexamples
  auto replays = [&](const LawReport& r) {
    if (r.all_ok()) return false;
    for (const auto& e : r.entries) {
      if (e.status != LawStatus::Fail) continue;
      const Binding* lhs = nullptr;
      const Binding* rhs = nullptr;
      for (const auto& bd : e.counterexample) {
        if (bd.var == "lhs") lhs = &bd;
        if (bd.var == "rhs") rhs = &bd;
      }
      if (lhs && rhs)
        return value_eq(lhs->value, rhs->value, b.position_fuel) == Tri::Unequal;
    }
    return false;
  };
  LawReport rev = check_dc_morphism_laws(dc_reversal_over_suffix(), b);
  LawReport app = check_dc_morphism_laws(dc_selfappend_over_suffix(), b);
  bool negatives_ok = replays(rev) && replays(app);
  CHECK(negatives_ok);

  verdict("4 classification(head,is-dc)", head_ok);
  verdict("4 classification(drop-even,is-dc)", dropeven_ok);
  verdict("4 classification(negatives,counterex)", negatives_ok);
  verdict("4 classification(self-append/cyclic)", cyclic_selfappend_ok);

  // tail is required to pass here alongside head and drop-even, but it is
  // not a morphism of directed containers: no choice of target structure can
  // satisfy m2, because its position map (p -> p + 1) never returns the
  // root. The check is kept as stated and reports the failure honestly; the
  // counterexamples replay like the other negatives do.
  LawReport tail = check_dc_morphism_laws(dc_tail_over_suffix(), b);
  bool tail_passes = tail.all_ok();
  verdict("4 classification(tail)", tail_passes);
  if (!tail_passes) {
    const LawEntry* m2 = tail.find("m2");
    if (m2 && m2->status == LawStatus::Fail && !m2->counterexample.empty())
      std::printf("[acceptance]   tail m2 first counterexample: %s = %s\n",
                  m2->counterexample[0].var.c_str(), m2->counterexample[0].rendered.c_str());
  }
  CHECK(tail_passes);
}

TEST_CASE("criterion 5: figure-level numeric checks, exact") {
  DirectedContainer sx = nonempty_suffix_dc();
  DirectedContainer cy = nonempty_cyclic_dc();
  DirectedContainer z = list_zipper_dc();
  bool ok = true;
  ok = ok && same(sx.down(num(5), num(2)), num(3));
  ok = ok && same(sx.plus(num(5), num(2), num(1)), num(3));
  Value s56 = Value::pair(num(5), num(6));
  ok = ok && same(z.plus(s56, num(4), num(-7)), num(-3));
  ok = ok && same(z.down(s56, num(4)), Value::pair(num(9), num(2)));
  ok = ok && same(z.down(s56, z.plus(s56, num(4), num(-7))), Value::pair(num(2), num(9)));
  ok = ok && same(cy.plus(num(5), num(4), num(3)), num(1));
  CHECK(ok);
  verdict("5 figure-numeric-pins", ok);
}

TEST_CASE("criterion 6: universal properties of the constructions") {
  Bounds b = accept_bounds();
  bool ok = true;

  {  // coproduct of suffix and cyclic
    CoproductBundle bundle = dc_coproduct(nonempty_suffix_dc(), nonempty_cyclic_dc());
    LawReport main = check_universal_coproduct(bundle, bundle.object, bundle.inl_leg,
                                               bundle.inr_leg, {}, b);
    bool clean = no_failures(main);
    Bounds small;
    small.shape_bound = 2;
    small.position_fuel = Fuel{2};
    auto probes = enumerate_candidate_morphisms(bundle.object, bundle.object, 4, 4, 2);
    LawReport uniq = check_universal_coproduct(bundle, bundle.object, bundle.inl_leg,
                                               bundle.inr_leg, probes, small);
    clean = clean && no_failures(uniq) &&
            uniq.find("mediator-unique-within-bounds")->cases > 0;
    CHECK(clean);
    ok = ok && clean;
  }

  {  // strict product: component shapes <= 2, alternation depth <= 2
    StrictProductBundle bundle = strict_product(strict_suffix(), strict_suffix(), Fuel{2});
    Bounds pb = b;
    pb.position_fuel = Fuel{6};
    bool clean = no_failures(check_strict_laws(bundle.object_strict, pb));
    DirectedContainer ep = bundle.left_dc;
    DCMorphism f0{"f0", ep, bundle.left_dc, identity_morphism(ep.base)};
    DCMorphism f1{"f1", ep, bundle.right_dc,
                  ContainerMorphism{ep.base, bundle.right_dc.base,
                                    [](const Value& s) { return s.whnf(); },
                                    [](const Value&, const Value& p) { return p.whnf(); }}};
    Bounds ub;
    ub.shape_bound = 3;
    ub.position_fuel = Fuel{4};
    DCMorphism mediator = bundle.mediate(ep, f0, f1);
    auto probes = enumerate_candidate_morphisms(ep, bundle.object, 2, 2, 2);
    probes.push_back(mediator);
    LawReport r = check_universal_strict_product(bundle, ep, f0, f1, probes, ub);
    clean = clean && no_failures(r) && r.find("mediator-unique-within-bounds")->cases > 0;
    CHECK(clean);
    ok = ok && clean;
  }

  {  // cofree on the maybe container, and its isomorphism with suffixes
    CofreeBundle bundle = cofree(maybe_container(), CofreeMode::Recursive, Fuel{16});
    DirectedContainer suffix = nonempty_suffix_dc();
    ContainerMorphism f0 = suffix_generator_morphism(suffix.base, maybe_container());
    DCMorphism mediator = bundle.mediate(suffix, f0);
    Bounds ub;
    ub.shape_bound = 4;
    ub.position_fuel = Fuel{5};
    auto probes = enumerate_candidate_morphisms(suffix, bundle.object, 2, 3, 2);
    probes.push_back(mediator);
    LawReport r = check_universal_cofree(bundle, suffix, f0, probes, ub);
    bool clean = no_failures(r) && r.find("mediator-unique-within-bounds")->cases > 0;

    // isomorphic to nonempty-suffix, two-sided, up to length 6
    Bounds iso;
    iso.shape_bound = 7;
    iso.position_fuel = Fuel{8};
    auto [to, from] = maybe_chain_iso(suffix, bundle.object);
    clean = clean && check_dc_morphism_laws(to, iso).all_ok() &&
            check_dc_morphism_laws(from, iso).all_ok() && two_sided_inverse(to, from, iso);
    CHECK(clean);
    ok = ok && clean;
  }

  verdict("6 universal-properties", ok);
}

TEST_CASE("criterion 7: strict product vs free-product oracle") {
  std::int64_t cap = 2;
  StrictDirectedContainer m0 = strict_saturating_monoid(cap);
  StrictDirectedContainer m1 = strict_saturating_monoid(cap);
  StrictProductBundle bundle = strict_product(m0, m1, Fuel{2});
  Value shape = strict_product_shape(m0, m1, Value::unit(), Value::unit());
  auto op = [cap](int, std::int64_t a, std::int64_t bb) {
    return std::min<std::int64_t>(a + bb, cap);
  };

  auto enumerated = bundle.object_strict.strict_positions(shape).take(1000);
  std::vector<Word> expected = all_words(2, cap);
  bool ok = enumerated.size() == expected.size();
  std::vector<Word> got;
  for (const auto& p : enumerated) got.push_back(word_of_position(p));
  for (const auto& w : expected)
    ok = ok && std::count(got.begin(), got.end(), w) == 1;
  for (const auto& p : enumerated) {
    Value sub = bundle.object_strict.down_plus(shape, p);
    for (const auto& q : bundle.object_strict.strict_positions(sub).take(1000)) {
      Word lhs = word_of_position(bundle.object_strict.plus_plus(shape, p, q));
      Word rhs = word_mul(word_of_position(p), word_of_position(q), op);
      ok = ok && lhs == rhs;
    }
  }
  CHECK(ok);
  verdict("7 strict-product-oracle", ok);
}

TEST_CASE("criterion 8: update monads and the list container monoid") {
  Bounds b = accept_bounds();
  bool ok = true;
  for (const auto& name : builtin_names()) {
    bool clean = no_failures(check_update_monad_laws(builtin(name), b));
    CAPTURE(name);
    CHECK(clean);
    ok = ok && clean;
  }

  // flatten agrees with literal concatenation, outer <= 4, inner <= 3
  ContainerMonoid m = list_monoid();
  for (std::int64_t outer = 0; outer <= 4 && ok; ++outer) {
    std::vector<std::int64_t> lens(outer, 0);
    while (true) {
      std::vector<Value> inner_encs;
      std::vector<Value> expected_flat;
      int counter = 0;
      for (std::int64_t o = 0; o < outer; ++o) {
        std::vector<Value> xs;
        for (std::int64_t i = 0; i < lens[o]; ++i) xs.push_back(num(100 * o + counter++));
        inner_encs.push_back(Value::pair(num(lens[o]), Value::sequence(xs)));
        expected_flat.insert(expected_flat.end(), xs.begin(), xs.end());
      }
      DataStructure dd = decode_structure(
          m.base, Value::pair(num(outer), Value::sequence(inner_encs)));
      Value flat = encode_structure(monoid_flatten(m, dd));
      ok = ok && same(flat, Value::pair(num(static_cast<std::int64_t>(expected_flat.size())),
                                        Value::sequence(expected_flat)));
      std::int64_t c = 0;
      while (c < outer) {
        if (++lens[c] <= 3) break;
        lens[c] = 0;
        ++c;
      }
      if (c == outer || outer == 0) break;
    }
  }
  CHECK(ok);

  bool monoid_laws = no_failures(check_list_monoid_laws(b));
  CHECK(monoid_laws);
  ok = ok && monoid_laws;
  verdict("8 monad-side", ok);
}

TEST_CASE("criterion 9: full-faithfulness round-trip over the morphism catalog") {
  Bounds b = accept_bounds();
  bool ok = true;
  std::vector<std::pair<std::string, ContainerMorphism>> total = {
      {"cid", identity_morphism(nonempty_list_container())},
      {"head", head_morphism()},
      {"tail", tail_morphism()},
      {"drop-even", dropeven_morphism()},
      {"self-append", selfappend_morphism()},
      {"reversal", reversal_morphism()},
  };
  for (const auto& [name, h] : total) {
    bool clean = check_quote_roundtrip(h, name, b).all_ok();
    CAPTURE(name);
    CHECK(clean);
    ok = ok && clean;
  }
  // partial at the empty-list shape: quantify over shapes 1..6
  std::vector<Value> shapes;
  for (std::int64_t s = 1; s <= 6; ++s) shapes.push_back(num(s));
  for (const auto& [name, h] :
       std::vector<std::pair<std::string, ContainerMorphism>>{
           {"list-tail", list_tail_morphism()},
           {"head-after-tail", compose_morphisms(list_head_morphism(), tail_morphism())},
           {"tail-after-tail", compose_morphisms(list_tail_morphism(), tail_morphism())}}) {
    ContainerMorphism quoted = quote_transformation(
        [h](const DataStructure& d) { return apply_morphism(h, d); }, h.source, h.target);
    bool clean = true;
    for (const auto& s : shapes) {
      clean = clean && same(quoted.shape_map(s), h.shape_map(s));
      for (const auto& p : h.target.positions(h.shape_map(s)).take(64))
        clean = clean && same(quoted.position_map(s, p), h.position_map(s, p));
    }
    CAPTURE(name);
    CHECK(clean);
    ok = ok && clean;
  }
  verdict("9 quote-interpret-catalog", ok);
}

TEST_CASE("criterion 10: CLI behaviour and byte-stable JSON") {
  bool ok = true;
  for (const char* name : {"suffix.dcont", "cyclic.dcont", "stream.dcont", "zipper.dcont",
                           "morphisms.dcont", "focus.dcont", "strict.dcont"}) {
    int code = cli::run_command({"check", example(name)}).exit_code;
    CAPTURE(name);
    CHECK(code == 0);
    ok = ok && code == 0;
  }

  auto bad = cli::run_command({"check", example("bad.dcont"), "--json"});
  CHECK(bad.exit_code == 1);
  ok = ok && bad.exit_code == 1;
  auto doc = nlohmann::json::parse(bad.output);
  bool counterexample_ok =
      doc["laws"][0]["id"] == "dc-law-1" && doc["laws"][0]["status"] == "fail" &&
      doc["laws"][0]["counterexample"]["s"] == "1";
  CHECK(counterexample_ok);
  ok = ok && counterexample_ok;

  // byte stability across two consecutive runs, and against the goldens
  for (const auto& argv :
       std::vector<std::vector<std::string>>{{"builtins", "--json"},
                                             {"check", example("morphisms.dcont"), "--json"},
                                             {"check", example("suffix.dcont"), "--json"}}) {
    auto first = cli::run_command(argv);
    auto second = cli::run_command(argv);
    CHECK(first.output == second.output);
    ok = ok && first.output == second.output;
  }
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };
  bool golden_ok =
      cli::run_command({"builtins", "--json"}).output ==
          slurp(std::string(DCONT_GOLDEN_DIR) + "/builtins.json") &&
      cli::run_command({"check", example("morphisms.dcont"), "--json"}).output ==
          slurp(std::string(DCONT_GOLDEN_DIR) + "/morphisms.json");
  CHECK(golden_ok);
  ok = ok && golden_ok;

  verdict("10 cli-and-golden-json", ok);
}
