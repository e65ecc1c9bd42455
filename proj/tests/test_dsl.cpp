#include <doctest.h>

#include "dcont/dsl.hpp"
#include "dcont/laws.hpp"

using namespace dcont;
using dsl::parse_spec;
using dsl::print_spec;

namespace {
Value num(std::int64_t n) { return Value::integer(n); }
bool same(const Value& a, const Value& b) { return value_eq(a, b, Fuel{16}) == Tri::Equal; }
}  // namespace

TEST_CASE("parse_spec: the nonempty-list container") {
  auto spec = parse_spec("container nelist { shapes = nat; positions(s) = fin(s + 1); }");
  REQUIRE(spec.decls.size() == 1);
  dsl::Env env = dsl::elaborate(spec);
  Container c = env.containers.at("nelist");
  CHECK(!c.shapes().cardinality().has_value());
  CHECK(c.positions(num(2)).cardinality() == 3);
}

TEST_CASE("parse_spec: the suffix directed container") {
  auto spec = parse_spec(
      "container nelist { shapes = nat; positions(s) = fin(s + 1); }\n"
      "directed suffix on nelist { down(s, p) = s - p; root(s) = 0; "
      "plus(s, p, q) = p + q; }");
  dsl::Env env = dsl::elaborate(spec);
  const DirectedContainer& e = env.directed.at("suffix");
  CHECK(same(e.down(num(5), num(2)), num(3)));
  CHECK(same(e.root(num(5)), num(0)));
  CHECK(same(e.plus(num(5), num(2), num(1)), num(3)));
}

TEST_CASE("parse_spec: law-breaking declarations still parse") {
  auto spec = parse_spec(
      "container nelist { shapes = nat; positions(s) = fin(s + 1); }\n"
      "directed bad on nelist { down(s,p) = s; root(s) = s; plus(s,p,q) = p }");
  dsl::Env env = dsl::elaborate(spec);
  // the parser is law-agnostic; this variant first fails law 4 at run time
  Bounds b;
  LawReport r = check_dc_laws(env.directed.at("bad"), b);
  CHECK(r.find("dc-law-1")->status == LawStatus::Pass);
  CHECK(r.find("dc-law-4")->status == LawStatus::Fail);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_spec("container nelist {\n  shapes = nat\n  positions(s) = fin(s); }");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code == "syntax-error");
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_spec("widget x {}"), doctest::Contains("expected one of"), Error);
}

TEST_CASE("unknown identifiers and duplicates are elaboration errors") {
  CHECK_THROWS_WITH_AS(
      dsl::elaborate(parse_spec(
          "directed d on missing { down(s,p) = s; root(s) = 0; plus(s,p,q) = q; }")),
      doctest::Contains("unknown-identifier"), Error);
  CHECK_THROWS_WITH_AS(
      dsl::elaborate(parse_spec("container a { shapes = nat; positions(s) = fin(s); }\n"
                                "container a { shapes = nat; positions(s) = fin(s); }")),
      doctest::Contains("duplicate-name"), Error);
}

TEST_CASE("printer round-trip: parse . print . parse = parse") {
  std::vector<std::string> sources = {
      "container nelist { shapes = nat; positions(s) = fin(s + 1); }",
      "container z { shapes = pair(nat, nat); positions(s) = int_range(0 - fst(s), snd(s)); }\n"
      "directed zip on z { down(s, p) = pair(fst(s) + p, snd(s) - p); root(s) = 0; "
      "plus(s, p, q) = p + q; }",
      "strict k { shapes = nat; positions(s) = int_range(1, s); down(s, p) = s - p; "
      "plus(s, p, q) = p + q; }",
      "morphism head : a -> b { shape(s) = unit; pos(s, p) = 0; }\n"
      "container a { shapes = nat; positions(s) = fin(s + 1); }\n"
      "container b { shapes = unit; positions(s) = unit; }",
      "container c { shapes = sum(nat, unit); positions(s) = "
      "case s { inl x => fin(x); inr y => unit }; }",
      "container f { shapes = sigma(s : nat, fin(s)); positions(sp) = fin(fst(sp)); }",
      "container m { shapes = nat; positions(s) = fin(s mod 3 + s div 2); }",
  };
  for (const auto& src : sources) {
    CAPTURE(src);
    std::string once = print_spec(parse_spec(src));
    std::string twice = print_spec(parse_spec(once));
    CHECK(once == twice);
  }
}

TEST_CASE("expression evaluation is total with reported errors") {
  CHECK(same(dsl::eval_expr(dsl::parse_expr_string("2 + 3 * 4"), {}), num(14)));
  CHECK(same(dsl::eval_expr(dsl::parse_expr_string("-7 mod 2"), {}), num(1)));
  CHECK(same(dsl::eval_expr(dsl::parse_expr_string("fst(pair(1, 2))"), {}), num(1)));
  CHECK(same(dsl::eval_expr(dsl::parse_expr_string(
                 "case inl(3) { inl x => x + 1; inr y => 0 }"), {}),
             num(4)));
  CHECK(same(dsl::eval_expr(dsl::parse_expr_string(
                 "case nothing { just x => x; nothing => 9 }"), {}),
             num(9)));
  CHECK_THROWS_WITH_AS(dsl::eval_expr(dsl::parse_expr_string("1 div 0"), {}),
                       doctest::Contains("division-by-zero"), Error);
  CHECK_THROWS_WITH_AS(dsl::eval_expr(dsl::parse_expr_string("x + 1"), {}),
                       doctest::Contains("unknown-identifier"), Error);
}

TEST_CASE("construct directives elaborate to lawful objects") {
  auto spec = parse_spec(
      "container nelist { shapes = nat; positions(s) = fin(s + 1); }\n"
      "directed suffix on nelist { down(s, p) = s - p; root(s) = 0; plus(s, p, q) = p + q; }\n"
      "directed cyclic on nelist { down(s, p) = s; root(s) = 0; "
      "plus(s, p, q) = (p + q) mod (s + 1); }\n"
      "construct both = coproduct(suffix, cyclic);\n"
      "construct focused = focus(nelist);\n"
      "construct chains = cofree(maybe, recursive);\n"
      "container maybe { shapes = sum(unit, unit); positions(s) = "
      "case s { inl x => fin(0); inr y => fin(1) }; }");
  // declaration order matters: move maybe before its use
  auto maybe_decl = spec.decls.back();
  spec.decls.pop_back();
  spec.decls.insert(spec.decls.begin(), maybe_decl);
  dsl::Env env = dsl::elaborate(spec);
  Bounds b;
  b.shape_bound = 4;
  b.position_fuel = Fuel{5};
  CHECK(check_dc_laws(env.directed.at("both"), b).all_ok());
  CHECK(check_dc_laws(env.directed.at("focused"), b).all_ok());
  CHECK(check_dc_laws(env.directed.at("chains"), b).all_ok());
}

TEST_CASE("emit_construct output reparses and checks") {
  std::string src =
      "container nelist { shapes = nat; positions(s) = fin(s + 1); }\n"
      "directed suffix on nelist { down(s, p) = s - p; root(s) = 0; plus(s, p, q) = p + q; }\n"
      "directed cyclic on nelist { down(s, p) = s; root(s) = 0; "
      "plus(s, p, q) = (p + q) mod (s + 1); }";
  auto spec = parse_spec(src);
  dsl::ConstructDecl directive;
  directive.name = "both";
  directive.kind = "coproduct";
  directive.args = {"suffix", "cyclic"};
  std::string emitted = dsl::emit_construct(spec, directive);
  dsl::Env env = dsl::elaborate(parse_spec(emitted));
  Bounds b;
  b.shape_bound = 6;
  b.position_fuel = Fuel{5};
  CHECK(check_dc_laws(env.directed.at("both"), b).all_ok());

  // focus expansion
  dsl::ConstructDecl fdir;
  fdir.name = "focused";
  fdir.kind = "focus";
  fdir.args = {"nelist"};
  dsl::Env fenv = dsl::elaborate(parse_spec(dsl::emit_construct(spec, fdir)));
  CHECK(check_dc_laws(fenv.directed.at("focused"), b).all_ok());
}
