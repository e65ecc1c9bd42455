#pragma once

#include <map>
#include <memory>
#include <variant>

#include "dcont/constructions.hpp"

namespace dcont::dsl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Total expression language: integer arithmetic, pairing, sum/option
// constructors and case analysis. div/mod by zero is a reported evaluation
// error, never a crash.
struct Expr {
  enum class Kind {
    Int,
    Unit,
    Var,
    Binop,  // op in {+, -, *, div, mod}
    Pair,
    Fst,
    Snd,
    Inl,
    Inr,
    Just,
    Nothing,
    CaseSum,    // case e { inl x => e1; inr y => e2 }
    CaseOption  // case e { just x => e1; nothing => e2 }
  };
  Kind kind;
  std::int64_t int_val = 0;
  std::string name;      // Var name or Binop op
  std::string binder_a;  // case binders
  std::string binder_b;
  std::vector<ExprPtr> kids;
};

struct SetExpr;
using SetExprPtr = std::shared_ptr<const SetExpr>;

// Shape/position set language: nat, int, unit, fin(e), int_range(e, e),
// pair(S, S), sigma(x : S, S), sum(S, S), case analysis on a sum-valued
// variable.
struct SetExpr {
  enum class Kind { Nat, Int, Unit, Fin, IntRange, PairSet, Sigma, SumSet, CaseSum };
  Kind kind;
  std::string binder_a;  // sigma binder / case binders
  std::string binder_b;
  std::vector<ExprPtr> exprs;
  std::vector<SetExprPtr> sets;
  ExprPtr scrutinee;  // CaseSum
};

struct ContainerDecl {
  std::string name;
  SetExprPtr shapes;
  std::string pos_var;
  SetExprPtr positions;
};

struct DirectedDecl {
  std::string name;
  std::string container;
  std::string down_s, down_p;
  ExprPtr down;
  std::string root_s;
  ExprPtr root;
  std::string plus_s, plus_p, plus_q;
  ExprPtr plus;
};

struct StrictDecl {
  std::string name;
  SetExprPtr shapes;
  std::string pos_var;
  SetExprPtr positions;
  std::string down_s, down_p;
  ExprPtr down;
  std::string plus_s, plus_p, plus_q;
  ExprPtr plus;
};

struct MorphismDecl {
  std::string name;
  std::string source, target;
  std::string shape_var;
  ExprPtr shape;
  std::string pos_s, pos_p;
  ExprPtr pos;
};

struct ConstructDecl {
  std::string name;
  std::string kind;  // coproduct | product | cofree | focus
  std::vector<std::string> args;
  std::string mode;  // cofree only: recursive | bounded (default recursive)
};

using Decl = std::variant<ContainerDecl, DirectedDecl, StrictDecl, MorphismDecl, ConstructDecl>;

struct Spec {
  std::vector<Decl> decls;
};

// Parse error carries line/column and the expected-token set in what().
Spec parse_spec(const std::string& text);

// Parses a single closed expression (the CLI --shape argument).
ExprPtr parse_expr_string(const std::string& text);

// Canonical printer; parse(print(parse(t))) == parse(t).
std::string print_spec(const Spec& spec);

using ValueEnv = std::map<std::string, Value>;

Value eval_expr(const ExprPtr& e, const ValueEnv& env);
Enumeration eval_set(const SetExprPtr& s, const ValueEnv& env);

// Elaborated objects, in declaration order.
struct CheckedMorphism {
  std::string name;
  ContainerMorphism morphism;
  // When both endpoint containers carry a directed declaration, the
  // morphism laws are checkable.
  std::optional<DCMorphism> as_dc;
};

struct Env {
  std::map<std::string, Container> containers;
  std::map<std::string, DirectedContainer> directed;
  std::map<std::string, StrictDirectedContainer> stricts;
  std::map<std::string, CheckedMorphism> morphisms;
  std::vector<std::string> order;  // checkable object names in file order
};

Env elaborate(const Spec& spec);

// Expanded DSL text for a derived object (coproduct/focus are expanded to
// explicit declarations; product/cofree print as construct directives).
std::string emit_construct(const Spec& input, const ConstructDecl& directive);

}  // namespace dcont::dsl
