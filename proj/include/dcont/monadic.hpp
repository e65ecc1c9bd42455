#pragma once

#include "dcont/laws.hpp"

namespace dcont {

// Monoid structure on a container: unit shape e, shape multiplication
// (bullet) and the backwards position maps (upleft into the outer shape,
// upright into the inner one).
struct ContainerMonoid {
  std::string name;
  Container base;
  Value unit_shape;
  using ShapeFn = std::function<Value(const Value&)>;
  std::function<Value(const Value& s, const ShapeFn& v)> bullet;
  std::function<Value(const Value& s, const ShapeFn& v, const Value& p)> upleft;
  std::function<Value(const Value& s, const ShapeFn& v, const Value& p)> upright;
};

// The list instance: e = 1, s . v = sum of inner shapes, upleft/upright by
// prefix sums.
ContainerMonoid list_monoid();

// eta x = (e, constantly x)
DataStructure monoid_unit(const ContainerMonoid& m, const Value& x);

// Flattening: dd's payloads must be encoded structures of m.base. The
// result has shape s . v and payload at p drawn from position
// (upleft p, upright p).
DataStructure monoid_flatten(const ContainerMonoid& m, const DataStructure& dd);

// Dependently typed update monads: T X = Pi s. P s x X, represented as a
// function from states to (update, payload) pairs evaluated on demand.
using UpdateFn = std::function<std::pair<Value, Value>(const Value& state)>;

// eta x s = (o {s}, x)
UpdateFn update_eta(const DirectedContainer& e, const Value& x);

// mu f s = let (p, g) = f s; (p', x) = g (s down p) in (p + {s} p', x)
UpdateFn update_mu(const DirectedContainer& e,
                   const std::function<std::pair<Value, UpdateFn>(const Value&)>& f);

// Unit and associativity laws over bounded states; they reduce to the
// directed container laws and must pass whenever check_dc_laws does.
LawReport check_update_monad_laws(const DirectedContainer& e, const Bounds& b);

// The three monad laws for the list monoid, on concrete nested lists with
// pairwise distinct payloads.
LawReport check_list_monoid_laws(const Bounds& b);

}  // namespace dcont
