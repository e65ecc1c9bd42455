#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcont/enumeration.hpp"
#include "dcont/value.hpp"

namespace dcont {

// A container S <| P: an enumerable shape set plus a per-shape enumerable
// position set. Containers compare by object identity (shared structure),
// which is what morphism composition preconditions talk about.
class Container {
 public:
  Container() = default;
  Container(std::string name, Enumeration shapes,
            std::function<Enumeration(const Value&)> positions);

  const std::string& name() const;
  const Enumeration& shapes() const;
  Enumeration positions(const Value& shape) const;
  bool same_object(const Container& other) const { return impl_ == other.impl_; }
  explicit operator bool() const { return impl_ != nullptr; }

  // Composite containers remember their factors so merge/split can decode.
  void set_factors(Container left, Container right);
  std::optional<std::pair<Container, Container>> factors() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// An element of [[C]] X: a shape plus a payload assignment on its positions.
struct DataStructure {
  Container container;
  Value shape;
  std::function<Value(const Value& position)> payload;
};

// Shape map forward, position map backward (q {s} : P'(t s) -> P s).
struct ContainerMorphism {
  Container source;
  Container target;
  std::function<Value(const Value& s)> shape_map;
  std::function<Value(const Value& s, const Value& target_pos)> position_map;
};

// (s, id): positions as payloads; the quoting probe.
DataStructure identity_structure(const Container& c, const Value& shape);

// Canonical value encoding of a data structure: pair(shape, table) where the
// table is a plain sequence for finite position sets and a lazy stream
// (suspension -> nothing | just (head, rest)) otherwise.
Value encode_structure(const DataStructure& d);
DataStructure decode_structure(const Container& c, const Value& v, Fuel lookup_fuel = Fuel{64});

// Table helpers shared with the constructions module.
Value table_from_enum(const Enumeration& e, std::function<Value(const Value&)> entry);
Value table_lookup(const Value& table, std::uint64_t index);
Value table_lookup_by_position(const Value& table, const Enumeration& positions, const Value& pos,
                               Fuel fuel);

// [[C]] f (s, v) = (s, f . v)
DataStructure interpret_map(const Container& c, const std::function<Value(const Value&)>& f,
                            const DataStructure& d);

// [[h]] (s, v) = (t s, v . q {s}); validates q's codomain lazily, at
// observed positions only.
DataStructure apply_morphism(const ContainerMorphism& h, const DataStructure& d);

// Quote a natural transformation back to a container morphism by probing
// with identity-assignment structures.
ContainerMorphism quote_transformation(
    const std::function<DataStructure(const DataStructure&)>& tau, const Container& c,
    const Container& c_target);

ContainerMorphism identity_morphism(const Container& c);
// h . h' (vertical composite; h'.target must be h.source, same object).
ContainerMorphism compose_morphisms(const ContainerMorphism& h, const ContainerMorphism& hp);

// The identity container cId = 1 <| \*.1 (a process-wide object).
Container identity_container();

// C0 .c C1: shapes are pairs (s0, table of inner shapes), positions are
// pairs (p0, p1).
Container container_compose(const Container& c0, const Container& c1);

// Horizontal composite h0 .c h1 between the given composite containers.
ContainerMorphism hcompose_morphisms(const Container& src_composite,
                                     const Container& dst_composite,
                                     const ContainerMorphism& h0, const ContainerMorphism& h1);

// e x = (*, \*. x)
DataStructure unit_intro(const Value& payload);
// m (s,v): payloads of `outer` must be encoded C1-structures.
DataStructure merge_structure(const Container& composite, const DataStructure& outer);
// m^-1: payloads of the result are encoded C1-structures.
DataStructure split_structure(const DataStructure& composed);

// Products, coproducts, constant exponentials (section-2.4 constructions).
Container container_product(const Container& c0, const Container& c1);
Container container_coproduct(const Container& c0, const Container& c1);
Container container_exponential(const Enumeration& k, const Container& c0);

// Builtin catalog.
Container list_container();           // S = Nat, P s = Fin s
Container nonempty_list_container();  // S = Nat, P s = Fin (s+1)
Container stream_container();         // S = 1, P * = Nat
Container maybe_container();          // 1+1 <| {inl* -> 0; inr* -> 1}
Container alphabet_container(std::int64_t k);  // 1 <| Fin k

// The section-2.1 example morphisms, over the shared singleton containers.
ContainerMorphism head_morphism();        // nonempty -> cId
ContainerMorphism list_head_morphism();   // list -> cId (partial at shape 0)
ContainerMorphism tail_morphism();        // nonempty -> list
ContainerMorphism list_tail_morphism();   // list -> list (partial at shape 0)
ContainerMorphism dropeven_morphism();    // nonempty -> nonempty
ContainerMorphism selfappend_morphism();  // nonempty -> nonempty
ContainerMorphism reversal_morphism();    // nonempty -> nonempty

}  // namespace dcont
