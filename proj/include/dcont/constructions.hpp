#pragma once

#include "dcont/laws.hpp"

namespace dcont {

// Root-free position family with down+ / plus+ satisfying the two strict
// laws; induces a directed container by adjoining an option root.
struct StrictDirectedContainer {
  std::string name;
  Enumeration shapes;
  std::function<Enumeration(const Value&)> strict_positions;  // P+
  std::function<Value(const Value& s, const Value& p)> down_plus;
  std::function<Value(const Value& s, const Value& p, const Value& pp)> plus_plus;
};

LawReport check_strict_laws(const StrictDirectedContainer& k, const Bounds& b);

// P s = Maybe (P+ s); o = nothing; plus by the three-clause table.
DirectedContainer strict_to_dc(const StrictDirectedContainer& k);

// Builtin strict instances: lists-and-suffixes (P+ s = {1..s}) and the
// monoid of positive naturals under addition (S = 1).
StrictDirectedContainer strict_suffix();
StrictDirectedContainer strict_posnat_monoid();

struct CoproductBundle {
  DirectedContainer left, right;
  DirectedContainer object;
  DCMorphism inl_leg, inr_leg;
  // Copairing [f0, f1] : object -> f_target by case on the shape tag.
  std::function<DCMorphism(const DirectedContainer& f_target, const DCMorphism& f0,
                           const DCMorphism& f1)>
      copair;
};

CoproductBundle dc_coproduct(const DirectedContainer& e0, const DirectedContainer& e1);

struct StrictProductBundle {
  StrictDirectedContainer left, right;
  StrictDirectedContainer object_strict;
  DirectedContainer object;    // induced directed container
  DirectedContainer left_dc;   // induced from `left`
  DirectedContainer right_dc;  // induced from `right`
  DCMorphism pi0, pi1;
  // Mediating morphism from f0 : E' -> left_dc, f1 : E' -> right_dc.
  std::function<DCMorphism(const DirectedContainer& eprime, const DCMorphism& f0,
                           const DCMorphism& f1)>
      mediate;
};

// Shapes are pairs of mutually corecursive trees (suspended children);
// positions are tagged alternating sequences enumerated up to alternation
// depth fuel.depth.
StrictProductBundle strict_product(const StrictDirectedContainer& k0,
                                   const StrictDirectedContainer& k1, Fuel fuel);

// The canonical product shape seeded by a pair of component shapes.
Value strict_product_shape(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
                           const Value& s0, const Value& s1);

enum class CofreeMode { Recursive, DepthBounded };

struct CofreeBundle {
  Container generator;  // C0
  CofreeMode mode;
  DirectedContainer object;
  ContainerMorphism counit_leg;  // pi : (S <| P) -> C0
  // Lifts a container morphism f0 : base(E') -> C0 to the directed
  // container morphism E' -> object.
  std::function<DCMorphism(const DirectedContainer& eprime, const ContainerMorphism& f0)>
      mediate;
};

CofreeBundle cofree(const Container& c0, CofreeMode mode, Fuel fuel);

// Node-labelled tree helpers shared with tests: a tree is
// pair(shape0, table-of-children); children are plain in recursive mode and
// suspended in depth-bounded mode.
Value cofree_unfold_constant(const Container& c0, const Value& s0);  // nu-tree, all nodes s0
Value cofree_chain(std::int64_t n);  // recursive maybe-tree of length n

// Universal-property report: {legs-are-dc-morphisms, triangles-commute,
// mediator-unique-within-bounds}; probes that are lawful and make the
// triangles commute must agree with the mediator on bounds.
LawReport check_universal_coproduct(const CoproductBundle& bundle, const DirectedContainer& f_target,
                                    const DCMorphism& f0, const DCMorphism& f1,
                                    const std::vector<DCMorphism>& probes, const Bounds& b);
LawReport check_universal_strict_product(const StrictProductBundle& bundle,
                                         const DirectedContainer& eprime, const DCMorphism& f0,
                                         const DCMorphism& f1,
                                         const std::vector<DCMorphism>& probes, const Bounds& b);
LawReport check_universal_cofree(const CofreeBundle& bundle, const DirectedContainer& eprime,
                                 const ContainerMorphism& f0,
                                 const std::vector<DCMorphism>& probes, const Bounds& b);

// Brute-force candidate morphisms src -> dst over the finite sub-container
// cut out by (shape_bound, pos_bound): every shape map into the first
// `target_shape_bound` target shapes crossed with every position table.
// Candidates are partial outside the cut; evaluating them there throws.
std::vector<DCMorphism> enumerate_candidate_morphisms(const DirectedContainer& src,
                                                      const DirectedContainer& dst,
                                                      std::uint64_t shape_bound,
                                                      std::uint64_t target_shape_bound,
                                                      std::uint64_t pos_bound);

}  // namespace dcont
