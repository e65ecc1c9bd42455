#pragma once

#include "dcont/container.hpp"

namespace dcont {

// A container together with subshape (down), root and position translation
// (plus), subject to the five directed container laws (checked by the laws
// module, not by construction).
struct DirectedContainer {
  std::string name;
  Container base;
  std::function<Value(const Value& s, const Value& p)> down;
  std::function<Value(const Value& s)> root;
  // plus(s, p, p') with p : P s and p' : P (s `down` p).
  std::function<Value(const Value& s, const Value& p, const Value& pp)> plus;
};

// A container morphism read as a morphism between directed containers.
struct DCMorphism {
  std::string name;
  DirectedContainer source;
  DirectedContainer target;
  ContainerMorphism morphism;
};

// A comonad presented on an interpreted container: counit and
// comultiplication, the latter with payloads that are encoded structures.
struct ComonadWitness {
  Container container;
  std::function<Value(const DataStructure&)> counit;
  std::function<DataStructure(const DataStructure&)> comult;
};

// eps (s, v) = v (o {s})
Value dc_counit(const DirectedContainer& e, const DataStructure& d);

// delta (s, v) = (s, \p. (s down p, \p'. v (p + {s} p'))); payloads of the
// result are encoded sub-structures.
DataStructure dc_comult(const DirectedContainer& e, const DataStructure& d);

// The sub-structure rooted at p (one payload of dc_comult, un-encoded).
DataStructure dc_substructure(const DirectedContainer& e, const DataStructure& d, const Value& p);

// extend f = [[C]] f . delta
DataStructure dc_extend(const DirectedContainer& e,
                        const std::function<Value(const DataStructure&)>& f,
                        const DataStructure& d);

ComonadWitness witness_of(const DirectedContainer& e);

// Reads the directed structure off a comonad whose functor is [[C]]
// (quoting with identity-assignment probes); raises shape-not-preserved if
// the comultiplication moves the outer shape.
DirectedContainer dc_from_comonad(const ComonadWitness& w, std::string name = "from-comonad");

// Builtin catalog.
DirectedContainer nonempty_suffix_dc();
DirectedContainer nonempty_cyclic_dc();
DirectedContainer stream_dc();
DirectedContainer list_zipper_dc();
DirectedContainer identity_dc();
DirectedContainer focus_of(const Container& c0);

struct MonoidSpec {
  std::string name;
  Enumeration carrier;
  Value unit;
  std::function<Value(const Value&, const Value&)> op;
};
DirectedContainer monoid_dc(const MonoidSpec& m);

// Named registry used by the CLI and the acceptance suite; throws
// unknown-name for anything else.
DirectedContainer builtin(const std::string& name);
std::vector<std::string> builtin_names();

// List container with suffix-flavoured data (s down p = s - p, o = 0,
// plus = +). Not a lawful directed container (shape 0 has no root); it is
// the honest target for checking the tail morphism classification.
DirectedContainer list_suffix_data();

// The directed-container morphism classification catalog of section 3.1.
DCMorphism dc_head_over_suffix();
DCMorphism dc_tail_over_suffix();
DCMorphism dc_dropeven_over_suffix();
DCMorphism dc_selfappend_over_suffix();
DCMorphism dc_reversal_over_suffix();
DCMorphism dc_head_over_cyclic();
DCMorphism dc_dropeven_over_cyclic();
DCMorphism dc_selfappend_over_cyclic();

}  // namespace dcont
