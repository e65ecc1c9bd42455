#include "dcont/directed.hpp"

namespace dcont {

Value dc_counit(const DirectedContainer& e, const DataStructure& d) {
  if (!d.container.same_object(e.base) &&
      e.base.shapes().contains(d.shape, Fuel{64}) == Tri::Unequal)
    fail("shape-not-in-container", "counit: shape " + render(d.shape));
  return d.payload(e.root(d.shape));
}

DataStructure dc_substructure(const DirectedContainer& e, const DataStructure& d, const Value& p) {
  Value s = d.shape;
  auto payload = d.payload;
  auto plus = e.plus;
  return DataStructure{e.base, e.down(s, p), [payload, plus, s, p](const Value& pp) {
                         return payload(plus(s, p, pp));
                       }};
}

DataStructure dc_comult(const DirectedContainer& e, const DataStructure& d) {
  if (!d.container.same_object(e.base) &&
      e.base.shapes().contains(d.shape, Fuel{64}) == Tri::Unequal)
    fail("shape-not-in-container", "comult: shape " + render(d.shape));
  DirectedContainer ec = e;
  DataStructure dc = d;
  return DataStructure{e.base, d.shape, [ec, dc](const Value& p) {
                         return encode_structure(dc_substructure(ec, dc, p));
                       }};
}

DataStructure dc_extend(const DirectedContainer& e,
                        const std::function<Value(const DataStructure&)>& f,
                        const DataStructure& d) {
  DirectedContainer ec = e;
  DataStructure dc = d;
  return DataStructure{e.base, d.shape, [ec, dc, f](const Value& p) {
                         return f(dc_substructure(ec, dc, p));
                       }};
}

ComonadWitness witness_of(const DirectedContainer& e) {
  DirectedContainer ec = e;
  return ComonadWitness{
      e.base, [ec](const DataStructure& d) { return dc_counit(ec, d); },
      [ec](const DataStructure& d) { return dc_comult(ec, d); }};
}

DirectedContainer dc_from_comonad(const ComonadWitness& w, std::string name) {
  Container c = w.container;
  auto comult = w.comult;
  auto counit = w.counit;
  // delta (s, id): outer shape must be s (fst (t^delta s) = s), payload at p
  // encodes the pair (s down p, \p'. p + {s} p').
  auto probe = [c, comult](const Value& s) {
    DataStructure dd = comult(identity_structure(c, s));
    if (value_eq(dd.shape, s, Fuel{32}) == Tri::Unequal)
      fail("shape-not-preserved", "comultiplication moved shape " + render(s) + " to " +
                                      render(dd.shape));
    return dd;
  };
  auto down = [probe](const Value& s, const Value& p) {
    return probe(s).payload(p).whnf().first();
  };
  auto root = [c, counit](const Value& s) { return counit(identity_structure(c, s)); };
  auto plus = [c, probe](const Value& s, const Value& p, const Value& pp) {
    const Value& cell = probe(s).payload(p).whnf();
    Value sub_shape = cell.first();
    return table_lookup_by_position(cell.second(), c.positions(sub_shape), pp, Fuel{64});
  };
  return DirectedContainer{std::move(name), c, std::move(down), std::move(root),
                           std::move(plus)};
}

DirectedContainer nonempty_suffix_dc() {
  return DirectedContainer{
      "nonempty-suffix", nonempty_list_container(),
      [](const Value& s, const Value& p) {
        return Value::integer(checked_sub(s.whnf().as_int(), p.whnf().as_int()));
      },
      [](const Value&) { return Value::integer(0); },
      [](const Value&, const Value& p, const Value& pp) {
        return Value::integer(checked_add(p.whnf().as_int(), pp.whnf().as_int()));
      }};
}

DirectedContainer nonempty_cyclic_dc() {
  return DirectedContainer{
      "nonempty-cyclic", nonempty_list_container(),
      [](const Value& s, const Value&) { return s.whnf(); },
      [](const Value&) { return Value::integer(0); },
      [](const Value& s, const Value& p, const Value& pp) {
        std::int64_t m = checked_add(s.whnf().as_int(), 1);
        return Value::integer(checked_mod(checked_add(p.whnf().as_int(), pp.whnf().as_int()), m));
      }};
}

DirectedContainer stream_dc() {
  return DirectedContainer{
      "stream", stream_container(), [](const Value&, const Value&) { return Value::unit(); },
      [](const Value&) { return Value::integer(0); },
      [](const Value&, const Value& p, const Value& pp) {
        return Value::integer(checked_add(p.whnf().as_int(), pp.whnf().as_int()));
      }};
}

namespace {
Container zipper_container() {
  static Container c("zipper", pair_enum(nat_enum(), nat_enum()), [](const Value& s) {
    const Value& w = s.whnf();
    return int_range_enum(-w.first().whnf().as_int(), w.second().whnf().as_int());
  });
  return c;
}
}  // namespace

DirectedContainer list_zipper_dc() {
  return DirectedContainer{
      "list-zipper", zipper_container(),
      [](const Value& s, const Value& p) {
        const Value& w = s.whnf();
        std::int64_t k = p.whnf().as_int();
        return Value::pair(Value::integer(checked_add(w.first().whnf().as_int(), k)),
                           Value::integer(checked_sub(w.second().whnf().as_int(), k)));
      },
      [](const Value&) { return Value::integer(0); },
      [](const Value&, const Value& p, const Value& pp) {
        return Value::integer(checked_add(p.whnf().as_int(), pp.whnf().as_int()));
      }};
}

DirectedContainer identity_dc() {
  return DirectedContainer{
      "identity", identity_container(),
      [](const Value& s, const Value&) { return s.whnf(); },
      [](const Value&) { return Value::unit(); },
      [](const Value&, const Value&, const Value& pp) { return pp.whnf(); }};
}

DirectedContainer focus_of(const Container& c0) {
  Container base("focus(" + c0.name() + ")",
                 sigma_enum(c0.shapes(), [c0](const Value& s) { return c0.positions(s); }),
                 [c0](const Value& sp) { return c0.positions(sp.whnf().first()); });
  return DirectedContainer{
      "focus(" + c0.name() + ")", base,
      [](const Value& sp, const Value& p) {
        return Value::pair(sp.whnf().first(), p);
      },
      [](const Value& sp) { return sp.whnf().second(); },
      [](const Value&, const Value&, const Value& pp) { return pp.whnf(); }};
}

DirectedContainer monoid_dc(const MonoidSpec& m) {
  Container base("monoid(" + m.name + ")", unit_enum(),
                 [carrier = m.carrier](const Value&) { return carrier; });
  auto op = m.op;
  return DirectedContainer{
      "monoid(" + m.name + ")", base,
      [](const Value&, const Value&) { return Value::unit(); },
      [u = m.unit](const Value&) { return u; },
      [op](const Value&, const Value& p, const Value& pp) { return op(p, pp); }};
}

DirectedContainer list_suffix_data() {
  return DirectedContainer{
      "list-suffix", list_container(),
      [](const Value& s, const Value& p) {
        return Value::integer(checked_sub(s.whnf().as_int(), p.whnf().as_int()));
      },
      [](const Value&) { return Value::integer(0); },
      [](const Value&, const Value& p, const Value& pp) {
        return Value::integer(checked_add(p.whnf().as_int(), pp.whnf().as_int()));
      }};
}

DCMorphism dc_head_over_suffix() {
  return DCMorphism{"head", nonempty_suffix_dc(), identity_dc(), head_morphism()};
}

DCMorphism dc_tail_over_suffix() {
  return DCMorphism{"tail", nonempty_suffix_dc(), list_suffix_data(), tail_morphism()};
}

DCMorphism dc_dropeven_over_suffix() {
  return DCMorphism{"drop-even", nonempty_suffix_dc(), nonempty_suffix_dc(),
                    dropeven_morphism()};
}

DCMorphism dc_selfappend_over_suffix() {
  return DCMorphism{"self-append", nonempty_suffix_dc(), nonempty_suffix_dc(),
                    selfappend_morphism()};
}

DCMorphism dc_reversal_over_suffix() {
  return DCMorphism{"reversal", nonempty_suffix_dc(), nonempty_suffix_dc(),
                    reversal_morphism()};
}

DCMorphism dc_head_over_cyclic() {
  return DCMorphism{"head", nonempty_cyclic_dc(), identity_dc(), head_morphism()};
}

DCMorphism dc_dropeven_over_cyclic() {
  return DCMorphism{"drop-even", nonempty_cyclic_dc(), nonempty_cyclic_dc(),
                    dropeven_morphism()};
}

DCMorphism dc_selfappend_over_cyclic() {
  return DCMorphism{"self-append", nonempty_cyclic_dc(), nonempty_cyclic_dc(),
                    selfappend_morphism()};
}

}  // namespace dcont
