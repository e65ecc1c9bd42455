#include "dcont/container.hpp"

namespace dcont {

struct Container::Impl {
  std::string name;
  Enumeration shapes;
  std::function<Enumeration(const Value&)> positions;
  std::optional<std::pair<Container, Container>> factors;
};

Container::Container(std::string name, Enumeration shapes,
                     std::function<Enumeration(const Value&)> positions)
    : impl_(std::make_shared<Impl>(
          Impl{std::move(name), std::move(shapes), std::move(positions), std::nullopt})) {}

const std::string& Container::name() const { return impl_->name; }
const Enumeration& Container::shapes() const { return impl_->shapes; }
Enumeration Container::positions(const Value& shape) const { return impl_->positions(shape); }

void Container::set_factors(Container left, Container right) {
  impl_->factors = std::make_pair(std::move(left), std::move(right));
}

std::optional<std::pair<Container, Container>> Container::factors() const {
  return impl_->factors;
}

DataStructure identity_structure(const Container& c, const Value& shape) {
  return DataStructure{c, shape, [](const Value& p) { return p; }};
}

namespace {

Value stream_table(const Enumeration& e, std::function<Value(const Value&)> entry,
                   std::uint64_t start) {
  return Value::suspend([e, entry, start]() -> Value {
    auto v = e.at(start);
    if (!v) return Value::nothing();
    return Value::just(Value::pair(entry(*v), stream_table(e, entry, start + 1)));
  });
}

void check_belongs(const Container& c, const DataStructure& d, const char* who) {
  if (d.container.same_object(c)) return;
  if (c.shapes().contains(d.shape, Fuel{64}) == Tri::Unequal)
    fail("shape-not-in-container", std::string(who) + ": shape " + render(d.shape) +
                                       " is not a shape of " + c.name());
}

}  // namespace

Value table_from_enum(const Enumeration& e, std::function<Value(const Value&)> entry) {
  auto card = e.cardinality();
  if (!card) return stream_table(e, std::move(entry), 0);
  std::vector<Value> items;
  items.reserve(*card);
  for (std::uint64_t i = 0; i < *card; ++i) {
    auto v = e.at(i);
    if (!v) break;
    items.push_back(entry(*v));
  }
  return Value::sequence(std::move(items));
}

Value table_lookup(const Value& table, std::uint64_t index) {
  Value cell = table;
  while (true) {
    Value w = cell.whnf();
    if (w.kind() == Value::Kind::Sequence) {
      const auto& xs = w.items();
      if (index >= xs.size())
        fail("position-out-of-table", "index " + std::to_string(index) + " in table of size " +
                                          std::to_string(xs.size()));
      return xs[index];
    }
    if (w.kind() == Value::Kind::Option) {
      if (!w.is_just()) fail("position-out-of-table", "stream table ended early");
      Value pairv = w.option_payload();
      if (index == 0) return pairv.first();
      --index;
      cell = pairv.second();
      continue;
    }
    fail("malformed-nesting", "not a table: " + render(w, Fuel{3}));
  }
}

Value table_lookup_by_position(const Value& table, const Enumeration& positions, const Value& pos,
                               Fuel fuel) {
  std::uint64_t limit = positions.cardinality().value_or(4096);
  auto idx = positions.index_of(pos, limit, fuel);
  if (!idx)
    fail("position-not-found", "position " + render(pos) + " not in the table's position set");
  return table_lookup(table, *idx);
}

Value encode_structure(const DataStructure& d) {
  Enumeration pos = d.container.positions(d.shape);
  return Value::pair(d.shape, table_from_enum(pos, d.payload));
}

DataStructure decode_structure(const Container& c, const Value& v, Fuel lookup_fuel) {
  const Value& w = v.whnf();
  if (w.kind() != Value::Kind::Pair) fail("malformed-nesting", "expected encoded structure");
  Value shape = w.first();
  Value table = w.second();
  return DataStructure{
      c, shape, [c, shape, table, lookup_fuel](const Value& p) {
        return table_lookup_by_position(table, c.positions(shape), p, lookup_fuel);
      }};
}

DataStructure interpret_map(const Container& c, const std::function<Value(const Value&)>& f,
                            const DataStructure& d) {
  check_belongs(c, d, "interpret_map");
  auto payload = d.payload;
  return DataStructure{c, d.shape, [f, payload](const Value& p) { return f(payload(p)); }};
}

DataStructure apply_morphism(const ContainerMorphism& h, const DataStructure& d) {
  check_belongs(h.source, d, "apply_morphism");
  Value s = d.shape;
  auto q = h.position_map;
  auto payload = d.payload;
  Enumeration domain = h.source.positions(s);
  return DataStructure{h.target, h.shape_map(s), [q, s, payload, domain](const Value& pp) {
                         Value p = q(s, pp);
                         if (domain.contains(p, Fuel{64}) == Tri::Unequal)
                           fail("position-map-out-of-range",
                                "q " + render(pp) + " = " + render(p) +
                                    " is not a position of shape " + render(s));
                         return payload(p);
                       }};
}

ContainerMorphism quote_transformation(
    const std::function<DataStructure(const DataStructure&)>& tau, const Container& c,
    const Container& c_target) {
  auto probe = [tau, c, c_target](const Value& s) {
    DataStructure r = tau(identity_structure(c, s));
    if (c_target.shapes().contains(r.shape, Fuel{64}) == Tri::Unequal)
      fail("shape-not-in-container",
           "quoted transformation produced shape " + render(r.shape) + " outside " +
               c_target.name());
    return r;
  };
  return ContainerMorphism{
      c, c_target, [probe](const Value& s) { return probe(s).shape; },
      [probe](const Value& s, const Value& pp) { return probe(s).payload(pp); }};
}

ContainerMorphism identity_morphism(const Container& c) {
  return ContainerMorphism{c, c, [](const Value& s) { return s; },
                           [](const Value&, const Value& p) { return p; }};
}

ContainerMorphism compose_morphisms(const ContainerMorphism& h, const ContainerMorphism& hp) {
  if (!hp.target.same_object(h.source))
    fail("container-mismatch", "compose: middle containers differ (" + hp.target.name() +
                                   " vs " + h.source.name() + ")");
  auto t1 = h.shape_map, t2 = hp.shape_map;
  auto q1 = h.position_map, q2 = hp.position_map;
  return ContainerMorphism{hp.source, h.target,
                           [t1, t2](const Value& s) { return t1(t2(s)); },
                           [q1, q2, t2](const Value& s, const Value& ppp) {
                             return q2(s, q1(t2(s), ppp));
                           }};
}

Container identity_container() {
  static Container c("cId", unit_enum(), [](const Value&) { return unit_enum(); });
  return c;
}

Container container_compose(const Container& c0, const Container& c1) {
  Enumeration shapes = sigma_enum(c0.shapes(), [c0, c1](const Value& s0) -> Enumeration {
    auto card = c0.positions(s0).cardinality();
    if (!card) {
      // Function tables over an infinite domain cannot be enumerated, but
      // membership must stay indeterminate rather than definitively false.
      return Enumeration([](std::uint64_t) { return std::nullopt; }, std::nullopt,
                         [](const Value&) { return std::nullopt; });
    }
    return tuple_enum(c1.shapes(), *card);
  });
  auto positions = [c0, c1](const Value& shape) -> Enumeration {
    const Value& w = shape.whnf();
    Value s0 = w.first();
    Value table = w.second();
    Enumeration outer = c0.positions(s0);
    return sigma_enum(outer, [c1, table, outer](const Value& p0) {
      return c1.positions(table_lookup_by_position(table, outer, p0, Fuel{16}));
    });
  };
  Container out("(" + c0.name() + " . " + c1.name() + ")", std::move(shapes),
                std::move(positions));
  out.set_factors(c0, c1);
  return out;
}

ContainerMorphism hcompose_morphisms(const Container& src_composite,
                                     const Container& dst_composite,
                                     const ContainerMorphism& h0, const ContainerMorphism& h1) {
  auto sf = src_composite.factors();
  auto df = dst_composite.factors();
  if (!sf || !df) fail("container-mismatch", "hcompose needs composite containers");
  if (!sf->first.same_object(h0.source) || !sf->second.same_object(h1.source) ||
      !df->first.same_object(h0.target) || !df->second.same_object(h1.target))
    fail("container-mismatch", "hcompose factor containers do not line up");
  Container c0 = sf->first, c1 = sf->second;
  Container d0 = df->first;
  auto t = [h0, h1, c0, d0](const Value& shape) -> Value {
    const Value& w = shape.whnf();
    Value s0 = w.first();
    Value table = w.second();
    Enumeration src_pos = c0.positions(s0);
    Value ts0 = h0.shape_map(s0);
    Value new_table =
        table_from_enum(d0.positions(ts0), [h0, h1, s0, table, src_pos](const Value& p0t) {
          Value p0 = h0.position_map(s0, p0t);
          return h1.shape_map(table_lookup_by_position(table, src_pos, p0, Fuel{16}));
        });
    return Value::pair(ts0, new_table);
  };
  auto q = [h0, h1, c0](const Value& shape, const Value& pt) -> Value {
    const Value& w = shape.whnf();
    Value s0 = w.first();
    Value table = w.second();
    Enumeration src_pos = c0.positions(s0);
    const Value& p = pt.whnf();
    Value p0 = h0.position_map(s0, p.first());
    Value inner_shape = table_lookup_by_position(table, src_pos, p0, Fuel{16});
    return Value::pair(p0, h1.position_map(inner_shape, p.second()));
  };
  return ContainerMorphism{src_composite, dst_composite, std::move(t), std::move(q)};
}

DataStructure unit_intro(const Value& payload) {
  return DataStructure{identity_container(), Value::unit(),
                       [payload](const Value&) { return payload; }};
}

DataStructure merge_structure(const Container& composite, const DataStructure& outer) {
  auto f = composite.factors();
  if (!f) fail("malformed-nesting", "merge target is not a composite container");
  Container c0 = f->first, c1 = f->second;
  check_belongs(c0, outer, "merge");
  Value s0 = outer.shape;
  Enumeration outer_pos = c0.positions(s0);
  auto payload = outer.payload;
  Value shape_table = table_from_enum(outer_pos, [payload](const Value& p0) {
    return payload(p0).whnf().first();
  });
  Value shape = Value::pair(s0, shape_table);
  auto assign = [payload, c1](const Value& pos) -> Value {
    const Value& p = pos.whnf();
    const Value& enc = payload(p.first()).whnf();
    if (enc.kind() != Value::Kind::Pair)
      fail("malformed-nesting", "merge payload is not an encoded structure");
    return table_lookup_by_position(enc.second(), c1.positions(enc.first()), p.second(),
                                    Fuel{16});
  };
  return DataStructure{composite, shape, std::move(assign)};
}

DataStructure split_structure(const DataStructure& composed) {
  auto f = composed.container.factors();
  if (!f) fail("malformed-nesting", "split source is not a composite container");
  Container c0 = f->first, c1 = f->second;
  const Value& w = composed.shape.whnf();
  Value s0 = w.first();
  Value table = w.second();
  Enumeration outer_pos = c0.positions(s0);
  auto payload = composed.payload;
  auto assign = [payload, table, outer_pos, c1](const Value& p0) -> Value {
    Value inner_shape = table_lookup_by_position(table, outer_pos, p0, Fuel{16});
    Value inner_table = table_from_enum(
        c1.positions(inner_shape),
        [payload, p0](const Value& p1) { return payload(Value::pair(p0, p1)); });
    return Value::pair(inner_shape, inner_table);
  };
  return DataStructure{c0, s0, std::move(assign)};
}

Container container_product(const Container& c0, const Container& c1) {
  Enumeration shapes = pair_enum(c0.shapes(), c1.shapes());
  auto positions = [c0, c1](const Value& s) {
    const Value& w = s.whnf();
    return sum_enum(c0.positions(w.first()), c1.positions(w.second()));
  };
  return Container("(" + c0.name() + " x " + c1.name() + ")", std::move(shapes),
                   std::move(positions));
}

Container container_coproduct(const Container& c0, const Container& c1) {
  Enumeration shapes = sum_enum(c0.shapes(), c1.shapes());
  auto positions = [c0, c1](const Value& s) {
    const Value& w = s.whnf();
    return w.is_inl() ? c0.positions(w.sum_payload()) : c1.positions(w.sum_payload());
  };
  return Container("(" + c0.name() + " + " + c1.name() + ")", std::move(shapes),
                   std::move(positions));
}

Container container_exponential(const Enumeration& k, const Container& c0) {
  auto card = k.cardinality();
  if (!card) fail("exponential-non-finite", "exponential needs a finite exponent set");
  Enumeration shapes = tuple_enum(c0.shapes(), *card);
  auto positions = [k, c0](const Value& f) {
    Enumeration keys = k;
    Value table = f;
    return sigma_enum(keys, [c0, table, keys](const Value& key) {
      return c0.positions(table_lookup_by_position(table, keys, key, Fuel{16}));
    });
  };
  return Container("(" + std::to_string(*card) + " -> " + c0.name() + ")", std::move(shapes),
                   std::move(positions));
}

Container list_container() {
  static Container c("list", nat_enum(),
                     [](const Value& s) { return fin_enum(s.whnf().as_int()); });
  return c;
}

Container nonempty_list_container() {
  static Container c("nelist", nat_enum(), [](const Value& s) {
    return fin_enum(checked_add(s.whnf().as_int(), 1));
  });
  return c;
}

Container stream_container() {
  static Container c("stream", unit_enum(), [](const Value&) { return nat_enum(); });
  return c;
}

Container maybe_container() {
  static Container c("maybe",
                     of_values({Value::inl(Value::unit()), Value::inr(Value::unit())}),
                     [](const Value& s) {
                       return s.whnf().is_inl() ? empty_enum() : fin_enum(1);
                     });
  return c;
}

Container alphabet_container(std::int64_t k) {
  return Container("alphabet" + std::to_string(k), unit_enum(),
                   [k](const Value&) { return fin_enum(k); });
}

ContainerMorphism head_morphism() {
  return ContainerMorphism{nonempty_list_container(), identity_container(),
                           [](const Value&) { return Value::unit(); },
                           [](const Value&, const Value&) { return Value::integer(0); }};
}

ContainerMorphism list_head_morphism() {
  return ContainerMorphism{list_container(), identity_container(),
                           [](const Value&) { return Value::unit(); },
                           [](const Value&, const Value&) { return Value::integer(0); }};
}

ContainerMorphism tail_morphism() {
  return ContainerMorphism{
      nonempty_list_container(), list_container(), [](const Value& s) { return s.whnf(); },
      [](const Value&, const Value& p) {
        return Value::integer(checked_add(p.whnf().as_int(), 1));
      }};
}

ContainerMorphism list_tail_morphism() {
  return ContainerMorphism{
      list_container(), list_container(),
      [](const Value& s) { return Value::integer(checked_sub(s.whnf().as_int(), 1)); },
      [](const Value&, const Value& p) {
        return Value::integer(checked_add(p.whnf().as_int(), 1));
      }};
}

ContainerMorphism dropeven_morphism() {
  return ContainerMorphism{
      nonempty_list_container(), nonempty_list_container(),
      [](const Value& s) { return Value::integer(checked_div(s.whnf().as_int(), 2)); },
      [](const Value&, const Value& p) {
        return Value::integer(checked_mul(p.whnf().as_int(), 2));
      }};
}

ContainerMorphism selfappend_morphism() {
  return ContainerMorphism{
      nonempty_list_container(), nonempty_list_container(),
      [](const Value& s) {
        return Value::integer(checked_add(checked_mul(s.whnf().as_int(), 2), 1));
      },
      [](const Value& s, const Value& p) {
        return Value::integer(checked_mod(p.whnf().as_int(), checked_add(s.whnf().as_int(), 1)));
      }};
}

ContainerMorphism reversal_morphism() {
  return ContainerMorphism{
      nonempty_list_container(), nonempty_list_container(),
      [](const Value& s) { return s.whnf(); },
      [](const Value& s, const Value& p) {
        return Value::integer(checked_sub(s.whnf().as_int(), p.whnf().as_int()));
      }};
}

}  // namespace dcont
