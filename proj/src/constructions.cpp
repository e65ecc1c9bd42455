#include "dcont/constructions.hpp"

#include <mutex>

namespace dcont {

namespace {

Value tree_root(const Value& t) { return t.whnf().first(); }
Value tree_table(const Value& t) { return t.whnf().second(); }

}  // namespace

LawReport check_strict_laws(const StrictDirectedContainer& k, const Bounds& b) {
  Fuel fuel = b.position_fuel;
  std::uint64_t pb = static_cast<std::uint64_t>(fuel.depth);

  LawCheck l1("strict-law-1");
  for_shapes(k.shapes, b.shape_bound, l1, [&](const Value& s) {
    for_each_bounded(k.strict_positions(s), pb, l1, [&](const Value& p) {
      l1.guarded({bind("s", s), bind("p", p)}, [&] {
        Value sub = k.down_plus(s, p);
        for_each_bounded(k.strict_positions(sub), pb, l1, [&](const Value& pp) {
          l1.guarded({bind("s", s), bind("p", p), bind("p'", pp)}, [&] {
            l1.case_eq(k.down_plus(s, k.plus_plus(s, p, pp)), k.down_plus(sub, pp), fuel,
                       {bind("s", s), bind("p", p), bind("p'", pp)});
          });
        });
      });
    });
  });

  LawCheck l2("strict-law-2");
  for_shapes(k.shapes, b.shape_bound, l2, [&](const Value& s) {
    for_each_bounded(k.strict_positions(s), pb, l2, [&](const Value& p) {
      l2.guarded({bind("s", s), bind("p", p)}, [&] {
        Value sub = k.down_plus(s, p);
        for_each_bounded(k.strict_positions(sub), pb, l2, [&](const Value& pp) {
          l2.guarded({bind("s", s), bind("p", p), bind("p'", pp)}, [&] {
            Value sub2 = k.down_plus(sub, pp);
            for_each_bounded(k.strict_positions(sub2), pb, l2, [&](const Value& ppp) {
              l2.guarded({bind("s", s), bind("p", p), bind("p'", pp), bind("p''", ppp)}, [&] {
                l2.case_eq(k.plus_plus(s, k.plus_plus(s, p, pp), ppp),
                           k.plus_plus(s, p, k.plus_plus(sub, pp, ppp)), fuel,
                           {bind("s", s), bind("p", p), bind("p'", pp), bind("p''", ppp)});
              });
            });
          });
        });
      });
    });
  });

  LawReport report;
  report.entries = {l1.finish(), l2.finish()};
  return report;
}

DirectedContainer strict_to_dc(const StrictDirectedContainer& k) {
  Container base(k.name, k.shapes, [k](const Value& s) { return option_enum(k.strict_positions(s)); });
  auto down = [k](const Value& s, const Value& p) -> Value {
    const Value& w = p.whnf();
    if (!w.is_just()) return s;
    return k.down_plus(s, w.option_payload());
  };
  auto root = [](const Value&) { return Value::nothing(); };
  auto plus = [k](const Value& s, const Value& p, const Value& pp) -> Value {
    const Value& wp = p.whnf();
    if (!wp.is_just()) return pp.whnf();
    const Value& wpp = pp.whnf();
    if (!wpp.is_just()) return wp;
    return Value::just(k.plus_plus(s, wp.option_payload(), wpp.option_payload()));
  };
  return DirectedContainer{k.name, std::move(base), std::move(down), std::move(root),
                           std::move(plus)};
}

StrictDirectedContainer strict_suffix() {
  return StrictDirectedContainer{
      "strict-suffix", nat_enum(),
      [](const Value& s) { return int_range_enum(1, s.whnf().as_int()); },
      [](const Value& s, const Value& p) {
        return Value::integer(checked_sub(s.whnf().as_int(), p.whnf().as_int()));
      },
      [](const Value&, const Value& p, const Value& pp) {
        return Value::integer(checked_add(p.whnf().as_int(), pp.whnf().as_int()));
      }};
}

StrictDirectedContainer strict_posnat_monoid() {
  Enumeration posnat = map_enum(
      nat_enum(),
      [](const Value& v) { return Value::integer(checked_add(v.whnf().as_int(), 1)); },
      [](const Value& v) -> std::optional<Value> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int || w.as_int() < 1) return std::nullopt;
        return Value::integer(w.as_int() - 1);
      });
  return StrictDirectedContainer{
      "posnat-monoid", unit_enum(), [posnat](const Value&) { return posnat; },
      [](const Value&, const Value&) { return Value::unit(); },
      [](const Value&, const Value& p, const Value& pp) {
        return Value::integer(checked_add(p.whnf().as_int(), pp.whnf().as_int()));
      }};
}

CoproductBundle dc_coproduct(const DirectedContainer& e0, const DirectedContainer& e1) {
  Container base = container_coproduct(e0.base, e1.base);
  auto down = [e0, e1](const Value& s, const Value& p) -> Value {
    const Value& w = s.whnf();
    if (w.is_inl()) return Value::inl(e0.down(w.sum_payload(), p));
    return Value::inr(e1.down(w.sum_payload(), p));
  };
  auto root = [e0, e1](const Value& s) -> Value {
    const Value& w = s.whnf();
    return w.is_inl() ? e0.root(w.sum_payload()) : e1.root(w.sum_payload());
  };
  auto plus = [e0, e1](const Value& s, const Value& p, const Value& pp) -> Value {
    const Value& w = s.whnf();
    return w.is_inl() ? e0.plus(w.sum_payload(), p, pp) : e1.plus(w.sum_payload(), p, pp);
  };
  DirectedContainer object{e0.name + "+" + e1.name, base, std::move(down), std::move(root),
                           std::move(plus)};

  ContainerMorphism inl_m{e0.base, base, [](const Value& s) { return Value::inl(s.whnf()); },
                          [](const Value&, const Value& p) { return p; }};
  ContainerMorphism inr_m{e1.base, base, [](const Value& s) { return Value::inr(s.whnf()); },
                          [](const Value&, const Value& p) { return p; }};
  DCMorphism inl_leg{"inl", e0, object, std::move(inl_m)};
  DCMorphism inr_leg{"inr", e1, object, std::move(inr_m)};

  auto copair = [object, base](const DirectedContainer& f_target, const DCMorphism& f0,
                               const DCMorphism& f1) -> DCMorphism {
    ContainerMorphism m{
        base, f_target.base,
        [f0, f1](const Value& s) {
          const Value& w = s.whnf();
          return w.is_inl() ? f0.morphism.shape_map(w.sum_payload())
                            : f1.morphism.shape_map(w.sum_payload());
        },
        [f0, f1](const Value& s, const Value& p) {
          const Value& w = s.whnf();
          return w.is_inl() ? f0.morphism.position_map(w.sum_payload(), p)
                            : f1.morphism.position_map(w.sum_payload(), p);
        }};
    return DCMorphism{"copair", object, f_target, std::move(m)};
  };

  return CoproductBundle{e0, e1, object, inl_leg, inr_leg, std::move(copair)};
}

namespace {

// Canonical seeded product trees: the two components evolve independently.
Value sp_tree0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& a, const Value& b);
Value sp_tree1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& a, const Value& b);

Value sp_tree0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& a, const Value& b) {
  return Value::pair(a, table_from_enum(k0.strict_positions(a), [k0, k1, a, b](const Value& p) {
                       return Value::suspend([k0, k1, a, b, p] {
                         return sp_tree1(k0, k1, k0.down_plus(a, p), b);
                       });
                     }));
}

Value sp_tree1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& a, const Value& b) {
  return Value::pair(b, table_from_enum(k1.strict_positions(b), [k0, k1, a, b](const Value& p) {
                       return Value::suspend([k0, k1, a, b, p] {
                         return sp_tree0(k0, k1, a, k1.down_plus(b, p));
                       });
                     }));
}

Value sp_child0(const StrictDirectedContainer& k0, const Value& t0, const Value& p) {
  return table_lookup_by_position(tree_table(t0), k0.strict_positions(tree_root(t0)), p,
                                  Fuel{32});
}

Value sp_child1(const StrictDirectedContainer& k1, const Value& t1, const Value& p) {
  return table_lookup_by_position(tree_table(t1), k1.strict_positions(tree_root(t1)), p,
                                  Fuel{32});
}

// Re-indexed node after a strict step p: (s dn+ p, \p'. v (p +^+ p')).
Value sp_shift0(const StrictDirectedContainer& k0, const Value& t0, const Value& p) {
  Value a = tree_root(t0);
  Value table = tree_table(t0);
  Value sub = k0.down_plus(a, p);
  Enumeration old_pos = k0.strict_positions(a);
  return Value::pair(sub, table_from_enum(k0.strict_positions(sub),
                                          [k0, a, p, table, old_pos](const Value& q) {
                                            return Value::suspend([k0, a, p, table, old_pos, q] {
                                              return table_lookup_by_position(
                                                         table, old_pos, k0.plus_plus(a, p, q),
                                                         Fuel{32})
                                                  .whnf();
                                            });
                                          }));
}

Value sp_shift1(const StrictDirectedContainer& k1, const Value& t1, const Value& p) {
  Value b = tree_root(t1);
  Value table = tree_table(t1);
  Value sub = k1.down_plus(b, p);
  Enumeration old_pos = k1.strict_positions(b);
  return Value::pair(sub, table_from_enum(k1.strict_positions(sub),
                                          [k1, b, p, table, old_pos](const Value& q) {
                                            return Value::suspend([k1, b, p, table, old_pos, q] {
                                              return table_lookup_by_position(
                                                         table, old_pos, k1.plus_plus(b, p, q),
                                                         Fuel{32})
                                                  .whnf();
                                            });
                                          }));
}

Value sp_down0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t0, const Value& w);
Value sp_down1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t1, const Value& w);

Value sp_down0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t0, const Value& w) {
  const Value& word = w.whnf();
  Value p0 = word.first();
  const Value& rest = word.second().whnf();
  if (!rest.is_just()) return Value::pair(sp_shift0(k0, t0, p0), sp_child0(k0, t0, p0));
  return sp_down1(k0, k1, sp_child0(k0, t0, p0), rest.option_payload());
}

Value sp_down1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t1, const Value& w) {
  const Value& word = w.whnf();
  Value p1 = word.first();
  const Value& rest = word.second().whnf();
  if (!rest.is_just()) return Value::pair(sp_child1(k1, t1, p1), sp_shift1(k1, t1, p1));
  return sp_down0(k0, k1, sp_child1(k1, t1, p1), rest.option_payload());
}

Value sp_plus0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t0, const Value& w, const Value& rhs);
Value sp_plus1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t1, const Value& w, const Value& rhs);

Value sp_plus0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t0, const Value& w, const Value& rhs) {
  const Value& word = w.whnf();
  Value p0 = word.first();
  const Value& rest = word.second().whnf();
  if (rest.is_just())
    return Value::pair(p0, Value::just(sp_plus1(k0, k1, sp_child0(k0, t0, p0),
                                                rest.option_payload(), rhs)));
  const Value& r = rhs.whnf();
  if (r.is_inl()) {
    const Value& rw = r.sum_payload().whnf();
    return Value::pair(k0.plus_plus(tree_root(t0), p0, rw.first()), rw.second());
  }
  return Value::pair(p0, Value::just(r.sum_payload()));
}

Value sp_plus1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
               const Value& t1, const Value& w, const Value& rhs) {
  const Value& word = w.whnf();
  Value p1 = word.first();
  const Value& rest = word.second().whnf();
  if (rest.is_just())
    return Value::pair(p1, Value::just(sp_plus0(k0, k1, sp_child1(k1, t1, p1),
                                                rest.option_payload(), rhs)));
  const Value& r = rhs.whnf();
  if (r.is_inl()) return Value::pair(p1, Value::just(r.sum_payload()));
  const Value& rw = r.sum_payload().whnf();
  return Value::pair(k1.plus_plus(tree_root(t1), p1, rw.first()), rw.second());
}

Enumeration sp_words0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
                      const Value& t0, int depth);
Enumeration sp_words1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
                      const Value& t1, int depth);

Enumeration sp_words0(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
                      const Value& t0, int depth) {
  if (depth <= 0) return empty_enum();
  return sigma_enum(k0.strict_positions(tree_root(t0)), [k0, k1, t0, depth](const Value& p) {
    return option_enum(sp_words1(k0, k1, sp_child0(k0, t0, p), depth - 1));
  });
}

Enumeration sp_words1(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
                      const Value& t1, int depth) {
  if (depth <= 0) return empty_enum();
  return sigma_enum(k1.strict_positions(tree_root(t1)), [k0, k1, t1, depth](const Value& p) {
    return option_enum(sp_words0(k0, k1, sp_child1(k1, t1, p), depth - 1));
  });
}

}  // namespace

Value strict_product_shape(const StrictDirectedContainer& k0, const StrictDirectedContainer& k1,
                           const Value& s0, const Value& s1) {
  return Value::pair(sp_tree0(k0, k1, s0, s1), sp_tree1(k0, k1, s0, s1));
}

StrictProductBundle strict_product(const StrictDirectedContainer& k0,
                                   const StrictDirectedContainer& k1, Fuel fuel) {
  int depth = fuel.depth;
  Enumeration shapes =
      map_enum(pair_enum(k0.shapes, k1.shapes), [k0, k1](const Value& v) {
        const Value& w = v.whnf();
        return strict_product_shape(k0, k1, w.first(), w.second());
      });
  auto strict_positions = [k0, k1, depth](const Value& s) -> Enumeration {
    const Value& w = s.whnf();
    return sum_enum(sp_words0(k0, k1, w.first(), depth), sp_words1(k0, k1, w.second(), depth));
  };
  auto down_plus = [k0, k1](const Value& s, const Value& p) -> Value {
    const Value& w = s.whnf();
    const Value& pp = p.whnf();
    if (pp.is_inl()) return sp_down0(k0, k1, w.first(), pp.sum_payload());
    return sp_down1(k0, k1, w.second(), pp.sum_payload());
  };
  auto plus_plus = [k0, k1](const Value& s, const Value& p, const Value& rhs) -> Value {
    const Value& w = s.whnf();
    const Value& pp = p.whnf();
    if (pp.is_inl()) return Value::inl(sp_plus0(k0, k1, w.first(), pp.sum_payload(), rhs));
    return Value::inr(sp_plus1(k0, k1, w.second(), pp.sum_payload(), rhs));
  };
  StrictDirectedContainer object_strict{k0.name + "*" + k1.name, std::move(shapes),
                                        std::move(strict_positions), std::move(down_plus),
                                        std::move(plus_plus)};

  DirectedContainer object = strict_to_dc(object_strict);
  DirectedContainer left_dc = strict_to_dc(k0);
  DirectedContainer right_dc = strict_to_dc(k1);

  ContainerMorphism pi0_m{
      object.base, left_dc.base,
      [](const Value& s) { return tree_root(s.whnf().first()); },
      [](const Value&, const Value& p) -> Value {
        const Value& w = p.whnf();
        if (!w.is_just()) return Value::nothing();
        return Value::just(
            Value::inl(Value::pair(w.option_payload(), Value::nothing())));
      }};
  ContainerMorphism pi1_m{
      object.base, right_dc.base,
      [](const Value& s) { return tree_root(s.whnf().second()); },
      [](const Value&, const Value& p) -> Value {
        const Value& w = p.whnf();
        if (!w.is_just()) return Value::nothing();
        return Value::just(
            Value::inr(Value::pair(w.option_payload(), Value::nothing())));
      }};
  DCMorphism pi0{"pi0", object, left_dc, std::move(pi0_m)};
  DCMorphism pi1{"pi1", object, right_dc, std::move(pi1_m)};

  auto mediate = [k0, k1, object](const DirectedContainer& ep, const DCMorphism& f0,
                                  const DCMorphism& f1) -> DCMorphism {
    // Shapes by mutual corecursion, positions by mutual recursion.
    struct Rec {
      StrictDirectedContainer k0, k1;
      DirectedContainer ep;
      ContainerMorphism f0, f1;

      Value tf0(const Value& s) const {
        Value ts = f0.shape_map(s);
        auto self = *this;
        return Value::pair(ts, table_from_enum(k0.strict_positions(ts),
                                               [self, s](const Value& p) {
                                                 return Value::suspend([self, s, p] {
                                                   return self.tf1(self.ep.down(
                                                       s, self.f0.position_map(
                                                              s, Value::just(p))));
                                                 });
                                               }));
      }
      Value tf1(const Value& s) const {
        Value ts = f1.shape_map(s);
        auto self = *this;
        return Value::pair(ts, table_from_enum(k1.strict_positions(ts),
                                               [self, s](const Value& p) {
                                                 return Value::suspend([self, s, p] {
                                                   return self.tf0(self.ep.down(
                                                       s, self.f1.position_map(
                                                              s, Value::just(p))));
                                                 });
                                               }));
      }
      Value qf0(const Value& s, const Value& w) const {
        const Value& word = w.whnf();
        Value qp = f0.position_map(s, Value::just(word.first()));
        const Value& rest = word.second().whnf();
        if (!rest.is_just()) return qp;
        return ep.plus(s, qp, qf1(ep.down(s, qp), rest.option_payload()));
      }
      Value qf1(const Value& s, const Value& w) const {
        const Value& word = w.whnf();
        Value qp = f1.position_map(s, Value::just(word.first()));
        const Value& rest = word.second().whnf();
        if (!rest.is_just()) return qp;
        return ep.plus(s, qp, qf0(ep.down(s, qp), rest.option_payload()));
      }
    };
    auto rec = std::make_shared<Rec>(Rec{k0, k1, ep, f0.morphism, f1.morphism});
    ContainerMorphism m{
        ep.base, object.base,
        [rec](const Value& s) { return Value::pair(rec->tf0(s), rec->tf1(s)); },
        [rec, ep](const Value& s, const Value& p) -> Value {
          const Value& w = p.whnf();
          if (!w.is_just()) return ep.root(s);
          const Value& tagged = w.option_payload().whnf();
          if (tagged.is_inl()) return rec->qf0(s, tagged.sum_payload());
          return rec->qf1(s, tagged.sum_payload());
        }};
    return DCMorphism{"mediator", ep, object, std::move(m)};
  };

  return StrictProductBundle{k0,  k1,  object_strict, object, left_dc,
                             right_dc, pi0, pi1,      mediate};
}

namespace {

Value cf_child(const Container& c0, const Value& tree, const Value& p) {
  const Value& w = tree.whnf();
  return table_lookup_by_position(w.second(), c0.positions(w.first()), p, Fuel{32});
}

Value cf_down(const Container& c0, const Value& tree, const Value& pos) {
  const Value& p = pos.whnf();
  if (p.is_inl()) return tree.whnf();
  const Value& step = p.sum_payload().whnf();
  return cf_down(c0, cf_child(c0, tree, step.first()), step.second());
}

Value cf_plus(const Container& c0, const Value& tree, const Value& p, const Value& pp) {
  const Value& w = p.whnf();
  if (w.is_inl()) return pp.whnf();
  const Value& step = w.sum_payload().whnf();
  return Value::inr(Value::pair(
      step.first(), cf_plus(c0, cf_child(c0, tree, step.first()), step.second(), pp)));
}

// Paths ordered by weight; weight(inl *) = 0, weight(inr (p_k, sub)) =
// 1 + k + weight(sub) with k the index of p. Fair for infinite branching.
bool cf_nth_path_of_weight(const Container& c0, const Value& tree, std::uint64_t d,
                           std::uint64_t& i, Value& out) {
  if (d == 0) {
    if (i == 0) {
      out = Value::inl(Value::unit());
      return true;
    }
    --i;
    return false;
  }
  Enumeration pos = c0.positions(tree_root(tree));
  std::uint64_t budget = d - 1;
  for (std::uint64_t k = 0; k <= budget; ++k) {
    auto p = pos.at(k);
    if (!p) break;
    Value sub;
    if (cf_nth_path_of_weight(c0, cf_child(c0, tree, *p), budget - k, i, sub)) {
      out = Value::inr(Value::pair(*p, sub));
      return true;
    }
  }
  return false;
}

std::uint64_t cf_count_paths(const Container& c0, const Value& tree) {
  const Value& w = tree.whnf();
  Enumeration pos = c0.positions(w.first());
  std::uint64_t total = 1;
  auto card = pos.cardinality();
  if (!card) fail("fuel-exhausted", "counting paths of a tree with infinite branching");
  for (std::uint64_t k = 0; k < *card; ++k) {
    auto p = pos.at(k);
    if (!p) break;
    total += cf_count_paths(c0, cf_child(c0, tree, *p));
  }
  return total;
}

Enumeration cf_paths(const Container& c0, const Value& tree, bool finite_tree) {
  std::optional<std::uint64_t> card;
  if (finite_tree) card = cf_count_paths(c0, tree);
  auto at = [c0, tree, card](std::uint64_t i) -> std::optional<Value> {
    if (card && i >= *card) return std::nullopt;
    int empty_streak = 0;
    for (std::uint64_t d = 0;; ++d) {
      std::uint64_t before = i;
      Value out;
      std::uint64_t rem = i;
      if (cf_nth_path_of_weight(c0, tree, d, rem, out)) return out;
      i = rem;
      empty_streak = (i == before) ? empty_streak + 1 : 0;
      if (!card && empty_streak > 64) return std::nullopt;
      if (card && d > *card + 64) return std::nullopt;
    }
  };
  return Enumeration(std::move(at), card, nullptr);
}

// Height-layered enumeration of finite trees over c0 (finite shape and
// position sets required; anything else yields no enumerable shapes).
Enumeration cf_finite_trees(const Container& c0) {
  struct Cache {
    std::mutex mu;
    std::vector<Value> flat;
    std::vector<std::size_t> level_end;  // flat prefix per height
    bool done = false;
  };
  auto cache = std::make_shared<Cache>();
  auto s0card = c0.shapes().cardinality();
  if (!s0card) return empty_enum();

  auto extend = [c0, cache, s0card]() -> bool {  // builds one more level
    std::size_t prev_end = cache->level_end.empty() ? 0 : cache->level_end.back();
    std::size_t prev_start =
        cache->level_end.size() < 2 ? 0 : cache->level_end[cache->level_end.size() - 2];
    std::vector<Value> level;
    for (std::uint64_t si = 0; si < *s0card; ++si) {
      auto s0 = c0.shapes().at(si);
      if (!s0) break;
      auto pcard = c0.positions(*s0).cardinality();
      if (!pcard) continue;
      std::uint64_t k = *pcard;
      if (cache->level_end.empty()) {
        if (k == 0) level.push_back(Value::pair(*s0, Value::sequence({})));
        continue;
      }
      if (k == 0) continue;  // height-1 trees only appear in the first level
      // children tuples over flat[0..prev_end), at least one from the newest
      // band [prev_start, prev_end)
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        bool has_new = false;
        for (auto j : idx)
          if (j >= prev_start) has_new = true;
        if (has_new) {
          std::vector<Value> kids;
          kids.reserve(k);
          for (auto j : idx) kids.push_back(cache->flat[j]);
          level.push_back(Value::pair(*s0, Value::sequence(std::move(kids))));
        }
        std::size_t c = 0;
        while (c < k) {
          if (++idx[c] < prev_end) break;
          idx[c] = 0;
          ++c;
        }
        if (c == k) break;
      }
    }
    if (level.empty()) {
      cache->done = true;
      return false;
    }
    for (auto& t : level) cache->flat.push_back(std::move(t));
    cache->level_end.push_back(cache->flat.size());
    return true;
  };

  auto at = [cache, extend](std::uint64_t i) -> std::optional<Value> {
    std::lock_guard<std::mutex> lock(cache->mu);
    while (!cache->done && cache->flat.size() <= i) {
      if (!extend()) break;
    }
    if (i >= cache->flat.size()) return std::nullopt;
    return cache->flat[i];
  };
  return Enumeration(std::move(at), std::nullopt, nullptr);
}

}  // namespace

Value cofree_unfold_constant(const Container& c0, const Value& s0) {
  return Value::pair(s0, table_from_enum(c0.positions(s0), [c0, s0](const Value&) {
                       return Value::suspend([c0, s0] {
                         return cofree_unfold_constant(c0, s0);
                       });
                     }));
}

Value cofree_chain(std::int64_t n) {
  Value t = Value::pair(Value::inl(Value::unit()), Value::sequence({}));
  for (std::int64_t i = 0; i < n; ++i)
    t = Value::pair(Value::inr(Value::unit()), Value::sequence({t}));
  return t;
}

CofreeBundle cofree(const Container& c0, CofreeMode mode, Fuel fuel) {
  bool recursive = mode == CofreeMode::Recursive;
  std::string name = recursive ? "cofree-rec(" + c0.name() + ")" : "cofree(" + c0.name() + ")";

  Enumeration shapes =
      recursive ? cf_finite_trees(c0)
                : map_enum(c0.shapes(),
                           [c0](const Value& s) { return cofree_unfold_constant(c0, s); });
  Container base(name, std::move(shapes), [c0, recursive](const Value& tree) {
    return cf_paths(c0, tree, recursive);
  });

  auto down = [c0](const Value& s, const Value& p) { return cf_down(c0, s, p); };
  auto root = [](const Value&) { return Value::inl(Value::unit()); };
  auto plus = [c0](const Value& s, const Value& p, const Value& pp) {
    return cf_plus(c0, s, p, pp);
  };
  DirectedContainer object{name, base, std::move(down), std::move(root), std::move(plus)};

  ContainerMorphism pi{base, c0, [](const Value& tree) { return tree_root(tree); },
                       [](const Value&, const Value& p) {
                         return Value::inr(Value::pair(p, Value::inl(Value::unit())));
                       }};

  int cap = fuel.depth * 4;
  auto mediate = [c0, object, recursive, cap](const DirectedContainer& ep,
                                              const ContainerMorphism& f0) -> DCMorphism {
    struct Rec {
      Container c0;
      DirectedContainer ep;
      ContainerMorphism f0;
      bool recursive;
      int cap;

      Value tf(const Value& s, int depth) const {
        if (depth > cap)
          fail("non-wellfounded", "cofree recursive mediator exceeded unfolding depth");
        Value ts = f0.shape_map(s);
        Enumeration pos = c0.positions(ts);
        auto self = *this;
        if (recursive) {
          if (!pos.cardinality())
            fail("non-wellfounded", "recursive mode needs finitely many positions per shape");
          std::vector<Value> kids;
          for (std::uint64_t i = 0; i < *pos.cardinality(); ++i) {
            auto p = pos.at(i);
            if (!p) break;
            kids.push_back(tf(ep.down(s, f0.position_map(s, *p)), depth + 1));
          }
          return Value::pair(ts, Value::sequence(std::move(kids)));
        }
        return Value::pair(ts, table_from_enum(pos, [self, s](const Value& p) {
                             return Value::suspend([self, s, p] {
                               return self.tf(self.ep.down(s, self.f0.position_map(s, p)), 0);
                             });
                           }));
      }
      Value qf(const Value& s, const Value& pos) const {
        const Value& w = pos.whnf();
        if (w.is_inl()) return ep.root(s);
        const Value& step = w.sum_payload().whnf();
        Value qp = f0.position_map(s, step.first());
        return ep.plus(s, qp, qf(ep.down(s, qp), step.second()));
      }
    };
    auto rec = std::make_shared<Rec>(Rec{c0, ep, f0, recursive, cap});
    ContainerMorphism m{ep.base, object.base,
                        [rec](const Value& s) { return rec->tf(s, 0); },
                        [rec](const Value& s, const Value& p) { return rec->qf(s, p); }};
    return DCMorphism{"mediator", ep, object, std::move(m)};
  };

  return CofreeBundle{c0, mode, object, pi, std::move(mediate)};
}

namespace {

bool report_clean(const LawReport& r) {
  for (const auto& e : r.entries)
    if (e.status == LawStatus::Fail) return false;
  return true;
}

bool agree_ok(const ContainerMorphism& a, const ContainerMorphism& b, const Bounds& bd) {
  LawCheck lc("probe");
  check_morphisms_agree(lc, a, b, bd);
  return lc.finish().status != LawStatus::Fail;
}

}  // namespace

LawReport check_universal_coproduct(const CoproductBundle& bundle,
                                    const DirectedContainer& f_target, const DCMorphism& f0,
                                    const DCMorphism& f1, const std::vector<DCMorphism>& probes,
                                    const Bounds& b) {
  LawReport report;

  LawCheck legs("legs-are-dc-morphisms");
  for (const auto& leg : {bundle.inl_leg, bundle.inr_leg})
    for (const auto& e : check_dc_morphism_laws(leg, b).entries) legs.absorb(e, leg.name);
  report.entries.push_back(legs.finish());

  DCMorphism m = bundle.copair(f_target, f0, f1);
  LawCheck tri("triangles-commute");
  check_morphisms_agree(tri, compose_morphisms(m.morphism, bundle.inl_leg.morphism),
                        f0.morphism, b);
  check_morphisms_agree(tri, compose_morphisms(m.morphism, bundle.inr_leg.morphism),
                        f1.morphism, b);
  report.entries.push_back(tri.finish());

  LawCheck uniq("mediator-unique-within-bounds");
  for (const auto& g : probes) {
    if (uniq.failed()) break;
    bool lawful = report_clean(check_dc_morphism_laws(g, b));
    bool commutes =
        lawful &&
        agree_ok(compose_morphisms(g.morphism, bundle.inl_leg.morphism), f0.morphism, b) &&
        agree_ok(compose_morphisms(g.morphism, bundle.inr_leg.morphism), f1.morphism, b);
    if (commutes) check_morphisms_agree(uniq, g.morphism, m.morphism, b);
  }
  report.entries.push_back(uniq.finish());
  return report;
}

LawReport check_universal_strict_product(const StrictProductBundle& bundle,
                                         const DirectedContainer& eprime, const DCMorphism& f0,
                                         const DCMorphism& f1,
                                         const std::vector<DCMorphism>& probes, const Bounds& b) {
  LawReport report;

  LawCheck legs("legs-are-dc-morphisms");
  for (const auto& leg : {bundle.pi0, bundle.pi1})
    for (const auto& e : check_dc_morphism_laws(leg, b).entries) legs.absorb(e, leg.name);
  report.entries.push_back(legs.finish());

  DCMorphism f = bundle.mediate(eprime, f0, f1);
  LawCheck tri("triangles-commute");
  check_morphisms_agree(tri, compose_morphisms(bundle.pi0.morphism, f.morphism), f0.morphism,
                        b);
  check_morphisms_agree(tri, compose_morphisms(bundle.pi1.morphism, f.morphism), f1.morphism,
                        b);
  report.entries.push_back(tri.finish());

  LawCheck uniq("mediator-unique-within-bounds");
  for (const auto& g : probes) {
    if (uniq.failed()) break;
    bool lawful = report_clean(check_dc_morphism_laws(g, b));
    bool commutes =
        lawful &&
        agree_ok(compose_morphisms(bundle.pi0.morphism, g.morphism), f0.morphism, b) &&
        agree_ok(compose_morphisms(bundle.pi1.morphism, g.morphism), f1.morphism, b);
    if (commutes) check_morphisms_agree(uniq, g.morphism, f.morphism, b);
  }
  report.entries.push_back(uniq.finish());
  return report;
}

LawReport check_universal_cofree(const CofreeBundle& bundle, const DirectedContainer& eprime,
                                 const ContainerMorphism& f0,
                                 const std::vector<DCMorphism>& probes, const Bounds& b) {
  LawReport report;
  Fuel fuel = b.position_fuel;

  LawCheck legs("legs-are-dc-morphisms");
  {
    const ContainerMorphism& pi = bundle.counit_leg;
    for_shapes(pi.source.shapes(), b.shape_bound, legs, [&](const Value& tree) {
      legs.guarded({bind("s", tree)}, [&] {
        Value ts = pi.shape_map(tree);
        Enumeration src_pos = pi.source.positions(tree);
        for_each_bounded(pi.target.positions(ts),
                         static_cast<std::uint64_t>(fuel.depth), legs, [&](const Value& p) {
                           legs.guarded({bind("s", tree), bind("p", p)}, [&] {
                             Value q = pi.position_map(tree, p);
                             if (src_pos.contains(q, fuel) == Tri::Unequal) {
                               legs.case_eq(Value::boolean(true), Value::boolean(false), fuel,
                                            {bind("s", tree), bind("p", p), bind("q", q)});
                             } else {
                               legs.case_eq(Value::boolean(true), Value::boolean(true), fuel,
                                            {});
                             }
                           });
                         });
      });
    });
  }
  report.entries.push_back(legs.finish());

  DCMorphism f = bundle.mediate(eprime, f0);
  LawCheck tri("triangles-commute");
  check_morphisms_agree(tri, compose_morphisms(bundle.counit_leg, f.morphism), f0, b);
  report.entries.push_back(tri.finish());

  LawCheck uniq("mediator-unique-within-bounds");
  for (const auto& g : probes) {
    if (uniq.failed()) break;
    bool lawful = report_clean(check_dc_morphism_laws(g, b));
    bool commutes =
        lawful && agree_ok(compose_morphisms(bundle.counit_leg, g.morphism), f0, b);
    if (commutes) check_morphisms_agree(uniq, g.morphism, f.morphism, b);
  }
  report.entries.push_back(uniq.finish());
  return report;
}

std::vector<DCMorphism> enumerate_candidate_morphisms(const DirectedContainer& src,
                                                      const DirectedContainer& dst,
                                                      std::uint64_t shape_bound,
                                                      std::uint64_t target_shape_bound,
                                                      std::uint64_t pos_bound) {
  std::vector<Value> src_shapes = src.base.shapes().take(shape_bound);
  std::vector<Value> dst_shapes = dst.base.shapes().take(target_shape_bound);
  std::size_t ns = src_shapes.size(), nt = dst_shapes.size();
  if (ns == 0 || nt == 0) return {};

  std::vector<DCMorphism> out;
  std::vector<std::size_t> tmap(ns, 0);
  Fuel f{16};
  while (true) {
    // For this shape assignment, enumerate every position table.
    std::vector<std::vector<Value>> src_pos(ns), dst_pos(ns);
    bool viable = true;
    std::size_t table_size = 0;
    for (std::size_t i = 0; i < ns && viable; ++i) {
      src_pos[i] = src.base.positions(src_shapes[i]).take(pos_bound);
      dst_pos[i] = dst.base.positions(dst_shapes[tmap[i]]).take(pos_bound);
      if (!dst_pos[i].empty() && src_pos[i].empty()) viable = false;
      table_size += dst_pos[i].size();
    }
    if (viable) {
      std::vector<std::size_t> q(table_size, 0);
      while (true) {
        auto shapes = std::make_shared<std::vector<Value>>(src_shapes);
        auto targets = std::make_shared<std::vector<Value>>();
        for (std::size_t i = 0; i < ns; ++i) targets->push_back(dst_shapes[tmap[i]]);
        auto qsrc = std::make_shared<std::vector<std::vector<Value>>>(src_pos);
        auto qdst = std::make_shared<std::vector<std::vector<Value>>>(dst_pos);
        auto qsel = std::make_shared<std::vector<std::size_t>>(q);
        ContainerMorphism m{
            src.base, dst.base,
            [shapes, targets, f](const Value& s) -> Value {
              for (std::size_t i = 0; i < shapes->size(); ++i)
                if (value_eq((*shapes)[i], s, f) == Tri::Equal) return (*targets)[i];
              fail("candidate-partial", "shape outside the candidate cut");
            },
            [shapes, qsrc, qdst, qsel, f](const Value& s, const Value& p) -> Value {
              std::size_t base = 0;
              for (std::size_t i = 0; i < shapes->size(); ++i) {
                if (value_eq((*shapes)[i], s, f) == Tri::Equal) {
                  for (std::size_t j = 0; j < (*qdst)[i].size(); ++j)
                    if (value_eq((*qdst)[i][j], p, f) == Tri::Equal)
                      return (*qsrc)[i][(*qsel)[base + j]];
                  fail("candidate-partial", "position outside the candidate cut");
                }
                base += (*qdst)[i].size();
              }
              fail("candidate-partial", "shape outside the candidate cut");
            }};
        out.push_back(DCMorphism{"candidate-" + std::to_string(out.size()), src, dst,
                                 std::move(m)});
        if (out.size() > 200000) fail("fuel-exhausted", "candidate space too large");
        // odometer over q
        std::size_t c = 0, flat = 0;
        bool carried = false;
        for (std::size_t i = 0; i < ns && !carried; ++i) {
          for (std::size_t j = 0; j < dst_pos[i].size(); ++j) {
            std::size_t cell = flat + j;
            if (++q[cell] < src_pos[i].size()) {
              carried = true;
              break;
            }
            q[cell] = 0;
            ++c;
          }
          flat += dst_pos[i].size();
        }
        if (!carried) break;
      }
    }
    // odometer over tmap
    std::size_t c = 0;
    while (c < ns) {
      if (++tmap[c] < nt) break;
      tmap[c] = 0;
      ++c;
    }
    if (c == ns) break;
  }
  return out;
}

DirectedContainer builtin(const std::string& name) {
  if (name == "nonempty-suffix") return nonempty_suffix_dc();
  if (name == "nonempty-cyclic") return nonempty_cyclic_dc();
  if (name == "stream") return stream_dc();
  if (name == "list-zipper") return list_zipper_dc();
  if (name == "focus-list" || name == "focus(list)") {
    DirectedContainer e = focus_of(list_container());
    e.name = "focus-list";
    return e;
  }
  if (name == "cofree-recursive-maybe" || name == "cofree-recursive(maybe)") {
    DirectedContainer e = cofree(maybe_container(), CofreeMode::Recursive, Fuel{16}).object;
    e.name = "cofree-recursive-maybe";
    return e;
  }
  fail("unknown-name", "no builtin named " + name);
}

std::vector<std::string> builtin_names() {
  return {"nonempty-suffix", "nonempty-cyclic",  "stream",
          "list-zipper",     "focus-list",       "cofree-recursive-maybe"};
}

}  // namespace dcont
