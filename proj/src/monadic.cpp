#include "dcont/monadic.hpp"

namespace dcont {

ContainerMonoid list_monoid() {
  auto prefix_sum = [](const ContainerMonoid::ShapeFn& v, std::int64_t upto) {
    std::int64_t sum = 0;
    for (std::int64_t i = 0; i < upto; ++i)
      sum = checked_add(sum, v(Value::integer(i)).whnf().as_int());
    return sum;
  };
  return ContainerMonoid{
      "list", list_container(), Value::integer(1),
      [prefix_sum](const Value& s, const ContainerMonoid::ShapeFn& v) {
        return Value::integer(prefix_sum(v, s.whnf().as_int()));
      },
      [prefix_sum](const Value& s, const ContainerMonoid::ShapeFn& v, const Value& p) {
        std::int64_t target = p.whnf().as_int();
        std::int64_t best = 0;
        for (std::int64_t cand = 0; cand < s.whnf().as_int(); ++cand)
          if (prefix_sum(v, cand) <= target) best = cand;
        return Value::integer(best);
      },
      [prefix_sum](const Value& s, const ContainerMonoid::ShapeFn& v, const Value& p) {
        std::int64_t target = p.whnf().as_int();
        std::int64_t best = 0;
        for (std::int64_t cand = 0; cand < s.whnf().as_int(); ++cand)
          if (prefix_sum(v, cand) <= target) best = cand;
        return Value::integer(checked_sub(target, prefix_sum(v, best)));
      }};
}

DataStructure monoid_unit(const ContainerMonoid& m, const Value& x) {
  return DataStructure{m.base, m.unit_shape, [x](const Value&) { return x; }};
}

DataStructure monoid_flatten(const ContainerMonoid& m, const DataStructure& dd) {
  Container base = m.base;
  auto payload = dd.payload;
  auto inner_shape = [payload](const Value& p) { return payload(p).whnf().first(); };
  Value flat_shape = m.bullet(dd.shape, inner_shape);
  Value s = dd.shape;
  auto upleft = m.upleft;
  auto upright = m.upright;
  auto assign = [=](const Value& p) -> Value {
    Value po = upleft(s, inner_shape, p);
    Value pi = upright(s, inner_shape, p);
    Enumeration outer_pos = base.positions(s);
    if (outer_pos.contains(po, Fuel{64}) == Tri::Unequal)
      fail("position-map-out-of-range", "upleft " + render(po) + " at " + render(p));
    const Value& enc = payload(po).whnf();
    Enumeration inner_pos = base.positions(enc.first());
    if (inner_pos.contains(pi, Fuel{64}) == Tri::Unequal)
      fail("position-map-out-of-range", "upright " + render(pi) + " at " + render(p));
    return table_lookup_by_position(enc.second(), inner_pos, pi, Fuel{16});
  };
  return DataStructure{base, flat_shape, std::move(assign)};
}

UpdateFn update_eta(const DirectedContainer& e, const Value& x) {
  auto root = e.root;
  return [root, x](const Value& s) { return std::make_pair(root(s), x); };
}

UpdateFn update_mu(const DirectedContainer& e,
                   const std::function<std::pair<Value, UpdateFn>(const Value&)>& f) {
  DirectedContainer ec = e;
  return [ec, f](const Value& s) {
    auto [p, g] = f(s);
    auto [pp, x] = g(ec.down(s, p));
    return std::make_pair(ec.plus(s, p, pp), x);
  };
}

namespace {

// Deterministic update samples: pick the i-th position of the state (mod
// count) and a payload that records both the sample index and the state.
UpdateFn sample_update(const DirectedContainer& e, int i, const Bounds& b) {
  DirectedContainer ec = e;
  std::uint64_t bound = static_cast<std::uint64_t>(b.position_fuel.depth);
  return [ec, i, bound](const Value& s) {
    auto ps = ec.base.positions(s).take(bound);
    if (ps.empty()) fail("shape-without-positions", "state " + render(s) + " has no updates");
    Value p = ps[static_cast<std::size_t>(i) % ps.size()];
    return std::make_pair(p, Value::pair(Value::integer(i), s));
  };
}

void check_update_pair(LawCheck& lc, const std::pair<Value, Value>& lhs,
                       const std::pair<Value, Value>& rhs, Fuel fuel,
                       std::vector<Binding> bindings) {
  lc.case_eq(lhs.first, rhs.first, fuel, bindings);
  lc.case_eq(lhs.second, rhs.second, fuel, std::move(bindings));
}

}  // namespace

LawReport check_update_monad_laws(const DirectedContainer& e, const Bounds& b) {
  Fuel fuel = b.position_fuel;
  int samples = b.payload_samples;

  LawCheck lu("update-left-unit");
  for (int i = 0; i < samples && !lu.failed(); ++i) {
    UpdateFn t = sample_update(e, i, b);
    for_shapes(e.base.shapes(), b.shape_bound, lu, [&](const Value& s) {
      lu.guarded({bind("s", s), bind("i", Value::integer(i))}, [&] {
        UpdateFn lhs = update_mu(e, [&](const Value& st) {
          return std::make_pair(e.root(st), t);
        });
        check_update_pair(lu, lhs(s), t(s), fuel, {bind("s", s), bind("i", Value::integer(i))});
      });
    });
  }

  LawCheck ru("update-right-unit");
  for (int i = 0; i < samples && !ru.failed(); ++i) {
    UpdateFn t = sample_update(e, i, b);
    for_shapes(e.base.shapes(), b.shape_bound, ru, [&](const Value& s) {
      ru.guarded({bind("s", s), bind("i", Value::integer(i))}, [&] {
        UpdateFn lhs = update_mu(e, [&](const Value& st) {
          auto [p, x] = t(st);
          return std::make_pair(p, update_eta(e, x));
        });
        check_update_pair(ru, lhs(s), t(s), fuel, {bind("s", s), bind("i", Value::integer(i))});
      });
    });
  }

  LawCheck as("update-associativity");
  for (int i = 0; i < samples && !as.failed(); ++i) {
    for (int j = 0; j < samples && !as.failed(); ++j) {
      for (int k = 0; k < samples && !as.failed(); ++k) {
        UpdateFn ti = sample_update(e, i, b);
        UpdateFn tj = sample_update(e, j, b);
        UpdateFn tk = sample_update(e, k, b);
        // F : T (T (T X)); mu (mu F) vs mu (T mu F)
        auto inner = [&](const Value& st) { return std::make_pair(tj(st).first, tk); };
        auto outer = [&](const Value& st) {
          return std::make_pair(ti(st).first,
                                std::function<std::pair<Value, UpdateFn>(const Value&)>(inner));
        };
        UpdateFn lhs = update_mu(e, [&](const Value& st) {
          auto [p, g] = outer(st);
          return std::make_pair(p, update_mu(e, g));
        });
        std::function<std::pair<Value, UpdateFn>(const Value&)> mu_outer =
            [&](const Value& st) -> std::pair<Value, UpdateFn> {
          auto [p, g] = outer(st);
          auto [pp, h] = g(e.down(st, p));
          return std::make_pair(e.plus(st, p, pp), h);
        };
        UpdateFn rhs = update_mu(e, mu_outer);
        for_shapes(e.base.shapes(), b.shape_bound, as, [&](const Value& s) {
          std::vector<Binding> bs = {bind("s", s), bind("i", Value::integer(i)),
                                     bind("j", Value::integer(j)), bind("k", Value::integer(k))};
          as.guarded(bs, [&] { check_update_pair(as, lhs(s), rhs(s), fuel, bs); });
        });
      }
    }
  }

  LawReport report;
  report.entries = {lu.finish(), ru.finish(), as.finish()};
  return report;
}

namespace {

// Concrete list structure with payloads marked by a tag stream.
DataStructure concrete_list(std::int64_t len, int tag) {
  return DataStructure{list_container(), Value::integer(len), [tag](const Value& p) {
                         return Value::pair(Value::integer(tag), p);
                       }};
}

}  // namespace

LawReport check_list_monoid_laws(const Bounds& b) {
  ContainerMonoid m = list_monoid();
  Container base = m.base;
  Fuel fuel = b.position_fuel;

  LawCheck lu("monoid-left-unit");  // flatten (eta d) = d
  for (std::int64_t len = 0; len <= 4 && !lu.failed(); ++len) {
    lu.guarded({bind("len", Value::integer(len))}, [&] {
      DataStructure d = concrete_list(len, 7);
      DataStructure wrapped = monoid_unit(m, encode_structure(d));
      DataStructure flat = monoid_flatten(m, wrapped);
      lu.case_eq(encode_structure(flat), encode_structure(d), fuel,
                 {bind("len", Value::integer(len))});
    });
  }

  LawCheck ru("monoid-right-unit");  // flatten (map eta d) = d
  for (std::int64_t len = 0; len <= 4 && !ru.failed(); ++len) {
    ru.guarded({bind("len", Value::integer(len))}, [&] {
      DataStructure d = concrete_list(len, 9);
      DataStructure mapped = interpret_map(base,
                                           [m](const Value& x) {
                                             return encode_structure(monoid_unit(m, x));
                                           },
                                           d);
      DataStructure flat = monoid_flatten(m, mapped);
      ru.case_eq(encode_structure(flat), encode_structure(d), fuel,
                 {bind("len", Value::integer(len))});
    });
  }

  LawCheck as("monoid-associativity");  // flatten . flatten = flatten . map flatten
  std::vector<std::vector<std::vector<std::int64_t>>> nests = {
      {{1, 2}, {0, 3}},
      {{2}, {1, 1, 1}},
      {{0}, {}, {2, 2}},
      {{3, 1}, {1}, {0, 1}},
  };
  int mark = 0;
  for (const auto& nest : nests) {
    if (as.failed()) break;
    ++mark;
    as.guarded({bind("case", Value::integer(mark))}, [&] {
      // Build a T^3 structure with globally distinct payloads.
      int counter = 0;
      std::vector<Value> outer_items;
      for (const auto& mid : nest) {
        std::vector<Value> mid_items;
        for (auto len : mid) {
          std::vector<Value> leaves;
          for (std::int64_t i = 0; i < len; ++i)
            leaves.push_back(Value::integer(1000 * mark + counter++));
          mid_items.push_back(
              Value::pair(Value::integer(len), Value::sequence(std::move(leaves))));
        }
        outer_items.push_back(Value::pair(Value::integer(static_cast<std::int64_t>(mid.size())),
                                          Value::sequence(std::move(mid_items))));
      }
      Value enc3 = Value::pair(Value::integer(static_cast<std::int64_t>(nest.size())),
                               Value::sequence(std::move(outer_items)));
      DataStructure ddd = decode_structure(base, enc3);
      DataStructure lhs = monoid_flatten(m, monoid_flatten(m, ddd));
      DataStructure mapped = interpret_map(
          base,
          [m, base](const Value& inner) {
            return encode_structure(monoid_flatten(m, decode_structure(base, inner)));
          },
          ddd);
      DataStructure rhs = monoid_flatten(m, mapped);
      as.case_eq(encode_structure(lhs), encode_structure(rhs), fuel,
                 {bind("case", Value::integer(mark))});
    });
  }

  LawReport report;
  report.entries = {lu.finish(), ru.finish(), as.finish()};
  return report;
}

}  // namespace dcont
