#include "dcont/laws.hpp"

namespace dcont {

std::string to_string(LawStatus s) {
  switch (s) {
    case LawStatus::Pass:
      return "pass";
    case LawStatus::Fail:
      return "fail";
    case LawStatus::Exhausted:
      return "exhausted";
  }
  return "?";
}

bool LawReport::all_ok() const {
  for (const auto& e : entries)
    if (e.status == LawStatus::Fail) return false;
  return true;
}

const LawEntry* LawReport::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

Binding bind(std::string var, const Value& v) {
  return Binding{std::move(var), v, render(v, Fuel{6})};
}

void LawCheck::case_eq(const Value& lhs, const Value& rhs, Fuel fuel,
                       std::vector<Binding> bindings) {
  if (failed() || skipped_) return;
  ++entry_.cases;
  Tri r = value_eq(lhs, rhs, fuel);
  if (r == Tri::Unequal) {
    entry_.status = LawStatus::Fail;
    bindings.push_back(bind("lhs", lhs));
    bindings.push_back(bind("rhs", rhs));
    entry_.counterexample = std::move(bindings);
  } else if (r == Tri::Exhausted) {
    exhausted_cmp_ = true;
  }
}

void LawCheck::guarded(std::vector<Binding> bindings, const std::function<void()>& body) {
  if (failed() || skipped_) return;
  try {
    body();
  } catch (const Error& err) {
    ++entry_.cases;
    entry_.status = LawStatus::Fail;
    entry_.counterexample = std::move(bindings);
    entry_.note = err.what();
  }
}

void LawCheck::skip(std::string note) {
  skipped_ = true;
  entry_.note = std::move(note);
}

void LawCheck::absorb(const LawEntry& e, const std::string& label) {
  entry_.cases += e.cases;
  if (e.status == LawStatus::Fail && !failed()) {
    entry_.status = LawStatus::Fail;
    entry_.counterexample = e.counterexample;
    entry_.note = label + ": " + e.id + (e.note.empty() ? "" : " (" + e.note + ")");
  } else if (e.status == LawStatus::Exhausted) {
    exhausted_cmp_ = true;
  }
}

LawEntry LawCheck::finish() const {
  LawEntry e = entry_;
  if (skipped_) {
    e.status = LawStatus::Exhausted;
  } else if (e.status != LawStatus::Fail && (truncated_ || exhausted_cmp_)) {
    e.status = LawStatus::Exhausted;
  }
  return e;
}

void for_each_bounded(const Enumeration& e, std::uint64_t bound, LawCheck& lc,
                      const std::function<void(const Value&)>& f) {
  if (e.truncated_by(bound)) lc.mark_truncated();
  for (std::uint64_t i = 0; i < bound && !lc.failed(); ++i) {
    auto v = e.at(i);
    if (!v) break;
    f(*v);
  }
}

void for_shapes(const Enumeration& e, std::uint64_t bound, LawCheck& lc,
                const std::function<void(const Value&)>& f) {
  for (std::uint64_t i = 0; i < bound && !lc.failed(); ++i) {
    auto v = e.at(i);
    if (!v) break;
    f(*v);
  }
}

namespace {

std::uint64_t pos_bound(const Bounds& b) {
  return static_cast<std::uint64_t>(b.position_fuel.depth);
}

}  // namespace

LawReport check_dc_laws(const DirectedContainer& e, const Bounds& b) {
  Fuel fuel = b.position_fuel;
  const Enumeration& shapes = e.base.shapes();

  LawCheck l1("dc-law-1");
  for_shapes(shapes, b.shape_bound, l1, [&](const Value& s) {
    l1.guarded({bind("s", s)},
               [&] { l1.case_eq(e.down(s, e.root(s)), s, fuel, {bind("s", s)}); });
  });

  LawCheck l2("dc-law-2");
  for_shapes(shapes, b.shape_bound, l2, [&](const Value& s) {
    for_each_bounded(e.base.positions(s), pos_bound(b), l2, [&](const Value& p) {
      l2.guarded({bind("s", s), bind("p", p)}, [&] {
        Value sub = e.down(s, p);
        for_each_bounded(e.base.positions(sub), pos_bound(b), l2, [&](const Value& pp) {
          l2.guarded({bind("s", s), bind("p", p), bind("p'", pp)}, [&] {
            l2.case_eq(e.down(s, e.plus(s, p, pp)), e.down(sub, pp), fuel,
                       {bind("s", s), bind("p", p), bind("p'", pp)});
          });
        });
      });
    });
  });

  LawCheck l3("dc-law-3");
  for_shapes(shapes, b.shape_bound, l3, [&](const Value& s) {
    for_each_bounded(e.base.positions(s), pos_bound(b), l3, [&](const Value& p) {
      l3.guarded({bind("s", s), bind("p", p)}, [&] {
        l3.case_eq(e.plus(s, p, e.root(e.down(s, p))), p, fuel, {bind("s", s), bind("p", p)});
      });
    });
  });

  LawCheck l4("dc-law-4");
  if (l1.finish().status == LawStatus::Fail) {
    l4.skip("skipped: dc-law-1 failed, law 4 is not well-typed");
  } else {
    for_shapes(shapes, b.shape_bound, l4, [&](const Value& s) {
      for_each_bounded(e.base.positions(s), pos_bound(b), l4, [&](const Value& p) {
        l4.guarded({bind("s", s), bind("p", p)}, [&] {
          l4.case_eq(e.plus(s, e.root(s), p), p, fuel, {bind("s", s), bind("p", p)});
        });
      });
    });
  }

  LawCheck l5("dc-law-5");
  if (l2.finish().status == LawStatus::Fail) {
    l5.skip("skipped: dc-law-2 failed, law 5 is not well-typed");
  } else {
    for_shapes(shapes, b.shape_bound, l5, [&](const Value& s) {
      for_each_bounded(e.base.positions(s), pos_bound(b), l5, [&](const Value& p) {
        l5.guarded({bind("s", s), bind("p", p)}, [&] {
          Value sub = e.down(s, p);
          for_each_bounded(e.base.positions(sub), pos_bound(b), l5, [&](const Value& pp) {
            l5.guarded({bind("s", s), bind("p", p), bind("p'", pp)}, [&] {
              Value sub2 = e.down(sub, pp);
              for_each_bounded(e.base.positions(sub2), pos_bound(b), l5,
                               [&](const Value& ppp) {
                                 l5.guarded(
                                     {bind("s", s), bind("p", p), bind("p'", pp),
                                      bind("p''", ppp)},
                                     [&] {
                                       l5.case_eq(e.plus(s, e.plus(s, p, pp), ppp),
                                                  e.plus(s, p, e.plus(sub, pp, ppp)), fuel,
                                                  {bind("s", s), bind("p", p), bind("p'", pp),
                                                   bind("p''", ppp)});
                                     });
                               });
            });
          });
        });
      });
    });
  }

  LawReport report;
  report.entries = {l1.finish(), l2.finish(), l3.finish(), l4.finish(), l5.finish()};
  return report;
}

LawReport check_dc_morphism_laws(const DCMorphism& h, const Bounds& b) {
  Fuel fuel = b.position_fuel;
  const DirectedContainer& e = h.source;
  const DirectedContainer& ep = h.target;
  const ContainerMorphism& m = h.morphism;
  const Enumeration& shapes = e.base.shapes();

  LawCheck l1("m1");
  for_shapes(shapes, b.shape_bound, l1, [&](const Value& s) {
    l1.guarded({bind("s", s)}, [&] {
      Value ts = m.shape_map(s);
      for_each_bounded(ep.base.positions(ts), pos_bound(b), l1, [&](const Value& p) {
        l1.guarded({bind("s", s), bind("p", p)}, [&] {
          l1.case_eq(m.shape_map(e.down(s, m.position_map(s, p))), ep.down(ts, p), fuel,
                     {bind("s", s), bind("p", p)});
        });
      });
    });
  });

  LawCheck l2("m2");
  for_shapes(shapes, b.shape_bound, l2, [&](const Value& s) {
    l2.guarded({bind("s", s)}, [&] {
      l2.case_eq(e.root(s), m.position_map(s, ep.root(m.shape_map(s))), fuel, {bind("s", s)});
    });
  });

  LawCheck l3("m3");
  for_shapes(shapes, b.shape_bound, l3, [&](const Value& s) {
    l3.guarded({bind("s", s)}, [&] {
      Value ts = m.shape_map(s);
      for_each_bounded(ep.base.positions(ts), pos_bound(b), l3, [&](const Value& p) {
        l3.guarded({bind("s", s), bind("p", p)}, [&] {
          Value qp = m.position_map(s, p);
          Value sub = e.down(s, qp);
          Value tsub = ep.down(ts, p);
          for_each_bounded(ep.base.positions(tsub), pos_bound(b), l3, [&](const Value& pp) {
            l3.guarded({bind("s", s), bind("p", p), bind("p'", pp)}, [&] {
              l3.case_eq(e.plus(s, qp, m.position_map(sub, pp)),
                         m.position_map(s, ep.plus(ts, p, pp)), fuel,
                         {bind("s", s), bind("p", p), bind("p'", pp)});
            });
          });
        });
      });
    });
  });

  LawReport report;
  report.entries = {l1.finish(), l2.finish(), l3.finish()};
  return report;
}

DataStructure sample_structure(const Container& c, const Value& shape, int k) {
  return DataStructure{c, shape, [k](const Value& p) {
                         return Value::pair(Value::integer(k), p);
                       }};
}

LawReport check_comonad_laws(const ComonadWitness& w, const Bounds& b) {
  Fuel fuel = b.position_fuel;
  Container c = w.container;
  const Enumeration& shapes = c.shapes();

  LawCheck rc("right-counit");
  for_shapes(shapes, b.shape_bound, rc, [&](const Value& s) {
    for (int k = 0; k < b.payload_samples && !rc.failed(); ++k) {
      rc.guarded({bind("s", s), bind("k", Value::integer(k))}, [&] {
        DataStructure d = sample_structure(c, s, k);
        DataStructure dd = w.comult(d);
        rc.case_eq(dd.shape, s, fuel, {bind("s", s), bind("k", Value::integer(k))});
        for_each_bounded(c.positions(s), pos_bound(b), rc, [&](const Value& p) {
          rc.guarded({bind("s", s), bind("k", Value::integer(k)), bind("p", p)}, [&] {
            Value sub = dd.payload(p);
            rc.case_eq(w.counit(decode_structure(c, sub)), d.payload(p), fuel,
                       {bind("s", s), bind("k", Value::integer(k)), bind("p", p)});
          });
        });
      });
    }
  });

  LawCheck lc("left-counit");
  for_shapes(shapes, b.shape_bound, lc, [&](const Value& s) {
    for (int k = 0; k < b.payload_samples && !lc.failed(); ++k) {
      lc.guarded({bind("s", s), bind("k", Value::integer(k))}, [&] {
        DataStructure d = sample_structure(c, s, k);
        DataStructure dd = w.comult(d);
        lc.case_eq(w.counit(dd), encode_structure(d), fuel,
                   {bind("s", s), bind("k", Value::integer(k))});
      });
    }
  });

  LawCheck ca("coassociativity");
  for_shapes(shapes, b.shape_bound, ca, [&](const Value& s) {
    for (int k = 0; k < b.payload_samples && !ca.failed(); ++k) {
      ca.guarded({bind("s", s), bind("k", Value::integer(k))}, [&] {
        DataStructure d = sample_structure(c, s, k);
        DataStructure dd = w.comult(d);
        DataStructure dd2 = w.comult(dd);
        ca.case_eq(dd2.shape, dd.shape, fuel, {bind("s", s), bind("k", Value::integer(k))});
        for_each_bounded(c.positions(dd.shape), pos_bound(b), ca, [&](const Value& p) {
          ca.guarded({bind("s", s), bind("k", Value::integer(k)), bind("p", p)}, [&] {
            Value lhs = encode_structure(w.comult(decode_structure(c, dd.payload(p))));
            Value rhs = dd2.payload(p);
            ca.case_eq(lhs, rhs, fuel,
                       {bind("s", s), bind("k", Value::integer(k)), bind("p", p)});
          });
        });
      });
    }
  });

  LawReport report;
  report.entries = {rc.finish(), lc.finish(), ca.finish()};
  return report;
}

LawReport check_comonad_laws(const DirectedContainer& e, const Bounds& b) {
  return check_comonad_laws(witness_of(e), b);
}

void check_morphisms_agree(LawCheck& lc, const ContainerMorphism& a, const ContainerMorphism& b,
                           const Bounds& bd) {
  Fuel fuel = bd.position_fuel;
  // Positions of a composite target are joint quantifiers (pairs), so the
  // budget here is quadratic in the per-quantifier fuel.
  std::uint64_t budget = pos_bound(bd) * pos_bound(bd);
  for_shapes(a.source.shapes(), bd.shape_bound, lc, [&](const Value& s) {
    lc.guarded({bind("s", s)}, [&] {
      Value ta = a.shape_map(s);
      Value tb = b.shape_map(s);
      lc.case_eq(ta, tb, fuel, {bind("s", s)});
      if (lc.failed()) return;
      for_each_bounded(a.target.positions(ta), budget, lc, [&](const Value& p) {
        lc.guarded({bind("s", s), bind("p", p)}, [&] {
          lc.case_eq(a.position_map(s, p), b.position_map(s, p), fuel,
                     {bind("s", s), bind("p", p)});
        });
      });
    });
  });
}

LawReport check_quote_roundtrip(const ContainerMorphism& h, const std::string& name,
                                const Bounds& b) {
  LawCheck lc("quote-interpret-" + name);
  ContainerMorphism quoted = quote_transformation(
      [h](const DataStructure& d) { return apply_morphism(h, d); }, h.source, h.target);
  check_morphisms_agree(lc, h, quoted, b);
  LawReport report;
  report.entries = {lc.finish()};
  return report;
}

LawReport check_roundtrips(const DirectedContainer& e, const Bounds& b) {
  Fuel fuel = b.position_fuel;
  Container c = e.base;
  LawReport report;

  LawCheck sp("shape-preservation");
  {
    ComonadWitness w = witness_of(e);
    for_shapes(c.shapes(), b.shape_bound, sp, [&](const Value& s) {
      sp.guarded({bind("s", s)}, [&] {
        sp.case_eq(w.comult(identity_structure(c, s)).shape, s, fuel, {bind("s", s)});
      });
    });
  }
  report.entries.push_back(sp.finish());

  {
    // h^eps = quote(e . eps) : C -> cId and h^delta = quote(m . delta) :
    // C -> C .c C, expressed directly via the directed structure.
    ContainerMorphism h_eps{c, identity_container(),
                            [](const Value&) { return Value::unit(); },
                            [e](const Value& s, const Value&) { return e.root(s); }};
    Container cc = container_compose(c, c);
    ContainerMorphism h_delta{
        c, cc,
        [e, c](const Value& s) {
          return Value::pair(
              s, table_from_enum(c.positions(s), [e, s](const Value& p) {
                return e.down(s, p);
              }));
        },
        [e](const Value& s, const Value& pq) {
          const Value& w = pq.whnf();
          return e.plus(s, w.first(), w.second());
        }};
    LawCheck lc("quote-interpret-morphism");
    check_morphisms_agree(lc, identity_morphism(c), identity_morphism(c), b);
    {
      ContainerMorphism quoted_eps = quote_transformation(
          [h_eps](const DataStructure& d) { return apply_morphism(h_eps, d); }, c,
          identity_container());
      check_morphisms_agree(lc, h_eps, quoted_eps, b);
    }
    {
      ContainerMorphism quoted_delta = quote_transformation(
          [h_delta](const DataStructure& d) { return apply_morphism(h_delta, d); }, c, cc);
      check_morphisms_agree(lc, h_delta, quoted_delta, b);
    }
    report.entries.push_back(lc.finish());
  }

  {
    LawCheck rt("dc-roundtrip");
    DirectedContainer e2 = dc_from_comonad(witness_of(e), e.name + "-roundtrip");
    for_shapes(c.shapes(), b.shape_bound, rt, [&](const Value& s) {
      rt.guarded({bind("s", s)}, [&] {
        rt.case_eq(e2.root(s), e.root(s), fuel, {bind("s", s)});
        for_each_bounded(c.positions(s), pos_bound(b), rt, [&](const Value& p) {
          rt.guarded({bind("s", s), bind("p", p)}, [&] {
            rt.case_eq(e2.down(s, p), e.down(s, p), fuel, {bind("s", s), bind("p", p)});
            Value sub = e.down(s, p);
            for_each_bounded(c.positions(sub), pos_bound(b), rt, [&](const Value& pp) {
              rt.guarded({bind("s", s), bind("p", p), bind("p'", pp)}, [&] {
                rt.case_eq(e2.plus(s, p, pp), e.plus(s, p, pp), fuel,
                           {bind("s", s), bind("p", p), bind("p'", pp)});
              });
            });
          });
        });
      });
    });
    report.entries.push_back(rt.finish());
  }

  {
    LawCheck rt("comonad-roundtrip");
    ComonadWitness w = witness_of(e);
    ComonadWitness w2 = witness_of(dc_from_comonad(w, e.name + "-roundtrip"));
    for_shapes(c.shapes(), b.shape_bound, rt, [&](const Value& s) {
      for (int k = 0; k < b.payload_samples && !rt.failed(); ++k) {
        rt.guarded({bind("s", s), bind("k", Value::integer(k))}, [&] {
          DataStructure d = sample_structure(c, s, k);
          rt.case_eq(w2.counit(d), w.counit(d), fuel,
                     {bind("s", s), bind("k", Value::integer(k))});
          rt.case_eq(encode_structure(w2.comult(d)), encode_structure(w.comult(d)), fuel,
                     {bind("s", s), bind("k", Value::integer(k))});
        });
      }
    });
    report.entries.push_back(rt.finish());
  }

  return report;
}

}  // namespace dcont
