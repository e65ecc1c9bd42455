#include "dcont/enumeration.hpp"

#include <limits>

namespace dcont {

std::optional<Value> Enumeration::at(std::uint64_t i) const {
  if (!at_) return std::nullopt;
  if (card_ && i >= *card_) return std::nullopt;
  return at_(i);
}

std::vector<Value> Enumeration::take(std::uint64_t limit) const {
  std::vector<Value> out;
  for (std::uint64_t i = 0; i < limit; ++i) {
    auto v = at(i);
    if (!v) break;
    out.push_back(*v);
  }
  return out;
}

Tri Enumeration::contains(const Value& v, Fuel scan_fuel) const {
  if (contains_) {
    if (auto r = contains_(v)) return *r ? Tri::Equal : Tri::Unequal;
  }
  std::uint64_t bound = card_ ? *card_ : static_cast<std::uint64_t>(scan_fuel.depth);
  bool truncated = !card_ || *card_ > bound;
  bool exhausted = truncated;
  for (std::uint64_t i = 0; i < bound; ++i) {
    auto x = at(i);
    if (!x) break;
    Tri r = value_eq(*x, v, scan_fuel);
    if (r == Tri::Equal) return Tri::Equal;
    if (r == Tri::Exhausted) exhausted = true;
  }
  return exhausted ? Tri::Exhausted : Tri::Unequal;
}

std::optional<std::uint64_t> Enumeration::index_of(const Value& v, std::uint64_t limit,
                                                   Fuel eq_fuel) const {
  if (index_) {
    auto i = index_(v);
    if (!i) return std::nullopt;
    if (card_ && *i >= *card_) return std::nullopt;
    return i;
  }
  for (std::uint64_t i = 0; i < limit; ++i) {
    auto x = at(i);
    if (!x) break;
    if (value_eq(*x, v, eq_fuel) == Tri::Equal) return i;
  }
  return std::nullopt;
}

Enumeration empty_enum() {
  return Enumeration([](std::uint64_t) { return std::nullopt; }, 0,
                     [](const Value&) { return false; });
}

Enumeration unit_enum() {
  return Enumeration([](std::uint64_t i) -> std::optional<Value> {
                       if (i > 0) return std::nullopt;
                       return Value::unit();
                     },
                     1, [](const Value& v) { return v.whnf().kind() == Value::Kind::Unit; },
                     [](const Value& v) -> std::optional<std::uint64_t> {
                       if (v.whnf().kind() != Value::Kind::Unit) return std::nullopt;
                       return 0;
                     });
}

Enumeration fin_enum(std::int64_t n) {
  if (n <= 0) return empty_enum();
  return Enumeration(
      [n](std::uint64_t i) -> std::optional<Value> {
        if (i >= static_cast<std::uint64_t>(n)) return std::nullopt;
        return Value::integer(static_cast<std::int64_t>(i));
      },
      static_cast<std::uint64_t>(n),
      [n](const Value& v) -> std::optional<bool> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int) return false;
        return w.as_int() >= 0 && w.as_int() < n;
      },
      [n](const Value& v) -> std::optional<std::uint64_t> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int || w.as_int() < 0 || w.as_int() >= n)
          return std::nullopt;
        return static_cast<std::uint64_t>(w.as_int());
      });
}

Enumeration nat_enum() {
  return Enumeration(
      [](std::uint64_t i) -> std::optional<Value> {
        return Value::integer(static_cast<std::int64_t>(i));
      },
      std::nullopt,
      [](const Value& v) -> std::optional<bool> {
        const Value& w = v.whnf();
        return w.kind() == Value::Kind::Int && w.as_int() >= 0;
      },
      [](const Value& v) -> std::optional<std::uint64_t> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int || w.as_int() < 0) return std::nullopt;
        return static_cast<std::uint64_t>(w.as_int());
      });
}

Enumeration int_enum() {
  // 0, 1, -1, 2, -2, ...
  return Enumeration(
      [](std::uint64_t i) -> std::optional<Value> {
        if (i == 0) return Value::integer(0);
        std::int64_t k = static_cast<std::int64_t>((i + 1) / 2);
        return Value::integer(i % 2 == 1 ? k : -k);
      },
      std::nullopt,
      [](const Value& v) -> std::optional<bool> {
        return v.whnf().kind() == Value::Kind::Int;
      },
      [](const Value& v) -> std::optional<std::uint64_t> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int) return std::nullopt;
        std::int64_t k = w.as_int();
        if (k == 0) return 0;
        if (k > 0) return 2 * static_cast<std::uint64_t>(k) - 1;
        return 2 * static_cast<std::uint64_t>(-k);
      });
}

Enumeration int_range_enum(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) return empty_enum();
  std::uint64_t n = static_cast<std::uint64_t>(hi - lo + 1);
  return Enumeration(
      [lo, n](std::uint64_t i) -> std::optional<Value> {
        if (i >= n) return std::nullopt;
        return Value::integer(lo + static_cast<std::int64_t>(i));
      },
      n,
      [lo, hi](const Value& v) -> std::optional<bool> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int) return false;
        return w.as_int() >= lo && w.as_int() <= hi;
      },
      [lo, hi](const Value& v) -> std::optional<std::uint64_t> {
        const Value& w = v.whnf();
        if (w.kind() != Value::Kind::Int || w.as_int() < lo || w.as_int() > hi)
          return std::nullopt;
        return static_cast<std::uint64_t>(w.as_int() - lo);
      });
}

Enumeration of_values(std::vector<Value> vs) {
  auto shared = std::make_shared<std::vector<Value>>(std::move(vs));
  return Enumeration(
      [shared](std::uint64_t i) -> std::optional<Value> {
        if (i >= shared->size()) return std::nullopt;
        return (*shared)[i];
      },
      shared->size(),
      [shared](const Value& v) -> std::optional<bool> {
        for (const auto& x : *shared)
          if (value_eq(x, v, Fuel{16}) == Tri::Equal) return true;
        return false;
      });
}

Enumeration map_enum(Enumeration e, std::function<Value(const Value&)> f,
                     std::function<std::optional<Value>(const Value&)> inverse) {
  Enumeration::ContainsFn contains = nullptr;
  if (inverse) {
    contains = [e, inverse](const Value& v) -> std::optional<bool> {
      auto pre = inverse(v);
      if (!pre) return false;
      Tri r = e.contains(*pre, Fuel{64});
      if (r == Tri::Exhausted) return std::nullopt;
      return r == Tri::Equal;
    };
  }
  return Enumeration(
      [e, f](std::uint64_t i) -> std::optional<Value> {
        auto v = e.at(i);
        if (!v) return std::nullopt;
        return f(*v);
      },
      e.cardinality(), std::move(contains));
}

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t card_or_inf(const Enumeration& e) {
  auto c = e.cardinality();
  return c ? *c : kInf;
}

std::optional<std::uint64_t> mul_card(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a == kInf || b == kInf) return std::nullopt;
  if (a > (1ull << 60) / b) return std::nullopt;  // treat huge as unbounded
  return a * b;
}

}  // namespace

Enumeration pair_enum(Enumeration a, Enumeration b) {
  std::uint64_t na = card_or_inf(a), nb = card_or_inf(b);
  std::optional<std::uint64_t> card = mul_card(na, nb);
  auto at = [a, b, na, nb](std::uint64_t i) -> std::optional<Value> {
    // Walk anti-diagonals d; entry (ai, d - ai).
    for (std::uint64_t d = 0;; ++d) {
      std::uint64_t lo = (nb == kInf || d < nb) ? 0 : d - (nb - 1);
      std::uint64_t hi_excl = (na == kInf) ? d + 1 : std::min<std::uint64_t>(d + 1, na);
      std::uint64_t count = hi_excl > lo ? hi_excl - lo : 0;
      if (i < count) {
        std::uint64_t ai = lo + i;
        auto va = a.at(ai);
        auto vb = b.at(d - ai);
        if (!va || !vb) return std::nullopt;
        return Value::pair(*va, *vb);
      }
      i -= count;
      if (na != kInf && nb != kInf && d >= (na - 1) + (nb - 1)) return std::nullopt;
    }
  };
  Enumeration::ContainsFn contains = [a, b](const Value& v) -> std::optional<bool> {
    const Value& w = v.whnf();
    if (w.kind() != Value::Kind::Pair) return false;
    Tri ra = a.contains(w.first(), Fuel{64});
    Tri rb = b.contains(w.second(), Fuel{64});
    if (ra == Tri::Unequal || rb == Tri::Unequal) return false;
    if (ra == Tri::Exhausted || rb == Tri::Exhausted) return std::nullopt;
    return true;
  };
  if (card && *card == 0) return empty_enum();
  return Enumeration(std::move(at), card, std::move(contains));
}

Enumeration sum_enum(Enumeration a, Enumeration b) {
  std::uint64_t na = card_or_inf(a), nb = card_or_inf(b);
  std::optional<std::uint64_t> card;
  if (na != kInf && nb != kInf) card = na + nb;
  auto at = [a, b, na, nb](std::uint64_t i) -> std::optional<Value> {
    std::uint64_t both = std::min(na, nb);
    if (both != kInf && i >= 2 * both) {
      std::uint64_t rest = i - 2 * both;
      if (na > nb) {
        auto v = a.at(both + rest);
        if (!v) return std::nullopt;
        return Value::inl(*v);
      }
      auto v = b.at(both + rest);
      if (!v) return std::nullopt;
      return Value::inr(*v);
    }
    if (i % 2 == 0) {
      auto v = a.at(i / 2);
      if (!v) return std::nullopt;
      return Value::inl(*v);
    }
    auto v = b.at(i / 2);
    if (!v) return std::nullopt;
    return Value::inr(*v);
  };
  Enumeration::ContainsFn contains = [a, b](const Value& v) -> std::optional<bool> {
    const Value& w = v.whnf();
    if (w.kind() != Value::Kind::Sum) return false;
    Tri r = w.is_inl() ? a.contains(w.sum_payload(), Fuel{64})
                       : b.contains(w.sum_payload(), Fuel{64});
    if (r == Tri::Exhausted) return std::nullopt;
    return r == Tri::Equal;
  };
  return Enumeration(std::move(at), card, std::move(contains));
}

Enumeration option_enum(Enumeration a) {
  std::optional<std::uint64_t> card;
  if (auto c = a.cardinality()) card = *c + 1;
  auto at = [a](std::uint64_t i) -> std::optional<Value> {
    if (i == 0) return Value::nothing();
    auto v = a.at(i - 1);
    if (!v) return std::nullopt;
    return Value::just(*v);
  };
  Enumeration::ContainsFn contains = [a](const Value& v) -> std::optional<bool> {
    const Value& w = v.whnf();
    if (w.kind() != Value::Kind::Option) return false;
    if (!w.is_just()) return true;
    Tri r = a.contains(w.option_payload(), Fuel{64});
    if (r == Tri::Exhausted) return std::nullopt;
    return r == Tri::Equal;
  };
  return Enumeration(std::move(at), card, std::move(contains));
}

Enumeration sigma_enum(Enumeration a, std::function<Enumeration(const Value&)> f) {
  // Cardinality: sum over a finite index when every fibre is finite.
  std::optional<std::uint64_t> card;
  if (auto ca = a.cardinality()) {
    std::uint64_t total = 0;
    bool known = true;
    for (std::uint64_t i = 0; i < *ca; ++i) {
      auto v = a.at(i);
      if (!v) break;
      auto cf = f(*v).cardinality();
      if (!cf) {
        known = false;
        break;
      }
      total += *cf;
    }
    if (known) card = total;
  }
  std::uint64_t na = card_or_inf(a);
  auto at = [a, f, na](std::uint64_t i) -> std::optional<Value> {
    int empty_streak = 0;
    for (std::uint64_t d = 0;; ++d) {
      bool contributed = false;
      std::uint64_t hi_excl = (na == kInf) ? d + 1 : std::min<std::uint64_t>(d + 1, na);
      for (std::uint64_t ai = 0; ai < hi_excl; ++ai) {
        auto va = a.at(ai);
        if (!va) break;
        auto vb = f(*va).at(d - ai);
        if (vb) {
          contributed = true;
          if (i == 0) return Value::pair(*va, *vb);
          --i;
        }
      }
      if (na != kInf) {
        // Stop once no fibre can contribute to a later diagonal.
        bool future = false;
        for (std::uint64_t ai = 0; ai < na && !future; ++ai) {
          auto va = a.at(ai);
          if (!va) break;
          std::uint64_t nf = card_or_inf(f(*va));
          future = (nf == kInf) || ai + nf > d + 1;
        }
        if (!future) return std::nullopt;
      }
      // Fibres of unknown cardinality can make the emptiness test above
      // inconclusive; very long runs of empty diagonals end the walk. The
      // position/shape sets in this library are either finite or dense, so
      // nothing real is cut off.
      empty_streak = contributed ? 0 : empty_streak + 1;
      if (empty_streak > 4096) return std::nullopt;
    }
  };
  Enumeration::ContainsFn contains = [a, f](const Value& v) -> std::optional<bool> {
    const Value& w = v.whnf();
    if (w.kind() != Value::Kind::Pair) return false;
    Tri ra = a.contains(w.first(), Fuel{64});
    if (ra == Tri::Unequal) return false;
    Tri rb = f(w.first()).contains(w.second(), Fuel{64});
    if (rb == Tri::Unequal) return false;
    if (ra == Tri::Exhausted || rb == Tri::Exhausted) return std::nullopt;
    return true;
  };
  if (card && *card == 0) return empty_enum();
  return Enumeration(std::move(at), card, std::move(contains));
}

Enumeration concat_enum(Enumeration a, Enumeration b) {
  auto ca = a.cardinality();
  if (!ca) fail("internal", "concat_enum requires a finite first part");
  std::optional<std::uint64_t> card;
  if (auto cb = b.cardinality()) card = *ca + *cb;
  std::uint64_t na = *ca;
  auto at = [a, b, na](std::uint64_t i) -> std::optional<Value> {
    if (i < na) return a.at(i);
    return b.at(i - na);
  };
  Enumeration::ContainsFn contains = [a, b](const Value& v) -> std::optional<bool> {
    Tri ra = a.contains(v, Fuel{64});
    if (ra == Tri::Equal) return true;
    Tri rb = b.contains(v, Fuel{64});
    if (rb == Tri::Equal) return true;
    if (ra == Tri::Exhausted || rb == Tri::Exhausted) return std::nullopt;
    return false;
  };
  return Enumeration(std::move(at), card, std::move(contains));
}

namespace {

// Visits compositions of `weight` into `k` parts (each < cap when capped),
// lexicographically; returns the i-th one if it exists, consuming i.
bool nth_composition(std::uint64_t weight, std::uint64_t k, std::uint64_t cap_or_inf,
                     std::uint64_t& i, std::vector<std::uint64_t>& out) {
  if (k == 0) {
    if (weight != 0) return false;
    if (i == 0) return true;
    --i;
    return false;
  }
  std::uint64_t hi = weight;
  if (cap_or_inf != kInf && cap_or_inf > 0 && hi > cap_or_inf - 1) hi = cap_or_inf - 1;
  if (cap_or_inf == 0) return false;
  for (std::uint64_t first = 0; first <= hi; ++first) {
    out.push_back(first);
    if (nth_composition(weight - first, k - 1, cap_or_inf, i, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

Enumeration tuple_enum(Enumeration e, std::uint64_t k) {
  if (k == 0) return of_values({Value::sequence({})});
  std::uint64_t ne = card_or_inf(e);
  std::optional<std::uint64_t> card;
  if (ne != kInf) {
    std::uint64_t total = 1;
    bool ok = true;
    for (std::uint64_t j = 0; j < k; ++j) {
      auto r = mul_card(total, ne);
      if (!r) {
        ok = false;
        break;
      }
      total = *r;
    }
    if (ok) card = total;
  }
  auto at = [e, k, ne](std::uint64_t i) -> std::optional<Value> {
    std::uint64_t max_weight =
        (ne == kInf) ? kInf : (ne == 0 ? 0 : (ne - 1) * k);
    for (std::uint64_t w = 0;; ++w) {
      if (max_weight != kInf && w > max_weight) return std::nullopt;
      std::vector<std::uint64_t> idx;
      std::uint64_t rem = i;
      if (nth_composition(w, k, ne, rem, idx)) {
        std::vector<Value> items;
        items.reserve(k);
        for (auto j : idx) {
          auto v = e.at(j);
          if (!v) return std::nullopt;
          items.push_back(*v);
        }
        return Value::sequence(std::move(items));
      }
      i = rem;
    }
  };
  return Enumeration(std::move(at), card, nullptr);
}

}  // namespace dcont
