#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dcont/value.hpp"

namespace dcont {

// Deterministic ordered stream of values. `at(i)` is pure; nullopt past the
// end. Cardinality is known-finite or unbounded (nullopt). No duplicates in
// any prefix; this order defines "first counterexample".
class Enumeration {
 public:
  using AtFn = std::function<std::optional<Value>(std::uint64_t)>;
  // Optional fast membership test; nullopt means "unknown, scan instead".
  using ContainsFn = std::function<std::optional<bool>(const Value&)>;
  // Optional O(1) index of a member value; nullopt means "not a member".
  using IndexFn = std::function<std::optional<std::uint64_t>(const Value&)>;

  Enumeration() = default;
  Enumeration(AtFn at, std::optional<std::uint64_t> cardinality, ContainsFn contains = nullptr,
              IndexFn index = nullptr)
      : at_(std::move(at)), card_(cardinality), contains_(std::move(contains)),
        index_(std::move(index)) {}

  std::optional<Value> at(std::uint64_t i) const;
  std::optional<std::uint64_t> cardinality() const { return card_; }
  bool finite() const { return card_.has_value(); }

  // Bounded materialization: min(limit, cardinality) values in order.
  std::vector<Value> take(std::uint64_t limit) const;

  // Does take(limit) cover the whole enumeration?
  bool truncated_by(std::uint64_t limit) const { return !card_ || *card_ > limit; }

  // Membership, via the fast path when available, else a bounded scan.
  Tri contains(const Value& v, Fuel scan_fuel) const;

  // Index of v within the first `limit` entries, if present. Uses the fast
  // index when available.
  std::optional<std::uint64_t> index_of(const Value& v, std::uint64_t limit, Fuel eq_fuel) const;

 private:
  AtFn at_;
  std::optional<std::uint64_t> card_ = 0;
  ContainsFn contains_;
  IndexFn index_;
};

// Builtin shape/position sets, in canonical order.
Enumeration empty_enum();
Enumeration unit_enum();                                   // [*]
Enumeration fin_enum(std::int64_t n);                      // 0..n-1
Enumeration nat_enum();                                    // 0,1,2,...
Enumeration int_enum();                                    // 0,1,-1,2,-2,...
Enumeration int_range_enum(std::int64_t lo, std::int64_t hi);
Enumeration of_values(std::vector<Value> vs);

// f must be injective on the source to preserve the no-duplicates guarantee;
// inverse (when given) keeps membership exact.
Enumeration map_enum(Enumeration e, std::function<Value(const Value&)> f,
                     std::function<std::optional<Value>(const Value&)> inverse = nullptr);

// Fair diagonal interleaving of pairs (the canonical product order).
Enumeration pair_enum(Enumeration a, Enumeration b);
// inl a0, inr b0, inl a1, inr b1, ...; the survivor continues alone.
Enumeration sum_enum(Enumeration a, Enumeration b);
// nothing, just a0, just a1, ...
Enumeration option_enum(Enumeration a);
// Dependent pairs (a, b in f(a)) by fair diagonal.
Enumeration sigma_enum(Enumeration a, std::function<Enumeration(const Value&)> f);
// a0..; then b0.. (first must be finite).
Enumeration concat_enum(Enumeration a, Enumeration b);
// k-tuples over e as Sequence values, by total index weight (fair for
// infinite e, lexicographic within a weight class).
Enumeration tuple_enum(Enumeration e, std::uint64_t k);

}  // namespace dcont
