#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcont {

// Library-wide error with a machine-readable code (e.g. "shape-not-in-container").
struct Error : std::runtime_error {
  std::string code;
  Error(std::string code_, const std::string& what_)
      : std::runtime_error(code_ + ": " + what_), code(std::move(code_)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

// Observation budget: bounds enumeration length and suspension unfolding depth.
struct Fuel {
  int depth = 8;
  bool spent() const { return depth <= 0; }
  Fuel burn() const { return Fuel{depth - 1}; }
};

enum class Tri { Equal, Unequal, Exhausted };

// Universal immutable value: unit, booleans, integers, interned symbols,
// pairs, tagged sums, options, finite sequences and suspensions (deferred
// producers, forced at most once).
class Value {
 public:
  enum class Kind { Unit, Bool, Int, Symbol, Pair, Sum, Option, Sequence, Suspension };

  Value() : Value(unit()) {}

  static Value unit();
  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value symbol(std::string name);
  static Value pair(Value first, Value second);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value just(Value v);
  static Value nothing();
  static Value sequence(std::vector<Value> items);
  static Value suspend(std::function<Value()> producer);

  Kind kind() const;

  bool as_bool() const;
  std::int64_t as_int() const;
  const std::string& as_symbol() const;
  const Value& first() const;
  const Value& second() const;
  bool is_inl() const;  // requires Sum
  const Value& sum_payload() const;
  bool is_just() const;  // requires Option
  const Value& option_payload() const;
  const std::vector<Value>& items() const;

  // Forces one suspension layer (idempotent, race-free). Identity on
  // everything else. Returns by value (a cheap shared handle) so that
  // chaining on temporaries is safe.
  Value force() const;
  // Forces through nested suspensions, up to `max_layers` deep.
  Value whnf(int max_layers = 1024) const;

  bool is(Kind k) const { return kind() == k; }

 private:
  struct Data;
  explicit Value(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Bounded structural equality / bisimulation. Definitive on fully finite
// values; `Exhausted` means agreement on every observation within fuel but
// unforced suspensions remain.
Tri value_eq(const Value& a, const Value& b, Fuel fuel);

// Textual rendering; suspensions are forced at most `fuel.depth` layers and
// shown as "..." beyond that.
std::string render(const Value& v, Fuel fuel = Fuel{8});

// Arithmetic that refuses to wrap silently.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
// Floored division/modulus; division by zero reports an evaluation error.
std::int64_t checked_div(std::int64_t a, std::int64_t b);
std::int64_t checked_mod(std::int64_t a, std::int64_t b);

}  // namespace dcont
