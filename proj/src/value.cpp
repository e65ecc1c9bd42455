#include "dcont/value.hpp"

#include <mutex>
#include <sstream>

namespace dcont {

struct Value::Data {
  Kind kind;
  bool b = false;
  std::int64_t i = 0;
  std::string sym;
  int tag = 0;  // Sum: 0 = inl, 1 = inr. Option: 0 = nothing, 1 = just.
  std::vector<Value> kids;

  // Suspension state; cached is written exactly once under `once`.
  mutable std::once_flag once;
  mutable std::function<Value()> producer;
  mutable std::optional<Value> cached;
};

Value Value::unit() {
  static const Value v = [] {
    auto d = std::make_shared<Data>();
    d->kind = Kind::Unit;
    return Value{std::move(d)};
  }();
  return v;
}

Value Value::boolean(bool b) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Bool;
  d->b = b;
  return Value{std::move(d)};
}

Value Value::integer(std::int64_t i) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Int;
  d->i = i;
  return Value{std::move(d)};
}

Value Value::symbol(std::string name) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Symbol;
  d->sym = std::move(name);
  return Value{std::move(d)};
}

Value Value::pair(Value first, Value second) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Pair;
  d->kids = {std::move(first), std::move(second)};
  return Value{std::move(d)};
}

Value Value::inl(Value v) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Sum;
  d->tag = 0;
  d->kids = {std::move(v)};
  return Value{std::move(d)};
}

Value Value::inr(Value v) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Sum;
  d->tag = 1;
  d->kids = {std::move(v)};
  return Value{std::move(d)};
}

Value Value::just(Value v) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Option;
  d->tag = 1;
  d->kids = {std::move(v)};
  return Value{std::move(d)};
}

Value Value::nothing() {
  static const Value v = [] {
    auto d = std::make_shared<Data>();
    d->kind = Kind::Option;
    d->tag = 0;
    return Value{std::move(d)};
  }();
  return v;
}

Value Value::sequence(std::vector<Value> items) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Sequence;
  d->kids = std::move(items);
  return Value{std::move(d)};
}

Value Value::suspend(std::function<Value()> producer) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Suspension;
  d->producer = std::move(producer);
  return Value{std::move(d)};
}

Value::Kind Value::kind() const { return d_->kind; }

bool Value::as_bool() const {
  if (d_->kind != Kind::Bool) fail("kind-mismatch", "expected boolean, got " + render(*this));
  return d_->b;
}

std::int64_t Value::as_int() const {
  if (d_->kind != Kind::Int) fail("kind-mismatch", "expected integer, got " + render(*this));
  return d_->i;
}

const std::string& Value::as_symbol() const {
  if (d_->kind != Kind::Symbol) fail("kind-mismatch", "expected symbol, got " + render(*this));
  return d_->sym;
}

const Value& Value::first() const {
  if (d_->kind != Kind::Pair) fail("kind-mismatch", "expected pair, got " + render(*this));
  return d_->kids[0];
}

const Value& Value::second() const {
  if (d_->kind != Kind::Pair) fail("kind-mismatch", "expected pair, got " + render(*this));
  return d_->kids[1];
}

bool Value::is_inl() const {
  if (d_->kind != Kind::Sum) fail("kind-mismatch", "expected sum, got " + render(*this));
  return d_->tag == 0;
}

const Value& Value::sum_payload() const {
  if (d_->kind != Kind::Sum) fail("kind-mismatch", "expected sum, got " + render(*this));
  return d_->kids[0];
}

bool Value::is_just() const {
  if (d_->kind != Kind::Option) fail("kind-mismatch", "expected option, got " + render(*this));
  return d_->tag == 1;
}

const Value& Value::option_payload() const {
  if (d_->kind != Kind::Option || d_->tag != 1)
    fail("kind-mismatch", "expected just, got " + render(*this));
  return d_->kids[0];
}

const std::vector<Value>& Value::items() const {
  if (d_->kind != Kind::Sequence) fail("kind-mismatch", "expected sequence, got " + render(*this));
  return d_->kids;
}

Value Value::force() const {
  if (d_->kind != Kind::Suspension) return *this;
  std::call_once(d_->once, [this] {
    d_->cached = d_->producer();
    d_->producer = nullptr;
  });
  return *d_->cached;
}

Value Value::whnf(int max_layers) const {
  Value v = *this;
  while (v.kind() == Kind::Suspension && max_layers-- > 0) v = v.force();
  if (v.kind() == Kind::Suspension) fail("fuel-exhausted", "suspension nest too deep");
  return v;
}

namespace {
Tri combine(Tri a, Tri b) {
  if (a == Tri::Unequal || b == Tri::Unequal) return Tri::Unequal;
  if (a == Tri::Exhausted || b == Tri::Exhausted) return Tri::Exhausted;
  return Tri::Equal;
}
}  // namespace

Tri value_eq(const Value& a, const Value& b, Fuel fuel) {
  using K = Value::Kind;
  if (a.kind() == K::Suspension || b.kind() == K::Suspension) {
    if (fuel.spent()) return Tri::Exhausted;
    return value_eq(a.force(), b.force(), fuel.burn());
  }
  if (a.kind() != b.kind()) return Tri::Unequal;
  switch (a.kind()) {
    case K::Unit:
      return Tri::Equal;
    case K::Bool:
      return a.as_bool() == b.as_bool() ? Tri::Equal : Tri::Unequal;
    case K::Int:
      return a.as_int() == b.as_int() ? Tri::Equal : Tri::Unequal;
    case K::Symbol:
      return a.as_symbol() == b.as_symbol() ? Tri::Equal : Tri::Unequal;
    case K::Pair:
      return combine(value_eq(a.first(), b.first(), fuel),
                     value_eq(a.second(), b.second(), fuel));
    case K::Sum:
      if (a.is_inl() != b.is_inl()) return Tri::Unequal;
      return value_eq(a.sum_payload(), b.sum_payload(), fuel);
    case K::Option:
      if (a.is_just() != b.is_just()) return Tri::Unequal;
      if (!a.is_just()) return Tri::Equal;
      return value_eq(a.option_payload(), b.option_payload(), fuel);
    case K::Sequence: {
      const auto& xs = a.items();
      const auto& ys = b.items();
      if (xs.size() != ys.size()) return Tri::Unequal;
      Tri acc = Tri::Equal;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        acc = combine(acc, value_eq(xs[i], ys[i], fuel));
        if (acc == Tri::Unequal) return acc;
      }
      return acc;
    }
    case K::Suspension:
      break;
  }
  fail("internal", "unreachable value kind");
}

namespace {
void render_into(const Value& v, Fuel fuel, std::ostream& out) {
  using K = Value::Kind;
  switch (v.kind()) {
    case K::Unit:
      out << "*";
      return;
    case K::Bool:
      out << (v.as_bool() ? "true" : "false");
      return;
    case K::Int:
      out << v.as_int();
      return;
    case K::Symbol:
      out << v.as_symbol();
      return;
    case K::Pair:
      out << "(";
      render_into(v.first(), fuel, out);
      out << ", ";
      render_into(v.second(), fuel, out);
      out << ")";
      return;
    case K::Sum:
      out << (v.is_inl() ? "inl " : "inr ");
      render_into(v.sum_payload(), fuel, out);
      return;
    case K::Option:
      if (v.is_just()) {
        out << "just ";
        render_into(v.option_payload(), fuel, out);
      } else {
        out << "nothing";
      }
      return;
    case K::Sequence: {
      out << "[";
      bool first = true;
      for (const auto& item : v.items()) {
        if (!first) out << ", ";
        first = false;
        render_into(item, fuel, out);
      }
      out << "]";
      return;
    }
    case K::Suspension:
      if (fuel.spent()) {
        out << "...";
      } else {
        render_into(v.force(), fuel.burn(), out);
      }
      return;
  }
}
}  // namespace

std::string render(const Value& v, Fuel fuel) {
  std::ostringstream out;
  render_into(v, fuel, out);
  return out.str();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail("integer-overflow", "addition overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail("integer-overflow", "subtraction overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail("integer-overflow", "multiplication overflow");
  return r;
}

std::int64_t checked_div(std::int64_t a, std::int64_t b) {
  if (b == 0) fail("division-by-zero", "div by zero");
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t checked_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) fail("division-by-zero", "mod by zero");
  std::int64_t r = a % b;
  if (r != 0 && ((a < 0) != (b < 0))) r += b;
  return r;
}

}  // namespace dcont
