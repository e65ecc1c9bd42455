#include <doctest.h>

#include <atomic>
#include <thread>

#include "dcont/directed.hpp"
#include "dcont/enumeration.hpp"

using namespace dcont;

namespace {

Value num(std::int64_t n) { return Value::integer(n); }

}  // namespace

TEST_CASE("value_eq on finite values") {
  CHECK(value_eq(Value::inl(num(2)), Value::inl(num(2)), Fuel{1}) == Tri::Equal);
  CHECK(value_eq(Value::just(num(0)), Value::nothing(), Fuel{1}) == Tri::Unequal);
  CHECK(value_eq(Value::pair(num(1), num(2)), Value::pair(num(1), num(3)), Fuel{4}) ==
        Tri::Unequal);
  CHECK(value_eq(Value::sequence({num(1), num(2)}), Value::sequence({num(1), num(2)}),
                 Fuel{4}) == Tri::Equal);
  CHECK(value_eq(Value::sequence({num(1)}), Value::sequence({num(1), num(2)}), Fuel{4}) ==
        Tri::Unequal);
  CHECK(value_eq(Value::symbol("a"), Value::symbol("a"), Fuel{1}) == Tri::Equal);
  CHECK(value_eq(Value::unit(), Value::unit(), Fuel{0}) == Tri::Equal);
}

TEST_CASE("forcing a suspension is idempotent and cached") {
  std::atomic<int> evaluations{0};
  Value s = Value::suspend([&evaluations] {
    ++evaluations;
    return Value::integer(42);
  });
  CHECK(s.force().as_int() == 42);
  CHECK(s.force().as_int() == 42);
  CHECK(evaluations.load() == 1);
  CHECK(value_eq(s, s, Fuel{2}) == Tri::Equal);
}

TEST_CASE("suspension forcing is race-free") {
  std::atomic<int> evaluations{0};
  Value s = Value::suspend([&evaluations] {
    ++evaluations;
    return Value::integer(7);
  });
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&s] { (void)s.force(); });
  for (auto& t : threads) t.join();
  CHECK(evaluations.load() == 1);
}

TEST_CASE("bisimulation up to fuel on unfolding shape trees") {
  // Two cofree-on-stream-style shape trees built from the same generator:
  // agreement on every observation within fuel, unforced tails beyond it.
  std::function<Value(int)> gen = [&gen](int n) {
    return Value::pair(num(n % 3), Value::suspend([&gen, n] { return gen(n + 1); }));
  };
  std::function<Value(int)> gen2 = [&gen2](int n) {
    return Value::pair(num(n % 3), Value::suspend([&gen2, n] { return gen2(n + 1); }));
  };
  CHECK(value_eq(gen(0), gen2(0), Fuel{3}) == Tri::Exhausted);
  // A genuine difference within fuel is found.
  std::function<Value(int)> gen3 = [&gen3](int n) {
    return Value::pair(num(n == 2 ? 9 : n % 3), Value::suspend([&gen3, n] {
                         return gen3(n + 1);
                       }));
  };
  CHECK(value_eq(gen(0), gen3(0), Fuel{5}) == Tri::Unequal);
}

TEST_CASE("enumerate builtin orders") {
  CHECK(fin_enum(3).take(10).size() == 3);
  CHECK(fin_enum(3).take(10)[2].as_int() == 2);
  auto nats = nat_enum().take(4);
  for (int i = 0; i < 4; ++i) CHECK(nats[i].as_int() == i);
  // integers: 0, 1, -1, 2, -2, ...
  auto ints = int_enum().take(5);
  CHECK(ints[0].as_int() == 0);
  CHECK(ints[1].as_int() == 1);
  CHECK(ints[2].as_int() == -1);
  CHECK(ints[3].as_int() == 2);
  CHECK(ints[4].as_int() == -2);
}

TEST_CASE("zipper positions of shape (5,6) are the 12 integers -5..6") {
  DirectedContainer z = list_zipper_dc();
  Enumeration pos = z.base.positions(Value::pair(num(5), num(6)));
  auto all = pos.take(100);
  REQUIRE(all.size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(all[i].as_int() == -5 + i);
}

TEST_CASE("enumerate is prefix-monotone") {
  auto check_prefix = [](const Enumeration& e) {
    auto small = e.take(3);
    auto big = e.take(9);
    REQUIRE(small.size() <= big.size());
    for (std::size_t i = 0; i < small.size(); ++i)
      CHECK(value_eq(small[i], big[i], Fuel{8}) == Tri::Equal);
  };
  check_prefix(nat_enum());
  check_prefix(int_enum());
  check_prefix(pair_enum(nat_enum(), fin_enum(2)));
  check_prefix(sum_enum(fin_enum(2), nat_enum()));
  check_prefix(sigma_enum(nat_enum(), [](const Value& v) { return fin_enum(v.as_int()); }));
}

TEST_CASE("value_eq is symmetric and transitive over a bounded enumeration") {
  auto xs = pair_enum(int_enum(), option_enum(fin_enum(2))).take(12);
  Fuel f{8};
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(value_eq(a, b, f) == value_eq(b, a, f));
      for (const auto& c : xs) {
        if (value_eq(a, b, f) == Tri::Equal && value_eq(b, c, f) == Tri::Equal)
          CHECK(value_eq(a, c, f) == Tri::Equal);
      }
    }
}

TEST_CASE("no duplicates within enumeration prefixes") {
  auto check_nodup = [](const Enumeration& e, std::uint64_t n) {
    auto xs = e.take(n);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        CHECK(value_eq(xs[i], xs[j], Fuel{8}) == Tri::Unequal);
  };
  check_nodup(pair_enum(nat_enum(), nat_enum()), 15);
  check_nodup(sum_enum(nat_enum(), nat_enum()), 12);
  check_nodup(option_enum(int_enum()), 9);
  check_nodup(tuple_enum(fin_enum(3), 2), 9);
}

TEST_CASE("checked arithmetic rejects wrapping and division by zero") {
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Error);
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), Error);
  CHECK_THROWS_AS(checked_div(1, 0), Error);
  CHECK_THROWS_AS(checked_mod(1, 0), Error);
  CHECK(checked_div(7, 2) == 3);
  CHECK(checked_div(-7, 2) == -4);  // floored
  CHECK(checked_mod(-7, 2) == 1);
  CHECK(checked_mod(7, 3) == 1);
}

TEST_CASE("render") {
  CHECK(render(Value::pair(num(2), Value::sequence({Value::symbol("a"), num(-1)}))) ==
        "(2, [a, -1])");
  CHECK(render(Value::inl(Value::unit())) == "inl *");
  CHECK(render(Value::just(Value::nothing())) == "just nothing");
}
