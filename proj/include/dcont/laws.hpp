#pragma once

#include "dcont/directed.hpp"

namespace dcont {

// Quantifier bounds for exhaustive checking. shape_bound counts shapes drawn
// from the enumeration, position_fuel bounds position enumeration and
// suspension unfolding, payload_samples counts injective payload assignments.
struct Bounds {
  std::uint64_t shape_bound = 6;
  Fuel position_fuel{8};
  int payload_samples = 3;
};

enum class LawStatus { Pass, Fail, Exhausted };
std::string to_string(LawStatus s);

struct Binding {
  std::string var;
  Value value;
  std::string rendered;
};

struct LawEntry {
  std::string id;
  LawStatus status = LawStatus::Pass;
  std::uint64_t cases = 0;
  std::vector<Binding> counterexample;  // first in canonical order, Fail only
  std::string note;
};

struct LawReport {
  std::vector<LawEntry> entries;
  bool all_ok() const;  // no Fail entry (Exhausted without failure counts as ok)
  const LawEntry* find(const std::string& id) const;
};

// Single-law accumulator. Cases are evaluated in canonical enumeration
// order; the first failure is kept and later cases are not evaluated, which
// keeps reports deterministic.
class LawCheck {
 public:
  explicit LawCheck(std::string id) { entry_.id = std::move(id); }

  bool failed() const { return entry_.status == LawStatus::Fail; }

  void case_eq(const Value& lhs, const Value& rhs, Fuel fuel, std::vector<Binding> bindings);
  // Runs `body` guarding against evaluation errors, which count as failures.
  void guarded(std::vector<Binding> bindings, const std::function<void()>& body);
  void mark_truncated() { truncated_ = true; }
  void skip(std::string note);
  // Folds another report's entry into this check (used by the aggregate
  // universal-property entries).
  void absorb(const LawEntry& e, const std::string& label);

  LawEntry finish() const;

 private:
  LawEntry entry_;
  bool truncated_ = false;
  bool exhausted_cmp_ = false;
  bool skipped_ = false;
};

// Iterates enumerate(e, bound) in order; marks the check exhausted when the
// domain is truncated; stops once the check has failed.
void for_each_bounded(const Enumeration& e, std::uint64_t bound, LawCheck& lc,
                      const std::function<void(const Value&)>& f);

// Shape sampling: same iteration, but truncation by shape_bound is the
// checking protocol and does not demote the status to exhausted.
void for_shapes(const Enumeration& e, std::uint64_t bound, LawCheck& lc,
                const std::function<void(const Value&)>& f);

Binding bind(std::string var, const Value& v);

// The five directed container laws (dc-law-1 .. dc-law-5). Laws 4 and 5 are
// skipped (status Exhausted) when their well-typedness prerequisites (laws 1
// and 2 respectively) failed.
LawReport check_dc_laws(const DirectedContainer& e, const Bounds& b);

// The three morphism laws (m1..m3).
LawReport check_dc_morphism_laws(const DCMorphism& h, const Bounds& b);

// Comonad laws, pointwise over bounded shapes/positions and
// payload_samples injective assignments: right-counit, left-counit,
// coassociativity.
LawReport check_comonad_laws(const ComonadWitness& w, const Bounds& b);
LawReport check_comonad_laws(const DirectedContainer& e, const Bounds& b);

// Round-trips through the comonad reading: quote-interpret-morphism
// (full-faithfulness on a catalog: cid, h^eps, h^delta), shape-preservation,
// dc-roundtrip (structure -> comonad -> structure) and comonad-roundtrip
// (comonad -> structure -> comonad).
LawReport check_roundtrips(const DirectedContainer& e, const Bounds& b);

// Full-faithfulness round-trip for one morphism: quote([[h]]) = h on bounds.
LawReport check_quote_roundtrip(const ContainerMorphism& h, const std::string& name,
                                const Bounds& b);

// Extensional equality of two parallel morphisms on bounds (helper shared
// with the universal-property checks).
void check_morphisms_agree(LawCheck& lc, const ContainerMorphism& a, const ContainerMorphism& b,
                           const Bounds& bd);

// Injective payload assignment number k (payload at p is pair(k, p)).
DataStructure sample_structure(const Container& c, const Value& shape, int k);

}  // namespace dcont
