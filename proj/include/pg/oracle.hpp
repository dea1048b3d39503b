#pragma once

// Independent brute-force ground truth: automorphism enumeration over
// pruned generator-image tuples, pointwise derivation checking, and
// conjecture verification by exhaustion. Deliberately kept away from
// the derivation engine so the cross-validation means something.

#include <optional>
#include <unordered_map>

#include "pg/morphisms.hpp"
#include "pg/structure.hpp"

namespace pg {

struct AutEnumeration {
  const GroupContext* group = nullptr;
  std::vector<unsigned> user_gens;     // image tuples are over these
  std::vector<GroupMap> automorphisms; // lex order of image tuples
  std::vector<size_t> inner_indices;   // positions of Inn(G) members
  std::unordered_map<unsigned long long, unsigned long long> count_by_order;

  unsigned long long inner_count() const { return inner_indices.size(); }
  bool is_inner_map(const GroupMap& f) const;
};

// Every tuple of candidate images (pruned by element order and by
// independence modulo Phi) is checked against all relations; requires
// |G|^d <= limit.
AutEnumeration brute_force_automorphisms(const GroupContext& g,
                                         unsigned long long limit = 1ull << 24);

struct PointwiseResult {
  bool pass = true;
  Element g, h;  // failing pair when !pass
};

// Verifies the cocycle law delta(gh) = delta(g)^h delta(h) on all pairs
// of a value table indexed by element rank. Throws TooLarge beyond 2^20
// pairs.
PointwiseResult pointwise_derivation_check(const GroupContext& g,
                                           const std::vector<Element>& table);

// Same check against a coset table: values live in the parent, indexed
// by quotient element rank, action by lifted representatives.
PointwiseResult pointwise_derivation_check(const QuotientContext& q,
                                           const std::vector<Element>& table);

struct NonInnerWitness {
  bool exists = false;
  std::optional<GroupMap> example;  // lexicographically first
};

NonInnerWitness noninner_bruteforce(const GroupContext& g,
                                    unsigned long long limit = 1ull << 24);

}  // namespace pg
