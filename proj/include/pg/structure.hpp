#pragma once

// Subgroups as explicit element sets, central series, quotients, and the
// structural predicates consumed by the case analysis. Everything here
// is a scan over enumerated elements; desk scale is enforced by
// kEnumLimit.

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pg/pcgroup.hpp"

namespace pg {

class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup from_generators(const GroupContext& g,
                                  std::vector<Element> gens);
  static Subgroup from_elements(const GroupContext& g,
                                std::vector<Element> elems);
  static Subgroup trivial(const GroupContext& g);
  static Subgroup whole(const GroupContext& g);

  const GroupContext& context() const { return *ctx_; }
  const std::vector<Element>& elements() const { return elems_; }
  const std::vector<Element>& generators() const { return gens_; }
  unsigned long long size() const { return elems_.size(); }
  bool contains(const Element& a) const;
  bool contains(const Subgroup& other) const;

  bool is_normal() const;
  bool is_abelian() const;
  bool is_elementary_abelian() const;
  bool is_cyclic() const;
  bool is_trivial() const { return elems_.size() == 1; }

  // log_p |H|
  unsigned log_order() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elems_ == b.elems_;
  }

 private:
  const GroupContext* ctx_ = nullptr;
  std::vector<Element> elems_;  // sorted lexicographically, contains 1
  std::vector<Element> gens_;   // deterministic small generating set
};

Subgroup closure(const GroupContext& g, const std::vector<Element>& gens);
Subgroup centralizer(const GroupContext& g, const std::vector<Element>& s);
Subgroup center(const GroupContext& g);

struct SeriesReport {
  std::vector<Subgroup> upper;  // Z_0 = 1 <= Z_1 <= ... <= G
  std::vector<Subgroup> lower;  // gamma_1 = G >= ... >= 1
  unsigned nilpotency_class = 0;
  unsigned coclass = 0;  // n - class
  unsigned d = 0;        // minimal generator count
  unsigned long long exponent = 0;
  unsigned order_log = 0;

  std::vector<unsigned long long> upper_sizes() const;
  std::vector<unsigned long long> lower_sizes() const;
};

std::vector<Subgroup> upper_central_series(const GroupContext& g);
std::vector<Subgroup> lower_central_series(const GroupContext& g);
SeriesReport series_report(const GroupContext& g);

// Z_k(G) with the convention Z_k = G for k >= class and Z_0 = 1; k < 0
// yields the trivial subgroup.
Subgroup upper_central_term(const std::vector<Subgroup>& upper, long long k);
// gamma_k(G) with gamma_k = 1 for k > class + 1 and gamma_1 = G.
Subgroup lower_central_term(const std::vector<Subgroup>& lower, unsigned k);

Subgroup frattini(const GroupContext& g);
Subgroup agemo(const GroupContext& g);   // generated by all p-th powers
Subgroup agemo2(const GroupContext& g);  // generated by all 4-th powers (p = 2)
Subgroup derived_subgroup(const GroupContext& g);

// For abelian H this is { h : h^p = 1 }; otherwise the closure of the
// order-<=p elements.
Subgroup omega1(const Subgroup& h);

// d(·) of an abelian subgroup or quotient section
unsigned rank_of_abelian(const Subgroup& h);
unsigned minimal_generators(const GroupContext& g);  // d(G) = log_p [G : Phi]

// [A, B] as a subgroup (generated by all commutators, full scan)
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);

enum class TriState { holds, fails, undecided };
const char* to_string(TriState t);

enum class MaximalClass2Type { none, dihedral, quaternion, semidihedral };
const char* to_string(MaximalClass2Type t);

struct StructureFlags {
  bool is_abelian = false;
  bool is_elementary_abelian = false;
  bool is_cyclic = false;
  unsigned long long exponent = 0;
  bool is_powerful = false;
  bool is_extraspecial = false;
  bool strongly_frattinian_s3 = false;   // C_G(Phi(G)) = Z(Phi(G))
  bool deaconescu_condition_s1 = false;  // C_G(Z(Phi(G))) = Phi(G)
  TriState regular = TriState::undecided;
  MaximalClass2Type maximal_class_2_type = MaximalClass2Type::none;
};

StructureFlags classify(const GroupContext& g);

// The pairwise regularity definition check: (ab)^p = a^p b^p modulo
// p-th powers of gamma_2(<a,b>). Affordable below 5^4 elements.
bool regular_pairwise_check(const GroupContext& g,
                            unsigned long long limit = 625);

// Two-step centralizers C_G(G_i/G_{i+2}) for 2 <= i <= n-2 of a maximal
// class group; an empty index range yields an empty list.
std::vector<Subgroup> two_step_centralizers(const GroupContext& g);
std::optional<Element> find_uniform(const GroupContext& g);

// ---------------------------------------------------------------------------
// black-box groups and derived pc presentations

// A finite p-group given by labels and a multiplication closure; labels
// are Elements of some ambient context (actual elements for subgroups,
// canonical coset representatives for quotients).
struct BlackBoxGroup {
  unsigned prime = 0;
  std::vector<Element> elems;  // sorted, includes the identity label
  Element id;
  std::function<Element(const Element&, const Element&)> mult;

  Element pow(const Element& a, unsigned long long k) const;
  Element inv(const Element& a) const;
  unsigned long long order_of(const Element& a) const;
};

// A consistent weighted pc presentation computed from a black box by
// refining the lower p-central series. Prescribed labels, when given,
// become the first pc-generators (they must be independent modulo the
// Frattini subgroup).
struct DerivedPcp {
  PcPresentation pres;
  std::vector<Element> gen_labels;  // black-box label per pc-generator
  // chain H_k = <g_k, ..., g_m> as label sets, H_1 = everything
  std::vector<std::unordered_set<Element, ElementHash>> chain;

  // normal form exponents of a black-box label in the derived pcp
  Element express(const BlackBoxGroup& bb, const Element& label) const;
};

DerivedPcp pcp_of_blackbox(const BlackBoxGroup& bb,
                           const std::vector<Element>& prescribed = {});

// Shortest positive words over the given user labels reaching every
// element; deterministic BFS order. Positive words stay value-correct
// whatever the power relations are.
std::unordered_map<Element, Word, ElementHash> blackbox_words(
    const BlackBoxGroup& bb, const std::vector<Element>& user_labels);

class QuotientContext {
 public:
  QuotientContext(const GroupContext& g, Subgroup n);  // throws NotNormal
  QuotientContext(const GroupContext& g, Subgroup n,
                  std::vector<Element> user_gens);

  const GroupContext& parent() const { return *parent_; }
  const Subgroup& normal_subgroup() const { return nsub_; }
  const GroupContext& group() const { return *qctx_; }
  unsigned long long size() const { return qctx_->order(); }

  // lexicographically least member of gN; idempotent
  Element canonical_rep(const Element& g) const;
  // quotient normal form of gN
  Element project(const Element& g) const;
  // product of generator representatives, the canonical lift
  Element lift(const Element& q) const;
  const std::vector<Element>& gen_reps() const { return derived_.gen_labels; }
  std::vector<Element> coset_reps() const;

  // per-pc-generator signed words over the user generators; available
  // in the prescribed-generator form
  const std::vector<SignedWord>& def_words() const;
  const std::vector<Element>& user_gen_reps() const { return user_reps_; }

  const BlackBoxGroup& blackbox() const { return bb_; }
  const DerivedPcp& derived() const { return derived_; }

 private:
  void build(std::vector<Element> prescribed);

  const GroupContext* parent_ = nullptr;
  Subgroup nsub_;
  // parent rank -> rank of canonical rep; shared so that the black-box
  // closure stays valid across copies
  std::shared_ptr<const std::vector<uint32_t>> rep_rank_;
  BlackBoxGroup bb_;
  DerivedPcp derived_;
  std::shared_ptr<GroupContext> qctx_;
  std::vector<SignedWord> def_words_;
  std::vector<Element> user_reps_;
};

QuotientContext quotient(const GroupContext& g, const Subgroup& n);

// Generator-image backtracking against a catalog target; both groups of
// order <= 128.
bool isomorphic(const GroupContext& a, const GroupContext& b);

// All subgroups of the given order (lattice walk, desk scale only).
std::vector<Subgroup> all_subgroups_of_order(const GroupContext& g,
                                             unsigned long long m);

std::vector<Element> all_elements(const GroupContext& g);

}  // namespace pg
