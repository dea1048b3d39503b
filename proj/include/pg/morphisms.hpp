#pragma once

// Endomorphisms and automorphisms as generator-image maps, with order
// computation and inner-ness certificates.

#include <optional>
#include <vector>

#include "pg/structure.hpp"

namespace pg {

enum class MapKind { endomorphism, automorphism };

struct InnerVerdict {
  bool inner = false;
  Element witness;                  // lex-least conjugator mod Z(G)
  unsigned long long scan_size = 0; // transversal size exhausted when non-inner
};

class GroupMap {
 public:
  // Verifies every defining relation under substitution; throws
  // RelationViolated naming the failing relator. Kind is decided by a
  // closure test on the images.
  GroupMap(const GroupContext& g, std::vector<Element> images);

  static GroupMap identity(const GroupContext& g);
  // conjugation x -> x^w
  static GroupMap conjugation(const GroupContext& g, const Element& w);
  // images given on the user generators; the pc tail is recomputed
  // through the stored definition words
  static GroupMap from_user_images(const GroupContext& g,
                                   const std::vector<unsigned>& user_gens,
                                   const std::vector<Element>& user_images);

  const GroupContext& context() const { return *ctx_; }
  const std::vector<Element>& images() const { return images_; }
  MapKind kind() const { return kind_; }
  bool is_automorphism() const { return kind_ == MapKind::automorphism; }

  Element apply(const Element& a) const;

  friend bool operator==(const GroupMap& f, const GroupMap& g) {
    return f.ctx_ == g.ctx_ && f.images_ == g.images_;
  }

 private:
  const GroupContext* ctx_ = nullptr;
  std::vector<Element> images_;
  MapKind kind_ = MapKind::endomorphism;
};

GroupMap map_from_images(const GroupContext& g, std::vector<Element> images);

// compose(f, g)(x) = f(g(x))
GroupMap compose(const GroupMap& f, const GroupMap& g);
unsigned long long map_order(const GroupMap& f);

// Scans conjugation witnesses over a transversal of Z(G); deterministic:
// the reported witness is the least coset representative in element
// order. A precomputed center may be passed to avoid the scan.
InnerVerdict is_inner(const GroupMap& f);
InnerVerdict is_inner(const GroupMap& f, const Subgroup& zg);

// user generators = pc-generators carrying no definition word; the
// fallback when none is marked is the greedy minimal generating set
std::vector<unsigned> user_generators(const GroupContext& g);

// pc-generator indices forming a basis of G/Phi (greedy, ascending)
std::vector<unsigned> minimal_generating_indices(const GroupContext& g);

// value-correct positive words over user_generators(g) for every
// pc-generator: stored definitions where present, BFS words otherwise
std::vector<Word> pc_generator_words(const GroupContext& g,
                                     const std::vector<unsigned>& user_gens);

}  // namespace pg
