#include "pg/morphisms.hpp"

#include <algorithm>

namespace pg {

GroupMap::GroupMap(const GroupContext& g, std::vector<Element> images)
    : ctx_(&g), images_(std::move(images)) {
  if (images_.size() != g.ngens())
    throw RelationViolated("one image per pc-generator required");
  for (const Element& x : images_) g.validate(x);
  const auto& pres = g.presentation();
  for (unsigned i = 0; i < g.ngens(); i++) {
    if (g.power(images_[i], g.prime()) != g.evaluate_word(pres.power_rhs[i], images_))
      throw RelationViolated("power " + std::to_string(i + 1));
    for (unsigned j = i + 1; j < g.ngens(); j++)
      if (g.commutator(images_[j], images_[i]) !=
          g.evaluate_word(pres.comm_rhs[j][i], images_))
        throw RelationViolated("comm " + std::to_string(j + 1) + " " +
                               std::to_string(i + 1));
  }
  kind_ = Subgroup::from_generators(g, images_).size() == g.order()
              ? MapKind::automorphism
              : MapKind::endomorphism;
}

GroupMap GroupMap::identity(const GroupContext& g) {
  std::vector<Element> images;
  for (unsigned i = 0; i < g.ngens(); i++) images.push_back(g.generator(i));
  return GroupMap(g, std::move(images));
}

GroupMap GroupMap::conjugation(const GroupContext& g, const Element& w) {
  std::vector<Element> images;
  for (unsigned i = 0; i < g.ngens(); i++)
    images.push_back(g.conjugate(g.generator(i), w));
  return GroupMap(g, std::move(images));
}

GroupMap GroupMap::from_user_images(const GroupContext& g,
                                    const std::vector<unsigned>& user_gens,
                                    const std::vector<Element>& user_images) {
  if (user_gens.size() != user_images.size())
    throw RelationViolated("one image per user generator required");
  auto words = pc_generator_words(g, user_gens);
  std::vector<Element> images(g.ngens());
  for (unsigned k = 0; k < g.ngens(); k++)
    images[k] = g.evaluate_word(words[k], user_images);
  return GroupMap(g, std::move(images));
}

Element GroupMap::apply(const Element& a) const {
  Element r = ctx_->identity();
  for (unsigned i = 0; i < ctx_->ngens(); i++)
    if (a.e[i]) r = ctx_->multiply(r, ctx_->power(images_[i], a.e[i]));
  return r;
}

GroupMap map_from_images(const GroupContext& g, std::vector<Element> images) {
  return GroupMap(g, std::move(images));
}

GroupMap compose(const GroupMap& f, const GroupMap& g) {
  if (&f.context() != &g.context()) throw ContextMismatch("compose");
  std::vector<Element> images;
  for (const Element& x : g.images()) images.push_back(f.apply(x));
  return GroupMap(f.context(), std::move(images));
}

unsigned long long map_order(const GroupMap& f) {
  const GroupContext& g = f.context();
  GroupMap id = GroupMap::identity(g);
  GroupMap acc = f;
  unsigned long long ord = 1;
  const unsigned long long cap = 1ull << 30;
  while (!(acc == id)) {
    acc = compose(f, acc);
    if (++ord > cap) throw DeskScaleExceeded("map order iteration");
  }
  return ord;
}

InnerVerdict is_inner(const GroupMap& f) { return is_inner(f, center(f.context())); }

InnerVerdict is_inner(const GroupMap& f, const Subgroup& zg) {
  const GroupContext& g = f.context();
  // conjugation factors through G/Z, so scanning one representative per
  // coset of the center is exhaustive
  std::vector<char> covered((size_t)g.order(), 0);
  InnerVerdict v;
  for (unsigned long long r = 0; r < g.order(); r++) {
    if (covered[(size_t)r]) continue;
    Element w = g.element_at(r);
    for (const Element& z : zg.elements())
      covered[(size_t)g.rank_of(g.multiply(w, z))] = 1;
    v.scan_size++;
    bool match = true;
    for (unsigned i = 0; i < g.ngens() && match; i++)
      match = g.conjugate(g.generator(i), w) == f.images()[i];
    if (match) {
      v.inner = true;
      v.witness = w;
      return v;
    }
  }
  v.inner = false;
  return v;
}

std::vector<unsigned> minimal_generating_indices(const GroupContext& g) {
  // pc-generator indices whose images form a basis of G/Phi
  std::vector<unsigned> out;
  Subgroup phi = frattini(g);
  std::vector<Element> gens = phi.generators();
  Subgroup have = Subgroup::from_generators(g, gens);
  for (unsigned i = 0; i < g.ngens() && have.size() != g.order(); i++) {
    if (have.contains(g.generator(i))) continue;
    out.push_back(i);
    gens.push_back(g.generator(i));
    have = Subgroup::from_generators(g, gens);
  }
  return out;
}

std::vector<unsigned> user_generators(const GroupContext& g) {
  std::vector<unsigned> out;
  const auto& defs = g.presentation().definition;
  for (unsigned i = 0; i < g.ngens(); i++)
    if (!defs[i]) out.push_back(i);
  if (out.size() < g.ngens()) return out;
  return minimal_generating_indices(g);
}

std::vector<Word> pc_generator_words(const GroupContext& g,
                                     const std::vector<unsigned>& user_gens) {
  const auto& defs = g.presentation().definition;
  std::vector<Word> words(g.ngens());
  std::vector<char> have(g.ngens(), 0);
  // user generators map to themselves
  std::vector<Element> user_elems;
  for (unsigned k = 0; k < user_gens.size(); k++) {
    words[user_gens[k]].factors = {Factor{k, 1}};
    have[user_gens[k]] = 1;
    user_elems.push_back(g.generator(user_gens[k]));
  }
  bool need_bfs = false;
  for (unsigned i = 0; i < g.ngens(); i++) {
    if (have[i]) continue;
    if (defs[i]) {
      // validate: definition words may only mention user generators and
      // must evaluate to the generator they define
      Word w;
      for (const Factor& f : defs[i]->factors) {
        auto it = std::find(user_gens.begin(), user_gens.end(), f.gen);
        if (it == user_gens.end())
          throw MalformedInput("def " + std::to_string(i + 1) +
                               " mentions a non-user generator");
        w.factors.push_back(Factor{(unsigned)(it - user_gens.begin()), f.exp});
      }
      if (g.evaluate_word(w, user_elems) != g.generator(i))
        throw MalformedInput("def " + std::to_string(i + 1) +
                             " does not evaluate to the generator");
      words[i] = std::move(w);
      have[i] = 1;
    } else {
      need_bfs = true;
    }
  }
  if (need_bfs) {
    BlackBoxGroup bb;
    bb.prime = g.prime();
    bb.id = g.identity();
    bb.elems = all_elements(g);
    bb.mult = [&g](const Element& a, const Element& b) { return g.multiply(a, b); };
    auto table = blackbox_words(bb, user_elems);
    for (unsigned i = 0; i < g.ngens(); i++) {
      if (have[i]) continue;
      auto it = table.find(g.generator(i));
      if (it == table.end())
        throw MalformedInput("user generators do not generate the group");
      words[i] = it->second;
    }
  }
  return words;
}

}  // namespace pg
