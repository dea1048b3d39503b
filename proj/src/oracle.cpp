#include "pg/oracle.hpp"

#include <algorithm>
#include <set>

namespace pg {

namespace {

// ranks of images of the user generators, the enumeration's tuple key
std::vector<unsigned long long> tuple_key(const GroupContext& g,
                                          const GroupMap& f,
                                          const std::vector<unsigned>& user) {
  std::vector<unsigned long long> key;
  for (unsigned i : user) key.push_back(g.rank_of(f.images()[i]));
  return key;
}

}  // namespace

bool AutEnumeration::is_inner_map(const GroupMap& f) const {
  for (size_t idx : inner_indices)
    if (automorphisms[idx] == f) return true;
  return false;
}

AutEnumeration brute_force_automorphisms(const GroupContext& g,
                                         unsigned long long limit) {
  AutEnumeration out;
  out.group = &g;
  // the oracle picks its own minimal lift, independent of stored defs
  out.user_gens = minimal_generating_indices(g);
  const unsigned d = (unsigned)out.user_gens.size();

  unsigned long long tuples = 1;
  for (unsigned i = 0; i < d; i++) {
    if (tuples > limit / g.order())
      throw LimitExceeded("|G|^d image tuples beyond the oracle limit");
    tuples *= g.order();
  }
  if (tuples > limit) throw LimitExceeded("|G|^d image tuples beyond the oracle limit");

  auto words = pc_generator_words(g, out.user_gens);
  Subgroup phi = frattini(g);

  std::vector<unsigned long long> gen_order(d);
  for (unsigned i = 0; i < d; i++)
    gen_order[i] = g.element_order(g.generator(out.user_gens[i]));

  // candidate images per slot: order must match, image must avoid Phi
  std::vector<std::vector<Element>> slots(d);
  for (unsigned long long r = 0; r < g.order(); r++) {
    Element x = g.element_at(r);
    if (phi.contains(x)) continue;
    unsigned long long o = g.element_order(x);
    for (unsigned i = 0; i < d; i++)
      if (o == gen_order[i]) slots[i].push_back(x);
  }

  std::vector<Element> pick(d);
  std::vector<Element> pc_images(g.ngens());
  std::function<void(unsigned, Subgroup)> descend = [&](unsigned i,
                                                        Subgroup span) {
    if (i == d) {
      for (unsigned k = 0; k < g.ngens(); k++)
        pc_images[k] = g.evaluate_word(words[k], pick);
      const auto& pres = g.presentation();
      for (unsigned k = 0; k < g.ngens(); k++) {
        if (g.power(pc_images[k], g.prime()) !=
            g.evaluate_word(pres.power_rhs[k], pc_images))
          return;
        for (unsigned j = k + 1; j < g.ngens(); j++)
          if (g.commutator(pc_images[j], pc_images[k]) !=
              g.evaluate_word(pres.comm_rhs[j][k], pc_images))
            return;
      }
      if (Subgroup::from_generators(g, pick).size() != g.order()) return;
      out.automorphisms.emplace_back(g, pc_images);
      return;
    }
    for (const Element& x : slots[i]) {
      // images must stay independent modulo Phi
      if (span.contains(x)) continue;
      std::vector<Element> next_gens = span.generators();
      next_gens.push_back(x);
      for (const Element& f : phi.generators()) next_gens.push_back(f);
      pick[i] = x;
      descend(i + 1, Subgroup::from_generators(g, next_gens));
    }
  };
  std::vector<Element> base = phi.generators();
  descend(0, Subgroup::from_generators(g, base));

  // Inn(G) as image tuples, matched against the enumeration
  std::set<std::vector<unsigned long long>> inner_keys;
  for (unsigned long long r = 0; r < g.order(); r++)
    inner_keys.insert(
        tuple_key(g, GroupMap::conjugation(g, g.element_at(r)), out.user_gens));
  for (size_t idx = 0; idx < out.automorphisms.size(); idx++) {
    const GroupMap& f = out.automorphisms[idx];
    out.count_by_order[map_order(f)]++;
    if (inner_keys.count(tuple_key(g, f, out.user_gens)))
      out.inner_indices.push_back(idx);
  }
  return out;
}

PointwiseResult pointwise_derivation_check(const GroupContext& g,
                                           const std::vector<Element>& table) {
  if (g.order() * g.order() > (1ull << 20))
    throw TooLarge("pointwise pair scan beyond 2^20 pairs");
  if (table.size() != g.order())
    throw MalformedInput("value table must cover the group");
  PointwiseResult res;
  for (unsigned long long a = 0; a < g.order(); a++) {
    Element ea = g.element_at(a);
    for (unsigned long long b = 0; b < g.order(); b++) {
      Element eb = g.element_at(b);
      Element lhs = table[(size_t)g.rank_of(g.multiply(ea, eb))];
      Element rhs = g.multiply(g.conjugate(table[(size_t)a], eb), table[(size_t)b]);
      if (lhs != rhs) {
        res.pass = false;
        res.g = ea;
        res.h = eb;
        return res;
      }
    }
  }
  return res;
}

PointwiseResult pointwiseq_impl(const QuotientContext& q,
                                const std::vector<Element>& table) {
  const GroupContext& qg = q.group();
  const GroupContext& pg_ = q.parent();
  if (qg.order() * qg.order() > (1ull << 20))
    throw TooLarge("pointwise pair scan beyond 2^20 pairs");
  if (table.size() != qg.order())
    throw MalformedInput("value table must cover the quotient");
  PointwiseResult res;
  for (unsigned long long a = 0; a < qg.order(); a++) {
    Element qa = qg.element_at(a);
    for (unsigned long long b = 0; b < qg.order(); b++) {
      Element qb = qg.element_at(b);
      Element lhs = table[(size_t)qg.rank_of(qg.multiply(qa, qb))];
      Element rhs = pg_.multiply(pg_.conjugate(table[(size_t)a], q.lift(qb)),
                                 table[(size_t)b]);
      if (lhs != rhs) {
        res.pass = false;
        res.g = qa;
        res.h = qb;
        return res;
      }
    }
  }
  return res;
}

PointwiseResult pointwise_derivation_check(const QuotientContext& q,
                                           const std::vector<Element>& table) {
  return pointwiseq_impl(q, table);
}

NonInnerWitness noninner_bruteforce(const GroupContext& g,
                                    unsigned long long limit) {
  AutEnumeration aut = brute_force_automorphisms(g, limit);
  NonInnerWitness w;
  std::set<size_t> inner(aut.inner_indices.begin(), aut.inner_indices.end());
  for (size_t idx = 0; idx < aut.automorphisms.size(); idx++) {
    if (inner.count(idx)) continue;
    if (map_order(aut.automorphisms[idx]) != g.prime()) continue;
    w.exists = true;
    w.example = aut.automorphisms[idx];
    return w;
  }
  return w;
}

}  // namespace pg
