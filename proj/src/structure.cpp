#include "pg/structure.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace pg {

namespace {

using ElemSet = std::unordered_set<Element, ElementHash>;

std::vector<Element> sorted_vec(ElemSet s) {
  std::vector<Element> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

ElemSet close_under(const GroupContext& g, ElemSet seed,
                    const std::vector<Element>& gens) {
  if (seed.empty()) seed.insert(g.identity());
  std::deque<Element> frontier(seed.begin(), seed.end());
  while (!frontier.empty()) {
    Element x = frontier.front();
    frontier.pop_front();
    for (const Element& s : gens) {
      Element y = g.multiply(x, s);
      if (seed.insert(y).second) frontier.push_back(y);
    }
  }
  return seed;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::from_generators(const GroupContext& g,
                                   std::vector<Element> gens) {
  for (const Element& x : gens) g.validate(x);
  Subgroup h;
  h.ctx_ = &g;
  ElemSet set;
  set.insert(g.identity());
  set = close_under(g, std::move(set), gens);
  h.elems_ = sorted_vec(std::move(set));
  // deterministic reduced generating set
  ElemSet have;
  have.insert(g.identity());
  for (const Element& x : h.elems_) {
    if (have.count(x)) continue;
    h.gens_.push_back(x);
    have = close_under(g, std::move(have), h.gens_);
  }
  return h;
}

Subgroup Subgroup::from_elements(const GroupContext& g,
                                 std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup h;
  h.ctx_ = &g;
  h.elems_ = std::move(elems);
  ElemSet have;
  have.insert(g.identity());
  for (const Element& x : h.elems_) {
    if (have.count(x)) continue;
    h.gens_.push_back(x);
    have = close_under(g, std::move(have), h.gens_);
  }
  if (have.size() != h.elems_.size())
    throw MalformedInput("element set is not closed under multiplication");
  return h;
}

Subgroup Subgroup::trivial(const GroupContext& g) {
  Subgroup h;
  h.ctx_ = &g;
  h.elems_ = {g.identity()};
  return h;
}

Subgroup Subgroup::whole(const GroupContext& g) {
  Subgroup h;
  h.ctx_ = &g;
  h.elems_ = all_elements(g);
  for (unsigned i = 0; i < g.ngens(); i++) h.gens_.push_back(g.generator(i));
  return h;
}

bool Subgroup::contains(const Element& a) const {
  return std::binary_search(elems_.begin(), elems_.end(), a);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(),
                       other.elems_.end());
}

bool Subgroup::is_normal() const {
  for (unsigned i = 0; i < ctx_->ngens(); i++) {
    Element gi = ctx_->generator(i);
    for (const Element& s : gens_)
      if (!contains(ctx_->conjugate(s, gi))) return false;
  }
  return true;
}

bool Subgroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); i++)
    for (size_t j = i + 1; j < gens_.size(); j++)
      if (!ctx_->is_identity(ctx_->commutator(gens_[i], gens_[j]))) return false;
  return true;
}

bool Subgroup::is_elementary_abelian() const {
  if (!is_abelian()) return false;
  for (const Element& s : gens_)
    if (!ctx_->is_identity(ctx_->power(s, ctx_->prime()))) return false;
  return true;
}

bool Subgroup::is_cyclic() const {
  for (const Element& x : elems_)
    if (ctx_->element_order(x) == size()) return true;
  return false;
}

unsigned Subgroup::log_order() const {
  unsigned long long s = size();
  unsigned k = 0;
  while (s > 1) {
    s /= ctx_->prime();
    k++;
  }
  return k;
}

Subgroup closure(const GroupContext& g, const std::vector<Element>& gens) {
  return Subgroup::from_generators(g, gens);
}

std::vector<Element> all_elements(const GroupContext& g) {
  if (g.order() > kEnumLimit)
    throw DeskScaleExceeded("group too large to enumerate");
  std::vector<Element> v;
  v.reserve((size_t)g.order());
  for (unsigned long long r = 0; r < g.order(); r++) v.push_back(g.element_at(r));
  return v;
}

Subgroup centralizer(const GroupContext& g, const std::vector<Element>& s) {
  if (g.order() > kEnumLimit) throw DeskScaleExceeded("centralizer scan");
  std::vector<Element> hits;
  for (unsigned long long r = 0; r < g.order(); r++) {
    Element x = g.element_at(r);
    bool ok = true;
    for (const Element& a : s)
      if (!g.is_identity(g.commutator(x, a))) {
        ok = false;
        break;
      }
    if (ok) hits.push_back(x);
  }
  return Subgroup::from_elements(g, std::move(hits));
}

Subgroup center(const GroupContext& g) {
  std::vector<Element> gens;
  for (unsigned i = 0; i < g.ngens(); i++) gens.push_back(g.generator(i));
  return centralizer(g, gens);
}

// ---------------------------------------------------------------------------
// central series

std::vector<Subgroup> upper_central_series(const GroupContext& g) {
  std::vector<Subgroup> series;
  series.push_back(Subgroup::trivial(g));
  const unsigned long long n = g.order();
  if (n > kEnumLimit) throw DeskScaleExceeded("upper central series scan");
  while (series.back().size() != n) {
    const Subgroup& z = series.back();
    std::vector<Element> next;
    for (unsigned long long r = 0; r < n; r++) {
      Element x = g.element_at(r);
      bool in = true;
      for (unsigned i = 0; i < g.ngens() && in; i++)
        in = z.contains(g.commutator(x, g.generator(i)));
      if (in) next.push_back(x);
    }
    Subgroup zn = Subgroup::from_elements(g, std::move(next));
    if (zn.size() == z.size())
      throw MalformedInput("upper central series stalled; group not nilpotent");
    series.push_back(std::move(zn));
  }
  return series;
}

std::vector<Subgroup> lower_central_series(const GroupContext& g) {
  std::vector<Subgroup> series;
  series.push_back(Subgroup::whole(g));
  if (g.order() <= 4096) {
    // index arithmetic via the Cayley table; the full-pair scan is the
    // dominant cost of every structure pass
    auto t = g.cayley();
    const size_t n = (size_t)g.order();
    auto comm = [&](uint16_t a, uint16_t b) {
      return t->at(t->at(t->inv[a], t->inv[b]), t->at(a, b));
    };
    std::vector<uint16_t> cur(n);
    for (size_t r = 0; r < n; r++) cur[r] = (uint16_t)r;
    while (cur.size() > 1) {
      std::vector<char> gen_seen(n, 0);
      std::vector<uint16_t> gens;
      for (uint16_t a : cur)
        for (size_t x = 0; x < n; x++) {
          uint16_t c = comm(a, (uint16_t)x);
          if (!gen_seen[c]) {
            gen_seen[c] = 1;
            if (c) gens.push_back(c);
          }
        }
      std::vector<char> in(n, 0);
      in[0] = 1;
      std::vector<uint16_t> elems{0}, stack{0};
      while (!stack.empty()) {
        uint16_t x = stack.back();
        stack.pop_back();
        for (uint16_t s : gens) {
          uint16_t y = t->at(x, s);
          if (!in[y]) {
            in[y] = 1;
            elems.push_back(y);
            stack.push_back(y);
          }
        }
      }
      if (elems.size() == cur.size())
        throw MalformedInput("lower central series stalled; group not nilpotent");
      std::sort(elems.begin(), elems.end());
      cur = std::move(elems);
      std::vector<Element> members;
      members.reserve(cur.size());
      for (uint16_t r : cur) members.push_back(g.element_at(r));
      series.push_back(Subgroup::from_elements(g, std::move(members)));
    }
    return series;
  }
  std::vector<Element> everyone = all_elements(g);
  while (series.back().size() != 1) {
    const Subgroup& cur = series.back();
    ElemSet comms;
    comms.insert(g.identity());
    for (const Element& a : cur.elements())
      for (const Element& x : everyone) comms.insert(g.commutator(a, x));
    Subgroup next = Subgroup::from_generators(
        g, std::vector<Element>(comms.begin(), comms.end()));
    if (next.size() == cur.size())
      throw MalformedInput("lower central series stalled; group not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

Subgroup upper_central_term(const std::vector<Subgroup>& upper, long long k) {
  if (k <= 0) return upper.front();
  if ((size_t)k >= upper.size()) return upper.back();
  return upper[(size_t)k];
}

Subgroup lower_central_term(const std::vector<Subgroup>& lower, unsigned k) {
  if (k == 0) throw MalformedInput("gamma_0 is undefined");
  if (k - 1 >= lower.size()) return lower.back();  // trivial beyond class
  return lower[k - 1];
}

SeriesReport series_report(const GroupContext& g) {
  SeriesReport r;
  r.upper = upper_central_series(g);
  r.lower = lower_central_series(g);
  r.nilpotency_class = (unsigned)(r.upper.size() - 1);
  if (r.lower.size() != r.upper.size())
    throw MalformedInput("upper/lower central series lengths disagree");
  r.order_log = g.ngens();
  r.coclass = r.order_log - r.nilpotency_class;
  r.d = minimal_generators(g);
  r.exponent = 1;
  for (unsigned long long rank = 0; rank < g.order(); rank++)
    r.exponent = std::max(r.exponent, g.element_order(g.element_at(rank)));
  return r;
}

std::vector<unsigned long long> SeriesReport::upper_sizes() const {
  std::vector<unsigned long long> v;
  for (const Subgroup& s : upper) v.push_back(s.size());
  return v;
}

std::vector<unsigned long long> SeriesReport::lower_sizes() const {
  std::vector<unsigned long long> v;
  for (const Subgroup& s : lower) v.push_back(s.size());
  return v;
}

// ---------------------------------------------------------------------------
// characteristic subgroups

Subgroup agemo(const GroupContext& g) {
  ElemSet powers;
  for (unsigned long long r = 0; r < g.order(); r++)
    powers.insert(g.power(g.element_at(r), g.prime()));
  return Subgroup::from_generators(
      g, std::vector<Element>(powers.begin(), powers.end()));
}

Subgroup agemo2(const GroupContext& g) {
  ElemSet powers;
  for (unsigned long long r = 0; r < g.order(); r++)
    powers.insert(g.power(g.element_at(r), 4));
  return Subgroup::from_generators(
      g, std::vector<Element>(powers.begin(), powers.end()));
}

Subgroup derived_subgroup(const GroupContext& g) {
  auto lower = lower_central_series(g);
  return lower.size() > 1 ? lower[1] : Subgroup::trivial(g);
}

Subgroup frattini(const GroupContext& g) {
  Subgroup a = agemo(g), d = derived_subgroup(g);
  std::vector<Element> gens = a.generators();
  gens.insert(gens.end(), d.generators().begin(), d.generators().end());
  return Subgroup::from_generators(g, gens);
}

Subgroup omega1(const Subgroup& h) {
  const GroupContext& g = h.context();
  std::vector<Element> small;
  for (const Element& x : h.elements())
    if (g.is_identity(g.power(x, g.prime()))) small.push_back(x);
  if (h.is_abelian()) return Subgroup::from_elements(g, std::move(small));
  return Subgroup::from_generators(g, small);
}

unsigned rank_of_abelian(const Subgroup& h) {
  if (!h.is_abelian()) throw TargetNotAbelian("rank of a non-abelian subgroup");
  return omega1(h).log_order();
}

unsigned minimal_generators(const GroupContext& g) {
  Subgroup phi = frattini(g);
  unsigned long long idx = g.order() / phi.size();
  unsigned d = 0;
  while (idx > 1) {
    idx /= g.prime();
    d++;
  }
  return d;
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  const GroupContext& g = a.context();
  ElemSet comms;
  comms.insert(g.identity());
  for (const Element& x : a.elements())
    for (const Element& y : b.elements()) comms.insert(g.commutator(x, y));
  return Subgroup::from_generators(
      g, std::vector<Element>(comms.begin(), comms.end()));
}

// ---------------------------------------------------------------------------
// classification

const char* to_string(TriState t) {
  switch (t) {
    case TriState::holds: return "holds";
    case TriState::fails: return "fails";
    default: return "undecided";
  }
}

const char* to_string(MaximalClass2Type t) {
  switch (t) {
    case MaximalClass2Type::dihedral: return "dihedral";
    case MaximalClass2Type::quaternion: return "quaternion";
    case MaximalClass2Type::semidihedral: return "semidihedral";
    default: return "none";
  }
}

bool regular_pairwise_check(const GroupContext& g, unsigned long long limit) {
  if (g.order() > limit)
    throw RegularityUndecided("pairwise check beyond threshold");
  auto t = g.cayley();
  const size_t n = (size_t)t->n;
  const unsigned p = g.prime();
  auto tpow = [&](uint16_t x, unsigned k) {
    uint16_t r = 0;
    for (unsigned i = 0; i < k; i++) r = t->at(r, x);
    return r;
  };
  std::vector<char> in_h(n), in_d(n), in_u(n);
  std::vector<uint16_t> stack;
  for (uint16_t a = 0; a < n; a++)
    for (uint16_t b = 0; b < n; b++) {
      // H = <a,b>
      std::fill(in_h.begin(), in_h.end(), 0);
      in_h[0] = 1;
      stack.assign(1, 0);
      std::vector<uint16_t> h_elems{0};
      while (!stack.empty()) {
        uint16_t x = stack.back();
        stack.pop_back();
        for (uint16_t s : {a, b}) {
          uint16_t y = t->at(x, s);
          if (!in_h[y]) {
            in_h[y] = 1;
            stack.push_back(y);
            h_elems.push_back(y);
          }
        }
      }
      // gamma_2(H) = normal closure of [a,b] in H
      uint16_t c = t->at(t->at(t->inv[a], t->inv[b]), t->at(a, b));
      std::fill(in_d.begin(), in_d.end(), 0);
      std::vector<uint16_t> d_gens;
      std::vector<uint16_t> conj_stack{c};
      std::vector<char> seen(n);
      seen[c] = 1;
      while (!conj_stack.empty()) {
        uint16_t x = conj_stack.back();
        conj_stack.pop_back();
        d_gens.push_back(x);
        for (uint16_t s : {a, b}) {
          uint16_t y = t->at(t->at(t->inv[s], x), s);
          if (!seen[y]) {
            seen[y] = 1;
            conj_stack.push_back(y);
          }
        }
      }
      in_d[0] = 1;
      stack.assign(1, 0);
      std::vector<uint16_t> d_elems{0};
      while (!stack.empty()) {
        uint16_t x = stack.back();
        stack.pop_back();
        for (uint16_t s : d_gens) {
          uint16_t y = t->at(x, s);
          if (!in_d[y]) {
            in_d[y] = 1;
            stack.push_back(y);
            d_elems.push_back(y);
          }
        }
      }
      // U = <x^p : x in gamma_2(H)>
      std::fill(in_u.begin(), in_u.end(), 0);
      std::vector<uint16_t> u_gens;
      for (uint16_t x : d_elems) u_gens.push_back(tpow(x, p));
      in_u[0] = 1;
      stack.assign(1, 0);
      while (!stack.empty()) {
        uint16_t x = stack.back();
        stack.pop_back();
        for (uint16_t s : u_gens) {
          uint16_t y = t->at(x, s);
          if (!in_u[y]) {
            in_u[y] = 1;
            stack.push_back(y);
          }
        }
      }
      uint16_t abp = tpow(t->at(a, b), p);
      uint16_t apbp = t->at(tpow(a, p), tpow(b, p));
      if (!in_u[t->at(t->inv[apbp], abp)]) return false;
    }
  return true;
}

StructureFlags classify(const GroupContext& g) {
  StructureFlags f;
  auto report = series_report(g);
  const unsigned p = g.prime();

  f.is_abelian = report.nilpotency_class <= 1;
  f.exponent = report.exponent;
  f.is_elementary_abelian = f.is_abelian && f.exponent == p;
  f.is_cyclic = f.is_abelian && f.exponent == g.order();

  Subgroup gamma2 = lower_central_term(report.lower, 2);
  Subgroup ag = agemo(g);
  f.is_powerful = (p == 2) ? agemo2(g).contains(gamma2) : ag.contains(gamma2);

  Subgroup z = center(g);
  Subgroup phi = frattini(g);
  f.is_extraspecial = z.size() == p && z == gamma2 && z == phi;

  Subgroup c_phi = centralizer(g, phi.generators());
  std::vector<Element> zphi_elems;
  for (const Element& x : c_phi.elements())
    if (phi.contains(x)) zphi_elems.push_back(x);
  Subgroup z_phi = Subgroup::from_elements(g, zphi_elems);
  f.strongly_frattinian_s3 = (c_phi == z_phi);
  f.deaconescu_condition_s1 = (centralizer(g, z_phi.generators()) == phi);

  if (report.nilpotency_class < p)
    f.regular = TriState::holds;
  else if (f.exponent == p)
    f.regular = TriState::holds;
  else if (p == 2)
    f.regular = f.is_abelian ? TriState::holds : TriState::fails;
  else if (g.order() <= 625)
    f.regular = regular_pairwise_check(g) ? TriState::holds : TriState::fails;
  else
    f.regular = TriState::undecided;

  if (p == 2 && report.coclass == 1 && g.ngens() >= 3) {
    unsigned long long invol = 0, topord = 0;
    for (unsigned long long r = 1; r < g.order(); r++) {
      unsigned long long o = g.element_order(g.element_at(r));
      if (o == 2) invol++;
      topord = std::max(topord, o);
    }
    bool cyclic_maximal = (topord * 2 == g.order());
    if (invol == 1)
      f.maximal_class_2_type = MaximalClass2Type::quaternion;
    else if (cyclic_maximal && invol == g.order() / 2 + 1)
      f.maximal_class_2_type = MaximalClass2Type::dihedral;
    else if (cyclic_maximal && invol == g.order() / 4 + 1)
      f.maximal_class_2_type = MaximalClass2Type::semidihedral;
  }
  return f;
}

// ---------------------------------------------------------------------------
// two-step centralizers

std::vector<Subgroup> two_step_centralizers(const GroupContext& g) {
  auto report = series_report(g);
  if (report.coclass != 1) throw NotMaximalClass(g.name());
  const unsigned n = report.order_log;
  std::vector<Subgroup> out;
  for (unsigned i = 2; i + 2 <= n; i++) {
    Subgroup gi = lower_central_term(report.lower, i);
    Subgroup gi2 = lower_central_term(report.lower, i + 2);
    std::vector<Element> hits;
    for (unsigned long long r = 0; r < g.order(); r++) {
      Element x = g.element_at(r);
      bool in = true;
      for (const Element& a : gi.elements())
        if (!gi2.contains(g.commutator(x, a))) {
          in = false;
          break;
        }
      if (in) hits.push_back(x);
    }
    out.push_back(Subgroup::from_elements(g, std::move(hits)));
  }
  return out;
}

std::optional<Element> find_uniform(const GroupContext& g) {
  std::vector<Subgroup> cents = two_step_centralizers(g);
  if (cents.empty()) {
    // vacuous union: every non-central element counts as uniform
    Subgroup z = center(g);
    for (unsigned long long r = 0; r < g.order(); r++) {
      Element x = g.element_at(r);
      if (!z.contains(x)) return x;
    }
    return std::nullopt;
  }
  for (unsigned long long r = 0; r < g.order(); r++) {
    Element x = g.element_at(r);
    bool outside = true;
    for (const Subgroup& c : cents)
      if (c.contains(x)) {
        outside = false;
        break;
      }
    if (outside) return x;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// black boxes and derived presentations

Element BlackBoxGroup::pow(const Element& a, unsigned long long k) const {
  Element r = id;
  for (unsigned long long i = 0; i < k; i++) r = mult(r, a);
  return r;
}

Element BlackBoxGroup::inv(const Element& a) const {
  Element r = a, prev = id;
  while (!(r == id)) {
    prev = r;
    r = mult(r, a);
  }
  // prev * a = id, except when a itself is the identity
  return (a == id) ? id : prev;
}

unsigned long long BlackBoxGroup::order_of(const Element& a) const {
  unsigned long long o = 1;
  Element r = a;
  while (!(r == id)) {
    r = mult(r, a);
    o++;
  }
  return o;
}

namespace {

using LabelSet = std::unordered_set<Element, ElementHash>;

LabelSet bb_close(const BlackBoxGroup& bb, LabelSet seed,
                  const std::vector<Element>& gens) {
  if (seed.empty()) seed.insert(bb.id);
  std::deque<Element> frontier(seed.begin(), seed.end());
  while (!frontier.empty()) {
    Element x = frontier.front();
    frontier.pop_front();
    for (const Element& s : gens) {
      Element y = bb.mult(x, s);
      if (seed.insert(y).second) frontier.push_back(y);
    }
  }
  return seed;
}

Element bb_comm(const BlackBoxGroup& bb, const Element& a, const Element& b) {
  return bb.mult(bb.mult(bb.inv(a), bb.inv(b)), bb.mult(a, b));
}

}  // namespace

DerivedPcp pcp_of_blackbox(const BlackBoxGroup& bb,
                           const std::vector<Element>& prescribed) {
  const unsigned p = bb.prime;
  // lower p-central series; each factor is elementary abelian and
  // central, so any refinement of it respects the weight condition
  std::vector<std::vector<Element>> lambda;
  lambda.push_back(bb.elems);
  while (lambda.back().size() > 1) {
    LabelSet gens;
    for (const Element& x : lambda.back()) {
      gens.insert(bb.pow(x, p));
      for (const Element& q : bb.elems) gens.insert(bb_comm(bb, x, q));
    }
    LabelSet next = bb_close(bb, {}, {gens.begin(), gens.end()});
    if (next.size() == lambda.back().size())
      throw MalformedInput("black box is not a p-group");
    std::vector<Element> v(next.begin(), next.end());
    std::sort(v.begin(), v.end());
    lambda.push_back(std::move(v));
  }

  DerivedPcp out;
  for (size_t stage = 0; stage + 1 < lambda.size(); stage++) {
    LabelSet w(lambda[stage + 1].begin(), lambda[stage + 1].end());
    std::vector<Element> picked;
    auto try_pick = [&](const Element& u) {
      if (w.count(u)) return;
      picked.push_back(u);
      w = bb_close(bb, std::move(w), {u});
    };
    if (stage == 0)
      for (const Element& u : prescribed) {
        if (w.count(u))
          throw MalformedInput(
              "prescribed generators not independent modulo Frattini");
        try_pick(u);
      }
    for (const Element& u : lambda[stage]) {
      if (w.size() == lambda[stage].size()) break;
      try_pick(u);
    }
    out.gen_labels.insert(out.gen_labels.end(), picked.begin(), picked.end());
  }

  const unsigned m = (unsigned)out.gen_labels.size();
  if (m > kMaxGens) throw DeskScaleExceeded("derived pcp needs too many generators");
  out.chain.resize(m + 1);
  out.chain[m].insert(bb.id);
  for (unsigned k = m; k-- > 0;) {
    std::vector<Element> gens(out.gen_labels.begin() + k, out.gen_labels.end());
    LabelSet h = bb_close(bb, {}, gens);
    out.chain[k] = std::move(h);
  }
  if (out.chain[0].size() != bb.elems.size())
    throw MalformedInput("derived pcp generators do not generate");

  // read relations off by exponent extraction down the chain
  auto extract = [&](Element cur, unsigned from) {
    Word wrd;
    for (unsigned t = from; t < m; t++) {
      unsigned e = 0;
      Element probe = cur;
      while (e < p && !out.chain[t + 1].count(probe)) {
        probe = bb.mult(bb.inv(out.gen_labels[t]), probe);
        e++;
      }
      if (e == p) throw MalformedInput("exponent extraction failed");
      if (e > 0) wrd.factors.push_back(Factor{t, e});
      cur = probe;
    }
    if (!(cur == bb.id)) throw MalformedInput("extraction did not reach identity");
    return wrd;
  };

  PcPresentation pres;
  pres.prime = p;
  pres.ngens = m;
  pres.power_rhs.assign(m, Word{});
  pres.comm_rhs.assign(m, {});
  pres.definition.assign(m, std::nullopt);
  for (unsigned j = 0; j < m; j++) {
    pres.comm_rhs[j].assign(j, Word{});
    pres.power_rhs[j] = extract(bb.pow(out.gen_labels[j], p), j + 1);
    for (unsigned i = 0; i < j; i++)
      pres.comm_rhs[j][i] =
          extract(bb_comm(bb, out.gen_labels[j], out.gen_labels[i]), j + 1);
  }
  out.pres = std::move(pres);
  return out;
}

Element DerivedPcp::express(const BlackBoxGroup& bb, const Element& label) const {
  const unsigned m = (unsigned)gen_labels.size();
  Element exps;
  Element cur = label;
  for (unsigned t = 0; t < m; t++) {
    unsigned e = 0;
    Element probe = cur;
    while (e < bb.prime && !chain[t + 1].count(probe)) {
      probe = bb.mult(bb.inv(gen_labels[t]), probe);
      e++;
    }
    if (e == bb.prime) throw MalformedInput("label not expressible");
    exps.e[t] = (uint16_t)e;
    cur = probe;
  }
  if (!(cur == bb.id)) throw MalformedInput("label not expressible");
  return exps;
}

std::unordered_map<Element, Word, ElementHash> blackbox_words(
    const BlackBoxGroup& bb, const std::vector<Element>& user_labels) {
  // positive words only: value-correct regardless of power relations
  std::unordered_map<Element, Word, ElementHash> words;
  words.emplace(bb.id, Word{});
  std::deque<Element> frontier{bb.id};
  while (!frontier.empty()) {
    Element x = frontier.front();
    frontier.pop_front();
    const Word& wx = words.at(x);
    for (unsigned i = 0; i < user_labels.size(); i++) {
      Element y = bb.mult(x, user_labels[i]);
      if (words.count(y)) continue;
      Word wy = wx;
      if (!wy.factors.empty() && wy.factors.back().gen == i)
        wy.factors.back().exp++;
      else
        wy.factors.push_back(Factor{i, 1});
      words.emplace(y, std::move(wy));
      frontier.push_back(y);
    }
  }
  return words;
}

// ---------------------------------------------------------------------------
// quotients

QuotientContext::QuotientContext(const GroupContext& g, Subgroup n) {
  parent_ = &g;
  nsub_ = std::move(n);
  build({});
}

QuotientContext::QuotientContext(const GroupContext& g, Subgroup n,
                                 std::vector<Element> user_gens) {
  parent_ = &g;
  nsub_ = std::move(n);
  build(std::move(user_gens));
}

void QuotientContext::build(std::vector<Element> prescribed) {
  const GroupContext& g = *parent_;
  if (&nsub_.context() != parent_) throw ContextMismatch("quotient subgroup");
  if (!nsub_.is_normal()) throw NotNormal("quotient by a non-normal subgroup");
  if (g.order() > kEnumLimit) throw DeskScaleExceeded("quotient scan");

  const unsigned long long n = g.order();
  auto table = std::make_shared<std::vector<uint32_t>>((size_t)n, UINT32_MAX);
  std::vector<Element> reps;
  for (unsigned long long r = 0; r < n; r++) {
    if ((*table)[(size_t)r] != UINT32_MAX) continue;
    Element x = g.element_at(r);
    reps.push_back(x);
    for (const Element& m : nsub_.elements())
      (*table)[(size_t)g.rank_of(g.multiply(x, m))] = (uint32_t)r;
  }
  rep_rank_ = table;

  bb_.prime = g.prime();
  bb_.id = g.identity();
  bb_.elems = std::move(reps);
  const GroupContext* gp = parent_;
  auto shared = rep_rank_;
  bb_.mult = [gp, shared](const Element& a, const Element& b) {
    return gp->element_at((*shared)[(size_t)gp->rank_of(gp->multiply(a, b))]);
  };

  std::vector<Element> canon_pres;
  for (const Element& u : prescribed) canon_pres.push_back(canonical_rep(u));

  derived_ = pcp_of_blackbox(bb_, canon_pres);
  auto pres = derived_.pres;
  pres.source_name = g.name().empty() ? "quotient" : g.name() + "/N";

  if (!prescribed.empty()) {
    user_reps_ = canon_pres;
    auto words = blackbox_words(bb_, user_reps_);
    def_words_.resize(pres.ngens);
    for (unsigned k = 0; k < pres.ngens; k++) {
      auto it = words.find(derived_.gen_labels[k]);
      if (it == words.end())
        throw MalformedInput("user generators do not generate the quotient");
      pres.definition[k] = it->second;
      SignedWord sw;
      for (const Factor& f : it->second.factors)
        for (unsigned t = 0; t < f.exp; t++) sw.push_back({f.gen, false});
      def_words_[k] = std::move(sw);
    }
  }
  qctx_ = std::make_shared<GroupContext>(std::move(pres));
}

Element QuotientContext::canonical_rep(const Element& x) const {
  return parent_->element_at((*rep_rank_)[(size_t)parent_->rank_of(x)]);
}

Element QuotientContext::project(const Element& x) const {
  return derived_.express(bb_, canonical_rep(x));
}

Element QuotientContext::lift(const Element& q) const {
  Element r = parent_->identity();
  for (unsigned k = 0; k < qctx_->ngens(); k++)
    r = parent_->multiply(r, parent_->power(derived_.gen_labels[k], q.e[k]));
  return r;
}

std::vector<Element> QuotientContext::coset_reps() const { return bb_.elems; }

const std::vector<SignedWord>& QuotientContext::def_words() const {
  if (def_words_.empty() && qctx_->ngens() > 0)
    throw MalformedInput("quotient was built without prescribed generators");
  return def_words_;
}

QuotientContext quotient(const GroupContext& g, const Subgroup& n) {
  return QuotientContext(g, n);
}

// ---------------------------------------------------------------------------
// isomorphism testing (small targets)

bool isomorphic(const GroupContext& a, const GroupContext& b) {
  if (a.order() != b.order() || a.prime() != b.prime()) return false;
  if (a.order() > 128) throw DeskScaleExceeded("isomorphism test beyond 2^7");
  const unsigned n = a.ngens();
  const unsigned long long m = b.order();

  std::vector<unsigned long long> gen_order(n);
  for (unsigned i = 0; i < n; i++) gen_order[i] = a.element_order(a.generator(i));
  std::vector<Element> b_elems = all_elements(b);
  std::vector<unsigned long long> b_order(b_elems.size());
  for (size_t r = 0; r < b_elems.size(); r++)
    b_order[r] = b.element_order(b_elems[r]);

  std::vector<Element> img(n);
  // assign images bottom-up so every relation involving the new
  // generator only mentions already-assigned ones
  std::function<bool(unsigned)> assign = [&](unsigned k) -> bool {
    if (k == 0) {
      std::vector<Element> gens(img.begin(), img.end());
      return Subgroup::from_generators(b, gens).size() == m;
    }
    const unsigned i = k - 1;
    for (size_t r = 0; r < b_elems.size(); r++) {
      if (b_order[r] != gen_order[i]) continue;
      img[i] = b_elems[r];
      bool ok = b.power(img[i], a.prime()) ==
                b.evaluate_word(a.presentation().power_rhs[i], img);
      for (unsigned j = i + 1; j < n && ok; j++)
        ok = b.commutator(img[j], img[i]) ==
             b.evaluate_word(a.presentation().comm_rhs[j][i], img);
      if (ok && assign(k - 1)) return true;
    }
    return false;
  };
  return assign(n);
}

// ---------------------------------------------------------------------------
// subgroup lattice walk

std::vector<Subgroup> all_subgroups_of_order(const GroupContext& g,
                                             unsigned long long m) {
  if (g.order() > 4096) throw DeskScaleExceeded("subgroup lattice walk");
  auto t = g.cayley();
  const size_t n = (size_t)g.order();

  std::map<std::vector<uint16_t>, bool> seen;
  std::deque<std::vector<uint16_t>> work;
  std::vector<uint16_t> triv{0};
  seen[triv] = true;
  work.push_back(triv);
  std::vector<Subgroup> out;
  if (m == 1) out.push_back(Subgroup::trivial(g));

  auto close_idx = [&](std::vector<uint16_t> seed) {
    std::vector<char> in(n, 0);
    std::deque<uint16_t> q;
    for (uint16_t x : seed)
      if (!in[x]) {
        in[x] = 1;
        q.push_back(x);
      }
    if (!in[0]) {
      in[0] = 1;
      q.push_back(0);
    }
    std::vector<uint16_t> elems;
    while (!q.empty()) {
      uint16_t x = q.front();
      q.pop_front();
      elems.push_back(x);
      for (uint16_t s : seed) {
        uint16_t y = t->at(x, s);
        if (!in[y]) {
          in[y] = 1;
          q.push_back(y);
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  };

  while (!work.empty()) {
    std::vector<uint16_t> h = work.front();
    work.pop_front();
    if ((unsigned long long)h.size() * g.prime() > m) continue;
    for (uint16_t x = 1; x < n; x++) {
      if (std::binary_search(h.begin(), h.end(), x)) continue;
      std::vector<uint16_t> seed = h;
      seed.push_back(x);
      std::vector<uint16_t> hx = close_idx(std::move(seed));
      if ((unsigned long long)hx.size() > m) continue;
      if (seen.emplace(hx, true).second) {
        if ((unsigned long long)hx.size() == m) {
          std::vector<Element> elems;
          for (uint16_t r : hx) elems.push_back(g.element_at(r));
          out.push_back(Subgroup::from_elements(g, std::move(elems)));
        }
        work.push_back(std::move(hx));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    return x.elements() < y.elements();
  });
  return out;
}

}  // namespace pg
