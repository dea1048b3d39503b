#include "pg/pcgroup.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

namespace pg {

bool is_prime(unsigned long long v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (unsigned long long d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

unsigned long long checked_pow(unsigned long long base, unsigned exp) {
  unsigned long long r = 1;
  for (unsigned i = 0; i < exp; i++) {
    if (r > (1ull << 62) / base)
      throw DeskScaleExceeded("group order p^n exceeds 2^62");
    r *= base;
  }
  return r;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

// factor token: <idx> or <idx>^<e>; e may be negative
Factor parse_factor(const std::string& tok, unsigned ngens, unsigned p,
                    bool& dropped) {
  size_t caret = tok.find('^');
  std::string idx_s = tok.substr(0, caret == std::string::npos ? tok.size() : caret);
  long long idx, exp = 1;
  try {
    idx = std::stoll(idx_s);
    if (caret != std::string::npos) exp = std::stoll(tok.substr(caret + 1));
  } catch (const std::exception&) {
    throw MalformedInput("bad word factor '" + tok + "'");
  }
  if (idx < 1 || idx > (long long)ngens)
    throw MalformedInput("generator index out of range in '" + tok + "'");
  long long e = ((exp % (long long)p) + p) % p;
  dropped = (e == 0);
  return Factor{(unsigned)(idx - 1), (unsigned)e};
}

// A word that is the single token "1" is the identity. Factor exponents
// are residues mod p; a zero residue drops the factor.
Word parse_word(const std::vector<std::string>& toks, size_t from, unsigned ngens,
                unsigned p) {
  Word w;
  if (toks.size() == from + 1 && toks[from] == "1") return w;
  for (size_t k = from; k < toks.size(); k++) {
    bool dropped = false;
    Factor f = parse_factor(toks[k], ngens, p, dropped);
    if (!dropped) w.factors.push_back(f);
  }
  return w;
}

void check_weight(const Word& w, unsigned head, const std::string& what) {
  for (const Factor& f : w.factors)
    if (f.gen <= head)
      throw WeightViolation(what + ": rhs index " + std::to_string(f.gen + 1) +
                            " not above head " + std::to_string(head + 1));
}

}  // namespace

PcPresentation parse_pcp(std::string_view text, std::string_view name) {
  PcPresentation p;
  p.source_name = std::string(name);
  std::istringstream in{std::string(text)};
  std::string raw;
  bool have_prime = false, have_gens = false;
  std::vector<bool> pow_seen, def_seen;
  std::vector<std::vector<bool>> comm_seen;

  while (std::getline(in, raw)) {
    if (size_t h = raw.find('#'); h != std::string::npos) raw.resize(h);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (kw == "prime") {
      if (have_prime) throw MalformedInput("duplicate prime line");
      if (have_gens) throw MalformedInput("prime must come before gens");
      if (toks.size() != 2) throw MalformedInput("prime takes one argument");
      long long v;
      try { v = std::stoll(toks[1]); } catch (const std::exception&) {
        throw MalformedInput("bad prime '" + toks[1] + "'");
      }
      if (v < 2 || !is_prime((unsigned long long)v))
        throw BadPrime(toks[1] + " is not prime");
      p.prime = (unsigned)v;
      have_prime = true;
      continue;
    }
    if (kw == "gens") {
      if (!have_prime) throw MalformedInput("gens before prime");
      if (have_gens) throw MalformedInput("duplicate gens line");
      if (toks.size() != 2) throw MalformedInput("gens takes one argument");
      long long v;
      try { v = std::stoll(toks[1]); } catch (const std::exception&) {
        throw MalformedInput("bad gens '" + toks[1] + "'");
      }
      if (v < 1) throw MalformedInput("gens must be >= 1");
      if (v > (long long)kMaxGens)
        throw MalformedInput("gens exceeds the build limit of " +
                             std::to_string(kMaxGens));
      p.ngens = (unsigned)v;
      checked_pow(p.prime, p.ngens);
      have_gens = true;
      p.power_rhs.assign(p.ngens, Word{});
      p.comm_rhs.assign(p.ngens, {});
      for (unsigned j = 0; j < p.ngens; j++) p.comm_rhs[j].assign(j, Word{});
      p.definition.assign(p.ngens, std::nullopt);
      pow_seen.assign(p.ngens, false);
      def_seen.assign(p.ngens, false);
      comm_seen.assign(p.ngens, {});
      for (unsigned j = 0; j < p.ngens; j++) comm_seen[j].assign(j, false);
      continue;
    }
    if (!have_gens) throw MalformedInput("relation before prime/gens header");

    if (kw == "power") {
      if (toks.size() < 4 || toks[2] != "=")
        throw MalformedInput("power syntax: power <i> = <word>");
      long long i;
      try { i = std::stoll(toks[1]); } catch (const std::exception&) {
        throw MalformedInput("bad power index");
      }
      if (i < 1 || i > (long long)p.ngens) throw MalformedInput("power index range");
      if (pow_seen[i - 1]) throw MalformedInput("duplicate power " + toks[1]);
      pow_seen[i - 1] = true;
      Word w = parse_word(toks, 3, p.ngens, p.prime);
      check_weight(w, (unsigned)(i - 1), "power " + toks[1]);
      p.power_rhs[i - 1] = std::move(w);
      continue;
    }
    if (kw == "comm") {
      if (toks.size() < 5 || toks[3] != "=")
        throw MalformedInput("comm syntax: comm <j> <i> = <word>");
      long long j, i;
      try {
        j = std::stoll(toks[1]);
        i = std::stoll(toks[2]);
      } catch (const std::exception&) {
        throw MalformedInput("bad comm indices");
      }
      if (j < 1 || j > (long long)p.ngens || i < 1 || i > (long long)p.ngens)
        throw MalformedInput("comm index range");
      if (j <= i)
        throw WeightViolation("comm " + toks[1] + " " + toks[2] +
                              ": left index must exceed right index");
      if (comm_seen[j - 1][i - 1])
        throw MalformedInput("duplicate comm " + toks[1] + " " + toks[2]);
      comm_seen[j - 1][i - 1] = true;
      Word w = parse_word(toks, 4, p.ngens, p.prime);
      check_weight(w, (unsigned)(j - 1), "comm " + toks[1] + " " + toks[2]);
      p.comm_rhs[j - 1][i - 1] = std::move(w);
      continue;
    }
    if (kw == "def") {
      if (toks.size() < 4 || toks[2] != "=")
        throw MalformedInput("def syntax: def <i> = <word>");
      long long i;
      try { i = std::stoll(toks[1]); } catch (const std::exception&) {
        throw MalformedInput("bad def index");
      }
      if (i < 1 || i > (long long)p.ngens) throw MalformedInput("def index range");
      if (def_seen[i - 1]) throw MalformedInput("duplicate def " + toks[1]);
      def_seen[i - 1] = true;
      p.definition[i - 1] = parse_word(toks, 3, p.ngens, p.prime);
      continue;
    }
    throw MalformedInput("unknown directive '" + kw + "'");
  }
  if (!have_prime || !have_gens) throw MalformedInput("missing prime/gens header");
  return p;
}

PcPresentation parse_pcp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string base = path;
  if (size_t s = base.find_last_of('/'); s != std::string::npos) base = base.substr(s + 1);
  return parse_pcp(buf.str(), base);
}

std::string emit_pcp(const PcPresentation& p) {
  std::ostringstream out;
  auto word_str = [](const Word& w) {
    if (w.empty()) return std::string("1");
    std::string s;
    for (const Factor& f : w.factors) {
      if (!s.empty()) s += ' ';
      s += std::to_string(f.gen + 1);
      if (f.exp != 1) s += "^" + std::to_string(f.exp);
    }
    return s;
  };
  out << "prime " << p.prime << "\n";
  out << "gens " << p.ngens << "\n";
  for (unsigned i = 0; i < p.ngens; i++)
    if (!p.power_rhs[i].empty())
      out << "power " << i + 1 << " = " << word_str(p.power_rhs[i]) << "\n";
  for (unsigned j = 1; j < p.ngens; j++)
    for (unsigned i = 0; i < j; i++)
      if (!p.comm_rhs[j][i].empty())
        out << "comm " << j + 1 << " " << i + 1 << " = "
            << word_str(p.comm_rhs[j][i]) << "\n";
  for (unsigned i = 0; i < p.ngens; i++)
    if (p.definition[i])
      out << "def " << i + 1 << " = " << word_str(*p.definition[i]) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// collection

GroupContext::GroupContext(PcPresentation pres) : pres_(std::move(pres)) {
  if (pres_.prime < 2 || !is_prime(pres_.prime)) throw BadPrime("context prime");
  // ngens == 0 is the trivial group; it arises from quotients G/G
  if (pres_.ngens > kMaxGens) throw MalformedInput("generator count out of range");
  order_ = checked_pow(pres_.prime, pres_.ngens);

  const unsigned n = pres_.ngens;
  // bootstrap with the raw relation words, then memoize normal forms
  pow_nf_.assign(n, {});
  comm_nf_.assign(n, {});
  for (unsigned j = 0; j < n; j++) {
    comm_nf_[j].assign(j, {});
    pow_nf_[j] = pres_.power_rhs[j].factors;
    for (unsigned i = 0; i < j; i++) comm_nf_[j][i] = pres_.comm_rhs[j][i].factors;
  }
  auto to_sparse = [n](const Element& a) {
    std::vector<Factor> w;
    for (unsigned k = 0; k < n; k++)
      if (a.e[k]) w.push_back(Factor{k, a.e[k]});
    return w;
  };
  // normalizing a word with support > h only uses relations with head > h,
  // so rebuilding bottom-up keeps every step well-defined
  for (unsigned j = n; j-- > 0;) {
    for (unsigned i = 0; i < j; i++)
      comm_nf_[j][i] = to_sparse(normalize(pres_.comm_rhs[j][i]));
    pow_nf_[j] = to_sparse(normalize(pres_.power_rhs[j]));
  }
}

Element GroupContext::generator(unsigned i) const {
  if (i >= pres_.ngens) throw MalformedInput("generator index");
  Element a;
  a.e[i] = 1;
  return a;
}

void GroupContext::validate(const Element& a) const {
  for (unsigned k = 0; k < kMaxGens; k++) {
    if (k < pres_.ngens ? a.e[k] >= pres_.prime : a.e[k] != 0)
      throw ContextMismatch("exponent vector does not belong to this context");
  }
}

// a <- a * g_i, collecting from the left
void GroupContext::rmul_gen(Element& a, unsigned i) const {
  const unsigned n = pres_.ngens;
  const uint16_t p = (uint16_t)pres_.prime;

  unsigned top = n;
  while (top > i + 1 && a.e[top - 1] == 0) top--;
  if (top == i + 1) {  // no support above i
    if (++a.e[i] == p) {
      a.e[i] = 0;
      rmul_nf(a, pow_nf_[i]);
    }
    return;
  }
  // detach the tail, bump the head, then reattach the conjugated tail
  std::array<uint16_t, kMaxGens> tail{};
  for (unsigned k = i + 1; k < top; k++) {
    tail[k] = a.e[k];
    a.e[k] = 0;
  }
  if (++a.e[i] == p) {
    a.e[i] = 0;
    rmul_nf(a, pow_nf_[i]);
  }
  for (unsigned k = i + 1; k < top; k++) {
    const auto& c = comm_nf_[k][i];
    for (uint16_t t = 0; t < tail[k]; t++) {
      rmul_gen(a, k);
      if (!c.empty()) rmul_nf(a, c);
    }
  }
}

void GroupContext::rmul_nf(Element& a, const std::vector<Factor>& w) const {
  for (const Factor& f : w)
    for (unsigned t = 0; t < f.exp; t++) rmul_gen(a, f.gen);
}

Element GroupContext::normalize(const Word& w) const {
  Element a;
  rmul_nf(a, w.factors);
  return a;
}

Element GroupContext::multiply(const Element& a, const Element& b) const {
  Element r = a;
  for (unsigned i = 0; i < pres_.ngens; i++)
    for (uint16_t t = 0; t < b.e[i]; t++) rmul_gen(r, i);
  return r;
}

Element GroupContext::inverse(const Element& a) const {
  // solve a * g_1^f1 ... g_n^fn = 1 coordinate by coordinate; the
  // ascending product of the f_i is already a normal form
  Element r = a, inv;
  for (unsigned i = 0; i < pres_.ngens; i++) {
    uint16_t f = (uint16_t)((pres_.prime - r.e[i]) % pres_.prime);
    inv.e[i] = f;
    for (uint16_t t = 0; t < f; t++) rmul_gen(r, i);
  }
  return inv;
}

Element GroupContext::power(const Element& a, long long k) const {
  Element base = a;
  if (k < 0) {
    base = inverse(a);
    k = -k;
  }
  Element r;
  while (k > 0) {
    if (k & 1) r = multiply(r, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return r;
}

Element GroupContext::commutator(const Element& a, const Element& b) const {
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

Element GroupContext::conjugate(const Element& a, const Element& b) const {
  return multiply(multiply(inverse(b), a), b);
}

unsigned long long GroupContext::element_order(const Element& a) const {
  // the order is a p-power, so iterate b <- b^p
  unsigned long long ord = 1;
  Element b = a;
  while (!is_identity(b)) {
    b = power(b, pres_.prime);
    ord *= pres_.prime;
  }
  return ord;
}

Element GroupContext::evaluate_word(const Word& w,
                                    const std::vector<Element>& images) const {
  Element r;
  for (const Factor& f : w.factors) {
    if (f.gen >= images.size()) throw MalformedInput("word index beyond images");
    r = multiply(r, power(images[f.gen], f.exp));
  }
  return r;
}

Element GroupContext::evaluate_signed(const SignedWord& w,
                                      const std::vector<Element>& images) const {
  Element r;
  for (const SignedLetter& l : w) {
    if (l.gen >= images.size()) throw MalformedInput("letter index beyond images");
    r = multiply(r, l.inverse ? inverse(images[l.gen]) : images[l.gen]);
  }
  return r;
}

Element GroupContext::element_at(unsigned long long rank) const {
  Element a;
  for (unsigned i = pres_.ngens; i-- > 0;) {
    a.e[i] = (uint16_t)(rank % pres_.prime);
    rank /= pres_.prime;
  }
  return a;
}

unsigned long long GroupContext::rank_of(const Element& a) const {
  unsigned long long r = 0;
  for (unsigned i = 0; i < pres_.ngens; i++) r = r * pres_.prime + a.e[i];
  return r;
}

std::vector<SignedWord> GroupContext::relator_words() const {
  std::vector<SignedWord> rel;
  auto inv_of = [](const Word& w) {
    SignedWord s;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
      for (unsigned t = 0; t < it->exp; t++) s.push_back({it->gen, true});
    return s;
  };
  for (unsigned i = 0; i < pres_.ngens; i++) {
    SignedWord s;
    for (unsigned t = 0; t < pres_.prime; t++) s.push_back({i, false});
    auto tail = inv_of(pres_.power_rhs[i]);
    s.insert(s.end(), tail.begin(), tail.end());
    rel.push_back(std::move(s));
  }
  for (unsigned j = 1; j < pres_.ngens; j++)
    for (unsigned i = 0; i < j; i++) {
      SignedWord s = {{j, true}, {i, true}, {j, false}, {i, false}};
      auto tail = inv_of(pres_.comm_rhs[j][i]);
      s.insert(s.end(), tail.begin(), tail.end());
      rel.push_back(std::move(s));
    }
  return rel;
}

std::shared_ptr<const GroupContext::Cayley> GroupContext::cayley() const {
  std::call_once(cayley_once_, [this] {
    if (order_ > 4096)
      throw DeskScaleExceeded("Cayley table limited to 4096 elements");
    auto t = std::make_shared<Cayley>();
    const size_t n = (size_t)order_;
    t->n = n;
    const unsigned ng = pres_.ngens;
    // single-generator columns first, then whole rows by successor
    // decomposition b = b' * g_k
    std::vector<uint16_t> gencol(n * ng);
    for (size_t x = 0; x < n; x++) {
      Element ex = element_at(x);
      for (unsigned k = 0; k < ng; k++) {
        Element y = ex;
        rmul_gen(y, k);
        gencol[x * ng + k] = (uint16_t)rank_of(y);
      }
    }
    t->mul.assign(n * n, 0);
    // parent[b] = (rank of b with last nonzero digit decremented, that digit's index)
    std::vector<std::pair<uint32_t, uint16_t>> parent(n);
    for (size_t b = 1; b < n; b++) {
      Element eb = element_at(b);
      unsigned k = ng;
      while (k > 0 && eb.e[k - 1] == 0) k--;
      eb.e[k - 1]--;
      parent[b] = {(uint32_t)rank_of(eb), (uint16_t)(k - 1)};
    }
    for (size_t a = 0; a < n; a++) {
      uint16_t* row = &t->mul[a * n];
      row[0] = (uint16_t)a;
      for (size_t b = 1; b < n; b++)
        row[b] = gencol[size_t(row[parent[b].first]) * ng + parent[b].second];
    }
    t->inv.assign(n, 0);
    for (size_t x = 0; x < n; x++)
      t->inv[x] = (uint16_t)rank_of(inverse(element_at(x)));
    cayley_ = std::move(t);
  });
  return cayley_;
}

ConsistencyResult GroupContext::consistency_check(
    unsigned long long exhaustive_threshold) const {
  const unsigned n = pres_.ngens;
  ConsistencyResult res;
  auto fail = [&](Element a, Element b, Element c, std::string what) {
    res.ok = false;
    res.a = a;
    res.b = b;
    res.c = c;
    res.detail = std::move(what);
    return res;
  };

  // standard overlaps for relative order p
  for (unsigned k = 0; k < n; k++)
    for (unsigned j = 0; j < k; j++)
      for (unsigned i = 0; i < j; i++) {
        Element gk = generator(k), gj = generator(j), gi = generator(i);
        Element lhs = multiply(multiply(gk, gj), gi);
        Element rhs = multiply(gk, multiply(gj, gi));
        if (lhs != rhs)
          return fail(gk, gj, gi,
                      "overlap g" + std::to_string(k + 1) + " g" +
                          std::to_string(j + 1) + " g" + std::to_string(i + 1));
      }
  for (unsigned j = 1; j < n; j++)
    for (unsigned i = 0; i < j; i++) {
      Element gj = generator(j), gi = generator(i);
      // g_j^p * g_i  vs  g_j^(p-1) * (g_j g_i)
      Element lhs = multiply(power(gj, pres_.prime), gi);
      Element rhs = multiply(power(gj, pres_.prime - 1), multiply(gj, gi));
      if (lhs != rhs) return fail(gj, gj, gi, "power overlap high");
      // g_j * g_i^p  vs  (g_j g_i) * g_i^(p-1)
      lhs = multiply(gj, power(gi, pres_.prime));
      rhs = multiply(multiply(gj, gi), power(gi, pres_.prime - 1));
      if (lhs != rhs) return fail(gj, gi, gi, "power overlap low");
    }
  for (unsigned i = 0; i < n; i++) {
    Element gi = generator(i);
    Element lhs = multiply(gi, power(gi, pres_.prime));
    Element rhs = multiply(power(gi, pres_.prime), gi);
    if (lhs != rhs) return fail(gi, gi, gi, "power overlap self");
  }

  if (order_ < exhaustive_threshold && order_ <= 4096) {
    auto t = cayley();
    const size_t m = (size_t)order_;
    for (size_t a = 0; a < m; a++)
      for (size_t b = 0; b < m; b++) {
        uint16_t ab = t->at((uint16_t)a, (uint16_t)b);
        for (size_t c = 0; c < m; c++)
          if (t->at(ab, (uint16_t)c) != t->at((uint16_t)a, t->at((uint16_t)b, (uint16_t)c)))
            return fail(element_at(a), element_at(b), element_at(c),
                        "associativity triple");
      }
  } else {
    std::mt19937_64 rng(0xC0FFEE);  // fixed seed: deterministic verdicts
    for (int s = 0; s < 100000; s++) {
      Element a = element_at(rng() % order_);
      Element b = element_at(rng() % order_);
      Element c = element_at(rng() % order_);
      if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
        return fail(a, b, c, "associativity sample");
    }
  }
  return res;
}

}  // namespace pg
