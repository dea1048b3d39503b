#pragma once

// Weighted power-commutator presentations of finite p-groups and
// collection-from-the-left arithmetic over them.
//
// Conventions, fixed for the whole workbench:
//   [a,b] = a^-1 b^-1 a b,   a^b = b^-1 a b
//   normal form: g1^e1 g2^e2 ... gn^en with 0 <= ei < p
//   every relative order equals p, hence |G| = p^n exactly and the
//   normal forms are exactly the p^n exponent vectors.
//
// A presentation is *weighted*: every relation right-hand side only
// mentions generators with index strictly greater than the head index
// of the left-hand side. This forces nilpotency and makes collection
// terminate.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pg/errors.hpp"

namespace pg {

inline constexpr unsigned kMaxGens = 24;

// Elements accepted by full-enumeration algorithms (scans, closures,
// series). Collection itself has no such bound.
inline constexpr unsigned long long kEnumLimit = 1ull << 22;

// Exponent vector of a normal form. Entries beyond ngens stay zero, so
// comparing whole arrays is the lexicographic order on normal forms.
struct Element {
  std::array<uint16_t, kMaxGens> e{};

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  size_t operator()(const Element& a) const noexcept {
    // FNV-1a over the exponent bytes
    size_t h = 1469598103934665603ull;
    for (uint16_t v : a.e) {
      h = (h ^ (v & 0xff)) * 1099511628211ull;
      h = (h ^ (v >> 8)) * 1099511628211ull;
    }
    return h;
  }
};

// One factor g^e of a word; exponents are kept in [1, p).
struct Factor {
  unsigned gen = 0;  // 0-based generator index
  unsigned exp = 1;
};

// A word is an ordered product of factors. Repeated generator indices
// are allowed; this is a word, not a normal form.
struct Word {
  std::vector<Factor> factors;
  bool empty() const { return factors.empty(); }
};

// Free-group letter with sign, for relator and definition words that
// must be evaluated through a derivation (where g^-1 and g^(p-1) are
// not interchangeable).
struct SignedLetter {
  unsigned gen = 0;
  bool inverse = false;
};
using SignedWord = std::vector<SignedLetter>;

struct PcPresentation {
  unsigned prime = 0;
  unsigned ngens = 0;
  std::vector<Word> power_rhs;              // rhs of g_i^p, indexed by i
  std::vector<std::vector<Word>> comm_rhs;  // rhs of [g_j, g_i], j > i
  std::vector<std::optional<Word>> definition;  // pc-gen over user gens
  std::string source_name;
};

// Parse the line-oriented presentation format (see README). Throws
// MalformedInput / WeightViolation / BadPrime.
PcPresentation parse_pcp(std::string_view text, std::string_view name = "");
PcPresentation parse_pcp_file(const std::string& path);

// Render a presentation back into the file format.
std::string emit_pcp(const PcPresentation& p);

struct ConsistencyResult {
  bool ok = true;
  Element a, b, c;     // failing triple when !ok
  std::string detail;  // which overlap or triple failed
};

class GroupContext {
 public:
  explicit GroupContext(PcPresentation pres);

  GroupContext(const GroupContext&) = delete;
  GroupContext& operator=(const GroupContext&) = delete;

  const PcPresentation& presentation() const { return pres_; }
  unsigned prime() const { return pres_.prime; }
  unsigned ngens() const { return pres_.ngens; }
  unsigned long long order() const { return order_; }
  const std::string& name() const { return pres_.source_name; }

  Element identity() const { return Element{}; }
  bool is_identity(const Element& a) const { return a == Element{}; }
  Element generator(unsigned i) const;

  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, long long k) const;
  Element commutator(const Element& a, const Element& b) const;
  Element conjugate(const Element& a, const Element& b) const;  // a^b
  unsigned long long element_order(const Element& a) const;

  Element normalize(const Word& w) const;
  Element evaluate_word(const Word& w, const std::vector<Element>& images) const;
  Element evaluate_signed(const SignedWord& w, const std::vector<Element>& images) const;

  // Lexicographic enumeration: rank 0 is the identity.
  Element element_at(unsigned long long rank) const;
  unsigned long long rank_of(const Element& a) const;

  // Standard overlap test words, plus exhaustive associativity over all
  // triples below the threshold and a fixed random sample above it.
  ConsistencyResult consistency_check(
      unsigned long long exhaustive_threshold = 1ull << 12) const;

  // Best-effort guard: entries must be < p and vanish beyond ngens.
  void validate(const Element& a) const;

  // Relator words of the presentation as signed free words over the
  // pc-generators: g_i^p w_i^-1 and [g_j,g_i] w_ji^-1.
  std::vector<SignedWord> relator_words() const;

  // Cayley table for exhaustive scans over small groups.
  struct Cayley {
    unsigned long long n = 0;
    std::vector<uint16_t> mul;  // n*n, mul[a*n+b]
    std::vector<uint16_t> inv;
    uint16_t at(uint16_t a, uint16_t b) const { return mul[size_t(a) * n + b]; }
  };
  // Built lazily; requires |G| <= 4096.
  std::shared_ptr<const Cayley> cayley() const;

 private:
  friend struct GroupContextTestAccess;

  void rmul_gen(Element& a, unsigned i) const;
  void rmul_nf(Element& a, const std::vector<Factor>& w) const;

  PcPresentation pres_;
  unsigned long long order_ = 0;
  // normalized relation tables; conj_[j][i] is the normal form of
  // g_j * [g_j, g_i] minus its head, i.e. only the tail above j
  std::vector<std::vector<Factor>> pow_nf_;
  std::vector<std::vector<std::vector<Factor>>> comm_nf_;

  mutable std::shared_ptr<const Cayley> cayley_;
  mutable std::once_flag cayley_once_;
};

// Test-only backdoor used to corrupt the memoized tables and exercise
// the consistency checker's Violation path.
struct GroupContextTestAccess {
  static void corrupt_comm(GroupContext& g, unsigned j, unsigned i,
                           std::vector<Factor> w) {
    g.comm_nf_[j][i] = std::move(w);
  }
  static void corrupt_power(GroupContext& g, unsigned i, std::vector<Factor> w) {
    g.pow_nf_[i] = std::move(w);
  }
};

unsigned long long checked_pow(unsigned long long base, unsigned exp);
bool is_prime(unsigned long long v);

}  // namespace pg
