#include <array>
#include <map>
#include <set>

#include "doctest.h"
#include "pg/pcgroup.hpp"
#include "test_util.hpp"

using namespace pg;
using pgtest::elem;

namespace {

// Independent model of D8: permutations of the square's vertices under
// right action, r(x) = x+1, s(x) = -x (mod 4). Products compose left to
// right: (a*b)(x) = b(a(x)).
using Perm = std::array<int, 4>;

Perm pcompose(const Perm& a, const Perm& b) {
  Perm r{};
  for (int x = 0; x < 4; x++) r[x] = b[a[x]];
  return r;
}

Perm pperm_pow(Perm a, int k) {
  Perm r{0, 1, 2, 3};
  for (int i = 0; i < k; i++) r = pcompose(r, a);
  return r;
}

Perm d8_model(const Element& v) {
  Perm s{0, 3, 2, 1}, r{1, 2, 3, 0};
  Perm out = pperm_pow(s, v.e[0]);
  out = pcompose(out, pperm_pow(r, v.e[1]));
  out = pcompose(out, pperm_pow(r, 2 * v.e[2]));
  return out;
}

// Independent model of Q8: (sign, axis) with axis 0=1, 1=i, 2=j, 3=k.
struct Quat {
  int sign;
  int axis;
  friend bool operator==(const Quat&, const Quat&) = default;
  friend auto operator<=>(const Quat&, const Quat&) = default;
};

Quat qmul(Quat a, Quat b) {
  static const int axis[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return Quat{a.sign * b.sign * sgn[a.axis][b.axis], axis[a.axis][b.axis]};
}

Quat q8_model(const Element& v) {
  Quat out{1, 0};
  for (int t = 0; t < v.e[0]; t++) out = qmul(out, Quat{1, 1});
  for (int t = 0; t < v.e[1]; t++) out = qmul(out, Quat{1, 2});
  for (int t = 0; t < v.e[2]; t++) out = qmul(out, Quat{-1, 0});
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("pcgroup");

TEST_CASE("parse the D8 file") {
  auto g = pgtest::make_group(pgtest::kD8, "d8");
  CHECK(g->prime() == 2);
  CHECK(g->ngens() == 3);
  CHECK(g->order() == 8);
  CHECK(g->presentation().power_rhs[1].factors.size() == 1);
  CHECK(g->presentation().comm_rhs[1][0].factors[0].gen == 2);
}

TEST_CASE("parse the Huppert p^4 file") {
  auto g = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  CHECK(g->prime() == 5);
  CHECK(g->ngens() == 4);
  CHECK(g->order() == 625);
}

TEST_CASE("parse rejects weight violations") {
  CHECK_THROWS_AS(parse_pcp("prime 5\ngens 3\ncomm 1 2 = 3\n"), WeightViolation);
  CHECK_THROWS_AS(parse_pcp("prime 2\ngens 3\npower 2 = 2\n"), WeightViolation);
  CHECK_THROWS_AS(parse_pcp("prime 2\ngens 3\ncomm 2 1 = 1 3\n"), WeightViolation);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_pcp("prime 4\ngens 2\n"), BadPrime);
  CHECK_THROWS_AS(parse_pcp("gens 2\nprime 3\n"), MalformedInput);
  CHECK_THROWS_AS(parse_pcp("prime 3\ngens 2\nfrob 1\n"), MalformedInput);
  CHECK_THROWS_AS(parse_pcp("prime 3\ngens 2\npower 1 = 2\npower 1 = 2\n"),
                  MalformedInput);
  CHECK_THROWS_AS(parse_pcp("prime 3\ngens 0\n"), MalformedInput);
}

TEST_CASE("negative word exponents reduce mod p") {
  auto p = parse_pcp("prime 5\ngens 2\ndef 2 = 1^-1\n");
  CHECK(p.definition[1]->factors[0].exp == 4);
  auto q = parse_pcp("prime 5\ngens 2\ndef 2 = 1^5\n");
  CHECK(q.definition[1]->factors.empty());
}

TEST_CASE("emit/parse round trip") {
  auto p = parse_pcp(pgtest::kHuppert5, "h");
  auto q = parse_pcp(emit_pcp(p), "h2");
  CHECK(emit_pcp(p) == emit_pcp(q));
}

TEST_CASE("D8 multiplication matches the permutation model") {
  auto g = pgtest::make_group(pgtest::kD8, "d8");
  std::map<Perm, Element> seen;
  for (unsigned long long r = 0; r < 8; r++) {
    Element v = g->element_at(r);
    CHECK(seen.emplace(d8_model(v), v).second);  // model is a bijection
  }
  for (unsigned long long i = 0; i < 8; i++)
    for (unsigned long long j = 0; j < 8; j++) {
      Element a = g->element_at(i), b = g->element_at(j);
      CHECK(d8_model(g->multiply(a, b)) == pcompose(d8_model(a), d8_model(b)));
    }
}

TEST_CASE("Q8 multiplication matches the quaternion table") {
  auto g = pgtest::make_group(pgtest::kQ8, "q8");
  std::set<Quat> values;
  for (unsigned long long r = 0; r < 8; r++)
    values.insert(q8_model(g->element_at(r)));
  CHECK(values.size() == 8);
  for (unsigned long long i = 0; i < 8; i++)
    for (unsigned long long j = 0; j < 8; j++) {
      Element a = g->element_at(i), b = g->element_at(j);
      CHECK(q8_model(g->multiply(a, b)) == qmul(q8_model(a), q8_model(b)));
    }
}

TEST_CASE("normalize examples") {
  auto g = pgtest::make_group(pgtest::kD8, "d8");
  Word w;  // g2 * g2
  w.factors = {Factor{1, 1}, Factor{1, 1}};
  CHECK(g->normalize(w) == elem({0, 0, 1}));
  Word v;  // g2 * g1
  v.factors = {Factor{1, 1}, Factor{0, 1}};
  CHECK(g->normalize(v) == elem({1, 1, 1}));
  CHECK(g->normalize(Word{}) == g->identity());
}

TEST_CASE("arithmetic examples on D8") {
  auto g = pgtest::make_group(pgtest::kD8, "d8");
  CHECK(g->multiply(elem({1, 0, 0}), elem({0, 1, 0})) == elem({1, 1, 0}));
  CHECK(g->inverse(elem({0, 1, 0})) == elem({0, 1, 1}));
  CHECK(g->commutator(elem({0, 1, 0}), elem({1, 0, 0})) == elem({0, 0, 1}));
  CHECK(g->conjugate(elem({0, 1, 0}), elem({1, 0, 0})) == elem({0, 1, 1}));
  CHECK(g->element_order(elem({0, 1, 0})) == 4);
  CHECK(g->element_order(g->identity()) == 1);
}

TEST_CASE("element order in Q8") {
  auto g = pgtest::make_group(pgtest::kQ8, "q8");
  CHECK(g->element_order(elem({1, 0, 0})) == 4);
  CHECK(g->element_order(elem({0, 0, 1})) == 2);
}

TEST_CASE("power handles negative exponents") {
  auto g = pgtest::make_group(pgtest::kD8, "d8");
  Element r = elem({0, 1, 0});
  CHECK(g->power(r, -1) == g->inverse(r));
  CHECK(g->power(r, 5) == r);
  CHECK(g->power(r, 0) == g->identity());
  CHECK(g->power(r, -3) == r);
}

TEST_CASE("consistency of the spec'd presentations") {
  for (const char* text : {pgtest::kD8, pgtest::kQ8, pgtest::kHuppert5,
                           pgtest::kExtra5}) {
    auto g = pgtest::make_group(text, "t");
    auto res = g->consistency_check();
    CHECK(res.ok);
  }
}

TEST_CASE("hand-corrupted tables yield a violation") {
  // elementary-abelian shell with a corrupted power and conjugation
  // table: g1^2 := g2 while [g2,g1] := g3, so g2 = g1^2 both commutes
  // and fails to commute with g1
  auto g = pgtest::make_group("prime 2\ngens 3\n", "bad");
  GroupContextTestAccess::corrupt_comm(*g, 1, 0, {Factor{2, 1}});
  GroupContextTestAccess::corrupt_power(*g, 0, {Factor{1, 1}});
  auto res = g->consistency_check();
  CHECK(!res.ok);
}

TEST_CASE("enumeration covers the group exactly once") {
  auto g = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  std::set<Element> all;
  for (unsigned long long r = 0; r < g->order(); r++) {
    Element a = g->element_at(r);
    CHECK(g->rank_of(a) == r);
    all.insert(a);
  }
  CHECK(all.size() == g->order());
}

TEST_CASE("group laws hold on sampled triples") {
  for (const char* text : {pgtest::kD8, pgtest::kQ8, pgtest::kHuppert5}) {
    auto g = pgtest::make_group(text, "t");
    const unsigned long long n = g->order();
    for (unsigned long long i = 0; i < n; i += 3)
      for (unsigned long long j = 0; j < n; j += 7) {
        Element a = g->element_at(i), b = g->element_at((i + j) % n);
        Element c = g->element_at(j);
        CHECK(g->multiply(g->multiply(a, b), c) ==
              g->multiply(a, g->multiply(b, c)));
        CHECK(g->inverse(g->multiply(a, b)) ==
              g->multiply(g->inverse(b), g->inverse(a)));
        CHECK(g->inverse(g->commutator(a, b)) == g->commutator(b, a));
        CHECK(g->multiply(a, g->inverse(a)) == g->identity());
      }
  }
}

TEST_CASE("element order divides p^n and is conjugation invariant") {
  auto g = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  for (unsigned long long r = 0; r < g->order(); r += 11) {
    Element a = g->element_at(r);
    unsigned long long o = g->element_order(a);
    CHECK(g->order() % o == 0);
    for (unsigned long long s = 0; s < g->order(); s += 17)
      CHECK(g->element_order(g->conjugate(a, g->element_at(s))) == o);
  }
}

TEST_CASE("validate rejects foreign exponent vectors") {
  auto g = pgtest::make_group(pgtest::kD8, "d8");
  CHECK_THROWS_AS(g->validate(elem({0, 0, 4})), ContextMismatch);
  CHECK_THROWS_AS(g->validate(elem({0, 0, 0, 1})), ContextMismatch);
  CHECK_NOTHROW(g->validate(elem({1, 1, 1})));
}

TEST_CASE("cayley table agrees with collection") {
  auto g = pgtest::make_group(pgtest::kQ8, "q8");
  auto t = g->cayley();
  for (unsigned a = 0; a < 8; a++)
    for (unsigned b = 0; b < 8; b++)
      CHECK(g->element_at(t->at(a, b)) ==
            g->multiply(g->element_at(a), g->element_at(b)));
  for (unsigned a = 0; a < 8; a++)
    CHECK(g->element_at(t->inv[a]) == g->inverse(g->element_at(a)));
}

TEST_SUITE_END();
