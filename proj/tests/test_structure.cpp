#include <algorithm>
#include <set>

#include "doctest.h"
#include "pg/structure.hpp"
#include "test_util.hpp"

using namespace pg;
using pgtest::elem;

TEST_SUITE_BEGIN("structure");

TEST_CASE("closure examples") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  CHECK(closure(*d8, {elem({0, 0, 1})}).size() == 2);
  CHECK(closure(*d8, {d8->generator(0), d8->generator(1)}).size() == 8);

  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  Subgroup bc = closure(*h, {h->generator(2), h->generator(3)});
  CHECK(bc.size() == 25);
  CHECK(bc.is_elementary_abelian());
}

TEST_CASE("centralizer and center examples") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  CHECK(centralizer(*d8, {d8->generator(1)}).size() == 4);
  Subgroup z = center(*d8);
  CHECK(z.size() == 2);
  CHECK(z.contains(elem({0, 0, 1})));

  auto ea = pgtest::make_group("prime 5\ngens 2\n", "ea25");
  CHECK(center(*ea).size() == 25);
}

TEST_CASE("upper central series sizes") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  auto zs = upper_central_series(*d8);
  std::vector<unsigned long long> sizes;
  for (auto& s : zs) sizes.push_back(s.size());
  CHECK(sizes == std::vector<unsigned long long>{1, 2, 8});

  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  auto zh = upper_central_series(*h);
  sizes.clear();
  for (auto& s : zh) sizes.push_back(s.size());
  CHECK(sizes == std::vector<unsigned long long>{1, 5, 25, 625});

  auto ea = pgtest::make_group("prime 2\ngens 3\n", "ea8");
  CHECK(upper_central_series(*ea).size() == 2);
}

TEST_CASE("lower central series sizes") {
  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  auto gs = lower_central_series(*h);
  std::vector<unsigned long long> sizes;
  for (auto& s : gs) sizes.push_back(s.size());
  CHECK(sizes == std::vector<unsigned long long>{625, 25, 5, 1});

  auto q8 = pgtest::make_group(pgtest::kQ8, "q8");
  auto gq = lower_central_series(*q8);
  sizes.clear();
  for (auto& s : gq) sizes.push_back(s.size());
  CHECK(sizes == std::vector<unsigned long long>{8, 2, 1});

  auto ea = pgtest::make_group("prime 5\ngens 2\n", "ea25");
  CHECK(lower_central_series(*ea).size() == 2);
}

TEST_CASE("series report agreement") {
  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  auto rep = series_report(*h);
  CHECK(rep.nilpotency_class == 3);
  CHECK(rep.coclass == 1);
  CHECK(rep.d == 2);
  CHECK(rep.exponent == 5);
  CHECK(rep.order_log == 4);
}

TEST_CASE("frattini, agemo, omega1") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  Subgroup phi = frattini(*d8);
  CHECK(phi.size() == 2);
  CHECK(phi.contains(elem({0, 0, 1})));
  CHECK(minimal_generators(*d8) == 2);

  auto x5 = pgtest::make_group(pgtest::kExtra5, "x125");
  CHECK(agemo(*x5).size() == 1);

  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  Subgroup bc = closure(*h, {h->generator(2), h->generator(3)});
  CHECK(omega1(bc) == bc);
}

TEST_CASE("quotient examples") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  QuotientContext q(*d8, closure(*d8, {elem({0, 0, 1})}));
  CHECK(q.size() == 4);
  CHECK(q.group().order() == 4);
  auto flags = classify(q.group());
  CHECK(flags.is_elementary_abelian);

  QuotientContext full(*d8, Subgroup::whole(*d8));
  CHECK(full.size() == 1);

  CHECK_THROWS_AS(QuotientContext(*d8, closure(*d8, {elem({1, 0, 0})})),
                  NotNormal);
}

TEST_CASE("quotient canonical representatives") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  QuotientContext q(*d8, closure(*d8, {elem({0, 0, 1})}));
  CHECK(q.size() * q.normal_subgroup().size() == d8->order());
  for (unsigned long long r = 0; r < d8->order(); r++) {
    Element x = d8->element_at(r);
    Element c = q.canonical_rep(x);
    CHECK(q.canonical_rep(c) == c);  // idempotent
    CHECK(c <= x);
    CHECK(q.canonical_rep(q.lift(q.project(x))) == c);
  }
  // quotient arithmetic projects faithfully
  for (unsigned long long r = 0; r < d8->order(); r += 2)
    for (unsigned long long s = 0; s < d8->order(); s += 3) {
      Element a = d8->element_at(r), b = d8->element_at(s);
      CHECK(q.project(d8->multiply(a, b)) ==
            q.group().multiply(q.project(a), q.project(b)));
    }
}

TEST_CASE("derived pcp of a quotient is consistent") {
  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  QuotientContext q(*h, closure(*h, {h->generator(3)}));
  CHECK(q.size() == 125);
  CHECK(q.group().consistency_check().ok);
  auto flags = classify(q.group());
  CHECK(flags.is_extraspecial);
  CHECK(flags.exponent == 5);
}

TEST_CASE("classification flags") {
  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  auto fl = classify(*h);
  CHECK(fl.regular == TriState::holds);
  CHECK(!fl.is_powerful);
  CHECK(fl.exponent == 5);
  CHECK(regular_pairwise_check(*h));  // confirms the class < p shortcut

  auto q8 = pgtest::make_group(pgtest::kQ8, "q8");
  CHECK(classify(*q8).maximal_class_2_type == MaximalClass2Type::quaternion);

  auto x5 = pgtest::make_group(pgtest::kExtra5, "x125");
  auto fx = classify(*x5);
  CHECK(fx.is_extraspecial);
  CHECK(fx.regular == TriState::holds);
}

TEST_CASE("strongly Frattinian predicates are both computed") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  auto fl = classify(*d8);
  // Phi(D8) = Z(D8) has order 2: C_G(Phi) = G, Z(Phi) = Phi, so s3 fails
  CHECK(!fl.strongly_frattinian_s3);
  CHECK(!fl.deaconescu_condition_s1);
}

TEST_CASE("two-step centralizers") {
  auto d16 = pgtest::make_group(
      "prime 2\ngens 4\npower 2 = 3\npower 3 = 4\ncomm 2 1 = 3 4\n"
      "comm 3 1 = 4\n",
      "d16");
  CHECK(d16->consistency_check().ok);
  auto cents = two_step_centralizers(*d16);
  REQUIRE(cents.size() == 1);
  // the cyclic maximal subgroup <r>
  CHECK(cents[0].size() == 8);
  CHECK(cents[0].is_cyclic());
  auto u = find_uniform(*d16);
  REQUIRE(u.has_value());
  CHECK(*u == elem({1, 0, 0, 0}));

  auto h = pgtest::make_group(pgtest::kHuppert5, "huppert5");
  auto ch = two_step_centralizers(*h);
  REQUIRE(ch.size() == 1);
  CHECK(ch[0] == closure(*h, {h->generator(1), h->generator(2), h->generator(3)}));
  CHECK(*find_uniform(*h) == elem({1, 0, 0, 0}));

  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  CHECK(two_step_centralizers(*d8).empty());
  CHECK(*find_uniform(*d8) == elem({0, 1, 0}));  // first non-central

  auto ea = pgtest::make_group("prime 2\ngens 3\n", "ea8");
  CHECK_THROWS_AS(two_step_centralizers(*ea), NotMaximalClass);
}

TEST_CASE("commutator subgroup filtration") {
  // [gamma_i, gamma_j] <= gamma_(i+j), checked on groups <= 2^8
  for (const char* text : {pgtest::kD8, pgtest::kQ8, pgtest::kHuppert5}) {
    auto g = pgtest::make_group(text, "t");
    if (g->order() > 256) continue;
    auto lower = lower_central_series(*g);
    for (unsigned i = 1; i + 1 <= lower.size(); i++)
      for (unsigned j = 1; j + 1 <= lower.size(); j++) {
        Subgroup cij = commutator_subgroup(lower_central_term(lower, i),
                                           lower_central_term(lower, j));
        CHECK(lower_central_term(lower, i + j).contains(cij));
      }
  }
}

TEST_CASE("frattini equals the intersection of maximal subgroups") {
  // cross-validates the agemo * gamma_2 formula on groups <= 2^6
  for (const char* text : {pgtest::kD8, pgtest::kQ8}) {
    auto g = pgtest::make_group(text, "t");
    Subgroup phi = frattini(*g);
    QuotientContext q(*g, phi);
    const GroupContext& v = q.group();  // elementary abelian
    // hyperplanes of G/Phi pull back to the maximal subgroups
    std::vector<Element> meet = Subgroup::whole(*g).elements();
    unsigned long long count = 0;
    for (unsigned long long r = 1; r < v.order(); r++) {
      Element w = v.element_at(r);  // normal vector read as a subgroup basis
      // subgroup of the quotient of index p containing all x with
      // sum w_i x_i = 0 (mod p)
      std::vector<Element> kernel;
      for (unsigned long long s = 0; s < v.order(); s++) {
        Element x = v.element_at(s);
        unsigned long long dot = 0;
        for (unsigned k = 0; k < v.ngens(); k++) dot += (unsigned long long)w.e[k] * x.e[k];
        if (dot % v.prime() == 0) kernel.push_back(x);
      }
      if (kernel.size() * v.prime() != v.order()) continue;
      count++;
      std::vector<Element> preimage;
      for (const Element& x : kernel)
        for (const Element& n : phi.elements())
          preimage.push_back(g->multiply(q.lift(x), n));
      Subgroup maximal = Subgroup::from_elements(*g, preimage);
      std::vector<Element> inter;
      std::set_intersection(meet.begin(), meet.end(),
                            maximal.elements().begin(), maximal.elements().end(),
                            std::back_inserter(inter));
      meet = std::move(inter);
    }
    CHECK(count > 0);
    CHECK(meet == phi.elements());
  }
}

TEST_CASE("isomorphism backtracking recognizes D8 vs Q8") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  auto q8 = pgtest::make_group(pgtest::kQ8, "q8");
  auto d8b = pgtest::make_group("prime 2\ngens 3\npower 1 = 3\ncomm 2 1 = 3\n",
                                "d8b");  // another D8 presentation
  CHECK(isomorphic(*d8, *d8));
  CHECK(!isomorphic(*d8, *q8));
  CHECK(isomorphic(*d8, *d8b));
  CHECK(isomorphic(*d8b, *d8));
}

TEST_CASE("subgroup lattice walk") {
  auto d8 = pgtest::make_group(pgtest::kD8, "d8");
  CHECK(all_subgroups_of_order(*d8, 2).size() == 5);
  CHECK(all_subgroups_of_order(*d8, 4).size() == 3);
  CHECK(all_subgroups_of_order(*d8, 8).size() == 1);

  auto q8 = pgtest::make_group(pgtest::kQ8, "q8");
  CHECK(all_subgroups_of_order(*q8, 2).size() == 1);
  CHECK(all_subgroups_of_order(*q8, 4).size() == 3);
}

TEST_SUITE_END();
