#include <gtest/gtest.h>

#include <set>

#include "iwadec/groups.hpp"

using namespace iwadec;

namespace {

PresentedGroup heisenberg() { return semidirect_abelian({3, 3}, {3}, {{{1, 1}, {0, 1}}}); }
PresentedGroup metacyclic27() { return semidirect_abelian({9}, {3}, {{{4}}}); }
PresentedGroup s3() { return semidirect_abelian({3}, {2}, {{{2}}}); }

// Oracle: every subgroup here is generated by two elements; orbit-count the
// set of all such closures under conjugation.
std::pair<std::size_t, std::size_t> brute_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> all;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b) all.insert(g.closure({a, b}));
  std::set<Subgroup> seen;
  std::size_t classes = 0;
  for (const auto& s : all) {
    if (seen.count(s)) continue;
    ++classes;
    for (int x = 0; x < g.order(); ++x) seen.insert(g.conjugate(x, s));
  }
  return {all.size(), classes};
}

std::multiset<std::size_t> class_sizes(const FiniteGroup& g) {
  std::multiset<std::size_t> r;
  for (const auto& c : conjugacy_classes(g)) r.insert(c.size());
  return r;
}

}  // namespace

TEST(Groups, TableValidation) {
  EXPECT_THROW(FiniteGroup({0, 1, 1, 1}, 2), MalformedInput);  // no inverse for 1
  EXPECT_THROW(FiniteGroup({0, 1, 2}, 2), MalformedInput);
  // a Latin square that is not associative: x*y = (-x - y) mod 3 has no identity
  EXPECT_THROW(FiniteGroup({0, 2, 1, 2, 1, 0, 1, 0, 2}, 3), MalformedInput);
  FiniteGroup z3({0, 1, 2, 1, 2, 0, 2, 0, 1}, 3);
  EXPECT_EQ(z3.exponent(), 3);
  EXPECT_TRUE(z3.is_abelian());
}

TEST(Groups, AutomorphismValidation) {
  auto p = semidirect_abelian({9}, {}, {});
  EXPECT_NO_THROW(aut_from_generator_images(p, {p.element({4})}));
  EXPECT_THROW(aut_from_generator_images(p, {p.element({3})}), MalformedInput);
  // order of h -> h^2 on Z/9 is 6, not a power of 3
  EXPECT_THROW(GSpec(p.group, aut_from_generator_images(p, {p.element({2})}), 3), MalformedInput);
  EXPECT_THROW(GSpec(p.group, aut_from_generator_images(p, {p.element({4})}), 3, 2), MalformedInput);
  EXPECT_THROW(GSpec(p.group, GroupAut::identity(p.group), 4), MalformedInput);
}

TEST(Groups, TruncationProducts) {
  auto p = semidirect_abelian({9}, {}, {});
  GSpec spec(p.group, aut_from_generator_images(p, {p.element({4})}), 3);
  EXPECT_EQ(spec.m, 1);
  Truncation tr = truncate(spec);
  EXPECT_EQ(tr.group.order(), 27);
  int h = p.element({1});
  int hg = tr.encode(h, 1);
  int sq = tr.group.mul(hg, hg);
  EXPECT_EQ(tr.h_of(sq), p.element({5}));
  EXPECT_EQ(tr.i_of(sq), 2);
  EXPECT_FALSE(tr.wraps(hg, hg));
  EXPECT_TRUE(tr.wraps(sq, hg));
  EXPECT_FALSE(tr.group.is_abelian());
  EXPECT_EQ(class_sizes(tr.group), class_sizes(metacyclic27().group));
}

TEST(Groups, ConjugacyClassesOfOrder27) {
  auto h = heisenberg().group;
  auto c = conjugacy_classes(h);
  EXPECT_EQ(c.size(), 11u);
  EXPECT_EQ(c.front(), std::vector<int>{h.identity()});
  std::multiset<std::size_t> expect{1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3};
  EXPECT_EQ(class_sizes(h), expect);
  EXPECT_EQ(h.exponent(), 3);
  auto m = metacyclic27().group;
  EXPECT_EQ(conjugacy_classes(m).size(), 11u);
  EXPECT_EQ(m.exponent(), 9);
}

TEST(Groups, SubgroupClassesAgainstBruteForce) {
  auto z9 = semidirect_abelian({9}, {}, {}).group;
  EXPECT_EQ(subgroups_up_to_conjugacy(z9).size(), 3u);
  EXPECT_EQ(subgroups_up_to_conjugacy(s3().group).size(), 4u);
  auto h = heisenberg().group;
  auto subs = subgroups_up_to_conjugacy(h);
  auto [total, classes] = brute_subgroups(h);
  EXPECT_EQ(total, 19u);
  EXPECT_EQ(classes, 11u);
  EXPECT_EQ(subs.size(), classes);
  auto m = metacyclic27().group;
  EXPECT_EQ(subgroups_up_to_conjugacy(m).size(), brute_subgroups(m).second);
  EXPECT_THROW(subgroups_up_to_conjugacy(h, 20), ResourceLimit);
}

TEST(Groups, SylowSubgroups) {
  auto g = semidirect_abelian({7}, {3}, {{{2}}}).group;
  EXPECT_EQ(sylow_subgroup(g, 3).size(), 3u);
  EXPECT_EQ(sylow_subgroup(g, 7).size(), 7u);
  EXPECT_EQ(sylow_subgroup(g, 5).size(), 1u);
}

TEST(Groups, ElementaryDetection) {
  auto p = semidirect_abelian({7}, {}, {});
  GSpec spec(p.group, aut_from_generator_images(p, {p.element({2})}), 3);
  auto d = is_q_elementary(spec, 3);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->s_order, 7);
  EXPECT_EQ(d->complement.size(), 3u);
  ASSERT_EQ(d->action_exponents.size(), 1u);
  EXPECT_EQ(d->action_exponents[0], 2);

  // S3 with gamma acting by an inner automorphism of order 3: 2-elementary
  auto q = s3();
  int c = q.element({1, 0});
  std::vector<int> img(6);
  for (int x = 0; x < 6; ++x) img[static_cast<std::size_t>(x)] = q.group.conj(c, x);
  GSpec sp(q.group, GroupAut(q.group, img), 3);
  auto e = is_q_elementary(sp, 2);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->s_order, 3);
  EXPECT_EQ(e->complement.size(), 2u);
  EXPECT_EQ(e->action_exponents, std::vector<long>{2});
  EXPECT_FALSE(is_q_elementary(sp, 3).has_value());
}

TEST(Groups, SubgroupSpecConversion) {
  auto p = semidirect_abelian({7}, {}, {});
  GSpec spec(p.group, aut_from_generator_images(p, {p.element({2})}), 3);
  Truncation tr = truncate(spec);
  Subgroup gamma = tr.group.closure({tr.encode(p.group.identity(), 1)});
  auto ss = subgroup_spec(spec, tr, gamma);
  EXPECT_EQ(ss.spec.H->order(), 1);
  EXPECT_EQ(ss.spec.m, 0);
  EXPECT_EQ(ss.gamma_exponent, 1);
  auto hs = subgroup_spec(spec, tr, tr.h_part());
  EXPECT_EQ(hs.spec.H->order(), 7);
  EXPECT_EQ(hs.spec.m, 0);
  auto all = subgroup_spec(spec, tr, tr.group.closure({0, 1, tr.encode(0, 1)}));
  EXPECT_EQ(all.spec.H->order(), 7);
  EXPECT_EQ(all.spec.m, 1);
}
