#include <gtest/gtest.h>

#include <chrono>

#include "iwadec/sk1.hpp"

using namespace iwadec;

namespace {

GSpec cyclic_twist(long n, long k, long l) {
  auto p = semidirect_abelian({n}, {}, {});
  return GSpec(p.group, aut_from_generator_images(p, {p.element({k})}), l);
}

GSpec heisenberg_trivial() {
  auto p = semidirect_abelian({3, 3}, {3}, {{{1, 1}, {0, 1}}});
  return GSpec(p.group, GroupAut::identity(p.group), 3);
}

GSpec transvection() {
  auto p = semidirect_abelian({3, 3}, {}, {});
  return GSpec(p.group, aut_from_generator_images(p, {p.element({1, 0}), p.element({1, 1})}), 3);
}

GSpec wrapped_transvection() {
  auto p = semidirect_abelian({7, 3, 3}, {}, {});
  return GSpec(p.group, aut_from_generator_images(p, {p.element({2, 0, 0}), p.element({0, 1, 0}), p.element({0, 1, 1})}), 3);
}

GSpec wrapped_metacyclic() {
  auto p = semidirect_abelian({7}, {9, 3}, {{{1}}, {{2}}});
  return GSpec(p.group, aut_from_generator_images(p, {p.element({1, 0, 0}), p.element({0, 4, 0}), p.element({0, 0, 1})}), 3);
}

GSpec general108() {
  auto p = semidirect_abelian({9, 2, 2}, {}, {});
  return GSpec(p.group, aut_from_generator_images(p, {p.element({1, 0, 0}), p.element({0, 0, 1}), p.element({0, 1, 1})}), 3);
}

GSpec s3_inner() {
  auto p = semidirect_abelian({3}, {2}, {{{2}}});
  return GSpec(p.group, GroupAut::identity(p.group), 3);
}

template <typename F>
auto timed(const char* name, F f) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = f();
  std::cerr << name << ": " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  return r;
}

}  // namespace

TEST(Sk1, Classification) {
  EXPECT_EQ(classify(heisenberg_trivial()).kind, GroupClass::DirectProduct);
  EXPECT_EQ(classify(cyclic_twist(9, 4, 3)).kind, GroupClass::ProLAbelianIndexL);
  EXPECT_EQ(classify(cyclic_twist(7, 2, 3)).kind, GroupClass::HPrimeToL);
  auto w = classify(wrapped_transvection());
  EXPECT_EQ(w.kind, GroupClass::QElementary);
  EXPECT_EQ(w.q, 3);
  EXPECT_EQ(classify(general108()).kind, GroupClass::General);
}

TEST(Sk1, KnownCases) {
  auto v = verdict(cyclic_twist(7, 2, 3));
  EXPECT_EQ(v.status, Status::Trivial);
  EXPECT_EQ(v.rule, "KnownCases-iii");
  EXPECT_TRUE(v.obligations.empty());
  v = verdict(cyclic_twist(9, 4, 3));
  EXPECT_EQ(v.rule, "KnownCases-ii");
  v = verdict(heisenberg_trivial());
  EXPECT_EQ(v.rule, "KnownCases-i");
  EXPECT_FALSE(v.footnote);
  v = verdict(s3_inner());
  EXPECT_EQ(v.rule, "KnownCases-i");
  EXPECT_TRUE(v.footnote);
  v = verdict(transvection());
  EXPECT_EQ(v.rule, "KnownCases-ii");
}

TEST(Sk1, ElementaryVerdicts) {
  auto v = timed("wrapped transvection", [] { return verdict(wrapped_transvection()); });
  EXPECT_EQ(v.status, Status::Trivial);
  EXPECT_EQ(v.rule, "Thm-sk1");
  auto m = timed("wrapped metacyclic", [] { return verdict(wrapped_metacyclic()); });
  EXPECT_EQ(m.status, Status::ConditionalOnProL);
  EXPECT_EQ(m.rule, "Thm-sk1");
  ASSERT_EQ(m.obligations.size(), 1u);
  bool seven = false;
  for (const auto& o : m.obligations) {
    EXPECT_TRUE(o.u.h_is_l_group());
    if (o.conductor == 7) {
      seven = true;
      EXPECT_EQ(o.u_fin_order, 27);
    }
  }
  EXPECT_TRUE(seven);
  ASSERT_EQ(m.notes.size(), 1u);
  EXPECT_NE(m.notes[0].find("KnownCases-ii"), std::string::npos);
}

TEST(Sk1, Reduction) {
  auto v = timed("general108", [] { return verdict(general108()); });
  EXPECT_EQ(v.rule, "RW-reduction");
  EXPECT_NE(v.status, Status::Unknown);
  EXPECT_FALSE(v.reduction_tree.empty());
  for (const auto& c : v.reduction_tree) EXPECT_NE(c.rule, "RW-reduction");
  auto u = verdict(general108(), 50);
  EXPECT_EQ(u.status, Status::Unknown);
}
