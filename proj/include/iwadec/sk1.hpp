#pragma once

// Triviality verdicts for SK_1 of the Iwasawa algebra, and the reduction of the
// general case to pro-l obligations.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "iwadec/groups.hpp"
#include "iwadec/wedderburn.hpp"

namespace iwadec {

enum class GroupClass { DirectProduct, HPrimeToL, ProLAbelianIndexL, QElementary, General };

inline const char* to_string(GroupClass c) {
  switch (c) {
    case GroupClass::DirectProduct: return "DirectProduct";
    case GroupClass::HPrimeToL: return "HPrimeToL";
    case GroupClass::ProLAbelianIndexL: return "ProLAbelianIndexL";
    case GroupClass::QElementary: return "QElementary";
    case GroupClass::General: return "General";
  }
  return "?";
}

struct Classification {
  GroupClass kind = GroupClass::General;
  long q = 0;                          // for QElementary
  std::optional<ElementaryData> data;  // for QElementary
  std::vector<std::string> notes;
};

inline constexpr std::size_t kDefaultCap = 200;

/// Abelian subgroup of index l in G_fin, when H is an l-group.
inline bool has_abelian_index_l(const FiniteGroup& g, long l, std::size_t cap) {
  for (const auto& s : subgroups_up_to_conjugacy(g, cap)) {
    if (static_cast<long>(s.size()) * l != g.order()) continue;
    bool ab = true;
    for (std::size_t i = 0; i < s.size() && ab; ++i)
      for (std::size_t j = i + 1; j < s.size() && ab; ++j) ab = g.mul(s[i], s[j]) == g.mul(s[j], s[i]);
    if (ab) return true;
  }
  return false;
}

inline Classification classify(const GSpec& spec, std::size_t cap = kDefaultCap, long level = -1) {
  Classification c;
  if (spec.alpha.is_identity()) {
    c.kind = GroupClass::DirectProduct;
    return c;
  }
  if (spec.h_prime_to_l()) {
    c.kind = GroupClass::HPrimeToL;
    return c;
  }
  const Truncation tr = truncate(spec, level);
  if (spec.h_is_l_group()) {
    try {
      if (has_abelian_index_l(tr.group, spec.l, cap)) {
        c.kind = GroupClass::ProLAbelianIndexL;
        return c;
      }
    } catch (const ResourceLimit& e) {
      c.notes.push_back(std::string("abelian index-l search skipped: ") + e.what());
    }
  }
  for (long q : nt::prime_divisors(tr.group.order())) {
    if (q == spec.l) continue;
    if (auto d = is_q_elementary(spec, q)) {
      c.kind = GroupClass::QElementary;
      c.q = q;
      c.data = std::move(d);
      return c;
    }
  }
  if (auto d = is_q_elementary(spec, spec.l)) {
    c.kind = GroupClass::QElementary;
    c.q = spec.l;
    c.data = std::move(d);
    return c;
  }
  c.kind = GroupClass::General;
  return c;
}

enum class Status { Trivial, ConditionalOnProL, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Trivial: return "Trivial";
    case Status::ConditionalOnProL: return "ConditionalOnProL";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

/// SK_1(Q_l(zeta) (x) Q U) = 1 is still needed for this pair.
struct Obligation {
  long conductor = 1;  // order of zeta_i
  GSpec u;             // pro-l
  long u_fin_order = 1;
};

struct Verdict {
  Status status = Status::Unknown;
  std::string rule;  // KnownCases-i/ii/iii, Thm-sk2, Thm-sk1, RW-reduction
  bool footnote = false;  // direct product with H not an l-group
  GroupClass group_class = GroupClass::General;
  long q = 0;
  long quotient_level = 0;
  long fin_order = 0;
  std::vector<Obligation> obligations;
  std::vector<Verdict> reduction_tree;
  std::string subgroup;  // for nodes of a reduction tree
  std::vector<std::string> notes;
};

namespace detail {

/// Isomorphism-invariant fingerprint used to merge repeated obligations.
inline std::vector<long> obligation_key(const Obligation& o) {
  const Truncation tr = truncate(o.u);
  std::vector<long> k{o.conductor, o.u.H->order(), o.u.m};
  std::vector<long> orders;
  for (const auto& cl : conjugacy_classes(tr.group)) orders.push_back(static_cast<long>(cl.size()) * 1000 + tr.group.element_order(cl[0]));
  std::sort(orders.begin(), orders.end());
  k.insert(k.end(), orders.begin(), orders.end());
  return k;
}

inline void merge_obligations(std::vector<Obligation>& into, const std::vector<Obligation>& from) {
  for (const auto& o : from) {
    auto key = obligation_key(o);
    bool dup = false;
    for (const auto& p : into) dup = dup || obligation_key(p) == key;
    if (!dup) into.push_back(o);
  }
}

inline long level_of(const Truncation& tr, long l) {
  long k = 0;
  for (long p = 1; p < tr.gamma_order; p *= l) ++k;
  return k;
}

}  // namespace detail

inline Verdict verdict(const GSpec& spec, std::size_t cap = kDefaultCap, long level = -1) {
  Verdict v;
  const Truncation tr = truncate(spec, level);
  v.quotient_level = detail::level_of(tr, spec.l);
  v.fin_order = tr.group.order();
  const Classification c = classify(spec, cap, level);
  v.group_class = c.kind;
  v.q = c.q;
  v.notes = c.notes;
  switch (c.kind) {
    case GroupClass::DirectProduct:
      v.status = Status::Trivial;
      v.rule = "KnownCases-i";
      v.footnote = !spec.h_is_l_group();
      return v;
    case GroupClass::HPrimeToL:
      v.status = Status::Trivial;
      v.rule = "KnownCases-iii";
      return v;
    case GroupClass::ProLAbelianIndexL:
      v.status = Status::Trivial;
      v.rule = "KnownCases-ii";
      return v;
    case GroupClass::QElementary:
      if (c.q != spec.l) {
        v.status = Status::Trivial;
        v.rule = "Thm-sk2";
        return v;
      }
      {
        const Truncation t0 = truncate(spec);
        v.rule = "Thm-sk1";
        v.status = Status::Trivial;
        for (const auto& part : elementary_decomposition(spec, t0, *c.data)) {
          bool fields = true;
          for (const auto& b : part.star.base) fields = fields && b.report.schur_index == 1;
          if (fields) continue;
          // conductor 1: the obligation is SK_1(Q U_i) itself
          if (part.zeta_order == 1) {
            Verdict u = verdict(part.u_spec.spec, cap);
            if (u.status == Status::Trivial) {
              v.notes.push_back("conductor-1 obligation discharged by " + u.rule + " on U_i");
              continue;
            }
          }
          v.status = Status::ConditionalOnProL;
          Obligation o{part.zeta_order, part.u_spec.spec, static_cast<long>(part.u_i.size())};
          detail::merge_obligations(v.obligations, {o});
        }
      }
      return v;
    case GroupClass::General:
      break;
  }
  v.rule = "RW-reduction";
  std::vector<Subgroup> subs;
  try {
    subs = subgroups_up_to_conjugacy(tr.group, cap);
  } catch (const ResourceLimit& e) {
    v.status = Status::Unknown;
    v.notes.push_back(std::string("resource: ") + e.what());
    return v;
  }
  v.status = Status::Trivial;
  for (const auto& b : subs) {
    if (static_cast<long>(b.size()) == tr.group.order()) continue;
    const SubgroupSpec ss = subgroup_spec(spec, tr, b);
    std::optional<long> q;
    for (long p : nt::prime_divisors(static_cast<long>(b.size())))
      if (!q && p != spec.l && is_q_elementary(ss.spec, p)) q = p;
    if (!q && is_q_elementary(ss.spec, spec.l)) q = spec.l;
    if (!q) continue;
    Verdict child = verdict(ss.spec, cap);
    child.subgroup = "order " + std::to_string(b.size()) + ", q = " + std::to_string(*q);
    if (child.status == Status::Unknown) v.status = Status::Unknown;
    if (child.status == Status::ConditionalOnProL) {
      if (v.status == Status::Trivial) v.status = Status::ConditionalOnProL;
      detail::merge_obligations(v.obligations, child.obligations);
    }
    v.reduction_tree.push_back(std::move(child));
  }
  return v;
}

}  // namespace iwadec
