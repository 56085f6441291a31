#pragma once

// Finite groups as closed multiplication tables, the truncation
// G_fin = H x| Z/l^m of G = H x| Gamma, and the subgroup machinery the
// elementary reductions need.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "iwadec/cyclo.hpp"
#include "iwadec/errors.hpp"
#include "iwadec/numtheory.hpp"

namespace iwadec {

using Subgroup = std::vector<int>;  // sorted element indices

class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Validates closure, identity, inverses and associativity (full check up to
  /// 200 elements, 10 n random triples above).
  explicit FiniteGroup(std::vector<int> table, std::size_t n) : n_(static_cast<int>(n)), mul_(std::move(table)) {
    if (n == 0 || mul_.size() != n * n) throw MalformedInput("multiplication table must be n x n with n > 0");
    for (int x : mul_)
      if (x < 0 || x >= n_) throw MalformedInput("multiplication table entry out of range");
    identity_ = -1;
    for (int e = 0; e < n_ && identity_ < 0; ++e) {
      bool ok = true;
      for (int g = 0; g < n_ && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw MalformedInput("multiplication table has no identity");
    inv_.assign(n, -1);
    for (int g = 0; g < n_; ++g) {
      for (int h = 0; h < n_; ++h)
        if (mul(g, h) == identity_ && mul(h, g) == identity_) {
          inv_[static_cast<std::size_t>(g)] = h;
          break;
        }
      if (inv_[static_cast<std::size_t>(g)] < 0) throw MalformedInput("element without inverse");
    }
    auto check = [&](int a, int b, int c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw MalformedInput("multiplication table is not associative");
    };
    if (n_ <= 200) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (int c = 0; c < n_; ++c) check(a, b, c);
    } else {
      std::mt19937 rng(12345);
      std::uniform_int_distribution<int> d(0, n_ - 1);
      for (int t = 0; t < 10 * n_; ++t) check(d(rng), d(rng), d(rng));
    }
  }

  int order() const { return n_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  /// g h g^-1
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }
  int pow(int g, long k) const {
    long o = element_order(g);
    k = nt::mod(k, o);
    int r = identity_;
    for (long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }
  long element_order(int g) const {
    long k = 1;
    for (int x = g; x != identity_; x = mul(x, g)) ++k;
    return k;
  }
  long exponent() const {
    long e = 1;
    for (int g = 0; g < n_; ++g) e = std::lcm(e, element_order(g));
    return e;
  }
  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }
  const std::vector<int>& table() const { return mul_; }

  /// Smallest subgroup containing the given elements.
  Subgroup closure(const std::vector<int>& gens) const {
    std::vector<char> in(static_cast<std::size_t>(n_), 0);
    std::vector<int> elems{identity_};
    in[static_cast<std::size_t>(identity_)] = 1;
    std::vector<int> g2;
    for (int g : gens)
      if (g != identity_) g2.push_back(g);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int g : g2) {
        int y = mul(elems[i], g);
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  bool is_normal(const Subgroup& s) const {
    for (int g = 0; g < n_; ++g)
      for (int h : s)
        if (!std::binary_search(s.begin(), s.end(), conj(g, h))) return false;
    return true;
  }

  Subgroup conjugate(int g, const Subgroup& s) const {
    Subgroup r;
    r.reserve(s.size());
    for (int h : s) r.push_back(conj(g, h));
    std::sort(r.begin(), r.end());
    return r;
  }

  /// Restriction of the table to a subgroup, elements renumbered in the order given.
  FiniteGroup restricted(const Subgroup& s) const {
    std::map<int, int> idx;
    for (std::size_t i = 0; i < s.size(); ++i) idx[s[i]] = static_cast<int>(i);
    std::vector<int> t(s.size() * s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto it = idx.find(mul(s[i], s[j]));
        if (it == idx.end()) throw MalformedInput("restricted: set is not closed under multiplication");
        t[i * s.size() + j] = it->second;
      }
    return FiniteGroup(std::move(t), s.size());
  }

 private:
  int n_ = 0;
  int identity_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

/// Automorphism of a finite group as a permutation of element indices.
class GroupAut {
 public:
  GroupAut() = default;
  GroupAut(const FiniteGroup& g, std::vector<int> images) : img_(std::move(images)) {
    const auto n = static_cast<std::size_t>(g.order());
    if (img_.size() != n) throw MalformedInput("automorphism image list has wrong length");
    std::vector<char> seen(n, 0);
    for (int x : img_) {
      if (x < 0 || static_cast<std::size_t>(x) >= n || seen[static_cast<std::size_t>(x)])
        throw MalformedInput("automorphism is not a bijection");
      seen[static_cast<std::size_t>(x)] = 1;
    }
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        if ((*this)(g.mul(a, b)) != g.mul((*this)(a), (*this)(b))) throw MalformedInput("automorphism is not multiplicative");
  }
  static GroupAut identity(const FiniteGroup& g) {
    std::vector<int> v(static_cast<std::size_t>(g.order()));
    std::iota(v.begin(), v.end(), 0);
    GroupAut a;
    a.img_ = std::move(v);
    return a;
  }

  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return img_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != static_cast<int>(i)) return false;
    return true;
  }
  /// (a * b)(x) = a(b(x))
  friend GroupAut operator*(const GroupAut& a, const GroupAut& b) {
    GroupAut r;
    r.img_.resize(a.img_.size());
    for (std::size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = a(b(static_cast<int>(i)));
    return r;
  }
  GroupAut power(long k) const {
    GroupAut r;
    r.img_.resize(img_.size());
    std::iota(r.img_.begin(), r.img_.end(), 0);
    for (long i = 0; i < k; ++i) r = *this * r;
    return r;
  }
  long order() const {
    long k = 1;
    for (GroupAut p = *this; !p.is_identity(); p = *this * p) ++k;
    return k;
  }
  friend bool operator==(const GroupAut&, const GroupAut&) = default;

 private:
  std::vector<int> img_;
};

/// G = H x| Gamma with gamma acting through alpha, truncated at Gamma_0 = Gamma^{l^m}.
struct GSpec {
  std::shared_ptr<const FiniteGroup> H;
  GroupAut alpha;
  long l = 3;
  long m = 0;
  std::vector<std::string> labels;

  GSpec() = default;
  /// m < 0 selects the minimal exponent.
  GSpec(FiniteGroup h, GroupAut a, long l_, long m_ = -1, std::vector<std::string> names = {})
      : H(std::make_shared<const FiniteGroup>(std::move(h))), alpha(std::move(a)), l(l_), labels(std::move(names)) {
    if (l == 2 || !nt::is_prime(l)) throw MalformedInput("l must be an odd prime");
    if (alpha.images().size() != static_cast<std::size_t>(H->order()))
      throw MalformedInput("automorphism does not match H");
    long ord = alpha.order();
    if (!nt::is_power_of(ord, l)) throw MalformedInput("automorphism order " + std::to_string(ord) + " is not a power of l");
    long mm = 0;
    for (long p = 1; p < ord; p *= l) ++mm;
    if (m_ >= 0 && m_ != mm)
      throw MalformedInput("m = " + std::to_string(m_) + " is not the minimal exponent " + std::to_string(mm));
    m = mm;
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(H->order()))
      throw MalformedInput("label count does not match |H|");
  }

  long gamma_order() const {
    long r = 1;
    for (long i = 0; i < m; ++i) r *= l;
    return r;
  }
  long fin_order() const { return H->order() * gamma_order(); }
  bool h_is_l_group() const { return nt::is_power_of(H->order(), l); }
  bool h_prime_to_l() const { return H->order() % l != 0; }
};

/// G_fin with the coordinates (h, i), index i * |H| + h.
struct Truncation {
  FiniteGroup group;
  int h_order = 1;
  long gamma_order = 1;

  int encode(int h, long i) const { return static_cast<int>(nt::mod(i, gamma_order)) * h_order + h; }
  int h_of(int g) const { return g % h_order; }
  long i_of(int g) const { return g / h_order; }
  /// True when (h,i)(h',i') passes gamma^{l^m}, i.e. picks up a factor T.
  bool wraps(int a, int b) const { return i_of(a) + i_of(b) >= gamma_order; }
  int gamma() const { return encode(group.identity() % h_order, gamma_order > 1 ? 1 : 0); }
  /// Elements of H inside G_fin.
  Subgroup h_part() const {
    Subgroup s(static_cast<std::size_t>(h_order));
    std::iota(s.begin(), s.end(), 0);
    return s;
  }
};

/// Level k >= m truncates at Gamma^{l^k} instead; k < 0 means k = m.
inline Truncation truncate(const GSpec& spec, long level = -1) {
  const FiniteGroup& H = *spec.H;
  const int n = H.order();
  if (level >= 0 && level < spec.m) throw MalformedInput("quotient level below the minimal exponent m");
  long L = spec.gamma_order();
  for (long k = spec.m; k < level; ++k) L *= spec.l;
  std::vector<GroupAut> apow;
  apow.push_back(GroupAut::identity(H));
  for (long i = 1; i < L; ++i) apow.push_back(spec.alpha * apow.back());
  const std::size_t N = static_cast<std::size_t>(n) * static_cast<std::size_t>(L);
  std::vector<int> t(N * N);
  for (long i = 0; i < L; ++i)
    for (int h = 0; h < n; ++h)
      for (long j = 0; j < L; ++j)
        for (int h2 = 0; h2 < n; ++h2) {
          int hh = H.mul(h, apow[static_cast<std::size_t>(i)](h2));
          long ii = (i + j) % L;
          t[static_cast<std::size_t>(i * n + h) * N + static_cast<std::size_t>(j * n + h2)] = static_cast<int>(ii * n + hh);
        }
  Truncation tr;
  tr.group = FiniteGroup(std::move(t), N);
  tr.h_order = n;
  tr.gamma_order = L;
  return tr;
}

inline FiniteGroup semidirect_truncation(const GSpec& spec) { return truncate(spec).group; }

/// Conjugacy classes sorted by their minimal element.
inline std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<int> cls(static_cast<std::size_t>(g.order()), -1);
  std::vector<std::vector<int>> out;
  // identity class first
  std::vector<int> order(static_cast<std::size_t>(g.order()));
  std::iota(order.begin(), order.end(), 0);
  for (int x : order) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    std::set<int> c;
    for (int y = 0; y < g.order(); ++y) c.insert(g.conj(y, x));
    for (int y : c) cls[static_cast<std::size_t>(y)] = static_cast<int>(out.size());
    out.emplace_back(c.begin(), c.end());
  }
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    bool ia = a.front() == g.identity() || a.size() == 1 && a[0] == g.identity();
    bool ib = b.front() == g.identity() || b.size() == 1 && b[0] == g.identity();
    if (ia != ib) return ia;
    return a.front() < b.front();
  });
  return out;
}

/// All subgroups up to conjugacy, built bottom-up from cyclic subgroups by joins.
inline std::vector<Subgroup> subgroups_up_to_conjugacy(const FiniteGroup& g, std::size_t cap = 200) {
  if (static_cast<std::size_t>(g.order()) > cap) throw ResourceLimit("subgroup enumeration: |G| = " + std::to_string(g.order()), cap);
  std::set<Subgroup> all;
  std::vector<Subgroup> cyclic;
  for (int x = 0; x < g.order(); ++x) {
    Subgroup c = g.closure({x});
    if (all.insert(c).second) cyclic.push_back(c);
  }
  std::vector<Subgroup> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& a : frontier)
      for (const auto& c : cyclic) {
        if (std::includes(a.begin(), a.end(), c.begin(), c.end())) continue;
        std::vector<int> gens = a;
        gens.push_back(c.size() > 1 ? c[1] : c[0]);
        // a cyclic subgroup is generated by any of its generators; use all elements to be safe
        gens.insert(gens.end(), c.begin(), c.end());
        Subgroup j = g.closure(gens);
        if (all.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  // canonical representative of each conjugacy class: lexicographically least conjugate
  std::set<Subgroup> reps;
  for (const auto& s : all) {
    Subgroup best = s;
    for (int x = 0; x < g.order(); ++x) best = std::min(best, g.conjugate(x, s));
    reps.insert(best);
  }
  std::vector<Subgroup> out(reps.begin(), reps.end());
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// A Sylow q-subgroup of the subgroup `within` (all of g when empty).
inline Subgroup sylow_subgroup(const FiniteGroup& g, long q, const Subgroup& within = {}) {
  Subgroup w = within;
  if (w.empty()) {
    w.resize(static_cast<std::size_t>(g.order()));
    std::iota(w.begin(), w.end(), 0);
  }
  const long target = nt::p_part(static_cast<long>(w.size()), q);
  Subgroup p{g.identity()};
  while (static_cast<long>(p.size()) < target) {
    bool grew = false;
    for (int x : w) {
      if (std::binary_search(p.begin(), p.end(), x)) continue;
      if (g.conjugate(x, p) != p) continue;
      long o = g.element_order(x);
      int y = g.pow(x, o / nt::p_part(o, q));
      if (std::binary_search(p.begin(), p.end(), y)) continue;
      std::vector<int> gens = p;
      gens.push_back(y);
      p = g.closure(gens);
      grew = true;
      break;
    }
    if (!grew) throw InternalConsistency("Sylow construction stalled");
  }
  return p;
}

/// Open subgroup of G realized as its own GSpec, with the embedding data.
struct SubgroupSpec {
  GSpec spec;
  std::vector<int> h_embedding;  // index in spec.H -> index in the ambient H
  int gamma_element = 0;         // ambient G_fin element (h0, r) used as the new gamma
  long gamma_exponent = 0;       // r; gamma_order of the ambient truncation when B lies in H
};

/// The open subgroup of G whose image in G_fin is B, presented as H' x| <h0 gamma^r>.
inline SubgroupSpec subgroup_spec(const GSpec& spec, const Truncation& tr, const Subgroup& b) {
  const FiniteGroup& G = tr.group;
  long level = 0;
  for (long p = 1; p < tr.gamma_order; p *= spec.l) ++level;
  Subgroup hpart;
  for (int x : b)
    if (tr.i_of(x) == 0) hpart.push_back(x);
  long best_val = level;  // l-adic valuation of the gamma exponent, capped at m
  for (int x : b) {
    long i = tr.i_of(x);
    if (i == 0) continue;
    long v = 0;
    for (long t = i; t % spec.l == 0; t /= spec.l) ++v;
    best_val = std::min(best_val, v);
  }
  FiniteGroup hsub = G.restricted(hpart);
  SubgroupSpec out;
  out.h_embedding.assign(hpart.begin(), hpart.end());
  std::map<int, int> idx;
  for (std::size_t k = 0; k < hpart.size(); ++k) idx[hpart[k]] = static_cast<int>(k);
  if (best_val == level) {
    out.spec = GSpec(hsub, GroupAut::identity(hsub), spec.l);
    out.gamma_element = G.identity();
    out.gamma_exponent = tr.gamma_order;
    return out;
  }
  long steps = 1;
  for (long k = best_val; k < level; ++k) steps *= spec.l;
  for (int x : b) {
    long i = tr.i_of(x);
    if (i == 0) continue;
    long v = 0;
    for (long t = i; t % spec.l == 0; t /= spec.l) ++v;
    if (v != best_val) continue;
    int h1 = G.pow(x, steps);
    if (!nt::is_power_of(G.element_order(h1), spec.l)) continue;
    std::vector<int> img(hpart.size());
    for (std::size_t k = 0; k < hpart.size(); ++k) img[k] = idx.at(G.conj(x, hpart[k]));
    GroupAut a(hsub, img);
    if (!nt::is_power_of(a.order(), spec.l)) continue;
    out.spec = GSpec(hsub, a, spec.l);
    out.gamma_element = x;
    out.gamma_exponent = i;
    return out;
  }
  throw InternalConsistency("open subgroup has no pro-l complement generator");
}

struct ElementaryData {
  long q = 0;
  bool q_is_l = false;
  long s_order = 1;
  int s_generator = 0;                     // G_fin index (lies in H)
  Subgroup s_elements;                     // G_fin indices of <s>
  Subgroup complement;                     // q = l: U_fin; q != l: H_q (G_fin indices)
  std::vector<int> complement_generators;  // G_fin indices
  std::vector<long> action_exponents;      // u s u^-1 = s^k, per complement generator
  int gamma_lift = 0;                      // q = l: generator of U over its H-part; q != l: central lift of gamma
};

namespace detail {

inline std::optional<long> exponent_on(const FiniteGroup& G, int u, int s, long s_order) {
  int img = G.conj(u, s);
  int p = G.identity();
  for (long k = 0; k < s_order; ++k) {
    if (p == img) return k;
    p = G.mul(p, s);
  }
  return std::nullopt;
}

/// Cyclic normal Hall subgroup of H for the primes other than q, if it exists.
inline std::optional<std::pair<int, Subgroup>> cyclic_hall_complement_of(const GSpec& spec, const Truncation& tr, long q) {
  const FiniteGroup& G = tr.group;
  const long target = spec.H->order() / nt::p_part(spec.H->order(), q);
  Subgroup s;
  int gen = G.identity();
  for (int h = 0; h < tr.h_order; ++h) {
    long o = G.element_order(h);
    if (o % q == 0) continue;
    s.push_back(h);
    if (o == target) gen = h;
  }
  if (static_cast<long>(s.size()) != target) return std::nullopt;
  if (G.element_order(gen) != target) return std::nullopt;  // not cyclic (or not a subgroup)
  if (G.closure({gen}) != s) return std::nullopt;
  if (!G.is_normal(s)) return std::nullopt;
  return std::make_pair(gen, s);
}

}  // namespace detail

/// Decides whether G is Q_l-q-elementary and returns a witness decomposition.
inline std::optional<ElementaryData> is_q_elementary(const GSpec& spec, long q) {
  const Truncation tr = truncate(spec);
  const FiniteGroup& G = tr.group;
  const bool q_is_l = q == spec.l;
  auto hall = detail::cyclic_hall_complement_of(spec, tr, q);
  if (!hall) return std::nullopt;
  ElementaryData d;
  d.q = q;
  d.q_is_l = q_is_l;
  d.s_generator = hall->first;
  d.s_elements = hall->second;
  d.s_order = static_cast<long>(d.s_elements.size());
  const DecompGroup dec = decomposition_group(d.s_order, spec.l);
  const Subgroup hq = sylow_subgroup(G, q, tr.h_part());

  if (q_is_l) {
    // U = <P, h0 gamma> with h0 gamma normalizing P and U meeting H exactly in P.
    for (int h0 = 0; h0 < tr.h_order; ++h0) {
      int x = tr.encode(h0, spec.m > 0 ? 1 : 0);
      if (G.conjugate(x, hq) != hq) continue;
      std::vector<int> gens = hq;
      gens.push_back(x);
      Subgroup u = G.closure(gens);
      if (static_cast<long>(u.size()) != static_cast<long>(hq.size()) * tr.gamma_order) continue;
      d.complement = u;
      d.gamma_lift = x;
      break;
    }
    if (d.complement.empty()) return std::nullopt;
  } else {
    // G = H x Gamma' needs a lift h0 gamma centralizing H whose l^m-th power is an l-element.
    bool found = false;
    for (int h0 = 0; h0 < tr.h_order && !found; ++h0) {
      int x = tr.encode(h0, spec.m > 0 ? 1 : 0);
      bool central = true;
      for (int h = 0; h < tr.h_order && central; ++h) central = G.conj(x, h) == h;
      if (!central) continue;
      int h1 = G.pow(x, tr.gamma_order);
      if (!nt::is_power_of(G.element_order(h1), spec.l)) continue;
      d.gamma_lift = x;
      found = true;
    }
    if (!found) return std::nullopt;
    d.complement = hq;
  }
  // generators of the complement: a small generating set by greedy closure
  Subgroup span{G.identity()};
  std::vector<int> gens;
  if (q_is_l) {
    gens.push_back(d.gamma_lift);
    span = G.closure(gens);
  }
  for (int x : d.complement) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = G.closure(gens);
  }
  d.complement_generators = gens;
  for (int u : gens) {
    auto k = detail::exponent_on(G, u, d.s_generator, d.s_order);
    if (!k) return std::nullopt;
    if (!dec.contains(*k)) return std::nullopt;
    d.action_exponents.push_back(*k);
  }
  // witness check: <s> normal, <s> meets the complement trivially, orders multiply
  Subgroup meet;
  std::set_intersection(d.s_elements.begin(), d.s_elements.end(), d.complement.begin(), d.complement.end(),
                        std::back_inserter(meet));
  long total = q_is_l ? G.order() : tr.h_order;
  if (meet.size() != 1 || d.s_order * static_cast<long>(d.complement.size()) != total)
    throw InternalConsistency("elementary decomposition does not reconstruct the group");
  return d;
}

/// N x| C with N = (+) Z/n_a and C = (+) Z/c_b, complement generator b acting
/// on row vectors of N by twists[b]. Element (v, w) = e^v f^w, index mixed-radix
/// with the N coordinates first.
struct PresentedGroup {
  FiniteGroup group;
  std::vector<int> generators;  // e_0.., then f_0..
  std::vector<long> radices;

  /// Index of the element with the given normal-form exponents.
  int element(const std::vector<long>& exps) const {
    if (exps.size() != radices.size()) throw MalformedInput("exponent vector has wrong length");
    long idx = 0;
    for (std::size_t k = radices.size(); k-- > 0;) idx = idx * radices[k] + nt::mod(exps[k], radices[k]);
    return static_cast<int>(idx);
  }
  std::vector<long> exponents(int g) const {
    std::vector<long> e(radices.size());
    long x = g;
    for (std::size_t k = 0; k < radices.size(); ++k) {
      e[k] = x % radices[k];
      x /= radices[k];
    }
    return e;
  }
};

inline PresentedGroup semidirect_abelian(const std::vector<long>& normal, const std::vector<long>& complement,
                                         const std::vector<std::vector<std::vector<long>>>& twists,
                                         std::size_t max_order = 5000) {
  if (twists.size() != complement.size()) throw MalformedInput("one twist matrix per complement generator required");
  long nn = 1, nc = 1;
  for (long x : normal) {
    if (x < 1) throw MalformedInput("cyclic factor orders must be positive");
    nn *= x;
  }
  for (long x : complement) {
    if (x < 1) throw MalformedInput("cyclic factor orders must be positive");
    nc *= x;
  }
  if (static_cast<std::size_t>(nn * nc) > max_order) throw ResourceLimit("group order " + std::to_string(nn * nc), max_order);
  const std::size_t A = normal.size();
  auto decode = [&](long x, const std::vector<long>& rad) {
    std::vector<long> v(rad.size());
    for (std::size_t k = 0; k < rad.size(); ++k) {
      v[k] = x % rad[k];
      x /= rad[k];
    }
    return v;
  };
  auto encode = [&](const std::vector<long>& v, const std::vector<long>& rad) {
    long idx = 0;
    for (std::size_t k = rad.size(); k-- > 0;) idx = idx * rad[k] + nt::mod(v[k], rad[k]);
    return idx;
  };
  // each twist as a permutation of N, validated as an automorphism
  std::vector<std::vector<long>> phi;
  for (const auto& M : twists) {
    if (M.size() != A) throw MalformedInput("twist matrix has wrong size");
    for (const auto& row : M)
      if (row.size() != A) throw MalformedInput("twist matrix has wrong size");
    std::vector<long> p(static_cast<std::size_t>(nn));
    for (long x = 0; x < nn; ++x) {
      auto v = decode(x, normal);
      std::vector<long> w(A, 0);
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t a2 = 0; a2 < A; ++a2) w[a2] += v[a] * M[a][a2];
      p[static_cast<std::size_t>(x)] = encode(w, normal);
    }
    for (long x = 0; x < nn; ++x)
      for (long y = 0; y < nn; ++y) {
        auto vx = decode(x, normal), vy = decode(y, normal);
        for (std::size_t a = 0; a < A; ++a) vx[a] += vy[a];
        auto px = decode(p[static_cast<std::size_t>(x)], normal), py = decode(p[static_cast<std::size_t>(y)], normal);
        for (std::size_t a = 0; a < A; ++a) px[a] += py[a];
        if (p[static_cast<std::size_t>(encode(vx, normal))] != encode(px, normal))
          throw MalformedInput("twist is not additive on the normal subgroup");
      }
    std::vector<char> seen(static_cast<std::size_t>(nn), 0);
    for (long y : p) seen[static_cast<std::size_t>(y)] = 1;
    for (char c : seen)
      if (!c) throw MalformedInput("twist is not bijective");
    phi.push_back(std::move(p));
  }
  auto compose = [](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
  };
  std::vector<long> id(static_cast<std::size_t>(nn));
  std::iota(id.begin(), id.end(), 0);
  for (std::size_t b = 0; b < phi.size(); ++b) {
    std::vector<long> q = id;
    for (long k = 0; k < complement[b]; ++k) q = compose(phi[b], q);
    if (q != id) throw MalformedInput("twist order does not divide the complement generator order");
    for (std::size_t b2 = 0; b2 < b; ++b2)
      if (compose(phi[b], phi[b2]) != compose(phi[b2], phi[b])) throw MalformedInput("twists do not commute");
  }
  std::vector<std::vector<long>> act(static_cast<std::size_t>(nc));
  for (long w = 0; w < nc; ++w) {
    auto ws = decode(w, complement);
    std::vector<long> q = id;
    for (std::size_t b = 0; b < ws.size(); ++b)
      for (long k = 0; k < ws[b]; ++k) q = compose(phi[b], q);
    act[static_cast<std::size_t>(w)] = std::move(q);
  }
  const std::size_t N = static_cast<std::size_t>(nn * nc);
  std::vector<int> t(N * N);
  for (long w = 0; w < nc; ++w)
    for (long v = 0; v < nn; ++v)
      for (long w2 = 0; w2 < nc; ++w2) {
        auto wsum = decode(w, complement);
        auto wb = decode(w2, complement);
        for (std::size_t b = 0; b < wsum.size(); ++b) wsum[b] += wb[b];
        long wi = encode(wsum, complement);
        for (long v2 = 0; v2 < nn; ++v2) {
          auto va = decode(v, normal);
          auto vb = decode(act[static_cast<std::size_t>(w)][static_cast<std::size_t>(v2)], normal);
          for (std::size_t a = 0; a < A; ++a) va[a] += vb[a];
          long vi = encode(va, normal);
          t[static_cast<std::size_t>(w * nn + v) * N + static_cast<std::size_t>(w2 * nn + v2)] = static_cast<int>(wi * nn + vi);
        }
      }
  PresentedGroup out;
  out.group = FiniteGroup(std::move(t), N);
  out.radices = normal;
  out.radices.insert(out.radices.end(), complement.begin(), complement.end());
  for (std::size_t k = 0; k < out.radices.size(); ++k) {
    std::vector<long> e(out.radices.size(), 0);
    e[k] = 1;
    out.generators.push_back(out.element(e));
  }
  return out;
}

/// Automorphism determined by the images of the presentation generators.
inline GroupAut aut_from_generator_images(const PresentedGroup& p, const std::vector<int>& images) {
  if (images.size() != p.generators.size()) throw MalformedInput("one image per generator required");
  const FiniteGroup& g = p.group;
  std::vector<int> img(static_cast<std::size_t>(g.order()));
  for (int x = 0; x < g.order(); ++x) {
    auto e = p.exponents(x);
    int y = g.identity();
    for (std::size_t k = 0; k < e.size(); ++k) y = g.mul(y, g.pow(images[k], e[k]));
    img[static_cast<std::size_t>(x)] = y;
  }
  return GroupAut(g, img);
}

}  // namespace iwadec
