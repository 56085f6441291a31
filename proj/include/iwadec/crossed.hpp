#pragma once

// The truncated crossed product A = K(T)[H x| <gamma>], gamma^{l^m} = T.
//
// AlgebraElement multiplies exactly with the T-wrap. The idempotent and
// ideal computations run in the group ring K[G_fin]: the basis change
// (h,i) -> t^-i (h,i) over K(t), t^{l^m} = T, identifies A (x) K(t) with
// K(t)[G_fin], so ranks and centers agree with those of K[G_fin].

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iwadec/chars.hpp"
#include "iwadec/cyclo.hpp"
#include "iwadec/errors.hpp"
#include "iwadec/groups.hpp"
#include "iwadec/linalg.hpp"
#include "iwadec/poly.hpp"

namespace iwadec {

class AlgebraElement {
 public:
  explicit AlgebraElement(std::shared_ptr<const Truncation> tr) : tr_(std::move(tr)) {}

  static AlgebraElement basis(std::shared_ptr<const Truncation> tr, int g, RatFunc c = RatFunc(1)) {
    AlgebraElement a(std::move(tr));
    if (!c.is_zero()) a.c_[g] = std::move(c);
    return a;
  }

  const Truncation& truncation() const { return *tr_; }
  const std::map<int, RatFunc>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  RatFunc coeff(int g) const {
    auto it = c_.find(g);
    return it == c_.end() ? RatFunc() : it->second;
  }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_same(b);
    AlgebraElement r = a;
    for (const auto& [g, c] : b.c_) r.add(g, c);
    return r;
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_same(b);
    AlgebraElement r = a;
    for (const auto& [g, c] : b.c_) r.add(g, -c);
    return r;
  }
  AlgebraElement scaled(const RatFunc& s) const {
    AlgebraElement r(tr_);
    if (s.is_zero()) return r;
    for (const auto& [g, c] : c_) r.c_[g] = c * s;
    return r;
  }
  /// (h,i)(h',i') = (h alpha^i(h'), i+i'), times T when i+i' >= l^m.
  friend AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_same(b);
    const Truncation& t = *a.tr_;
    AlgebraElement r(a.tr_);
    const RatFunc T = RatFunc::T();
    for (const auto& [g, c] : a.c_)
      for (const auto& [h, d] : b.c_) {
        RatFunc p = c * d;
        if (t.wraps(g, h)) p = p * T;
        r.add(t.group.mul(g, h), p);
      }
    return r;
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return alg_mul(a, b); }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.tr_ != b.tr_ || a.c_.size() != b.c_.size()) return false;
    for (auto i = a.c_.begin(), j = b.c_.begin(); i != a.c_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }

 private:
  void check_same(const AlgebraElement& o) const {
    if (tr_ != o.tr_) throw MalformedInput("algebra elements belong to different specs");
  }
  void add(int g, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = c_.find(g);
    if (it == c_.end()) {
      c_.emplace(g, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }

  std::shared_ptr<const Truncation> tr_;
  std::map<int, RatFunc> c_;
};

/// Element of K[G] as a dense coefficient vector indexed by group elements.
using GroupRingElement = std::vector<CycNumber>;

inline GroupRingElement gr_zero(const FiniteGroup& g) { return GroupRingElement(static_cast<std::size_t>(g.order()), CycNumber(0)); }
inline GroupRingElement gr_basis(const FiniteGroup& g, int x) {
  auto e = gr_zero(g);
  e[static_cast<std::size_t>(x)] = CycNumber(1);
  return e;
}

namespace detail {

inline Rational rational_from_i128(__int128 v, long den) {
  if (v < (static_cast<__int128>(1) << 62) && v > -(static_cast<__int128>(1) << 62)) return Rational(static_cast<long>(v), den);
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0UL));
  mpz_class n = (hi << 64) + lo;
  if (neg) n = -n;
  return Rational(mpq_class(n, mpz_class(den)));
}

/// Integer-accumulated product; nullopt when a coefficient does not fit.
inline std::optional<GroupRingElement> gr_mul_small(const FiniteGroup& g, const GroupRingElement& a, const GroupRingElement& b) {
  constexpr long kLim = 1L << 31;
  long N = 1;
  for (const auto* v : {&a, &b})
    for (const auto& c : *v)
      if (!c.is_zero()) N = std::lcm(N, c.conductor());
  const auto& t = cyclo_table(N);
  const auto phi = static_cast<std::size_t>(t.phi);
  struct Loaded {
    std::vector<int> supp;
    std::vector<std::vector<long>> num;
    long den = 1;
  };
  auto load = [&](const GroupRingElement& v, Loaded& L) {
    std::vector<long> dens;
    for (int x = 0; x < g.order(); ++x) {
      const auto& c = v[static_cast<std::size_t>(x)];
      if (c.is_zero()) continue;
      long d;
      std::vector<long> nm;
      if (!CycNumber::small_form(c.conductor() == N ? c : c.lift(N), d, nm)) return false;
      L.den = std::lcm(L.den, d);
      if (L.den >= kLim) return false;
      L.supp.push_back(x);
      L.num.push_back(std::move(nm));
      dens.push_back(d);
    }
    for (std::size_t i = 0; i < L.num.size(); ++i)
      for (auto& y : L.num[i]) {
        y *= L.den / dens[i];
        if (y >= kLim || y <= -kLim) return false;
      }
    return true;
  };
  Loaded A, B;
  if (!load(a, A) || !load(b, B)) return std::nullopt;
  const std::size_t width = 2 * phi - 1;
  std::vector<__int128> acc(static_cast<std::size_t>(g.order()) * width, 0);
  std::vector<char> hit(static_cast<std::size_t>(g.order()), 0);
  for (std::size_t i = 0; i < A.supp.size(); ++i) {
    const auto& na = A.num[i];
    for (std::size_t j = 0; j < B.supp.size(); ++j) {
      const auto z = static_cast<std::size_t>(g.mul(A.supp[i], B.supp[j]));
      hit[z] = 1;
      __int128* row = &acc[z * width];
      const auto& nb = B.num[j];
      for (std::size_t u = 0; u < phi; ++u) {
        if (na[u] == 0) continue;
        for (std::size_t w = 0; w < phi; ++w) row[u + w] += static_cast<__int128>(na[u]) * nb[w];
      }
    }
  }
  const long den = A.den * B.den;
  GroupRingElement r(static_cast<std::size_t>(g.order()), CycNumber(0));
  for (std::size_t z = 0; z < r.size(); ++z) {
    if (!hit[z]) continue;
    __int128* row = &acc[z * width];
    for (std::size_t k = phi; k < width; ++k) {
      if (row[k] == 0) continue;
      const auto& red = t.xpow[k];
      for (std::size_t j = 0; j < phi; ++j)
        if (red[j] != 0) row[j] += row[k] * red[j];
    }
    bool zero = true;
    std::vector<Rational> c(phi);
    for (std::size_t j = 0; j < phi; ++j)
      if (row[j] != 0) {
        zero = false;
        c[j] = rational_from_i128(row[j], den);
      }
    if (!zero) r[z] = CycNumber::from_reduced(N, std::move(c));
  }
  return r;
}

}  // namespace detail

inline GroupRingElement gr_mul(const FiniteGroup& g, const GroupRingElement& a, const GroupRingElement& b) {
  if (auto fast = detail::gr_mul_small(g, a, b)) return std::move(*fast);
  auto r = gr_zero(g);
  std::vector<int> sa, sb;
  for (int x = 0; x < g.order(); ++x) {
    if (!a[static_cast<std::size_t>(x)].is_zero()) sa.push_back(x);
    if (!b[static_cast<std::size_t>(x)].is_zero()) sb.push_back(x);
  }
  for (int x : sa)
    for (int y : sb) r[static_cast<std::size_t>(g.mul(x, y))] += a[static_cast<std::size_t>(x)] * b[static_cast<std::size_t>(y)];
  return r;
}

inline GroupRingElement gr_add(GroupRingElement a, const GroupRingElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += b[i];
  return a;
}

/// x a x^-1
inline GroupRingElement gr_conj(const FiniteGroup& g, int x, const GroupRingElement& a) {
  auto r = gr_zero(g);
  for (int y = 0; y < g.order(); ++y)
    if (!a[static_cast<std::size_t>(y)].is_zero()) r[static_cast<std::size_t>(g.conj(x, y))] = a[static_cast<std::size_t>(y)];
  return r;
}

inline bool gr_equal(const GroupRingElement& a, const GroupRingElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!((a[i] - b[i]).is_zero())) return false;
  return true;
}
inline bool gr_is_zero(const GroupRingElement& a) {
  return std::all_of(a.begin(), a.end(), [](const CycNumber& c) { return c.is_zero(); });
}

inline std::vector<int> support(const GroupRingElement& a) {
  std::vector<int> s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) s.push_back(static_cast<int>(i));
  return s;
}

/// A small generating set of a subgroup, greedily.
inline std::vector<int> generating_set(const FiniteGroup& g, const Subgroup& s) {
  std::vector<int> gens;
  Subgroup span{g.identity()};
  for (int x : s) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = g.closure(gens);
  }
  return gens;
}

/// e(eta) = eta(1)/|H| sum_h eta(h^-1) h, placed in K[G_fin] on the (h, 0) slots.
inline GroupRingElement idempotent_e_eta(const Truncation& tr, const CharacterTable& t, std::size_t eta) {
  auto e = gr_zero(tr.group);
  const Rational scale(t.degrees[eta], t.group_order);
  for (int h = 0; h < tr.h_order; ++h) {
    const auto& v = t.values[eta][static_cast<std::size_t>(t.inverse_class[static_cast<std::size_t>(t.class_of[static_cast<std::size_t>(h)])])];
    e[static_cast<std::size_t>(h)] = v.scaled(scale);
  }
  return e;
}

/// Sum of e(eta') over the D-closure of a gamma-orbit.
inline GroupRingElement idempotent_e_chi(const Truncation& tr, const CharacterActions& A, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t x : sorted) {
    if (!std::binary_search(sorted.begin(), sorted.end(), A.gamma[x])) throw MalformedInput("orbit is not closed under gamma");
    for (const auto& gal : A.galois)
      if (!std::binary_search(sorted.begin(), sorted.end(), gal[x])) throw MalformedInput("orbit is not closed under D");
  }
  auto e = gr_zero(tr.group);
  for (std::size_t x : sorted) e = gr_add(std::move(e), idempotent_e_eta(tr, A.table, x));
  return e;
}

/// (1/n) sum_nu Tr(zeta_i^-nu) s^nu for beta(s) = zeta_n^k, the trace taken from
/// Q(zeta_i) (zeta_i = zeta_n^k) down to the D-fixed field.
inline GroupRingElement idempotent_e_i(const FiniteGroup& g, int s, long n, long k, long l) {
  auto e = gr_zero(g);
  const long gk = std::gcd(nt::mod(k, n), n);
  const long ni = n / gk;          // order of zeta_i
  const long ki = nt::mod(k, n) / gk;  // zeta_i = zeta_ni^ki
  const DecompGroup D = decomposition_group(ni, l);
  int x = g.identity();
  for (long nu = 0; nu < n; ++nu) {
    CycNumber z = ni == 1 ? CycNumber(1) : CycNumber::zeta(ni, -ki * nu);
    e[static_cast<std::size_t>(x)] = trace_to_fixed(z, D).scaled(Rational(1, n));
    x = g.mul(x, s);
  }
  return e;
}

struct Ideal {
  GroupRingElement generator;
  Subgroup ambient;           // the subgroup B of G_fin whose algebra is cut down
  long dim = 0;               // over the base function field
  std::string method;         // "row-reduction" or "trace"
  std::vector<std::vector<CycNumber>> basis;  // RREF rows of e K[E] when row-reduced
};

/// Largest |E| for which the ideal is row-reduced rather than sized by its trace.
inline constexpr int kRowReduceLimit = 27;

inline bool is_idempotent(const FiniteGroup& g, const GroupRingElement& e) { return gr_equal(gr_mul(g, e, e), e); }

inline bool commutes_with(const FiniteGroup& g, const GroupRingElement& e, const std::vector<int>& gens) {
  for (int x : gens)
    if (!gr_equal(gr_conj(g, x, e), e)) return false;
  return true;
}

/// e K[B] for an idempotent e central in K[B]; both identities are checked.
inline Ideal ideal_of(const FiniteGroup& g, const Subgroup& b, const GroupRingElement& e) {
  if (!is_idempotent(g, e)) throw PreconditionViolation("ideal_of: e*e != e");
  const auto gens = generating_set(g, b);
  if (!commutes_with(g, e, gens)) throw PreconditionViolation("ideal_of: e is not central");
  Ideal I;
  I.generator = e;
  I.ambient = b;
  const Subgroup supp = support(e);
  for (int x : supp)
    if (!std::binary_search(b.begin(), b.end(), x)) throw PreconditionViolation("ideal_of: e is not supported in the subalgebra");
  std::vector<int> sg = supp;
  const Subgroup E = g.closure(sg);
  const long cosets = static_cast<long>(b.size() / E.size());
  if (static_cast<int>(E.size()) <= kRowReduceLimit) {
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < E.size(); ++i) pos[E[i]] = i;
    EchelonSpace<CycNumber> space(E.size());
    for (int y : E) {
      std::vector<CycNumber> row(E.size(), CycNumber(0));
      for (int x : supp) row[pos.at(g.mul(x, y))] += e[static_cast<std::size_t>(x)];
      space.insert(std::move(row));
    }
    I.dim = cosets * static_cast<long>(space.rank());
    I.basis = space.rows();
    I.method = "row-reduction";
  } else {
    // rank of left multiplication by an idempotent = its trace = |E| e(1)
    CycNumber tr = e[static_cast<std::size_t>(g.identity())].minimized().scaled(Rational(static_cast<long>(E.size())));
    if (!tr.is_rational() || !tr.rational_part().is_integer()) throw InternalConsistency("idempotent trace is not an integer");
    I.dim = cosets * tr.rational_part().num().get_si();
    I.method = "trace";
  }
  return I;
}

struct CenterResult {
  long dim = 0;
  std::vector<std::vector<CycNumber>> basis;  // in coordinates of the B-class sums
};

/// Z(e K[B]): the commutation system z b = b z, z in e K[B], is solved by the
/// class functions on B inside e K[B], i.e. the span of e times the class sums.
inline CenterResult center_of(const FiniteGroup& g, const Ideal& I) {
  const Subgroup& b = I.ambient;
  std::vector<std::vector<int>> cls;
  {
    std::map<int, int> seen;
    for (int x : b) {
      if (seen.count(x)) continue;
      std::set<int> c;
      for (int y : b) c.insert(g.conj(y, x));
      for (int y : c) seen[y] = 1;
      cls.emplace_back(c.begin(), c.end());
    }
  }
  const Subgroup supp = support(I.generator);
  EchelonSpace<CycNumber> space(cls.size());
  for (const auto& c : cls) {
    std::vector<CycNumber> v(cls.size(), CycNumber(0));
    for (std::size_t t = 0; t < cls.size(); ++t) {
      const int z = cls[t][0];
      for (int x : c) {
        const int y = g.mul(z, g.inv(x));
        if (std::binary_search(supp.begin(), supp.end(), y)) v[t] += I.generator[static_cast<std::size_t>(y)];
      }
    }
    space.insert(std::move(v));
  }
  CenterResult r;
  r.dim = static_cast<long>(space.rank());
  r.basis = space.rows();
  return r;
}

}  // namespace iwadec
