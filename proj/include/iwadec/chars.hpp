#pragma once

// Complex character tables by Dixon's modular method, and the combined
// action of gamma and the decomposition group on Irr(H).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "iwadec/cyclo.hpp"
#include "iwadec/errors.hpp"
#include "iwadec/groups.hpp"
#include "iwadec/numtheory.hpp"

namespace iwadec {

struct CharacterTable {
  int group_order = 1;
  long conductor = 1;  // exponent of H; values live in Q(zeta_conductor)
  long prime = 2;      // auxiliary prime of the modular computation
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;          // element -> class
  std::vector<int> inverse_class;     // class of g^-1
  std::vector<long> degrees;          // chi(1)
  std::vector<std::vector<CycNumber>> values;  // [character][class]
  std::vector<std::vector<long>> values_mod_p;

  std::size_t size() const { return degrees.size(); }
  const CycNumber& value(std::size_t chi, int g) const { return values[chi][static_cast<std::size_t>(class_of[static_cast<std::size_t>(g)])]; }
  /// Index of the character whose reduction mod p is the given row.
  std::size_t find(const std::vector<long>& row_mod_p) const {
    for (std::size_t i = 0; i < values_mod_p.size(); ++i)
      if (values_mod_p[i] == row_mod_p) return i;
    throw InternalConsistency("character not found in table");
  }
};

namespace detail {

using u64 = std::uint64_t;

inline long mulmod(long a, long b, long p) { return static_cast<long>(static_cast<u64>(a) * static_cast<u64>(b) % static_cast<u64>(p)); }

/// Null space of a k x d matrix over F_p (rows given), basis vectors in F_p^d.
inline std::vector<std::vector<long>> kernel_mod_p(std::vector<std::vector<long>> a, std::size_t d, long p) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < a.size(); ++c) {
    std::size_t s = r;
    while (s < a.size() && a[s][c] == 0) ++s;
    if (s == a.size()) continue;
    std::swap(a[s], a[r]);
    long inv = nt::inv_mod(a[r][c], p);
    for (auto& x : a[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      long f = a[i][c];
      for (std::size_t j = 0; j < d; ++j) a[i][j] = nt::mod(a[i][j] - mulmod(f, a[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<char> is_piv(d, 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<std::vector<long>> out;
  for (std::size_t f = 0; f < d; ++f) {
    if (is_piv[f]) continue;
    std::vector<long> x(d, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = nt::mod(-a[i][f], p);
    out.push_back(std::move(x));
  }
  return out;
}

using Space = std::vector<std::vector<long>>;  // basis vectors in F_p^k

/// Splits the M-invariant space spanned by `basis` into eigenspaces of M.
inline std::vector<Space> split_space(const std::vector<std::vector<long>>& M, const Space& basis, long p) {
  const std::size_t k = M.size(), d = basis.size();
  // MB as columns
  std::vector<std::vector<long>> mb(d, std::vector<long>(k, 0));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t i = 0; i < k; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (M[i][j] && basis[c][j]) s = (s + mulmod(M[i][j], basis[c][j], p)) % p;
      mb[c][i] = s;
    }
  std::vector<Space> out;
  std::size_t found = 0;
  for (long lam = 0; lam < p && found < d; ++lam) {
    // rows i: sum_c (MB - lam B)[i][c] x_c = 0
    std::vector<std::vector<long>> a(k, std::vector<long>(d));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < d; ++c) a[i][c] = nt::mod(mb[c][i] - mulmod(lam, basis[c][i], p), p);
    auto ker = kernel_mod_p(std::move(a), d, p);
    if (ker.empty()) continue;
    Space sp;
    for (const auto& x : ker) {
      std::vector<long> v(k, 0);
      for (std::size_t c = 0; c < d; ++c)
        if (x[c])
          for (std::size_t i = 0; i < k; ++i) v[i] = (v[i] + mulmod(x[c], basis[c][i], p)) % p;
      sp.push_back(std::move(v));
    }
    found += sp.size();
    out.push_back(std::move(sp));
  }
  if (found != d) throw InternalConsistency("class matrix is not diagonalizable over F_p");
  return out;
}

}  // namespace detail

/// Conjugacy classes sorted with the identity first, plus lookup tables.
inline CharacterTable character_table(const FiniteGroup& g) {
  using detail::mulmod;
  CharacterTable T;
  T.group_order = g.order();
  T.classes = conjugacy_classes(g);
  const std::size_t k = T.classes.size();
  T.class_of.assign(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t c = 0; c < k; ++c)
    for (int x : T.classes[c]) T.class_of[static_cast<std::size_t>(x)] = static_cast<int>(c);
  for (std::size_t c = 0; c < k; ++c) T.inverse_class.push_back(T.class_of[static_cast<std::size_t>(g.inv(T.classes[c][0]))]);
  const long e = g.exponent();
  T.conductor = e;
  long p = e + 1;
  const long bound = 2 * nt::isqrt(g.order()) + 2;
  while (!(nt::is_prime(p) && p > bound)) p += e;
  T.prime = p;

  // a[j][r][t] = #{x in C_j : x^-1 z_t in C_r}
  std::vector<std::vector<std::vector<long>>> a(k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
  for (std::size_t t = 0; t < k; ++t) {
    int z = T.classes[t][0];
    for (std::size_t j = 0; j < k; ++j)
      for (int x : T.classes[j]) ++a[j][static_cast<std::size_t>(T.class_of[static_cast<std::size_t>(g.mul(g.inv(x), z))])][t];
  }
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> coef(1, p - 1);
  std::vector<std::vector<long>> M(k, std::vector<long>(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    long c = coef(rng);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t t = 0; t < k; ++t) M[r][t] = (M[r][t] + mulmod(c, a[j][r][t] % p, p)) % p;
  }
  detail::Space full;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<long> v(k, 0);
    v[i] = 1;
    full.push_back(std::move(v));
  }
  std::vector<detail::Space> todo = detail::split_space(M, full, p), done;
  for (std::size_t j = 0; j < k && !todo.empty(); ++j) {
    std::vector<detail::Space> next;
    for (auto& s : todo) {
      if (s.size() == 1) {
        done.push_back(std::move(s));
        continue;
      }
      std::vector<std::vector<long>> Mj(k, std::vector<long>(k));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t t = 0; t < k; ++t) Mj[r][t] = a[j][r][t] % p;
      for (auto& piece : detail::split_space(Mj, s, p)) next.push_back(std::move(piece));
    }
    todo = std::move(next);
  }
  for (auto& s : todo) {
    if (s.size() != 1) throw InternalConsistency("class matrices do not separate the characters");
    done.push_back(std::move(s));
  }
  if (done.size() != k) throw InternalConsistency("wrong number of irreducible characters");

  struct Raw {
    long deg;
    std::vector<long> row;
  };
  std::vector<Raw> raws;
  const long n = g.order();
  for (auto& s : done) {
    std::vector<long> w = s[0];
    if (w[0] == 0) throw InternalConsistency("central character vanishes at the identity class");
    long inv0 = nt::inv_mod(w[0], p);
    for (auto& x : w) x = mulmod(x, inv0, p);
    long S = 0;
    for (std::size_t t = 0; t < k; ++t) {
      long term = mulmod(w[t], w[static_cast<std::size_t>(T.inverse_class[t])], p);
      S = (S + mulmod(term, nt::inv_mod(static_cast<long>(T.classes[t].size()) % p, p), p)) % p;
    }
    if (S == 0) throw InternalConsistency("degenerate character norm");
    long d2 = mulmod(n % p, nt::inv_mod(S, p), p);
    long deg = 0;
    for (long d = 1; d * d <= n; ++d)
      if (mulmod(d, d, p) == d2) {
        deg = d;
        break;
      }
    if (deg == 0 || n % deg != 0) throw InternalConsistency("no admissible character degree");
    std::vector<long> row(k);
    for (std::size_t t = 0; t < k; ++t)
      row[t] = mulmod(mulmod(w[t], deg, p), nt::inv_mod(static_cast<long>(T.classes[t].size()) % p, p), p);
    raws.push_back({deg, std::move(row)});
  }
  std::sort(raws.begin(), raws.end(), [](const Raw& x, const Raw& y) {
    bool tx = std::all_of(x.row.begin(), x.row.end(), [](long v) { return v == 1; });
    bool ty = std::all_of(y.row.begin(), y.row.end(), [](long v) { return v == 1; });
    if (tx != ty) return tx;
    if (x.deg != y.deg) return x.deg < y.deg;
    return x.row < y.row;
  });

  const long zp = nt::pow_mod(nt::primitive_root(p), (p - 1) / e, p);  // image of zeta_e
  // per class: classes of the powers x^j and the powers of the image of zeta_o
  std::vector<std::vector<std::size_t>> pow_class(k);
  std::vector<std::vector<long>> zpow(k);
  for (std::size_t t = 0; t < k; ++t) {
    const int x = T.classes[t][0];
    const long o = g.element_order(x);
    const long zo = nt::pow_mod(zp, e / o, p);
    int y = g.identity();
    long z = 1;
    for (long j = 0; j < o; ++j) {
      pow_class[t].push_back(static_cast<std::size_t>(T.class_of[static_cast<std::size_t>(y)]));
      zpow[t].push_back(z);
      y = g.mul(y, x);
      z = mulmod(z, zo, p);
    }
  }
  for (auto& r : raws) {
    std::vector<CycNumber> vals;
    for (std::size_t t = 0; t < k; ++t) {
      const long o = static_cast<long>(pow_class[t].size());
      long oinv = nt::inv_mod(o % p, p);
      std::vector<Rational> poly(static_cast<std::size_t>(e), Rational(0));
      long total = 0;
      for (long kk = 0; kk < o; ++kk) {
        long s = 0;
        for (long j = 0; j < o; ++j) {
          long chi = r.row[pow_class[t][static_cast<std::size_t>(j)]];
          s = (s + mulmod(chi, zpow[t][static_cast<std::size_t>(nt::mod(-j * kk, o))], p)) % p;
        }
        long mult = mulmod(s, oinv, p);
        if (mult > r.deg) throw InternalConsistency("eigenvalue multiplicity exceeds the degree");
        total += mult;
        poly[static_cast<std::size_t>(kk * (e / o))] += Rational(mult);
      }
      if (total != r.deg) throw InternalConsistency("eigenvalue multiplicities do not sum to the degree");
      vals.push_back(CycNumber::from_poly(e, poly));
    }
    T.degrees.push_back(r.deg);
    T.values.push_back(std::move(vals));
    T.values_mod_p.push_back(r.row);
  }

  // orthogonality: both relations mod p, row norms exactly
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) {
      long s = 0;
      for (std::size_t t = 0; t < k; ++t)
        s = (s + mulmod(static_cast<long>(T.classes[t].size()) % p,
                        mulmod(T.values_mod_p[x][t], T.values_mod_p[y][static_cast<std::size_t>(T.inverse_class[t])], p), p)) % p;
      if (s != (x == y ? n % p : 0)) throw InternalConsistency("character orthogonality fails");
    }
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t u = 0; u < k; ++u) {
      long s = 0;
      for (std::size_t x = 0; x < k; ++x)
        s = (s + mulmod(T.values_mod_p[x][t], T.values_mod_p[x][static_cast<std::size_t>(T.inverse_class[u])], p)) % p;
      long expect = t == u ? (n / static_cast<long>(T.classes[t].size())) % p : 0;
      if (s != expect) throw InternalConsistency("column orthogonality fails");
    }
  for (std::size_t x = 0; x < k; ++x) {
    CycNumber s(0);
    for (std::size_t t = 0; t < k; ++t)
      s += T.values[x][t] * T.values[x][static_cast<std::size_t>(T.inverse_class[t])] *
           CycNumber(static_cast<long>(T.classes[t].size()));
    if (!(s == CycNumber(n).lift(s.conductor()) || s == CycNumber(n))) throw InternalConsistency("character norm is not 1");
  }
  return T;
}

/// eta -> eta o alpha as a permutation of character indices.
inline std::vector<std::size_t> conj_action(const CharacterTable& T, const FiniteGroup& g, const GroupAut& alpha) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::vector<long> row(T.classes.size());
    for (std::size_t t = 0; t < T.classes.size(); ++t)
      row[t] = T.values_mod_p[i][static_cast<std::size_t>(T.class_of[static_cast<std::size_t>(alpha(T.classes[t][0]))])];
    out.push_back(T.find(row));
  }
  (void)g;
  return out;
}

/// eta -> sigma_a(eta), realized as eta(g^a).
inline std::vector<std::size_t> galois_action(const CharacterTable& T, const FiniteGroup& g, long a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::vector<long> row(T.classes.size());
    for (std::size_t t = 0; t < T.classes.size(); ++t)
      row[t] = T.values_mod_p[i][static_cast<std::size_t>(T.class_of[static_cast<std::size_t>(g.pow(T.classes[t][0], a))])];
    out.push_back(T.find(row));
  }
  return out;
}

struct OrbitInvariants {
  std::size_t representative = 0;
  std::vector<std::size_t> members;        // the <gamma> x D orbit
  std::vector<std::size_t> gamma_orbit;    // eta, eta^gamma, ...
  long degree = 1;                         // eta(1)
  long w = 1;                              // |gamma-orbit|
  long v = 1;                              // least j >= 1 with eta^{gamma^j} Galois conjugate to eta
  std::vector<long> stabilizer;            // Stab_D(eta)
  std::vector<long> fixing;                // sigma in D with eta^sigma in the gamma-orbit
  long field_degree = 1;                   // [L : Q_l] = |D| / |fixing|
  long g0_order = 1;                       // |fixing| / |stabilizer|
  long eta_field_degree = 1;               // [Q_l(eta) : Q_l]
};

/// Data shared by the orbit computations of one group.
struct CharacterActions {
  CharacterTable table;
  DecompGroup D;
  std::vector<std::size_t> gamma;                 // conj_action by alpha
  std::vector<std::vector<std::size_t>> galois;   // per member of D
};

inline CharacterActions character_actions(const GSpec& spec) {
  CharacterActions A;
  A.table = character_table(*spec.H);
  A.D = decomposition_group(A.table.conductor, spec.l);
  A.gamma = conj_action(A.table, *spec.H, spec.alpha);
  for (long a : A.D.members) A.galois.push_back(galois_action(A.table, *spec.H, A.table.conductor == 1 ? 1 : a));
  return A;
}

inline OrbitInvariants orbit_invariants(const CharacterActions& A, std::size_t eta, long l) {
  OrbitInvariants o;
  o.representative = eta;
  o.degree = A.table.degrees[eta];
  for (std::size_t x = eta;;) {
    o.gamma_orbit.push_back(x);
    x = A.gamma[x];
    if (x == eta) break;
  }
  o.w = static_cast<long>(o.gamma_orbit.size());
  if (!nt::is_power_of(o.w, l)) throw InternalConsistency("gamma-orbit length is not a power of l");
  std::set<std::size_t> dorbit;
  for (std::size_t s = 0; s < A.D.members.size(); ++s) {
    std::size_t img = A.galois[s][eta];
    dorbit.insert(img);
    if (img == eta) o.stabilizer.push_back(A.D.members[s]);
    if (std::find(o.gamma_orbit.begin(), o.gamma_orbit.end(), img) != o.gamma_orbit.end())
      o.fixing.push_back(A.D.members[s]);
  }
  o.v = o.w;
  for (long j = 1; j < o.w; ++j)
    if (dorbit.count(o.gamma_orbit[static_cast<std::size_t>(j)])) {
      o.v = j;
      break;
    }
  std::set<std::size_t> mem;
  for (std::size_t x : o.gamma_orbit)
    for (const auto& gal : A.galois) mem.insert(gal[x]);
  o.members.assign(mem.begin(), mem.end());
  const long nd = static_cast<long>(A.D.members.size());
  o.field_degree = nd / static_cast<long>(o.fixing.size());
  o.g0_order = static_cast<long>(o.fixing.size() / o.stabilizer.size());
  o.eta_field_degree = nd / static_cast<long>(o.stabilizer.size());
  if (o.g0_order * o.v != o.w) throw InternalConsistency("|G_0| differs from w / v");
  return o;
}

/// The <gamma> x D orbits on Irr(H), ordered by least member.
inline std::vector<OrbitInvariants> galois_orbits(const CharacterActions& A, long l) {
  std::vector<OrbitInvariants> out;
  std::vector<char> seen(A.table.size(), 0);
  for (std::size_t i = 0; i < A.table.size(); ++i) {
    if (seen[i]) continue;
    auto o = orbit_invariants(A, i, l);
    for (auto x : o.members) seen[x] = 1;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace iwadec
