#pragma once

// Per-component structure reports, the elementary decomposition e_i A =
// (Q_l(zeta_i) (x) Q U_i) * <x>, its orbit analysis, and the explicit matrix
// checks behind the d = 0 case.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "iwadec/chars.hpp"
#include "iwadec/crossed.hpp"
#include "iwadec/errors.hpp"
#include "iwadec/groups.hpp"
#include "iwadec/linalg.hpp"

namespace iwadec {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline Check make_check(std::string name, long lhs, long rhs) {
  return {std::move(name), lhs == rhs, std::to_string(lhs) + (lhs == rhs ? " == " : " != ") + std::to_string(rhs)};
}

inline void require(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) throw InternalConsistency(c.name + " failed: " + c.detail);
}

struct ComponentReport {
  OrbitInvariants orbit;
  long dim = 0;
  long center_dim = 0;
  long chi_degree = 1;       // w * eta(1)
  long dim_over_center = 1;  // chi(1)^2
  long schur_index = 1;      // w / v, asserted when H is an l-group
  long matrix_degree = 1;
  long eta_conductor = 1;    // conductor of Q(eta)
  long sigma_exponent = 1;   // sigma in D with eta^{gamma^v} = eta^sigma
  bool pro_l = true;
  std::string dim_method;
  std::vector<Check> verified;
  GroupRingElement idempotent;
};

inline Subgroup whole(const FiniteGroup& g) {
  Subgroup s(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < g.order(); ++i) s[static_cast<std::size_t>(i)] = i;
  return s;
}

inline ComponentReport component_report(const GSpec& spec, const Truncation& tr, const CharacterActions& A,
                                        const OrbitInvariants& o) {
  ComponentReport r;
  r.orbit = o;
  r.pro_l = spec.h_is_l_group();
  r.idempotent = idempotent_e_chi(tr, A, o.members);
  Ideal I;
  try {
    I = ideal_of(tr.group, whole(tr.group), r.idempotent);
  } catch (const PreconditionViolation& e) {
    throw InternalConsistency(std::string("component idempotent: ") + e.what());
  }
  r.verified.push_back({"idempotent", true, "e*e == e"});
  r.verified.push_back({"central", true, "e commutes with generators of G_fin"});
  r.dim = I.dim;
  r.dim_method = I.method;
  r.center_dim = center_of(tr.group, I).dim;
  r.chi_degree = o.w * o.degree;
  r.dim_over_center = r.chi_degree * r.chi_degree;
  r.schur_index = o.w / o.v;
  r.matrix_degree = r.chi_degree / r.schur_index;
  const long lm = spec.gamma_order();
  r.verified.push_back(make_check("dim = l^m v [Q_l(eta):Q_l] eta(1)^2", r.dim, lm * o.v * o.eta_field_degree * o.degree * o.degree));
  r.verified.push_back(make_check("center dim = [L:Q_l] l^m / w", r.center_dim * o.w, o.field_degree * lm));
  r.verified.push_back(make_check("dim / center dim = chi(1)^2", r.dim, r.center_dim * r.dim_over_center));
  r.verified.push_back(make_check("|G_0| = w / v", o.g0_order * o.v, o.w));
  require(r.verified);
  for (const auto& v : A.table.values[o.representative]) r.eta_conductor = std::lcm(r.eta_conductor, v.minimized().conductor());
  if (o.v < o.w) {
    const std::size_t target = o.gamma_orbit[static_cast<std::size_t>(o.v)];
    for (std::size_t s = 0; s < A.D.members.size(); ++s)
      if (A.galois[s][o.representative] == target) {
        r.sigma_exponent = A.D.members[s];
        break;
      }
  }
  return r;
}

/// All component reports of a spec, ordered by least character index.
inline std::vector<ComponentReport> component_reports(const GSpec& spec) {
  const Truncation tr = truncate(spec);
  const auto A = character_actions(spec);
  std::vector<ComponentReport> out;
  for (const auto& o : galois_orbits(A, spec.l)) out.push_back(component_report(spec, tr, A, o));
  return out;
}

struct BaseComponent {
  ComponentReport report;       // inside the spec of G_i
  GroupRingElement idempotent;  // f_W in G_fin coordinates
  Ideal ideal;                  // f_W K[B_i]
};

struct OrbitGroup {
  long d = 0;
  std::vector<std::size_t> members;  // indices into the base components, x-orbit order
  GroupRingElement idempotent;       // f of W~
};

struct StarAlgebra {
  std::vector<BaseComponent> base;
  int x = 0;        // element of G_fin
  long tau = 1;     // x s x^-1 = s^tau
  long n = 0;       // l^n = [U : U_i]
  long ln = 1;
  Subgroup b;       // image of G_i = <s> U_i in G_fin
  std::vector<OrbitGroup> orbits;
};

struct ElementarySummand {
  long k = 0;                 // beta(s) = zeta_|s|^k
  long zeta_order = 1;        // order of zeta_i
  long zeta_degree = 1;       // [Q_l(zeta_i) : Q_l]
  GroupRingElement e_i;
  Ideal ideal;
  Subgroup u_i;               // U_i in G_fin
  SubgroupSpec u_spec;        // U_i as a pro-l spec
  SubgroupSpec g_spec;        // G_i = <s> U_i
  StarAlgebra star;
  std::vector<Check> verified;
};

/// x-action on the base components; d is the log_l of the orbit length.
inline void orbit_analysis(const FiniteGroup& g, StarAlgebra& S, long l) {
  const std::size_t nb = S.base.size();
  std::vector<std::size_t> perm(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    auto c = gr_conj(g, S.x, S.base[j].idempotent);
    std::size_t hit = nb;
    for (std::size_t k = 0; k < nb && hit == nb; ++k)
      if (gr_equal(c, S.base[k].idempotent)) hit = k;
    if (hit == nb) throw InternalConsistency("x-conjugate of a component idempotent is not a component idempotent");
    perm[j] = hit;
  }
  std::vector<char> seen(nb, 0);
  S.orbits.clear();
  for (std::size_t j = 0; j < nb; ++j) {
    if (seen[j]) continue;
    OrbitGroup og;
    for (std::size_t k = j; !seen[k]; k = perm[k]) {
      seen[k] = 1;
      og.members.push_back(k);
    }
    long len = static_cast<long>(og.members.size());
    if (!nt::is_power_of(len, l) || len > S.ln) throw InternalConsistency("x-orbit length is not an l-power dividing l^n");
    for (long p = 1; p < len; p *= l) ++og.d;
    // x^{l^d} fixes the idempotent exactly
    int y = g.pow(S.x, len);
    if (!gr_equal(gr_conj(g, y, S.base[j].idempotent), S.base[j].idempotent))
      throw InternalConsistency("x^{l^d} does not fix the component idempotent");
    og.idempotent = gr_zero(g);
    for (auto k : og.members) og.idempotent = gr_add(og.idempotent, S.base[k].idempotent);
    S.orbits.push_back(std::move(og));
  }
}

inline std::vector<ElementarySummand> elementary_decomposition(const GSpec& spec, const Truncation& tr, const ElementaryData& d) {
  if (!d.q_is_l) throw PreconditionViolation("elementary_decomposition needs the q = l data");
  const FiniteGroup& g = tr.group;
  const long n = d.s_order;
  const DecompGroup D = decomposition_group(n, spec.l);
  std::vector<ElementarySummand> out;
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  GroupRingElement total = gr_zero(g);
  for (long k = 0; k < n; ++k) {
    if (done[static_cast<std::size_t>(k)]) continue;
    ElementarySummand E;
    E.k = k;
    long orbit = 0;
    for (long a : D.members) {
      long ka = nt::mod(a * k, n);
      if (!done[static_cast<std::size_t>(ka)]) ++orbit;
      done[static_cast<std::size_t>(ka)] = 1;
    }
    if (n == 1) orbit = 1;
    E.zeta_degree = orbit;
    E.zeta_order = n / std::gcd(k, n);
    E.e_i = idempotent_e_i(g, d.s_generator, n, k, spec.l);
    total = gr_add(total, E.e_i);
    E.ideal = ideal_of(g, whole(g), E.e_i);

    // U_i: elements of U fixing beta_k
    for (int u : d.complement) {
      auto a = detail::exponent_on(g, u, d.s_generator, n);
      if (!a) throw InternalConsistency("complement does not normalize <s>");
      if (nt::mod(k * *a - k, n) == 0) E.u_i.push_back(u);
    }
    const long index = static_cast<long>(d.complement.size() / E.u_i.size());
    if (!nt::is_power_of(index, spec.l)) throw InternalConsistency("stabilizer index is not a power of l");
    StarAlgebra& S = E.star;
    S.ln = index;
    for (long p = 1; p < index; p *= spec.l) ++S.n;
    // x: generator of U / U_i, the gamma lift when it works
    std::vector<int> cand{d.gamma_lift};
    cand.insert(cand.end(), d.complement.begin(), d.complement.end());
    S.x = -1;
    for (int u : cand) {
      std::vector<int> gens = E.u_i;
      gens.push_back(u);
      if (g.closure(gens).size() == d.complement.size()) {
        S.x = u;
        break;
      }
    }
    if (S.x < 0) throw InternalConsistency("U / U_i is not cyclic");
    S.tau = *detail::exponent_on(g, S.x, d.s_generator, n);
    E.verified.push_back(make_check("dim e_i A = l^n [Q_l(zeta_i):Q_l] |U_i|", E.ideal.dim,
                                    S.ln * E.zeta_degree * static_cast<long>(E.u_i.size())));

    E.u_spec = subgroup_spec(spec, tr, E.u_i);
    std::vector<int> bg = d.s_elements;
    bg.insert(bg.end(), E.u_i.begin(), E.u_i.end());
    S.b = g.closure(bg);
    E.g_spec = subgroup_spec(spec, tr, S.b);

    // base components: components of Q G_i meeting e_i
    const GSpec& gs = E.g_spec.spec;
    const Truncation gtr = truncate(gs);
    const auto GA = character_actions(gs);
    for (const auto& o : galois_orbits(GA, spec.l)) {
      ComponentReport rep = component_report(gs, gtr, GA, o);
      GroupRingElement f = gr_zero(g);
      for (int h = 0; h < gtr.h_order; ++h)
        f[static_cast<std::size_t>(E.g_spec.h_embedding[static_cast<std::size_t>(h)])] = rep.idempotent[static_cast<std::size_t>(h)];
      auto fe = gr_mul(g, f, E.e_i);
      if (gr_is_zero(fe)) continue;
      if (!gr_equal(fe, f)) throw InternalConsistency("component idempotent straddles e_i");
      BaseComponent bc;
      bc.report = std::move(rep);
      bc.idempotent = f;
      bc.ideal = ideal_of(g, S.b, f);
      S.base.push_back(std::move(bc));
    }
    long base_dim = 0;
    for (const auto& bc : S.base) base_dim += bc.ideal.dim;
    E.verified.push_back(make_check("sum of base component dims = [Q_l(zeta_i):Q_l] |U_i|", base_dim,
                                    E.zeta_degree * static_cast<long>(E.u_i.size())));
    orbit_analysis(g, S, spec.l);
    require(E.verified);
    out.push_back(std::move(E));
  }
  if (!gr_equal(total, gr_basis(g, g.identity()))) throw InternalConsistency("e_i do not sum to 1");
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (!gr_is_zero(gr_mul(g, out[a].e_i, out[b].e_i))) throw InternalConsistency("e_i e_j != 0");
  return out;
}

/// Dimension and center checks for one x-orbit of base components.
inline std::vector<Check> verify_orbit(const FiniteGroup& g, const StarAlgebra& S, const OrbitGroup& og, long l) {
  std::vector<Check> out;
  const BaseComponent& W = S.base[og.members.front()];
  long ld = 1;
  for (long k = 0; k < og.d; ++k) ld *= l;
  const int y = g.pow(S.x, ld);

  // F = Z(W) in B-class coordinates, and its y-fixed part
  std::vector<std::vector<int>> cls;
  std::map<int, std::size_t> cls_of;
  for (int b : S.b) {
    if (cls_of.count(b)) continue;
    std::set<int> c;
    for (int z : S.b) c.insert(g.conj(z, b));
    for (int z : c) cls_of[z] = cls.size();
    cls.emplace_back(c.begin(), c.end());
  }
  const CenterResult F = center_of(g, W.ideal);
  EchelonSpace<CycNumber> moved(cls.size());
  for (const auto& v : F.basis) {
    std::vector<CycNumber> pv(cls.size(), CycNumber(0));
    for (std::size_t t = 0; t < cls.size(); ++t) pv[cls_of.at(g.conj(y, cls[t][0]))] = v[t];
    for (std::size_t t = 0; t < cls.size(); ++t) pv[t] -= v[t];
    moved.insert(std::move(pv));
  }
  const long fixed = F.dim - static_cast<long>(moved.rank());

  const Ideal Wt = ideal_of(g, whole(g), og.idempotent);
  const long zwt = center_of(g, Wt).dim;
  long lnd = 1;
  for (long k = og.d; k < S.n; ++k) lnd *= l;
  out.push_back(make_check("Z(W~) = F^<x^{l^d}> (dimension)", zwt, fixed));
  out.push_back(make_check("dim Z(W~) = dim F / l^{n-d}", zwt * lnd, F.dim));

  std::vector<int> vg = S.b;
  vg.push_back(y);
  const Ideal V = ideal_of(g, g.closure(vg), W.idempotent);
  out.push_back(make_check("dim W~ = l^{2d} dim V", Wt.dim, ld * ld * V.dim));
  if (og.d == S.n) out.push_back(make_check("dim W~ = l^{2n} dim W", Wt.dim, S.ln * S.ln * W.ideal.dim));
  require(out);
  return out;
}


// ---- Laurent matrices in one variable x

using Laurent = std::map<long, CycNumber>;

inline Laurent laurent_mul(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [i, c] : a)
    for (const auto& [j, d] : b) r[i + j] += c * d;
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

using LaurentMatrix = std::vector<std::vector<Laurent>>;

inline LaurentMatrix laurent_matmul(const LaurentMatrix& a, const LaurentMatrix& b) {
  const std::size_t n = a.size();
  LaurentMatrix c(n, std::vector<Laurent>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].empty()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j].empty()) continue;
        for (const auto& [e, v] : laurent_mul(a[i][k], b[k][j])) c[i][j][e] += v;
      }
    }
  for (auto& row : c)
    for (auto& x : row)
      for (auto it = x.begin(); it != x.end();) it = it->second.is_zero() ? x.erase(it) : std::next(it);
  return c;
}

/// M_0: x^-1 on the superdiagonal, corner_scale * x^{ln-1} in the bottom-left corner.
inline LaurentMatrix shift_m0(long ln, const CycNumber& corner_scale = CycNumber(1)) {
  const auto n = static_cast<std::size_t>(ln);
  LaurentMatrix m(n, std::vector<Laurent>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) m[i][i + 1][-1] = CycNumber(1);
  m[n - 1][0][ln - 1] += corner_scale;
  return m;
}

/// M_0^{ln} = 1; throws when the identity fails.
inline void shift_power_check(long ln, const CycNumber& corner_scale = CycNumber(1)) {
  if (ln < 1) throw PreconditionViolation("shift_power_check: ln must be positive");
  const auto m0 = shift_m0(ln, corner_scale);
  auto p = m0;
  for (long k = 1; k < ln; ++k) p = laurent_matmul(p, m0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      bool ok = i == j ? (p[i][j].size() == 1 && p[i][j].count(0) && p[i][j].at(0) == CycNumber(1)) : p[i][j].empty();
      if (!ok) throw InternalConsistency("M_0^{l^n} != 1 at entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

// ---- the d = 0 centralizer computation, done with explicit matrices over V

struct CentralizerReport {
  long dim_w = 0, dim_f = 0, dim_e = 0, dim_v = 0, dim_a = 0, dim_centralizer = 0, dim_fixed = 0;
  std::vector<Check> verified;
};

inline constexpr long kCentralizerMaxLn = 3;
inline constexpr long kCentralizerMaxDimW = 8;

namespace detail {

using GRMatrix = std::vector<GroupRingElement>;  // ln x ln, row major

inline GRMatrix gr_matmul(const FiniteGroup& g, const GRMatrix& a, const GRMatrix& b, std::size_t n) {
  GRMatrix c(n * n, gr_zero(g));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (gr_is_zero(a[i * n + k])) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!gr_is_zero(b[k * n + j])) c[i * n + j] = gr_add(c[i * n + j], gr_mul(g, a[i * n + k], b[k * n + j]));
    }
  return c;
}

inline std::vector<CycNumber> flatten(const GRMatrix& m) {
  std::vector<CycNumber> v;
  for (const auto& e : m) v.insert(v.end(), e.begin(), e.end());
  return v;
}

inline std::vector<std::vector<CycNumber>> span_basis(const std::vector<GroupRingElement>& xs, std::size_t dim) {
  EchelonSpace<CycNumber> s(dim);
  for (const auto& x : xs) s.insert(x);
  return s.rows();
}

}  // namespace detail

/// For a component f of K[B] fixed by x, with G_fin = B u Bx u ... u Bx^{ln-1}:
/// builds V = (+) W x^j as a left W-module, w = 1 (x) x, A = (+) F (w^-1 x)^j,
/// and compares the centralizer of A in V_{ln x ln} with the w^-1 x fixed
/// matrices over W. w_scale multiplies w (1 for the genuine check).
inline CentralizerReport centralizer_check(const FiniteGroup& g, const Subgroup& b, int x, long ln, const GroupRingElement& f,
                                           const CycNumber& w_scale = CycNumber(1)) {
  using detail::GRMatrix;
  if (ln > kCentralizerMaxLn) throw ResourceLimit("centralizer_check: l^n", kCentralizerMaxLn);
  const std::size_t N = static_cast<std::size_t>(g.order());
  const std::size_t n = static_cast<std::size_t>(ln);
  CentralizerReport R;

  // coset decomposition z = b x^j
  std::vector<long> coset(N, -1);
  for (long j = 0; j < ln; ++j)
    for (int y : b) {
      int z = g.mul(y, g.pow(x, j));
      if (coset[static_cast<std::size_t>(z)] >= 0) throw PreconditionViolation("centralizer_check: x^j B overlap");
      coset[static_cast<std::size_t>(z)] = j;
    }
  for (long c : coset)
    if (c < 0) throw PreconditionViolation("centralizer_check: B and x do not cover G_fin");
  if (!gr_equal(gr_conj(g, x, f), f)) throw PreconditionViolation("centralizer_check: x moves the component (d > 0)");
  const Ideal W = ideal_of(g, b, f);
  if (W.dim > kCentralizerMaxDimW) throw ResourceLimit("centralizer_check: dim W", kCentralizerMaxDimW);

  auto decompose = [&](const GroupRingElement& u) {
    std::vector<GroupRingElement> c(n, gr_zero(g));
    for (std::size_t z = 0; z < N; ++z) {
      if (u[z].is_zero()) continue;
      const long j = coset[z];
      const int y = g.mul(static_cast<int>(z), g.inv(g.pow(x, j)));
      c[static_cast<std::size_t>(j)][static_cast<std::size_t>(y)] += u[z];
    }
    return c;
  };
  // matrix of a -> a_l a v on the basis 1, x, .., x^{ln-1}
  auto phi = [&](const GroupRingElement& a_l, const GroupRingElement& v) {
    GRMatrix m(n * n, gr_zero(g));
    for (std::size_t j = 0; j < n; ++j) {
      auto row = decompose(gr_mul(g, gr_mul(g, a_l, gr_basis(g, g.pow(x, static_cast<long>(j)))), v));
      for (std::size_t k = 0; k < n; ++k) m[j * n + k] = row[k];
    }
    return m;
  };
  auto scalar = [&](const GroupRingElement& a) {
    GRMatrix m(n * n, gr_zero(g));
    for (std::size_t j = 0; j < n; ++j) m[j * n + j] = a;
    return m;
  };

  std::vector<GroupRingElement> wgen, vgen, fgen;
  for (int y : b) wgen.push_back(gr_mul(g, f, gr_basis(g, y)));
  for (int z = 0; z < g.order(); ++z) vgen.push_back(gr_mul(g, f, gr_basis(g, z)));
  for (const auto& cl : conjugacy_classes(g.restricted(b))) {
    GroupRingElement k = gr_zero(g);
    for (int c : cl) k[static_cast<std::size_t>(b[static_cast<std::size_t>(c)])] = CycNumber(1);
    fgen.push_back(gr_mul(g, f, k));
  }
  const auto Wb = detail::span_basis(wgen, N), Vb = detail::span_basis(vgen, N), Fb = detail::span_basis(fgen, N);
  R.dim_w = static_cast<long>(Wb.size());
  R.dim_v = static_cast<long>(Vb.size());
  R.dim_f = static_cast<long>(Fb.size());
  R.verified.push_back(make_check("dim W (row-reduced) = dim f K[B]", R.dim_w, W.dim));
  R.verified.push_back(make_check("V = (+)_j W x^j (dimension)", R.dim_v, ln * R.dim_w));
  {
    EchelonSpace<CycNumber> moved(N);
    for (const auto& a : Fb) {
      auto d = gr_conj(g, x, a);
      for (std::size_t z = 0; z < N; ++z) d[z] -= a[z];
      moved.insert(d);
    }
    R.dim_e = R.dim_f - static_cast<long>(moved.rank());
  }
  R.verified.push_back(make_check("[F:E] = l^n", R.dim_f, ln * R.dim_e));

  // f (x) v -> l_f r_v is a homomorphism onto W_{ln x ln}
  {
    EchelonSpace<CycNumber> img(n * n * N);
    for (const auto& a : Fb)
      for (const auto& v : Vb) img.insert(detail::flatten(phi(a, v)));
    R.verified.push_back(make_check("F (x)_E V^op -> W_{l^n x l^n} is onto", static_cast<long>(img.rank()), ln * ln * R.dim_w));
    std::vector<GroupRingElement> fs{f, Fb.size() > 1 ? GroupRingElement(Fb[1]) : f};
    std::vector<GroupRingElement> vs{f, gr_mul(g, f, gr_basis(g, x))};
    if (b.size() > 1) vs.push_back(gr_mul(g, f, gr_basis(g, b[1])));
    bool hom = true;
    for (const auto& a1 : fs)
      for (const auto& v1 : vs)
        for (const auto& a2 : fs)
          for (const auto& v2 : vs)
            hom = hom && gr_equal(detail::flatten(detail::gr_matmul(g, phi(a1, v1), phi(a2, v2), n)),
                                  detail::flatten(phi(gr_mul(g, a1, a2), gr_mul(g, v1, v2))));
    R.verified.push_back({"f (x) v -> l_f r_v is multiplicative", hom, hom ? "sampled pairs agree" : "sampled pairs disagree"});
  }

  // w = 1 (x) x and the power identity (w^-1 x)^{l^n} = 1
  GRMatrix w = phi(f, gr_mul(g, f, gr_basis(g, x)));
  GRMatrix wg = w;
  for (auto& e : wg)
    for (auto& c : e) c = c * w_scale;
  R.verified.push_back({"w = 1 (x) x", gr_equal(detail::flatten(w), detail::flatten(wg)), "matrix of right multiplication by x"});
  const GRMatrix m0 = detail::gr_matmul(g, scalar(gr_mul(g, f, gr_basis(g, g.inv(x)))), wg, n);
  GRMatrix pw = m0;
  for (long k = 1; k < ln; ++k) pw = detail::gr_matmul(g, pw, m0, n);
  R.verified.push_back({"(w^-1 x)^{l^n} = 1", gr_equal(detail::flatten(pw), detail::flatten(scalar(f))), "M_0^{l^n} against the identity"});
  require(R.verified);

  GRMatrix minv = scalar(f);
  for (long k = 1; k < ln; ++k) minv = detail::gr_matmul(g, minv, m0, n);  // M_0^{-1} = w^-1 x
  {
    std::vector<GroupRingElement> as;
    GRMatrix p = scalar(f);
    for (long j = 0; j < ln; ++j) {
      for (const auto& a : Fb) {
        auto t = detail::gr_matmul(g, scalar(a), p, n);
        as.push_back(detail::flatten(t));
      }
      p = detail::gr_matmul(g, p, minv, n);
    }
    R.dim_a = static_cast<long>(detail::span_basis(as, n * n * N).size());
  }
  R.verified.push_back(make_check("A = (+)_j F (w^-1 x)^j (dimension)", R.dim_a, ln * R.dim_f));

  // entries commuting with F
  std::vector<std::vector<CycNumber>> cf;
  {
    EchelonSpace<CycNumber> sys(Vb.size());
    for (const auto& a : Fb) {
      std::vector<GroupRingElement> diffs;
      for (const auto& v : Vb) {
        auto d = gr_mul(g, a, v);
        auto e = gr_mul(g, v, a);
        for (std::size_t z = 0; z < N; ++z) d[z] -= e[z];
        diffs.push_back(d);
      }
      for (std::size_t z = 0; z < N; ++z) {
        std::vector<CycNumber> row(Vb.size());
        for (std::size_t t = 0; t < Vb.size(); ++t) row[t] = diffs[t][z];
        sys.insert(std::move(row));
      }
    }
    for (const auto& k : sys.kernel()) {
      GroupRingElement c = gr_zero(g);
      for (std::size_t t = 0; t < Vb.size(); ++t)
        if (!k[t].is_zero())
          for (std::size_t z = 0; z < N; ++z) c[z] += k[t] * Vb[t][z];
      cf.push_back(c);
    }
  }
  R.verified.push_back(make_check("centralizer of F in V = W (dimension)", static_cast<long>(cf.size()), R.dim_w));

  // matrices with entries in `entries` commuting with M_0
  auto commuting = [&](const std::vector<std::vector<CycNumber>>& entries) {
    std::vector<GRMatrix> unknowns;
    std::vector<std::vector<CycNumber>> images;
    for (std::size_t p = 0; p < n * n; ++p)
      for (const auto& c : entries) {
        GRMatrix X(n * n, gr_zero(g));
        X[p] = c;
        auto l = detail::flatten(detail::gr_matmul(g, m0, X, n));
        auto r = detail::flatten(detail::gr_matmul(g, X, m0, n));
        for (std::size_t t = 0; t < l.size(); ++t) l[t] -= r[t];
        images.push_back(std::move(l));
        unknowns.push_back(std::move(X));
      }
    EchelonSpace<CycNumber> sys(unknowns.size());
    for (std::size_t t = 0; t < n * n * N; ++t) {
      std::vector<CycNumber> row(unknowns.size());
      for (std::size_t u = 0; u < unknowns.size(); ++u) row[u] = images[u][t];
      sys.insert(std::move(row));
    }
    EchelonSpace<CycNumber> out(n * n * N);
    for (const auto& k : sys.kernel()) {
      std::vector<CycNumber> v(n * n * N, CycNumber(0));
      for (std::size_t u = 0; u < unknowns.size(); ++u) {
        if (k[u].is_zero()) continue;
        auto fl = detail::flatten(unknowns[u]);
        for (std::size_t t = 0; t < v.size(); ++t)
          if (!fl[t].is_zero()) v[t] += k[u] * fl[t];
      }
      out.insert(std::move(v));
    }
    return out;
  };
  const auto Z1 = commuting(cf);
  const auto Z2 = commuting(Wb);
  R.dim_centralizer = static_cast<long>(Z1.rank());
  R.dim_fixed = static_cast<long>(Z2.rank());
  bool same = Z1.rank() == Z2.rank();
  for (const auto& r : Z2.rows()) same = same && Z1.contains(r);
  R.verified.push_back({"Z(A) = (W_{l^n x l^n})^<w^-1 x>", same,
                        std::to_string(R.dim_centralizer) + " vs " + std::to_string(R.dim_fixed)});
  R.verified.push_back(make_check("[V_{l^n x l^n}:E] = [A:E][Z(A):E]", ln * ln * R.dim_v * R.dim_e, R.dim_a * R.dim_centralizer));
  require(R.verified);
  return R;
}

}  // namespace iwadec
