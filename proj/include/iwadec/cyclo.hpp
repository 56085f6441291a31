#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N), dense power basis modulo
// the N-th cyclotomic polynomial, with lazy lifting to lcm conductors.

#include <algorithm>
#include <map>
#include <optional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iwadec/errors.hpp"
#include "iwadec/numtheory.hpp"
#include "iwadec/rational.hpp"

namespace iwadec {

namespace detail {

/// Integer data for Q(zeta_n): Phi_n and the reductions of x^k, 0 <= k < max(2 phi, n).
struct CycloTable {
  long n = 1;
  long phi = 1;
  std::vector<long> poly;
  std::vector<std::vector<long>> xpow;
};

inline std::vector<long> int_poly_divexact(std::vector<long> num, const std::vector<long>& den) {
  // den monic
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    q[i - dn] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

inline std::vector<long> cyclotomic_poly(long n) {
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = int_poly_divexact(p, cyclotomic_poly(d));
  return p;
}

inline std::shared_ptr<const CycloTable> build_table(long n) {
  auto t = std::make_shared<CycloTable>();
  t->n = n;
  t->poly = cyclotomic_poly(n);
  t->phi = static_cast<long>(t->poly.size()) - 1;
  const long phi = t->phi;
  const long count = std::max(2 * phi, n);
  t->xpow.assign(static_cast<std::size_t>(count), std::vector<long>(static_cast<std::size_t>(phi), 0));
  for (long k = 0; k < count; ++k) {
    auto& row = t->xpow[static_cast<std::size_t>(k)];
    if (k < phi) {
      row[static_cast<std::size_t>(k)] = 1;
      continue;
    }
    // x^k = x * x^{k-1}; shift and fold the top coefficient through Phi_n.
    const auto& prev = t->xpow[static_cast<std::size_t>(k - 1)];
    long top = prev[static_cast<std::size_t>(phi - 1)];
    for (long j = phi - 1; j > 0; --j) row[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j - 1)];
    row[0] = 0;
    for (long j = 0; j < phi; ++j) row[static_cast<std::size_t>(j)] -= top * t->poly[static_cast<std::size_t>(j)];
  }
  return t;
}

inline const CycloTable& cyclo_table(long n) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const CycloTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_table(n)).first;
  return *it->second;
}

}  // namespace detail

/// Element of Q(zeta_N) in the power basis zeta^0 .. zeta^{phi(N)-1}.
class CycNumber {
 public:
  CycNumber() : n_(1), c_(1) {}
  CycNumber(long v) : n_(1), c_{Rational(v)} {}            // NOLINT(google-explicit-constructor)
  CycNumber(const Rational& v) : n_(1), c_{v} {}          // NOLINT(google-explicit-constructor)

  /// zeta_N^k.
  static CycNumber zeta(long n, long k = 1) {
    check_conductor(n);
    const auto& t = detail::cyclo_table(n);
    CycNumber z;
    z.n_ = n;
    z.c_.assign(static_cast<std::size_t>(t.phi), Rational());
    const auto& row = t.xpow[static_cast<std::size_t>(nt::mod(k, n))];
    for (long j = 0; j < t.phi; ++j) z.c_[static_cast<std::size_t>(j)] = Rational(row[static_cast<std::size_t>(j)]);
    return z;
  }

  /// Reduce an arbitrary polynomial in zeta_N (ascending coefficients) modulo Phi_N.
  static CycNumber from_poly(long n, const std::vector<Rational>& p) {
    check_conductor(n);
    const auto& t = detail::cyclo_table(n);
    CycNumber z;
    z.n_ = n;
    z.c_.assign(static_cast<std::size_t>(t.phi), Rational());
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k].is_zero()) continue;
      z.add_scaled_power(t, static_cast<long>(k) % n, p[k]);
    }
    return z;
  }

  /// Coefficients already in the power basis 1, zeta, .., zeta^{phi-1}.
  static CycNumber from_reduced(long n, std::vector<Rational> c) {
    check_conductor(n);
    if (static_cast<long>(c.size()) != detail::cyclo_table(n).phi) throw MalformedInput("coefficient count is not phi(n)");
    CycNumber z;
    z.n_ = n;
    z.c_ = std::move(c);
    return z;
  }

  /// z = num / den with integer num below 2^31 in absolute value; false when it does not fit.
  static bool small_form(const CycNumber& z, long& den, std::vector<long>& num) {
    constexpr long kLim = 1L << 31;
    den = 1;
    for (const auto& c : z.c_) {
      if (c.is_zero()) continue;
      const mpz_class d = c.den();
      if (!d.fits_slong_p()) return false;
      den = std::lcm(den, d.get_si());
      if (den >= kLim) return false;
    }
    num.assign(z.c_.size(), 0);
    for (std::size_t k = 0; k < z.c_.size(); ++k) {
      if (z.c_[k].is_zero()) continue;
      mpz_class v = z.c_[k].num() * (den / z.c_[k].den().get_si());
      if (abs(v) >= kLim) return false;
      num[k] = v.get_si();
    }
    return true;
  }

  long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
  }
  bool is_rational() const {
    for (std::size_t j = 1; j < c_.size(); ++j)
      if (!c_[j].is_zero()) return false;
    return true;
  }
  /// Rational value; only meaningful when is_rational().
  Rational rational_part() const { return c_[0]; }

  /// Image in Q(zeta_M) for a multiple M of the conductor.
  CycNumber lift(long m) const {
    if (m == n_) return *this;
    if (m <= 0 || m % n_ != 0) throw MalformedInput("cannot lift conductor " + std::to_string(n_) + " to " + std::to_string(m));
    const auto& t = detail::cyclo_table(m);
    CycNumber z;
    z.n_ = m;
    z.c_.assign(static_cast<std::size_t>(t.phi), Rational());
    const long step = m / n_;
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) z.add_scaled_power(t, static_cast<long>(k) * step % m, c_[k]);
    return z;
  }

  /// zeta -> zeta^a.
  CycNumber galois(long a) const {
    if (std::gcd(nt::mod(a, n_), n_) != 1 && n_ != 1)
      throw MalformedInput("Galois exponent not a unit modulo the conductor");
    if (n_ == 1) return *this;
    const auto& t = detail::cyclo_table(n_);
    CycNumber z;
    z.n_ = n_;
    z.c_.assign(c_.size(), Rational());
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) z.add_scaled_power(t, nt::mod(a * static_cast<long>(k), n_), c_[k]);
    return z;
  }

  CycNumber& operator+=(const CycNumber& o) {
    if (o.n_ != n_) return *this = *this + o;
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  CycNumber& operator-=(const CycNumber& o) {
    if (o.n_ != n_) return *this = *this - o;
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }
  CycNumber& operator/=(const CycNumber& o) { return *this = *this * o.inverse(); }

  friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
    if (a.n_ != b.n_) {
      long m = std::lcm(a.n_, b.n_);
      return a.lift(m) + b.lift(m);
    }
    CycNumber r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
  }
  friend CycNumber operator-(const CycNumber& a, const CycNumber& b) {
    if (a.n_ != b.n_) {
      long m = std::lcm(a.n_, b.n_);
      return a.lift(m) - b.lift(m);
    }
    CycNumber r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }
  CycNumber operator-() const {
    CycNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    if (a.n_ != b.n_) {
      if (a.n_ == 1) return b.scaled(a.c_[0]);
      if (b.n_ == 1) return a.scaled(b.c_[0]);
      long m = std::lcm(a.n_, b.n_);
      return a.lift(m) * b.lift(m);
    }
    if (a.n_ == 1) return CycNumber(a.c_[0] * b.c_[0]);
    const auto& t = detail::cyclo_table(a.n_);
    const std::size_t phi = a.c_.size();
    if (auto fast = mul_small(a, b, t)) return std::move(*fast);
    std::vector<mpq_class> prod(2 * phi - 1);
    bool any = false;
    for (std::size_t i = 0; i < phi; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        if (b.c_[j].is_zero()) continue;
        prod[i + j] += a.c_[i].raw() * b.c_[j].raw();
        any = true;
      }
    }
    CycNumber r;
    r.n_ = a.n_;
    r.c_.assign(phi, Rational());
    if (!any) return r;
    std::vector<mpq_class> acc(prod.begin(), prod.begin() + static_cast<long>(phi));
    for (std::size_t k = phi; k < prod.size(); ++k) {
      if (sgn(prod[k]) == 0) continue;
      const auto& row = t.xpow[k];
      for (std::size_t j = 0; j < phi; ++j)
        if (row[j] != 0) acc[j] += prod[k] * row[j];
    }
    for (std::size_t j = 0; j < phi; ++j) r.c_[j] = Rational(std::move(acc[j]));
    return r;
  }
  friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

  CycNumber scaled(const Rational& s) const {
    CycNumber r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
  CycNumber inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic number");
    if (n_ == 1) return CycNumber(c_[0].inverse());
    const auto& t = detail::cyclo_table(n_);
    using P = std::vector<mpq_class>;
    auto trim = [](P& p) { while (!p.empty() && sgn(p.back()) == 0) p.pop_back(); };
    // Invariant: sa * z = a and sb * z = b modulo Phi_N.
    P a(t.poly.begin(), t.poly.end()), b, sa, sb{mpq_class(1)};
    for (const auto& x : c_) b.push_back(x.raw());
    trim(b);
    while (b.size() > 1) {
      P q(a.size() - b.size() + 1), r = a;
      const std::size_t db = b.size() - 1;
      for (std::size_t i = r.size() - 1; i >= db; --i) {
        mpq_class c = r[i] / b.back();
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
        if (i == db) break;
      }
      trim(r);
      P sr = sa;
      if (sr.size() < q.size() + sb.size() - 1) sr.resize(q.size() + sb.size() - 1);
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < sb.size(); ++j) sr[i + j] -= q[i] * sb[j];
      trim(sr);
      a = std::move(b);
      sa = std::move(sb);
      b = std::move(r);
      sb = std::move(sr);
    }
    std::vector<Rational> inv;
    for (auto& x : sb) inv.emplace_back(mpq_class(x / b[0]));
    return from_poly(n_, inv);
  }

  friend bool operator==(const CycNumber& a, const CycNumber& b) {
    if (a.n_ != b.n_) {
      long m = std::lcm(a.n_, b.n_);
      return a.lift(m) == b.lift(m);
    }
    return a.c_ == b.c_;
  }

  /// Smallest conductor dividing N that contains this element.
  CycNumber minimized() const {
    if (is_rational()) return CycNumber(c_[0]);
    for (long d : nt::divisors(n_)) {
      if (d == n_) break;
      if (d % 2 == 1 && n_ % (2 * d) == 0) continue;  // Q(zeta_d) = Q(zeta_2d) for odd d
      // test membership: fixed by all a = 1 mod d
      bool fixed = true;
      for (long a = 1 + d; a < n_ && fixed; a += d)
        if (std::gcd(a, n_) == 1 && !(galois(a) == *this)) fixed = false;
      if (!fixed) continue;
      // recover coordinates in Q(zeta_d) by solving through the lift
      return project_to(d);
    }
    return *this;
  }

  /// "1/3 + 2*z9^2 - z9^5" style rendering in the power basis.
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      Rational c = c_[k];
      bool neg = c.sign() < 0;
      if (neg) c = -c;
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << "-";
      first = false;
      if (k == 0) {
        os << c.str();
        continue;
      }
      if (!c.is_one()) os << c.str() << "*";
      os << "z" << n_;
      if (k > 1) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  /// Common denominator and integer numerators, when everything fits in 31 bits.
  static std::optional<CycNumber> mul_small(const CycNumber& a, const CycNumber& b, const detail::CycloTable& t) {
    long da, db;
    std::vector<long> na, nb;
    if (!small_form(a, da, na) || !small_form(b, db, nb)) return std::nullopt;
    const std::size_t phi = na.size();
    std::vector<__int128> prod(2 * phi - 1, 0);
    for (std::size_t i = 0; i < phi; ++i) {
      if (na[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j)
        if (nb[j] != 0) prod[i + j] += static_cast<__int128>(na[i]) * nb[j];
    }
    for (std::size_t k = phi; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      const auto& row = t.xpow[k];
      for (std::size_t j = 0; j < phi; ++j)
        if (row[j] != 0) prod[j] += prod[k] * row[j];
    }
    const long den = da * db;
    CycNumber r;
    r.n_ = a.n_;
    r.c_.assign(phi, Rational());
    constexpr __int128 kMax = static_cast<__int128>(1) << 62;
    for (std::size_t j = 0; j < phi; ++j) {
      if (prod[j] == 0) continue;
      if (prod[j] >= kMax || prod[j] <= -kMax) return std::nullopt;
      r.c_[j] = Rational(static_cast<long>(prod[j]), den);
    }
    return r;
  }

  static void check_conductor(long n) {
    if (n <= 0) throw MalformedInput("conductor must be positive");
  }

  void add_scaled_power(const detail::CycloTable& t, long k, const Rational& s) {
    const auto& row = t.xpow[static_cast<std::size_t>(k)];
    for (long j = 0; j < t.phi; ++j)
      if (row[static_cast<std::size_t>(j)] != 0) c_[static_cast<std::size_t>(j)] += s * Rational(row[static_cast<std::size_t>(j)]);
  }

  CycNumber project_to(long d) const {
    // Elements of Q(zeta_d) lift to combinations of zeta_n^{k n/d}; solve by
    // matching against the lifted basis (triangular in practice, solved generally).
    const long phid = nt::euler_phi(d);
    std::vector<CycNumber> basis;
    for (long k = 0; k < phid; ++k) basis.push_back(zeta(d, k).lift(n_));
    const std::size_t rows = c_.size();
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(static_cast<std::size_t>(phid) + 1));
    for (std::size_t r = 0; r < rows; ++r) {
      for (long k = 0; k < phid; ++k) m[r][static_cast<std::size_t>(k)] = basis[static_cast<std::size_t>(k)].c_[r];
      m[r][static_cast<std::size_t>(phid)] = c_[r];
    }
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t col = 0; col < static_cast<std::size_t>(phid) && row < rows; ++col) {
      std::size_t p = row;
      while (p < rows && m[p][col].is_zero()) ++p;
      if (p == rows) continue;
      std::swap(m[p], m[row]);
      Rational inv = m[row][col].inverse();
      for (auto& x : m[row]) x *= inv;
      for (std::size_t r = 0; r < rows; ++r)
        if (r != row && !m[r][col].is_zero()) {
          Rational f = m[r][col];
          for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
        }
      pivcol.push_back(col);
      ++row;
    }
    std::vector<Rational> out(static_cast<std::size_t>(phid));
    for (std::size_t i = 0; i < pivcol.size(); ++i) out[pivcol[i]] = m[i][static_cast<std::size_t>(phid)];
    CycNumber z;
    z.n_ = d;
    z.c_ = std::move(out);
    return z;
  }

  long n_;
  std::vector<Rational> c_;
};

/// The automorphism zeta_N -> zeta_N^a of Q(zeta_N).
struct GaloisAut {
  long conductor = 1;
  long exponent = 1;

  GaloisAut() = default;
  GaloisAut(long n, long a) : conductor(n), exponent(nt::mod(a, n)) {
    if (n <= 0) throw MalformedInput("Galois conductor must be positive");
    if (n > 1 && std::gcd(exponent, n) != 1) throw MalformedInput("Galois exponent must be a unit");
    if (n == 1) exponent = 0;
  }

  /// sigma_a o sigma_b = sigma_{ab}.
  friend GaloisAut operator*(const GaloisAut& a, const GaloisAut& b) {
    if (a.conductor != b.conductor) throw MalformedInput("composing Galois automorphisms of different conductors");
    return GaloisAut(a.conductor, a.exponent * b.exponent);
  }
  friend bool operator==(const GaloisAut&, const GaloisAut&) = default;
};

/// Image of z under sigma. z is lifted to the automorphism's conductor when
/// its own conductor divides it; an automorphism of a smaller field acting on
/// a larger conductor is a malformed request.
inline CycNumber galois_apply(const GaloisAut& sigma, const CycNumber& z) {
  if (sigma.conductor == 1) return z;
  if (sigma.conductor % z.conductor() == 0) return z.lift(sigma.conductor).galois(sigma.exponent);
  throw MalformedInput("Galois automorphism of conductor " + std::to_string(sigma.conductor) +
                       " cannot act on conductor " + std::to_string(z.conductor()));
}

/// A subgroup of (Z/N)^x, members sorted.
struct DecompGroup {
  long conductor = 1;
  std::vector<long> members{0};

  bool contains(long a) const {
    long r = conductor == 1 ? 0 : nt::mod(a, conductor);
    return std::binary_search(members.begin(), members.end(), r);
  }
  std::size_t order() const { return members.size(); }
  friend bool operator==(const DecompGroup&, const DecompGroup&) = default;
};

/// Subgroup of (Z/N)^x generated by the given units.
inline DecompGroup subgroup_generated(long n, const std::vector<long>& gens) {
  if (n <= 0) throw MalformedInput("conductor must be positive");
  DecompGroup d;
  d.conductor = n;
  if (n == 1) return d;
  std::set<long> s{1};
  std::vector<long> frontier{1};
  while (!frontier.empty()) {
    std::vector<long> next;
    for (long x : frontier)
      for (long g : gens) {
        long y = nt::mod(x * nt::mod(g, n), n);
        if (std::gcd(y, n) != 1) throw MalformedInput("subgroup generator is not a unit");
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  d.members.assign(s.begin(), s.end());
  return d;
}

/// Model of G(Q_l(zeta_N)/Q_l): full units on the l-power part of N and the
/// Frobenius-generated subgroup <l> on the prime-to-l part, glued by CRT.
inline DecompGroup decomposition_group(long n, long l) {
  if (n <= 0) throw MalformedInput("decomposition_group: conductor must be positive");
  if (l == 2 || !nt::is_prime(l)) throw MalformedInput("decomposition_group: l must be an odd prime");
  DecompGroup d;
  d.conductor = n;
  if (n == 1) return d;
  const long lpart = nt::p_part(n, l);
  const long rest = n / lpart;
  std::set<long> frob;
  long x = 1 % rest;
  do {
    frob.insert(x);
    x = x * (l % rest) % rest;
  } while (x != 1 % rest);
  std::vector<long> mem;
  for (long a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    if (frob.count(a % rest)) mem.push_back(a);
  }
  d.members = std::move(mem);
  return d;
}

/// Sum of sigma(z) over sigma in D; the result is checked to be D-invariant.
inline CycNumber trace_to_fixed(const CycNumber& z, const DecompGroup& d) {
  if (d.conductor % z.conductor() != 0)
    throw MalformedInput("trace_to_fixed: conductor " + std::to_string(z.conductor()) + " does not divide " +
                         std::to_string(d.conductor));
  CycNumber zl = z.lift(d.conductor);
  CycNumber sum = CycNumber(0).lift(d.conductor);
  for (long a : d.members) sum += d.conductor == 1 ? zl : zl.galois(a);
  for (long a : d.members)
    if (d.conductor > 1 && !(sum.galois(a) == sum)) throw InternalConsistency("trace_to_fixed result is not D-invariant");
  return sum;
}

}  // namespace iwadec
