#pragma once

// Dense univariate polynomials over an exact field and the rational function
// field Q(zeta)(T) used as the coefficient field of the crossed-product algebra.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iwadec/cyclo.hpp"
#include "iwadec/errors.hpp"

namespace iwadec {

template <typename C>
class Poly {
 public:
  Poly() = default;
  Poly(C c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// The variable T.
  static Poly var() { return Poly(std::vector<C>{C(0), C(1)}); }
  static Poly monomial(C c, std::size_t deg) {
    std::vector<C> v(deg + 1, C(0));
    v[deg] = std::move(c);
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const C& lead() const { return c_.back(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(std::size_t k) const { return k < c_.size() ? c_[k] : C(0); }
  bool is_monic() const { return !c_.empty() && c_.back() == C(1); }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const C& s) const {
    if (s.is_zero()) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<C> rem = a.c_;
    std::vector<C> q(a.c_.size() - b.c_.size() + 1, C(0));
    const C inv = b.lead().inverse();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t i = rem.size() - 1;; --i) {
      if (!rem[i].is_zero()) {
        C c = rem[i] * inv;
        for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b.c_[j];
        q[i - db] = std::move(c);
      }
      if (i == db) break;
    }
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  /// Exact division; throws if the remainder is nonzero.
  static Poly divexact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalConsistency("inexact polynomial division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
  }

  /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  C eval(const C& x) const {
    C acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  template <typename F>
  Poly map(F&& f) const {
    std::vector<C> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(f(x));
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (!(a.c_[k] == b.c_[k])) return false;
    return true;
  }

  std::string str(const std::string& var = "T") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[k].str() << ")";
      if (k >= 1) os << "*" << var;
      if (k > 1) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<C> c_;
};

using CycPoly = Poly<CycNumber>;

/// Reduced fraction num/den over Q(zeta)[T] with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(CycNumber(1)) {}
  RatFunc(long v) : num_(CycNumber(v)), den_(CycNumber(1)) {}               // NOLINT
  RatFunc(const CycNumber& c) : num_(c), den_(CycNumber(1)) {}              // NOLINT
  RatFunc(CycPoly p) : num_(std::move(p)), den_(CycNumber(1)) {}            // NOLINT
  RatFunc(CycPoly num, CycPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
  }

  static RatFunc T() { return RatFunc(CycPoly::var()); }

  const CycPoly& num() const { return num_; }
  const CycPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True when the value is a constant of the cyclotomic field.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  CycNumber constant() const { return num_.is_zero() ? CycNumber(0) : num_.coeff(0); }

  RatFunc inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return RatFunc(den_, num_);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.degree() == 0 && b.den_.degree() == 0) {
      RatFunc r;
      r.num_ = a.num_ * b.num_;
      r.den_ = CycPoly(CycNumber(1));
      return r;
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  /// Coefficientwise action of a Galois automorphism on num and den.
  RatFunc galois(const GaloisAut& s) const {
    auto f = [&](const CycNumber& c) { return galois_apply(s, c); };
    return RatFunc(num_.map(f), den_.map(f));
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string str() const {
    if (den_.degree() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = CycPoly(CycNumber(1));
      return;
    }
    CycPoly g = CycPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = CycPoly::divexact(num_, g);
      den_ = CycPoly::divexact(den_, g);
    }
    CycNumber lc = den_.lead();
    if (!(lc == CycNumber(1))) {
      CycNumber inv = lc.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  CycPoly num_;
  CycPoly den_;
};

}  // namespace iwadec
