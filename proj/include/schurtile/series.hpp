// Truncated Laurent series in one and two variables.
//
// A Series1<T> stores coefficients of z^e for e in [lo, ord); exponents below
// lo are exactly zero, exponents >= ord are *unknown* (truncated).  coeff()
// throws when asked for an unknown coefficient, so truncation mistakes fail
// loudly instead of silently returning garbage.  All arithmetic propagates
// the tightest truncation order that is actually justified.
//
// T is an exact rational (Rat) or double; the germ/limit conversions run over
// Rat, the numerical layer occasionally over double, and tests cross-check.
#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace schurtile {

namespace detail {
// Sentinel order for exactly-known series (constants, monomials).
constexpr int kOrdInf = std::numeric_limits<int>::max() / 4;
inline int ord_add(int a, int b) {
  return (a >= kOrdInf || b >= kOrdInf) ? kOrdInf : a + b;
}
}  // namespace detail

template <typename T>
class Series1 {
 public:
  Series1() : lo_(0), ord_(detail::kOrdInf) {}  // exact zero

  static Series1 zero(int ord) {
    Series1 s;
    s.lo_ = ord;
    s.ord_ = ord;
    return s;
  }

  static Series1 monomial(const T& c, int exp) {
    Series1 s;
    s.lo_ = exp;
    s.ord_ = detail::kOrdInf;
    s.c_.assign(1, c);
    s.trim();
    return s;
  }

  static Series1 constant(const T& c) { return monomial(c, 0); }

  // Coefficients of z^{lo}, z^{lo+1}, ... known through z^{ord-1}; with the
  // default ord the series is an exact (Laurent) polynomial.
  Series1(int lo, std::vector<T> coeffs, int ord = detail::kOrdInf)
      : lo_(lo), ord_(ord), c_(std::move(coeffs)) {
    if (detail::ord_add(lo_, static_cast<int>(c_.size())) > ord_)
      throw std::invalid_argument("Series1: more coefficients than the order");
    trim();
  }

  int lo() const { return lo_; }
  int ord() const { return ord_; }
  // One past the last explicitly stored exponent (coefficients in
  // [terms_end, ord) are exactly zero).
  int terms_end() const { return lo_ + static_cast<int>(c_.size()); }
  bool is_zero() const { return c_.empty(); }
  // Truncation bookkeeping: an all-zero series is O(z^{ord}), so its
  // effective valuation for product orders is ord itself.
  int val() const { return c_.empty() ? ord_ : lo_; }

  const T& coeff(int e) const {
    if (e >= ord_) throw std::out_of_range("Series1::coeff: beyond truncation");
    if (e < lo_ || e >= lo_ + static_cast<int>(c_.size())) return zero_value();
    return c_[e - lo_];
  }

  Series1& truncate(int new_ord) {
    if (new_ord < ord_) {
      ord_ = new_ord;
      if (lo_ >= ord_) {
        c_.clear();
        lo_ = ord_;
      } else {
        c_.resize(ord_ - lo_);
      }
      trim();
    }
    return *this;
  }

  friend Series1 operator+(const Series1& a, const Series1& b) {
    const int ord = std::min(a.ord_, b.ord_);
    const int lo = std::min(a.c_.empty() ? ord : a.lo_,
                            b.c_.empty() ? ord : b.lo_);
    Series1 r = zero(ord);
    if (lo >= ord) return r;
    // stored range may stop before ord when both inputs are exact
    const int hi = std::min(ord, std::max(a.terms_end(), b.terms_end()));
    if (hi <= lo) return r;
    r.lo_ = lo;
    r.c_.assign(hi - lo, T(0));
    for (int e = lo; e < hi; ++e) {
      if (e >= a.lo_ && e < a.lo_ + static_cast<int>(a.c_.size()))
        r.c_[e - lo] += a.c_[e - a.lo_];
      if (e >= b.lo_ && e < b.lo_ + static_cast<int>(b.c_.size()))
        r.c_[e - lo] += b.c_[e - b.lo_];
    }
    r.trim();
    return r;
  }

  friend Series1 operator-(const Series1& a, const Series1& b) {
    return a + (b * T(-1));
  }

  friend Series1 operator*(const Series1& a, const T& s) {
    Series1 r = a;
    if (s == T(0)) {
      r.c_.clear();
      r.lo_ = r.ord_;
      return r;
    }
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend Series1 operator*(const T& s, const Series1& a) { return a * s; }

  friend Series1 operator*(const Series1& a, const Series1& b) {
    const int ord = std::min(detail::ord_add(a.ord_, b.val()),
                             detail::ord_add(b.ord_, a.val()));
    Series1 r = zero(ord);
    if (a.c_.empty() || b.c_.empty()) return r;
    const int lo = a.lo_ + b.lo_;
    if (lo >= ord) return r;
    const int hi = std::min(ord, a.terms_end() + b.terms_end() - 1);
    r.lo_ = lo;
    r.c_.assign(hi - lo, T(0));
    for (int i = 0; i < static_cast<int>(a.c_.size()); ++i) {
      if (a.c_[i] == T(0)) continue;
      for (int j = 0; j < static_cast<int>(b.c_.size()); ++j) {
        const int e = a.lo_ + i + b.lo_ + j;
        if (e >= hi) break;
        r.c_[e - lo] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }

  Series1 shifted(int k) const {  // multiply by z^k
    Series1 r = *this;
    r.lo_ += k;
    r.ord_ = detail::ord_add(r.ord_, k);
    return r;
  }

  Series1 derivative() const {
    Series1 r = zero(ord_ == detail::kOrdInf ? ord_ : ord_ - 1);
    if (c_.empty()) return r;
    r.lo_ = lo_ - 1;
    r.c_.assign(c_.size(), T(0));
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
      r.c_[i] = c_[i] * T(lo_ + i);
    r.trim();
    return r;
  }

  // Termwise antiderivative; requires no z^{-1} term in range.
  Series1 antiderivative() const {
    Series1 r = zero(detail::ord_add(ord_, 1));
    if (c_.empty()) return r;
    r.lo_ = lo_ + 1;
    r.c_.assign(c_.size(), T(0));
    for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
      const int e = lo_ + i;
      if (e == -1) {
        if (c_[i] != T(0))
          throw std::domain_error("antiderivative: nonzero z^{-1} term");
        continue;
      }
      r.c_[i] = c_[i] / T(e + 1);
    }
    r.trim();
    return r;
  }

  // Multiplicative inverse of f = z^{lo} (c_0 + c_1 z + ...), c_0 != 0.
  // For exactly-known input the expansion depth must be supplied.
  Series1 inverse(int depth = 0) const {
    if (c_.empty()) throw std::domain_error("inverse of zero series");
    if (c_[0] == T(0)) throw std::logic_error("inverse: untrimmed series");
    const int m = static_cast<int>(
        ord_ == detail::kOrdInf
            ? std::max<int>(depth, static_cast<int>(c_.size()))
            : ord_ - lo_);  // unit-part terms
    std::vector<T> u(m, T(0));
    u[0] = T(1) / c_[0];
    for (int k = 1; k < m; ++k) {
      T acc(0);
      for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j)
        acc += c_[j] * u[k - j];
      u[k] = -acc / c_[0];
    }
    // The inverse is a truncated expansion even when the input is exact.
    return Series1(-lo_, std::move(u), -lo_ + m);
  }

  // Integer power (negative allowed when invertible).
  Series1 pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Series1 acc = constant(T(1));
    Series1 base = *this;
    int e = k;
    while (e) {
      if (e & 1) acc = acc * base;
      base = e > 1 ? base * base : base;
      e >>= 1;
    }
    // x^0 of a truncated series is still only known to the truncation order.
    if (k == 0) acc.ord_ = std::min(acc.ord_, detail::kOrdInf);
    return acc;
  }

  // this(g(z)) for a power series this (lo >= 0) and g with valuation >= 1.
  Series1 compose(const Series1& g) const {
    if (lo_ < 0) throw std::domain_error("compose: Laurent outer series");
    if (g.val() < 1) throw std::domain_error("compose: g must vanish at 0");
    const int F = ord_;
    Series1 acc = zero(g.ord_);
    for (int e = (F == detail::kOrdInf
                      ? lo_ + static_cast<int>(c_.size())
                      : F) - 1;
         e >= 0; --e) {
      acc = acc * g + Series1::constant(coeff_or_zero(e));
    }
    if (F != detail::kOrdInf) acc.truncate(std::min(acc.ord(), F * g.val()));
    return acc;
  }

  // Compositional inverse h of g = c1 z + c2 z^2 + ..., c1 != 0:
  // h(g(z)) = z up to the truncation order.
  Series1 functional_inverse() const {
    if (val() != 1 || c_.empty() || lo_ != 1)
      throw std::domain_error("functional_inverse: need valuation exactly 1");
    const int G = ord_ == detail::kOrdInf
                      ? lo_ + static_cast<int>(c_.size())
                      : ord_;
    // Powers g^j truncated at z^G.
    std::vector<Series1> gp(G);
    gp[0] = constant(T(1));
    Series1 gt = *this;
    gt.truncate(G);
    for (int j = 1; j < G; ++j) gp[j] = gp[j - 1] * gt;
    const T c1 = c_[0];
    std::vector<T> h(G - 1, T(0));  // h_k = h[k-1]
    for (int k = 1; k < G; ++k) {
      T rhs = (k == 1) ? T(1) : T(0);
      for (int j = 1; j < k; ++j) {
        if (gp[j].ord() > k) rhs -= h[j - 1] * gp[j].coeff(k);
      }
      T c1k = c1;
      for (int i = 1; i < k; ++i) c1k *= c1;
      h[k - 1] = rhs / c1k;
    }
    return Series1(1, std::move(h), G);
  }

  // log(f) for f = 1 + higher-order terms.
  Series1 log() const {
    if (lo_ != 0 || c_.empty() || c_[0] != T(1))
      throw std::domain_error("log: need constant term 1");
    return (derivative() * inverse()).antiderivative();
  }

  T residue() const { return coeff(-1); }

 private:
  int ord_minus_lo() const {
    return ord_ == detail::kOrdInf ? static_cast<int>(c_.size()) : ord_ - lo_;
  }
  static const T& zero_value() {
    static const T z(0);
    return z;
  }
  T coeff_or_zero(int e) const {
    if (e < lo_ || e >= lo_ + static_cast<int>(c_.size())) return T(0);
    return c_[e - lo_];
  }
  void trim() {
    while (!c_.empty() && c_.front() == T(0)) {
      c_.erase(c_.begin());
      ++lo_;
    }
    if (c_.empty()) lo_ = ord_;
  }

  int lo_, ord_;
  std::vector<T> c_;
};

// Dense bivariate truncated Laurent series: coefficients of z^{e1} w^{e2} for
// e1 in [lo1, ord1), e2 in [lo2, ord2).
template <typename T>
class Series2 {
 public:
  Series2() : lo1_(0), ord1_(0), lo2_(0), ord2_(0) {}

  static Series2 zero(int lo1, int ord1, int lo2, int ord2) {
    Series2 s;
    s.lo1_ = lo1;
    s.ord1_ = ord1;
    s.lo2_ = lo2;
    s.ord2_ = ord2;
    s.c_.assign(static_cast<std::size_t>(s.n1()) * s.n2(), T(0));
    return s;
  }

  int lo1() const { return lo1_; }
  int lo2() const { return lo2_; }
  int ord1() const { return ord1_; }
  int ord2() const { return ord2_; }
  int n1() const { return std::max(0, ord1_ - lo1_); }
  int n2() const { return std::max(0, ord2_ - lo2_); }

  T& at(int e1, int e2) {
    check(e1, e2);
    return c_[static_cast<std::size_t>(e1 - lo1_) * n2() + (e2 - lo2_)];
  }

  const T& coeff(int e1, int e2) const {
    if (e1 >= ord1_ || e2 >= ord2_)
      throw std::out_of_range("Series2::coeff: beyond truncation");
    if (e1 < lo1_ || e2 < lo2_) return zero_value();
    return c_[static_cast<std::size_t>(e1 - lo1_) * n2() + (e2 - lo2_)];
  }

  friend Series2 operator+(const Series2& a, const Series2& b) {
    Series2 r = zero(std::min(a.lo1_, b.lo1_), std::min(a.ord1_, b.ord1_),
                     std::min(a.lo2_, b.lo2_), std::min(a.ord2_, b.ord2_));
    for (int e1 = r.lo1_; e1 < r.ord1_; ++e1)
      for (int e2 = r.lo2_; e2 < r.ord2_; ++e2)
        r.at(e1, e2) = a.get_or_zero(e1, e2) + b.get_or_zero(e1, e2);
    return r;
  }

  friend Series2 operator*(const Series2& a, const T& s) {
    Series2 r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  friend Series2 operator-(const Series2& a, const Series2& b) {
    return a + (b * T(-1));
  }

  // Multiply by a univariate series in the first or second variable.
  Series2 mul_var1(const Series1<T>& f) const {
    Series2 r = zero(lo1_ + f.val(), std::min(detail::ord_add(ord1_, f.val()),
                                              detail::ord_add(f.ord(), lo1_)),
                     lo2_, ord2_);
    accumulate_mul(r, f, /*var1=*/true);
    return r;
  }
  Series2 mul_var2(const Series1<T>& f) const {
    Series2 r = zero(lo1_, ord1_, lo2_ + f.val(),
                     std::min(detail::ord_add(ord2_, f.val()),
                              detail::ord_add(f.ord(), lo2_)));
    accumulate_mul(r, f, /*var1=*/false);
    return r;
  }

  T residue2() const { return coeff(-1, -1); }

 private:
  static const T& zero_value() {
    static const T z(0);
    return z;
  }
  void check(int e1, int e2) const {
    if (e1 < lo1_ || e1 >= ord1_ || e2 < lo2_ || e2 >= ord2_)
      throw std::out_of_range("Series2::at: outside stored window");
  }
  T get_or_zero(int e1, int e2) const {
    if (e1 < lo1_ || e1 >= ord1_ || e2 < lo2_ || e2 >= ord2_) return T(0);
    return c_[static_cast<std::size_t>(e1 - lo1_) * n2() + (e2 - lo2_)];
  }
  void accumulate_mul(Series2& r, const Series1<T>& f, bool var1) const {
    for (int e1 = lo1_; e1 < ord1_; ++e1)
      for (int e2 = lo2_; e2 < ord2_; ++e2) {
        const T& base = c_[static_cast<std::size_t>(e1 - lo1_) * n2() +
                           (e2 - lo2_)];
        if (base == T(0)) continue;
        for (int k = f.lo(); k < std::min(f.ord(), f.terms_end()); ++k) {
          const int t1 = var1 ? e1 + k : e1;
          const int t2 = var1 ? e2 : e2 + k;
          if (t1 >= r.ord1_ || t2 >= r.ord2_) break;
          if (t1 < r.lo1_ || t2 < r.lo2_) continue;
          const T& fc = f.coeff(k);
          if (fc != T(0)) r.at(t1, t2) += base * fc;
        }
      }
  }

  int lo1_, ord1_, lo2_, ord2_;
  std::vector<T> c_;
};

}  // namespace schurtile
