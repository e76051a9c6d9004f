// Sparse multivariate polynomials over exact rationals, truncated by total
// degree.  Small and slow by design: they carry Taylor expansions of
// normalized Schur polynomials in a handful of variables (N <= 8).
#pragma once

#include "schurtile/rat.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace schurtile {

class MPoly {
 public:
  using Expo = std::vector<int>;

  explicit MPoly(int nvars, int maxdeg) : nvars_(nvars), maxdeg_(maxdeg) {}

  static MPoly constant(int nvars, int maxdeg, const Rat& v) {
    MPoly p(nvars, maxdeg);
    if (v != 0) p.c_[Expo(nvars, 0)] = v;
    return p;
  }

  // The monomial y_i (0-based variable index).
  static MPoly var(int nvars, int maxdeg, int i) {
    MPoly p(nvars, maxdeg);
    Expo e(nvars, 0);
    e[i] = 1;
    if (maxdeg >= 1) p.c_[e] = 1;
    return p;
  }

  int nvars() const { return nvars_; }
  int maxdeg() const { return maxdeg_; }
  bool is_zero() const { return c_.empty(); }

  Rat coeff(const Expo& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rat(0) : it->second;
  }

  const std::map<Expo, Rat>& terms() const { return c_; }

  void add_term(const Expo& e, const Rat& v) {
    if (static_cast<int>(e.size()) != nvars_)
      throw std::invalid_argument("MPoly::add_term: arity mismatch");
    if (total(e) > maxdeg_ || v == 0) return;
    auto [it, fresh] = c_.emplace(e, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) c_.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r(a.nvars_, std::min(a.maxdeg_, b.maxdeg_));
    for (const auto& [e, v] : a.c_) r.add_term(e, v);
    for (const auto& [e, v] : b.c_) r.add_term(e, v);
    return r;
  }

  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    return a + b * Rat(-1);
  }

  friend MPoly operator*(const MPoly& a, const Rat& s) {
    MPoly r(a.nvars_, a.maxdeg_);
    if (s == 0) return r;
    for (const auto& [e, v] : a.c_) r.c_[e] = v * s;
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.nvars_, std::min(a.maxdeg_, b.maxdeg_));
    Expo e(a.nvars_);
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) {
        int deg = 0;
        for (int i = 0; i < a.nvars_; ++i) deg += (e[i] = ea[i] + eb[i]);
        if (deg <= r.maxdeg_) r.add_term(e, va * vb);
      }
    return r;
  }

  // log(p) for p with constant term 1.
  MPoly log() const {
    Expo zero(nvars_, 0);
    if (coeff(zero) != 1)
      throw std::domain_error("MPoly::log: constant term must be 1");
    MPoly u = *this - constant(nvars_, maxdeg_, Rat(1));
    MPoly acc(nvars_, maxdeg_);
    MPoly up = constant(nvars_, maxdeg_, Rat(1));
    for (int j = 1; j <= maxdeg_; ++j) {
      up = up * u;
      if (up.is_zero()) break;
      acc = acc + up * Rat((j % 2) ? 1 : -1, j);
    }
    return acc;
  }

  Rat eval(const std::vector<Rat>& y) const {
    Rat s(0);
    for (const auto& [e, v] : c_) {
      Rat t = v;
      for (int i = 0; i < nvars_; ++i)
        if (e[i]) t *= rat_pow(y[i], e[i]);
      s += t;
    }
    return s;
  }

  // Embed into a wider variable set: our variable i becomes target slot[i].
  MPoly embed(int new_nvars, const std::vector<int>& slot) const {
    MPoly r(new_nvars, maxdeg_);
    for (const auto& [e, v] : c_) {
      Expo ne(new_nvars, 0);
      for (int i = 0; i < nvars_; ++i) ne[slot[i]] = e[i];
      r.c_[ne] = v;
    }
    return r;
  }

 private:
  static int total(const Expo& e) {
    return std::accumulate(e.begin(), e.end(), 0);
  }

  int nvars_, maxdeg_;
  std::map<Expo, Rat> c_;
};

}  // namespace schurtile
