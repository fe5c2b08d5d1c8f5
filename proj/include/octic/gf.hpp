#pragma once

#include <cstdint>
#include <vector>

#include "octic/qarith.hpp"

namespace octic {

// GF(p^k) for k in {1, 2, 4}, built as a tower F_p -> F_p[t]/(t^2-n) -> F_{p^2}[s]/(s^2-m).
// Elements are indices in [0, q); the base-p digits of an index are its tower coordinates,
// so F_p and F_{p^2} sit inside as the indices below p and p^2.
class GaloisField {
 public:
  using elem = std::uint32_t;

  GaloisField(i64 p, int k);

  i64 p() const { return p_; }
  int k() const { return k_; }
  i64 q() const { return q_; }

  elem zero() const { return 0; }
  elem one() const { return 1; }

  elem add(elem x, elem y) const {
    if (k_ == 1) {
      elem s = x + y;
      return s >= up_ ? s - up_ : s;
    }
    if (k_ == 2) {
      elem a = lo_[x] + lo_[y];
      if (a >= up_) a -= up_;
      elem b = hi_[x] + hi_[y];
      if (b >= up_) b -= up_;
      return a + up_ * b;
    }
    return add_digits(x, y);
  }
  elem neg(elem x) const { return neg_[x]; }
  elem sub(elem x, elem y) const { return add(x, neg_[y]); }
  elem mul(elem x, elem y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  elem inv(elem x) const;
  elem div(elem x, elem y) const { return mul(x, inv(y)); }
  elem pow(elem x, i64 e) const;
  int chi(elem x) const { return chi_[x]; }
  const std::int8_t* chi_table() const { return chi_.data(); }
  bool is_square(elem x) const { return chi_[x] >= 0; }
  elem sqrt(elem x) const;

  elem from_int(i64 v) const { return static_cast<elem>(floor_mod(v, p_)); }
  // residue of degree 1 or 2 over F_p, laid out as QuadExtField does
  elem from_residue(const Residue& r) const;
  // element of F_{p^2} = F_p[t]/(t^2-n) from coordinates
  elem from_coords(i64 a, i64 b) const;
  elem generator() const { return exp_[1]; }

 private:
  elem add_digits(elem x, elem y) const;
  std::vector<std::uint32_t> slow_mul(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) const;

  i64 p_;
  int k_;
  i64 q_;
  elem up_;
  i64 n_ = 0;       // t^2 = n
  elem m_ = 0;      // s^2 = m (index in F_{p^2})
  std::vector<std::uint32_t> log_;
  std::vector<elem> exp_;
  std::vector<std::int8_t> chi_;
  std::vector<elem> neg_;
  std::vector<elem> lo_, hi_;
};

}  // namespace octic
