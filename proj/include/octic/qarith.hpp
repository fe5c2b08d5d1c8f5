#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace octic {

using i64 = std::int64_t;
using i128 = __int128;

i64 floor_mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 b, i64 e, i64 m);
i64 invmod(i64 a, i64 m);
bool is_prime(i64 n);
// exact floor square root; returns false when n is negative or not a square
bool exact_sqrt(i128 n, i128& root);
i128 isqrt(i128 n);

int legendre(i64 a, i64 p);
i64 sqrt_mod(i64 a, i64 p);
i64 smallest_nonresidue(i64 p);

class PrimeField {
 public:
  explicit PrimeField(i64 p);
  i64 p() const { return p_; }
  i64 elem(i64 x) const { return floor_mod(x, p_); }
  i64 add(i64 a, i64 b) const { return elem(a + b); }
  i64 sub(i64 a, i64 b) const { return elem(a - b); }
  i64 neg(i64 a) const { return elem(-a); }
  i64 mul(i64 a, i64 b) const { return mulmod(a, b, p_); }
  i64 inv(i64 a) const { return invmod(a, p_); }
  i64 pow(i64 a, i64 e) const { return powmod(a, e, p_); }

 private:
  i64 p_;
};

struct Fp2Elem {
  i64 a = 0;  // coordinate on 1
  i64 b = 0;  // coordinate on t
  bool operator==(const Fp2Elem&) const = default;
};

// F_p[t]/(t^2 - n), n the smallest positive non-residue
class QuadExtField {
 public:
  explicit QuadExtField(i64 p);
  i64 p() const { return p_; }
  i64 n() const { return n_; }
  i64 q() const { return p_ * p_; }

  Fp2Elem make(i64 a, i64 b) const { return {floor_mod(a, p_), floor_mod(b, p_)}; }
  Fp2Elem add(Fp2Elem x, Fp2Elem y) const { return make(x.a + y.a, x.b + y.b); }
  Fp2Elem sub(Fp2Elem x, Fp2Elem y) const { return make(x.a - y.a, x.b - y.b); }
  Fp2Elem neg(Fp2Elem x) const { return make(-x.a, -x.b); }
  Fp2Elem mul(Fp2Elem x, Fp2Elem y) const;
  Fp2Elem conj(Fp2Elem x) const { return make(x.a, -x.b); }
  i64 norm(Fp2Elem x) const;
  Fp2Elem inv(Fp2Elem x) const;
  Fp2Elem pow(Fp2Elem x, i64 e) const;

  // table layout shared with GaloisField: index = b*p + a
  i64 index(Fp2Elem x) const { return x.b * p_ + x.a; }
  Fp2Elem from_index(i64 i) const { return {i % p_, i / p_}; }

 private:
  i64 p_;
  i64 n_;
};

int fq_char(const PrimeField& F, i64 x);
int fq_char(const QuadExtField& F, Fp2Elem x);

class QuadRing {
 public:
  QuadRing() = default;
  explicit QuadRing(i64 d);
  i64 d() const { return d_; }
  // basis {1, (1+sqrt d)/2} when d = 1 mod 4, else {1, sqrt d}
  bool half_basis() const { return half_; }
  // omega^2 = s + t*omega
  i64 omega_s() const { return half_ ? (d_ - 1) / 4 : d_; }
  i64 omega_t() const { return half_ ? 1 : 0; }
  std::string name() const;
  bool operator==(const QuadRing& o) const { return d_ == o.d_; }

 private:
  i64 d_ = 2;
  bool half_ = false;
};

struct QuadInt {
  QuadRing ring;
  i64 a = 0;  // coordinate on 1
  i64 b = 0;  // coordinate on omega

  QuadInt() = default;
  QuadInt(QuadRing r, i64 a_, i64 b_) : ring(r), a(a_), b(b_) {}
  static QuadInt from_int(QuadRing r, i64 n) { return QuadInt(r, n, 0); }
  // value (A + B sqrt d) / den, den in {1, 2}
  static QuadInt from_sqrt(QuadRing r, i64 A, i64 B, i64 den = 1);
  // returns (A, B) with value (A + B sqrt d) / 2
  std::pair<i64, i64> twice_sqrt_coords() const;

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
  bool operator==(const QuadInt& o) const { return ring == o.ring && a == o.a && b == o.b; }

  QuadInt operator+(const QuadInt& o) const;
  QuadInt operator-(const QuadInt& o) const;
  QuadInt operator-() const { return QuadInt(ring, -a, -b); }
  QuadInt operator*(const QuadInt& o) const;
  QuadInt operator*(i64 k) const;
  QuadInt conj() const;
  i64 norm() const;
  i64 trace() const;
  std::optional<QuadInt> exact_div(const QuadInt& o) const;
  bool is_square() const;

  std::string str() const;
};

enum class PrimeKind { Split, Inert, Ramified };

struct Residue {
  i64 a = 0;
  i64 b = 0;  // zero for degree-one residue fields
  bool operator==(const Residue&) const = default;
};

struct PrimeIdeal {
  QuadRing ring;
  i64 p = 0;
  PrimeKind kind = PrimeKind::Split;
  QuadInt generator;
  i64 norm = 0;
  int degree = 1;
  i64 sqrt_image = 0;     // image of sqrt d in F_p (split, ramified)
  Fp2Elem sqrt_image2{};  // image of sqrt d in F_{p^2} (inert)

  // split primes are told apart by the image of sqrt d; inert ones by p
  bool same_as(const PrimeIdeal& o) const;
  std::string label() const { return generator.str(); }
};

const char* kind_name(PrimeKind k);

std::vector<PrimeIdeal> split_prime(QuadRing ring, i64 p);
PrimeIdeal prime_from_generator(const QuadInt& g);
PrimeIdeal conjugate(const PrimeIdeal& P);

Residue reduce_mod(const QuadInt& x, const PrimeIdeal& P);
Residue reduce_mod_sqrt(QuadRing ring, i64 A, i64 B, i64 den, const PrimeIdeal& P);
bool divides(const PrimeIdeal& P, const QuadInt& x);
// chi of the residue in O_K / P, in {-1, 0, 1}
int residue_chi(const QuadInt& x, const PrimeIdeal& P);
// 1 = non-residue, 0 = residue
int residue_quad_char(const QuadInt& x, const PrimeIdeal& P);
bool residue_is_square(const Residue& r, const PrimeIdeal& P);

}  // namespace octic
