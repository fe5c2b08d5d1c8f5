#include "octic/gf.hpp"

#include "octic/error.hpp"

namespace octic {

namespace {

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

GaloisField::GaloisField(i64 p, int k) : p_(p), k_(k), q_(1), up_(static_cast<elem>(p)) {
  if (p < 3 || !is_prime(p)) fail(ErrorKind::Unsupported, "GF(p^k) needs an odd prime, got " + std::to_string(p));
  if (k != 1 && k != 2 && k != 4) fail(ErrorKind::Unsupported, "GF(p^k) supports k in {1,2,4}");
  for (int i = 0; i < k; ++i) q_ *= p;
  if (q_ > (1 << 26)) fail(ErrorKind::Unsupported, "field too large for tables");
  if (k >= 2) n_ = smallest_nonresidue(p);
  if (k == 4) {
    QuadExtField F2(p);
    for (i64 j = 1; j < p * p; ++j) {
      if (fq_char(F2, F2.from_index(j)) == -1) {
        m_ = static_cast<elem>(j);
        break;
      }
    }
  }

  auto digits = [&](i64 idx) {
    std::vector<std::uint32_t> d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    return d;
  };
  auto index_of = [&](const std::vector<std::uint32_t>& d) {
    i64 idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + d[i];
    return static_cast<elem>(idx);
  };

  neg_.resize(q_);
  lo_.resize(q_);
  hi_.resize(q_);
  for (i64 i = 0; i < q_; ++i) {
    auto d = digits(i);
    for (auto& c : d) c = c == 0 ? 0 : static_cast<std::uint32_t>(p - c);
    neg_[i] = index_of(d);
    lo_[i] = static_cast<elem>(i % p);
    hi_[i] = static_cast<elem>((i / p) % p);
  }

  auto slow_pow = [&](std::vector<std::uint32_t> x, i64 e) {
    std::vector<std::uint32_t> r(k, 0);
    r[0] = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, x);
      x = slow_mul(x, x);
      e >>= 1;
    }
    return r;
  };

  std::vector<std::uint32_t> one(k, 0);
  one[0] = 1;
  auto fac = prime_factors(q_ - 1);
  i64 gidx = -1;
  for (i64 c = 2; c < q_ && gidx < 0; ++c) {
    auto g = digits(c);
    bool ok = true;
    for (i64 f : fac) {
      if (slow_pow(g, (q_ - 1) / f) == one) {
        ok = false;
        break;
      }
    }
    if (ok) gidx = c;
  }
  if (gidx < 0) fail(ErrorKind::Unsupported, "no multiplicative generator found");

  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  auto g = digits(gidx);
  std::vector<std::uint32_t> cur = one;
  for (i64 i = 0; i < q_ - 1; ++i) {
    elem e = index_of(cur);
    exp_[i] = e;
    exp_[i + q_ - 1] = e;
    log_[e] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, g);
  }
  chi_.assign(q_, 0);
  for (i64 x = 1; x < q_; ++x) chi_[x] = (log_[x] % 2 == 0) ? 1 : -1;
}

std::vector<std::uint32_t> GaloisField::slow_mul(const std::vector<std::uint32_t>& x,
                                                 const std::vector<std::uint32_t>& y) const {
  const i64 p = p_;
  auto mul2 = [&](i64 a0, i64 a1, i64 b0, i64 b1, i64& c0, i64& c1) {
    c0 = (a0 * b0 + n_ * ((a1 * b1) % p)) % p;
    c1 = (a0 * b1 + a1 * b0) % p;
  };
  std::vector<std::uint32_t> r(k_, 0);
  if (k_ == 1) {
    r[0] = static_cast<std::uint32_t>((i64)x[0] * y[0] % p);
  } else if (k_ == 2) {
    i64 c0, c1;
    mul2(x[0], x[1], y[0], y[1], c0, c1);
    r[0] = (std::uint32_t)c0;
    r[1] = (std::uint32_t)c1;
  } else {
    i64 m0 = m_ % p, m1 = m_ / p;
    i64 u0, u1, v0, v1, w0, w1, z0, z1, t0, t1;
    mul2(x[0], x[1], y[0], y[1], u0, u1);  // X0 Y0
    mul2(x[2], x[3], y[2], y[3], v0, v1);  // X1 Y1
    mul2(v0, v1, m0, m1, t0, t1);          // m X1 Y1
    mul2(x[0], x[1], y[2], y[3], w0, w1);  // X0 Y1
    mul2(x[2], x[3], y[0], y[1], z0, z1);  // X1 Y0
    r[0] = (std::uint32_t)((u0 + t0) % p);
    r[1] = (std::uint32_t)((u1 + t1) % p);
    r[2] = (std::uint32_t)((w0 + z0) % p);
    r[3] = (std::uint32_t)((w1 + z1) % p);
  }
  return r;
}

GaloisField::elem GaloisField::add_digits(elem x, elem y) const {
  elem out = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    elem a = x % up_ + y % up_;
    if (a >= up_) a -= up_;
    out += a * scale;
    scale *= up_;
    x /= up_;
    y /= up_;
  }
  return out;
}

GaloisField::elem GaloisField::inv(elem x) const {
  if (x == 0) fail(ErrorKind::NonIntegral, "inverse of zero");
  std::uint32_t l = log_[x];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

GaloisField::elem GaloisField::pow(elem x, i64 e) const {
  if (x == 0) return e == 0 ? 1 : 0;
  i64 l = (i64)log_[x] * floor_mod(e, q_ - 1) % (q_ - 1);
  return exp_[l];
}

GaloisField::elem GaloisField::sqrt(elem x) const {
  if (x == 0) return 0;
  if (log_[x] % 2 != 0) fail(ErrorKind::InconsistentData, "sqrt of a non-square");
  return exp_[log_[x] / 2];
}

GaloisField::elem GaloisField::from_residue(const Residue& r) const {
  if (r.b != 0 && k_ < 2) fail(ErrorKind::InconsistentData, "degree-two residue does not embed in F_p");
  return from_coords(r.a, r.b);
}

GaloisField::elem GaloisField::from_coords(i64 a, i64 b) const {
  if (k_ == 1) {
    if (floor_mod(b, p_) != 0) fail(ErrorKind::InconsistentData, "t does not live in F_p");
    return from_int(a);
  }
  return static_cast<elem>(floor_mod(a, p_) + p_ * floor_mod(b, p_));
}

}  // namespace octic
