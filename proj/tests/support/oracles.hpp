#pragma once

// Independent brute-force references shared by the unit and acceptance suites.

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "octic/arrangement.hpp"
#include "octic/counter.hpp"
#include "octic/fsl.hpp"

namespace oracle {

using namespace octic;

// points of u^2 = f over F_q in P(1,1,1,1,4): one representative per point of P^3, every u tried
inline i64 naive_count(const ReducedArrangement& A) {
  const GaloisField& F = *A.F;
  const i64 q = F.q();
  std::vector<Elem> sq(q);
  for (i64 u = 0; u < q; ++u) sq[u] = F.mul((Elem)u, (Elem)u);
  auto f_at = [&](const std::array<Elem, 4>& x) {
    Elem prod = 1;
    for (const auto& l : A.forms) {
      Elem s = 0;
      for (int j = 0; j < 4; ++j) s = F.add(s, F.mul(l[j], x[j]));
      prod = F.mul(prod, s);
    }
    return prod;
  };
  i64 n = 0;
  auto visit = [&](const std::array<Elem, 4>& x) {
    Elem f = f_at(x);
    for (i64 u = 0; u < q; ++u) n += sq[u] == f;
  };
  for (int lead = 0; lead < 4; ++lead) {
    const int free = 3 - lead;
    i64 total = 1;
    for (int i = 0; i < free; ++i) total *= q;
    for (i64 idx = 0; idx < total; ++idx) {
      std::array<Elem, 4> x{};
      x[lead] = 1;
      i64 r = idx;
      for (int j = lead + 1; j < 4; ++j) {
        x[j] = (Elem)(r % q);
        r /= q;
      }
      visit(x);
    }
  }
  return n;
}

inline i64 brute_quartic(const GaloisField& F, Elem c, const std::array<Elem, 4>& roots) {
  i64 s = 0;
  for (i64 x = 0; x < F.q(); ++x) {
    Elem v = c;
    for (Elem r : roots) v = F.mul(v, F.sub((Elem)x, r));
    s += F.chi(v);
  }
  return s;
}

inline i64 brute_legendre_trace(const GaloisField& F, Elem lambda) {
  i64 s = 0;
  for (i64 x = 0; x < F.q(); ++x) {
    Elem X = (Elem)x;
    s += F.chi(F.mul(F.mul(X, F.sub(X, 1)), F.sub(X, lambda)));
  }
  return s;
}

// Non-cubic by enumeration of every homogeneous cubic form (coefficient vector over the monomials
// x_i x_j x_k, i <= j <= k): V is non-cubic iff each form vanishing on V vanishes on all of F_2^n.
inline bool brute_noncubic(const std::vector<F2Vec>& V, int n) {
  const int N = 1 << n;
  std::vector<std::uint32_t> mono;  // evaluation bitmask over the N points
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        F2Vec m = (1u << i) | (1u << j) | (1u << k);
        std::uint32_t mask = 0;
        for (int v = 0; v < N; ++v)
          if ((m & (F2Vec)v) == m) mask |= 1u << v;
        mono.push_back(mask);
      }
  std::uint32_t on = 0;
  for (F2Vec v : V) on |= 1u << v;
  const std::uint64_t forms = 1ull << mono.size();
  std::uint32_t f = 0;
  for (std::uint64_t g = 1; g < forms; ++g) {
    // Gray code: flip one monomial per step
    f ^= mono[__builtin_ctzll(g)];
    if ((f & on) == 0 && f != 0) return false;
  }
  return true;
}

// invertible n x n matrix over F_2 as column images of the basis vectors
inline std::vector<F2Vec> random_gl(int n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<F2Vec> cols(n);
    for (auto& c : cols) c = (F2Vec)(rng() & ((1u << n) - 1));
    std::vector<F2Vec> m = cols;
    int rank = 0;
    for (int bit = 0; bit < n; ++bit) {
      int sel = -1;
      for (int i = rank; i < n; ++i)
        if (m[i] >> bit & 1) sel = i;
      if (sel < 0) continue;
      std::swap(m[rank], m[sel]);
      for (int i = 0; i < n; ++i)
        if (i != rank && (m[i] >> bit & 1)) m[i] ^= m[rank];
      ++rank;
    }
    if (rank == n) return cols;
  }
}

inline F2Vec apply(const std::vector<F2Vec>& cols, F2Vec v) {
  F2Vec r = 0;
  for (size_t i = 0; i < cols.size(); ++i)
    if (v >> i & 1) r ^= cols[i];
  return r;
}

// rank of integer form coefficient rows modulo p
inline int rank_mod_p(const Arrangement& arr, const std::vector<int>& idx, i64 p) {
  std::vector<std::array<i64, 4>> m;
  for (int i : idx) {
    std::array<i64, 4> r{};
    for (int j = 0; j < 4; ++j) r[j] = floor_mod(arr.forms[i].c[j].a, p);
    m.push_back(r);
  }
  int rank = 0;
  for (int col = 0; col < 4 && rank < (int)m.size(); ++col) {
    int sel = -1;
    for (int i = rank; i < (int)m.size(); ++i)
      if (m[i][col]) sel = i;
    if (sel < 0) continue;
    std::swap(m[rank], m[sel]);
    i64 inv = invmod(m[rank][col], p);
    for (int i = 0; i < (int)m.size(); ++i) {
      if (i == rank || !m[i][col]) continue;
      i64 f = mulmod(m[i][col], inv, p);
      for (int j = 0; j < 4; ++j) m[i][j] = floor_mod(m[i][j] - f * m[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

// eight planes with small integer coefficients, possibly with forced concurrences
inline Arrangement random_rational_arrangement(std::mt19937_64& rng, int range = 3) {
  const QuadRing R(2);
  std::uniform_int_distribution<int> d(-range, range);
  Arrangement a;
  a.label = "random";
  a.ring = R;
  a.bad_primes = {2};
  while (a.forms.size() < 8) {
    LinearForm f;
    for (auto& c : f.c) c = QuadInt::from_int(R, d(rng));
    if (f.is_zero()) continue;
    bool dup = false;
    for (const auto& g : a.forms) dup = dup || same_plane(f, g);
    if (!dup) a.forms.push_back(f);
  }
  return a;
}

inline bool same_shape(const Census& a, const Census& b) {
  for (int m = 2; m <= 8; ++m)
    if (a.lines_of(m) != b.lines_of(m) || a.points_of(m) != b.points_of(m)) return false;
  return true;
}

}  // namespace oracle
