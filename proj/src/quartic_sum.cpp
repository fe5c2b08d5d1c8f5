#include <thread>

#include "octic/counter.hpp"

namespace octic {

LegendreTraceTable::LegendreTraceTable(const GaloisField& F, int threads) : q_(F.q()), t_(F.q(), 0) {
  const std::int8_t* chi = F.chi_table();
  std::vector<std::int8_t> c(q_);
  for (i64 x = 0; x < q_; ++x) c[x] = (std::int8_t)(chi[x] * chi[F.sub((Elem)x, 1)]);
  // T(l) = sum_x c(x) chi(x - l)
  auto fill = [&](i64 lo, i64 hi) {
    for (i64 l = lo; l < hi; ++l) {
      Elem nl = F.neg((Elem)l);
      int s = 0;
      for (i64 x = 0; x < q_; ++x)
        if (c[x]) s += c[x] * chi[F.add((Elem)x, nl)];
      t_[l] = s;
    }
  };
  if (threads <= 1) {
    fill(0, q_);
    return;
  }
  std::vector<std::thread> pool;
  i64 chunk = (q_ + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) pool.emplace_back(fill, std::min(q_, t * chunk), std::min(q_, (t + 1) * chunk));
  for (auto& th : pool) th.join();
}

i64 quartic_char_sum(const GaloisField& F, const LegendreTraceTable& T, Elem c, const std::array<Elem, 4>& r) {
  if (c == 0) return 0;
  const i64 q = F.q();
  const int cc = F.chi(c);
  if (r[0] != r[1] && r[0] != r[2] && r[0] != r[3] && r[1] != r[2] && r[1] != r[3] && r[2] != r[3]) {
    // x = r1 + 1/u, then u = s2 + (s3 - s2) t
    Elem d2 = F.sub(r[0], r[1]), d3 = F.sub(r[0], r[2]), d4 = F.sub(r[0], r[3]);
    Elem s2 = F.neg(F.inv(d2)), s3 = F.neg(F.inv(d3)), s4 = F.neg(F.inv(d4));
    Elem den = F.sub(s3, s2);
    Elem lambda = F.div(F.sub(s4, s2), den);
    int sign = F.chi(d2) * F.chi(d3) * F.chi(d4) * F.chi(den);
    return cc * (sign * T(lambda) - 1);
  }
  // group equal roots
  Elem val[4];
  int mult[4], k = 0;
  for (Elem x : r) {
    int i = 0;
    while (i < k && val[i] != x) ++i;
    if (i == k) {
      val[k] = x;
      mult[k++] = 0;
    }
    ++mult[i];
  }
  i64 s;
  if (k == 1) {
    s = q - 1;
  } else if (k == 2) {
    s = (mult[0] == 2) ? q - 2 : -1;
  } else {
    // one double root a and simple roots b, c
    int a = mult[0] == 2 ? 0 : (mult[1] == 2 ? 1 : 2);
    Elem b = val[(a + 1) % 3], e = val[(a + 2) % 3];
    s = -1 - F.chi(F.mul(F.sub(val[a], b), F.sub(val[a], e)));
  }
  return cc * s;
}

}  // namespace octic
