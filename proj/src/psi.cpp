#include "octic/arrangement.hpp"
#include "octic/error.hpp"

namespace octic {

using E = GaloisField::elem;

E x_octic(const GaloisField& F, E x, E y, E z, E v) {
  E r = x;
  r = F.mul(r, F.sub(x, z));
  r = F.mul(r, F.sub(x, v));
  r = F.mul(r, F.sub(F.sub(x, z), v));
  r = F.mul(r, y);
  r = F.mul(r, F.sub(y, z));
  r = F.mul(r, F.sub(y, v));
  r = F.mul(r, F.add(F.add(y, v), F.add(z, z)));
  return r;
}

bool on_double_octic(const GaloisField& F, const Pt5& pt) {
  return F.mul(pt[4], pt[4]) == x_octic(F, pt[0], pt[1], pt[2], pt[3]);
}

// the published formula, term by term
Pt5 psi_eval(const GaloisField& F, E s2, const Pt5& pt) {
  if (F.mul(s2, s2) != F.from_int(2)) fail(ErrorKind::InconsistentData, "given sqrt 2 does not square to 2");
  const E x = pt[0], y = pt[1], z = pt[2], v = pt[3], u = pt[4];
  const E two = F.from_int(2), three = F.from_int(3), half = F.inv(two);
  auto m = [&](E a, E b) { return F.mul(a, b); };
  // v^2 - 2xv + zv + 2x^2 - 2xz
  E h = F.add(F.add(F.sub(m(v, v), m(two, m(x, v))), m(z, v)), F.sub(m(two, m(x, x)), m(two, m(x, z))));
  E y3v = F.add(m(three, y), v);
  E z3v = F.add(m(three, z), v);

  Pt5 out;
  out[0] = m(m(m(x, F.sub(F.sub(x, v), z)), F.sub(z, v)), y3v);
  out[1] = m(half, m(m(z3v, h), F.sub(y, v)));
  out[2] = m(half, m(m(h, y3v), F.add(z, v)));
  out[3] = m(half, m(m(h, y3v), F.sub(z, v)));
  E w = m(m(s2, half), F.sub(v, z));
  w = m(w, m(y3v, y3v));
  w = m(w, m(v, v));
  w = m(w, F.sub(F.sub(m(two, x), v), z));
  w = m(w, F.add(v, z));
  w = m(w, z3v);
  w = m(w, m(h, h));
  out[4] = m(w, u);
  bool all_zero = true;
  for (E c : out) all_zero = all_zero && c == 0;
  if (all_zero) fail(ErrorKind::Indeterminate, "point lies in the indeterminacy locus of Psi");
  return out;
}

}  // namespace octic
