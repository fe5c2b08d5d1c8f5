#include "octic/arrangement.hpp"
#include "octic/error.hpp"

namespace octic {

namespace {

LinearForm form(QuadRing R, QuadInt a, QuadInt b, QuadInt c, QuadInt d) {
  (void)R;
  return LinearForm{{a, b, c, d}};
}

Arrangement make_x() {
  QuadRing R(2);
  auto n = [&](i64 k) { return QuadInt::from_int(R, k); };
  Arrangement a;
  a.label = "X250";
  a.ring = R;
  a.bad_primes = {2, 3};
  // x(x-z)(x-v)(x-z-v) y(y-z)(y-v)(y+v+2z)
  a.forms = {form(R, n(1), n(0), n(0), n(0)),  form(R, n(1), n(0), n(-1), n(0)),
             form(R, n(1), n(0), n(0), n(-1)), form(R, n(1), n(0), n(-1), n(-1)),
             form(R, n(0), n(1), n(0), n(0)),  form(R, n(0), n(1), n(-1), n(0)),
             form(R, n(0), n(1), n(0), n(-1)), form(R, n(0), n(1), n(2), n(1))};
  return a;
}

Arrangement make_y() {
  QuadRing R(5);
  auto n = [&](i64 k) { return QuadInt::from_int(R, k); };
  QuadInt phi(R, -1, 1);  // (-1 + sqrt 5)/2 = omega - 1
  Arrangement a;
  a.label = "Y";
  a.ring = R;
  a.bad_primes = {2};
  // xyzv (x+y+z)(phi y - z + v)(x + y + phi v)((1-phi)x + y - phi z + phi v)
  a.forms = {form(R, n(1), n(0), n(0), n(0)),  form(R, n(0), n(1), n(0), n(0)),
             form(R, n(0), n(0), n(1), n(0)),  form(R, n(0), n(0), n(0), n(1)),
             form(R, n(1), n(1), n(1), n(0)),  form(R, n(0), phi, n(-1), n(1)),
             form(R, n(1), n(1), n(0), phi),   form(R, n(1) - phi, n(1), -phi, phi)};
  return a;
}

Arrangement make_z() {
  QuadRing R(-3);
  auto n = [&](i64 k) { return QuadInt::from_int(R, k); };
  QuadInt zeta(R, -1, 1);  // (-1 + sqrt -3)/2 = omega - 1
  Arrangement a;
  a.label = "Z262";
  a.ring = R;
  a.bad_primes = {2};
  // xyzv (x+y)(x+y+z-v)(zeta x - y + zeta z)(y - zeta z - v)
  a.forms = {form(R, n(1), n(0), n(0), n(0)), form(R, n(0), n(1), n(0), n(0)),
             form(R, n(0), n(0), n(1), n(0)), form(R, n(0), n(0), n(0), n(1)),
             form(R, n(1), n(1), n(0), n(0)), form(R, n(1), n(1), n(1), n(-1)),
             form(R, zeta, n(-1), zeta, n(0)), form(R, n(0), n(1), -zeta, n(-1))};
  return a;
}

}  // namespace

std::vector<std::string> builtin_labels() { return {"X250", "Y", "Z262"}; }

Arrangement builtin(const std::string& label) {
  if (label == "X250" || label == "X") return make_x();
  if (label == "Y") return make_y();
  if (label == "Z262" || label == "Z") return make_z();
  fail(ErrorKind::Usage, "unknown built-in arrangement '" + label + "'");
}

}  // namespace octic
