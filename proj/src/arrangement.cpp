#include "octic/arrangement.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "octic/error.hpp"

namespace octic {

bool LinearForm::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

QuadInt LinearForm::eval(const std::array<QuadInt, 4>& P) const {
  QuadInt s = QuadInt::from_int(c[0].ring, 0);
  for (int i = 0; i < 4; ++i) s = s + c[i] * P[i];
  return s;
}

std::string LinearForm::str() const {
  static const char* names[4] = {"x", "y", "z", "v"};
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (c[i].is_zero()) continue;
    std::string coef = c[i].str();
    if (!s.empty()) s += " + ";
    if (coef == "1") {
      s += names[i];
    } else {
      s += "(" + coef + ")" + names[i];
    }
  }
  return s.empty() ? "0" : s;
}

bool same_plane(const LinearForm& a, const LinearForm& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(a.c[i] * b.c[j] - a.c[j] * b.c[i]).is_zero()) return false;
  return true;
}

bool Arrangement::is_bad(i64 p) const {
  for (i64 b : bad_primes)
    if (b == p) return true;
  return false;
}

SquareClass::SquareClass(QuadInt rep) : rep_(rep) {
  if (rep.is_zero()) fail(ErrorKind::DegenerateSurface, "zero has no square class");
}

bool SquareClass::operator==(const SquareClass& o) const { return (rep_ * o.rep_).is_square(); }

std::vector<int> SquareClass::invariant_vector() const {
  std::vector<int> out;
  QuadRing R = rep_.ring;
  if (R.d() > 0) {
    auto [A, B] = rep_.twice_sqrt_coords();
    // sign of A + B sqrt d and of A - B sqrt d
    for (int s : {1, -1}) {
      i128 bb = (i128)B * B * R.d(), aa = (i128)A * A;
      i64 Bs = s * B;
      int sign;
      if (A >= 0 && Bs >= 0) {
        sign = 1;
      } else if (A <= 0 && Bs <= 0) {
        sign = -1;
      } else {
        sign = (aa > bb) ? (A > 0 ? 1 : -1) : (Bs > 0 ? 1 : -1);
      }
      out.push_back(sign < 0 ? 1 : 0);
    }
  }
  for (i64 p = 3; p <= 97; p += 2) {
    if (!is_prime(p)) continue;
    for (const auto& P : split_prime(R, p)) {
      QuadInt x = rep_;
      int v = 0;
      while (divides(P, x)) {
        auto q = (P.kind == PrimeKind::Inert) ? x.exact_div(QuadInt::from_int(R, p)) : x.exact_div(P.generator);
        if (!q) break;
        x = *q;
        ++v;
      }
      out.push_back(v & 1);
    }
  }
  return out;
}

namespace {

QuadInt det(const std::vector<std::vector<QuadInt>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  QuadInt s = QuadInt::from_int(m[0][0].ring, 0);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<QuadInt>> sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<QuadInt> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(row);
    }
    QuadInt t = m[0][j] * det(sub);
    s = (j % 2 == 0) ? s + t : s - t;
  }
  return s;
}

bool next_combination(std::vector<int>& c, int n) {
  int k = (int)c.size();
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

int rank_of(const Arrangement& arr, const std::vector<int>& idx) {
  int n = (int)idx.size();
  for (int r = std::min(n, 4); r >= 1; --r) {
    std::vector<int> rows(r), cols(r);
    for (int i = 0; i < r; ++i) rows[i] = i;
    do {
      for (int i = 0; i < r; ++i) cols[i] = i;
      do {
        std::vector<std::vector<QuadInt>> m(r, std::vector<QuadInt>(r));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) m[i][j] = arr.forms[idx[rows[i]]].c[cols[j]];
        if (!det(m).is_zero()) return r;
      } while (next_combination(cols, 4));
    } while (next_combination(rows, n));
  }
  return 0;
}

Census census(const Arrangement& arr) {
  auto rep = validate(arr);
  for (const auto& v : rep.violations)
    if (v.kind == Violation::RepeatedPlane) fail(ErrorKind::MalformedArrangement, "repeated plane in " + arr.label);
  Census c = census_from_rank((int)arr.forms.size(), [&](const std::vector<int>& idx) { return rank_of(arr, idx); });
  for (auto& P : c.points) {
    // any three incident forms of full rank give the point as a generalized cross product
    const auto& pl = P.planes;
    std::vector<int> tri;
    for (size_t a = 0; a < pl.size() && tri.empty(); ++a)
      for (size_t b = a + 1; b < pl.size() && tri.empty(); ++b)
        for (size_t e = b + 1; e < pl.size() && tri.empty(); ++e)
          if (rank_of(arr, {pl[a], pl[b], pl[e]}) == 3) tri = {pl[a], pl[b], pl[e]};
    for (int col = 0; col < 4; ++col) {
      std::vector<std::vector<QuadInt>> m(3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
          if (j != col) m[i].push_back(arr.forms[tri[i]].c[j]);
      QuadInt d = det(m);
      P.coords[col] = (col % 2 == 0) ? d : -d;
    }
  }
  return c;
}

AdmissibilityReport validate(const Arrangement& arr) {
  if (arr.forms.size() != 8)
    fail(ErrorKind::MalformedArrangement, "an octic arrangement needs 8 forms, got " + std::to_string(arr.forms.size()));
  AdmissibilityReport rep;
  for (int i = 0; i < 8; ++i) {
    if (arr.forms[i].is_zero()) fail(ErrorKind::MalformedArrangement, "form " + std::to_string(i) + " is zero");
    for (int j = i + 1; j < 8; ++j)
      if (same_plane(arr.forms[i], arr.forms[j])) rep.violations.push_back({Violation::RepeatedPlane, {i, j}});
  }
  if (!rep.violations.empty()) {
    rep.pass = false;
    return rep;
  }
  Census c = census_from_rank(8, [&](const std::vector<int>& idx) { return rank_of(arr, idx); });
  return validate_from_census(c);
}

AdmissibilityReport validate_from_census(const Census& c) {
  AdmissibilityReport rep;
  for (const auto& P : c.points)
    if (P.planes.size() >= 6) rep.violations.push_back({Violation::SixPlanePoint, P.planes});
  for (const auto& L : c.lines)
    if (L.planes.size() >= 4) rep.violations.push_back({Violation::FourPlaneLine, L.planes});
  rep.pass = rep.violations.empty();
  return rep;
}

bool is_p40(const Arrangement& arr, const PointRecord& P) {
  if (P.planes.size() != 4 || P.on_triple_line) return false;
  const auto& pl = P.planes;
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<int> tri;
    for (int i = 0; i < 4; ++i)
      if (i != skip) tri.push_back(pl[i]);
    if (rank_of(arr, tri) != 3) return false;
  }
  return true;
}

SquareClass fourfold_alpha(const Arrangement& arr, const PointRecord& P) {
  if (P.planes.size() != 4) fail(ErrorKind::UnsupportedSingularity, "point is not fourfold");
  const auto& pl = P.planes;
  const LinearForm* l[4] = {&arr.forms[pl[0]], &arr.forms[pl[1]], &arr.forms[pl[2]], &arr.forms[pl[3]]};
  // l4 = c1 l1 + c2 l2 + c3 l3; Cramer on three coordinates where l1, l2, l3 are independent
  std::vector<int> cols = {0, 1, 2};
  QuadInt D;
  std::vector<std::vector<QuadInt>> M;
  bool found = false;
  do {
    M.assign(3, std::vector<QuadInt>(3));
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) M[r][k] = l[k]->c[cols[r]];
    D = det(M);
    if (!D.is_zero()) found = true;
  } while (!found && next_combination(cols, 4));
  if (!found) fail(ErrorKind::UnsupportedSingularity, "three incident forms are dependent");
  QuadInt prod = D;
  for (int k = 0; k < 3; ++k) {
    auto Mk = M;
    for (int r = 0; r < 3; ++r) Mk[r][k] = l[3]->c[cols[r]];
    QuadInt Dk = det(Mk);
    if (Dk.is_zero()) fail(ErrorKind::UnsupportedSingularity, "tangent cone degenerate (not of type p4^0)");
    prod = prod * Dk;
  }
  for (int j = 0; j < (int)arr.forms.size(); ++j) {
    bool inc = false;
    for (int i : pl) inc = inc || (i == j);
    if (!inc) prod = prod * arr.forms[j].eval(P.coords);
  }
  return SquareClass(prod);
}

std::vector<SquareClass> p40_alphas(const Arrangement& arr, const Census& c) {
  std::vector<SquareClass> out;
  for (const auto* P : c.fourfold())
    if (is_p40(arr, *P)) out.push_back(fourfold_alpha(arr, *P));
  return out;
}

namespace {

QuadInt parse_coef(QuadRing R, const std::string& tok) {
  std::vector<i64> v;
  std::stringstream ss(tok);
  std::string part;
  std::string t = tok;
  for (auto& ch : t)
    if (ch == '/') ch = ',';
  ss = std::stringstream(t);
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      v.push_back(std::stoll(part));
    } catch (...) {
      fail(ErrorKind::Parse, "bad coefficient '" + tok + "'");
    }
  }
  if (v.size() == 2) return QuadInt(R, v[0], v[1]);
  if (v.size() == 3) return QuadInt::from_sqrt(R, v[0], v[1], v[2]);
  fail(ErrorKind::Parse, "coefficient needs 'a,b' or 'A,B/2': '" + tok + "'");
}

}  // namespace

Arrangement parse_arrangement_tsv(std::istream& in) {
  Arrangement a;
  bool have_d = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::stringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    if (key == "d") {
      i64 d;
      if (!(ss >> d)) fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": d needs an integer");
      a.ring = QuadRing(d);
      have_d = true;
    } else if (key == "label") {
      ss >> a.label;
    } else if (key == "bad") {
      i64 p;
      while (ss >> p) a.bad_primes.push_back(p);
    } else if (key == "form") {
      if (!have_d) fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": 'd' must precede forms");
      LinearForm f;
      for (int i = 0; i < 4; ++i) {
        std::string tok;
        if (!(ss >> tok)) fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": form needs 4 coefficients");
        f.c[i] = parse_coef(a.ring, tok);
      }
      a.forms.push_back(f);
    } else {
      fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_d) fail(ErrorKind::Parse, "missing field discriminant line 'd'");
  if (a.forms.size() != 8) fail(ErrorKind::MalformedArrangement, "expected 8 forms, got " + std::to_string(a.forms.size()));
  return a;
}

Arrangement parse_arrangement_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("arrangement json: ") + e.what());
  }
  Arrangement a;
  try {
    a.ring = QuadRing(j.at("d").get<i64>());
    a.label = j.value("label", std::string("custom"));
    for (auto& p : j.value("bad_primes", nlohmann::json::array())) a.bad_primes.push_back(p.get<i64>());
    for (auto& row : j.at("forms")) {
      LinearForm f;
      if (row.size() != 4) fail(ErrorKind::MalformedArrangement, "form needs 4 coefficients");
      for (int i = 0; i < 4; ++i) {
        auto& c = row[i];
        if (c.size() == 2) {
          f.c[i] = QuadInt(a.ring, c[0].get<i64>(), c[1].get<i64>());
        } else if (c.size() == 3) {
          f.c[i] = QuadInt::from_sqrt(a.ring, c[0].get<i64>(), c[1].get<i64>(), c[2].get<i64>());
        } else {
          fail(ErrorKind::Parse, "coefficient must be [a,b] or [A,B,2]");
        }
      }
      a.forms.push_back(f);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("arrangement json: ") + e.what());
  }
  if (a.forms.size() != 8) fail(ErrorKind::MalformedArrangement, "expected 8 forms, got " + std::to_string(a.forms.size()));
  return a;
}

Arrangement read_arrangement(const std::string& path) {
  for (const auto& l : builtin_labels())
    if (l == path) return builtin(path);
  if (path == "X" || path == "Z") return builtin(path);
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "unknown arrangement label or unreadable file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_arrangement_json(text);
  std::istringstream is(text);
  return parse_arrangement_tsv(is);
}

}  // namespace octic
