#include "octic/fsl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "octic/error.hpp"

namespace octic {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

// [a, b] = a + b omega, [A, B, 2] = (A + B sqrt d)/2
QuadInt element(const json& j, QuadRing R) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) fail(ErrorKind::Parse, "element must be [a,b] or [A,B,2]");
  if (j.size() == 2) return QuadInt(R, j[0].get<i64>(), j[1].get<i64>());
  return QuadInt::from_sqrt(R, j[0].get<i64>(), j[1].get<i64>(), j[2].get<i64>());
}

Poly poly_from_json(const json& j, QuadRing R) {
  Poly p{R, {}};
  for (auto it = j.rbegin(); it != j.rend(); ++it) p.c.push_back(element(*it, R));
  return p;
}

}  // namespace

FieldConfig load_field_config(const std::string& path) {
  json j = read_json(path);
  FieldConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    c.ring = QuadRing(j.at("d").get<i64>());
    for (auto& e : j.at("S")) c.S.push_back(element(e, c.ring));
    for (auto& e : j.at("T")) c.T.push_back(prime_from_generator(element(e, c.ring)));
    for (auto& e : j.at("U")) c.U.push_back(prime_from_generator(element(e, c.ring)));
    for (auto& e : j.at("generators")) c.generators.push_back(element(e, c.ring));
    for (auto& e : j.at("generator_labels")) c.generator_labels.push_back(e.get<std::string>());
    c.one_is_square = j.value("bit_one_means", std::string("nonsquare")) == "square";
    c.sqrt2_evenness = j.value("evenness", std::string("rational")) == "sqrt2";
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
  if (c.generator_labels.size() != c.generators.size())
    fail(ErrorKind::Parse, path + ": one label per generator");
  for (const auto& P : c.T)
    for (const auto& s : c.S)
      if (divides(P, s)) fail(ErrorKind::InconsistentData, P.label() + " lies over S");
  return c;
}

std::vector<CharRow> build_char_table(const FieldConfig& cfg) {
  const F2Vec ones = (1u << cfg.generators.size()) - 1;
  std::vector<CharRow> rows;
  for (const auto& P : cfg.T) {
    CharRow r;
    r.P = P;
    for (size_t j = 0; j < cfg.generators.size(); ++j) {
      const auto& g = cfg.generators[j];
      if (divides(P, g)) fail(ErrorKind::RamifiedEntry, g.str() + " vanishes modulo " + P.label());
      r.frobenius |= (F2Vec)residue_quad_char(g, P) << j;
    }
    r.bits = cfg.one_is_square ? r.frobenius ^ ones : r.frobenius;
    rows.push_back(r);
  }
  return rows;
}

std::string char_table_str(const FieldConfig& cfg, const std::vector<CharRow>& rows) {
  std::ostringstream os;
  os << "p\tN(p)";
  for (const auto& l : cfg.generator_labels) os << '\t' << l;
  os << '\n';
  for (const auto& r : rows) {
    os << r.P.label() << '\t' << r.P.norm;
    for (size_t j = 0; j < cfg.generators.size(); ++j) os << '\t' << (r.bits >> j & 1);
    os << '\n';
  }
  return os.str();
}

std::vector<CubicFieldDatum> load_cubic_data(const std::string& path) {
  json j = read_json(path);
  std::vector<CubicFieldDatum> out;
  try {
    QuadRing R(j.at("d").get<i64>());
    for (auto& e : j.at("data")) {
      CubicFieldDatum d;
      d.sextic = e.at("sextic").get<std::vector<i64>>();
      if (e.contains("cubics")) {
        d.cubic1 = poly_from_json(e["cubics"][0], R);
        d.cubic2 = poly_from_json(e["cubics"][1], R);
      } else {
        auto split = conjugate_cubic_split(Poly::from_integers(R, d.sextic));
        if (!split) fail(ErrorKind::InconsistentData, "sextic has no conjugate cubic split over " + R.name());
        d.cubic1 = split->first;
        d.cubic2 = split->second;
        d.derived = true;
      }
      if (e.contains("witness")) d.witness = e["witness"].get<i64>();
      out.push_back(d);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
  return out;
}

bool verify_factorization(const CubicFieldDatum& d) {
  if (d.cubic1.degree() != 3 || d.cubic2.degree() != 3) return false;
  Poly s = Poly::from_integers(d.cubic1.ring, d.sextic);
  return d.cubic1 * d.cubic2 == s && d.cubic1.conj() == d.cubic2;
}

PrimeIdeal irreducibility_witness(const Poly& cubic, const std::vector<PrimeIdeal>& candidates) {
  if (cubic.degree() != 3) fail(ErrorKind::Unsupported, "witness search needs a cubic");
  for (const auto& P : candidates)
    if (!has_root_mod(cubic, P)) return P;
  fail(ErrorKind::NoWitness, "no candidate keeps " + cubic.str() + " irreducible");
}

PrimeIdeal datum_witness(const CubicFieldDatum& d, const std::vector<PrimeIdeal>& U) {
  std::vector<PrimeIdeal> order = U;
  std::stable_sort(order.begin(), order.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.p < b.p; });
  for (const auto& P : order)
    if (!has_root_mod(d.cubic1, P) && !has_root_mod(d.cubic2, P)) return P;
  fail(ErrorKind::NoWitness, "no prime of U keeps both factors of " + d.cubic1.str() + " irreducible");
}

const RepEntry* Rep::find(const PrimeIdeal& P) const {
  for (const auto& e : entries)
    if (e.P.same_as(P)) return &e;
  return nullptr;
}

bool even_in_E(const QuadInt& t, bool sqrt2_evenness) {
  // in Q_2[sqrt2], a + b sqrt2 lies in (sqrt2) iff a is even
  if (sqrt2_evenness) return floor_mod(t.a, 2) == 0;
  if (!t.is_rational()) fail(ErrorKind::InconsistentData, "trace " + t.str() + " is not rational");
  return floor_mod(t.a, 2) == 0;
}

Certificate certify(const Rep& rho1, const Rep& rho2, const FieldConfig& cfg, const std::vector<CubicFieldDatum>& cubics) {
  Certificate c;
  c.config = cfg.name;

  std::vector<std::string> gaps;
  for (const Rep* r : {&rho1, &rho2}) {
    for (const auto& P : cfg.U) {
      const RepEntry* e = r->find(P);
      if (!e || (!e->trace && !e->even_attested)) gaps.push_back(r->name + " trace at U prime " + P.label());
    }
    for (const auto& P : cfg.T) {
      const RepEntry* e = r->find(P);
      if (!e || !e->trace) gaps.push_back(r->name + " trace at T prime " + P.label());
      if (!e || !e->det) gaps.push_back(r->name + " det at T prime " + P.label());
    }
  }
  if (!gaps.empty()) {
    std::string msg = "missing coverage:";
    for (const auto& g : gaps) msg += "\n  " + g;
    fail(ErrorKind::Coverage, msg);
  }

  // condition 1
  c.cond1 = true;
  for (const auto& P : cfg.U) {
    CheckLine l;
    l.prime = P.label();
    l.pass = true;
    std::ostringstream os;
    for (const Rep* r : {&rho1, &rho2}) {
      const RepEntry* e = r->find(P);
      bool even = e->trace ? even_in_E(*e->trace, cfg.sqrt2_evenness) : *e->even_attested;
      os << r->name << '=' << (e->trace ? e->trace->str() : std::string("attested")) << (even ? " even " : " odd ");
      l.pass = l.pass && even;
    }
    l.detail = os.str();
    c.cond1 = c.cond1 && l.pass;
    c.evenness.push_back(l);
  }
  for (size_t i = 0; i < cubics.size(); ++i) {
    const auto& d = cubics[i];
    CheckLine l;
    l.prime = "#" + std::to_string(i + 1);
    if (!verify_factorization(d)) {
      l.detail = "factorization does not verify";
    } else {
      try {
        PrimeIdeal w = datum_witness(d, cfg.U);
        l.pass = !d.witness || *d.witness == w.p;
        l.detail = "witness " + w.label() + (d.witness ? " (listed p=" + std::to_string(*d.witness) + ")" : "");
      } catch (const Error& e) {
        l.detail = e.what();
      }
    }
    c.cond1 = c.cond1 && l.pass;
    c.cubic_witnesses.push_back(l);
  }

  // conditions 2 and 3
  c.cond2 = c.cond3 = true;
  for (const auto& P : cfg.T) {
    const RepEntry* e1 = rho1.find(P);
    const RepEntry* e2 = rho2.find(P);
    CheckLine d;
    d.prime = P.label();
    d.pass = floor_mod(*e1->det - *e2->det, 2) == 0;
    d.detail = std::to_string(*e1->det) + " vs " + std::to_string(*e2->det);
    c.cond2 = c.cond2 && d.pass;
    c.determinants.push_back(d);

    CheckLine q;
    q.prime = P.label();
    q.pass = *e1->trace == *e2->trace && *e1->det == *e2->det;
    q.detail = "tr " + e1->trace->str() + " vs " + e2->trace->str() + ", det " + std::to_string(*e1->det) + " vs " +
               std::to_string(*e2->det);
    c.cond3 = c.cond3 && q.pass;
    c.equality.push_back(q);
  }

  auto rows = build_char_table(cfg);
  const int n = (int)cfg.generators.size();
  std::set<F2Vec> printed, frob;
  for (const auto& r : rows) {
    printed.insert(r.bits);
    frob.insert(r.frobenius);
  }
  std::vector<F2Vec> pv, pz, fv;
  for (F2Vec v : printed)
    if (v) pv.push_back(v);
  pz = pv;
  pz.push_back(0);
  for (F2Vec v : frob) fv.push_back(v);
  c.noncubic_printed = is_noncubic(pv, n);
  c.noncubic_printed_with_zero = is_noncubic(pz, n);
  c.noncubic_frobenius = is_noncubic(fv, n);
  c.noncubic = c.noncubic_printed.noncubic && c.noncubic_printed_with_zero.noncubic;

  c.verdict = c.cond1 && c.cond2 && c.cond3 && c.noncubic;
  return c;
}

std::string Certificate::json() const {
  auto lines = [](const std::vector<CheckLine>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& l : v) a.push_back({{"prime", l.prime}, {"pass", l.pass}, {"detail", l.detail}});
    return a;
  };
  auto nc = [](const NonCubicResult& r) {
    nlohmann::json o = {{"noncubic", r.noncubic}};
    if (!r.noncubic) o["witness"] = r.witness;
    return o;
  };
  nlohmann::json j;
  j["config"] = config;
  j["condition1"] = {{"pass", cond1}, {"evenness", lines(evenness)}, {"cubic_witnesses", lines(cubic_witnesses)}};
  j["condition2"] = {{"pass", cond2}, {"determinants", lines(determinants)}};
  j["condition3"] = {{"pass", cond3}, {"equality", lines(equality)}};
  j["noncubic"] = {{"pass", noncubic},
                   {"table_image", nc(noncubic_printed)},
                   {"table_image_with_zero", nc(noncubic_printed_with_zero)},
                   {"frobenius_image", nc(noncubic_frobenius)}};
  j["verdict"] = verdict ? "pass" : "fail";
  return j.dump(2);
}

}  // namespace octic
