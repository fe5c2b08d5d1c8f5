#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "octic/qarith.hpp"

namespace octic {

// ---- F_2 vectors and the non-cubic criterion

using F2Vec = std::uint32_t;  // bit i = coordinate i

struct NonCubicResult {
  bool noncubic = false;
  // a cubic form vanishing on the set but not on F_2^n, as its function's multilinear terms
  std::vector<F2Vec> witness_terms;
  std::string witness;
};

NonCubicResult is_noncubic(const std::vector<F2Vec>& vectors, int n);
// evaluation of the witness at v
int eval_terms(const std::vector<F2Vec>& terms, F2Vec v);
std::string vec_str(F2Vec v, int n);

// ---- polynomials over O_K, coefficients indexed by degree

struct Poly {
  QuadRing ring;
  std::vector<QuadInt> c;

  int degree() const { return (int)c.size() - 1; }
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const;
  Poly conj() const;
  std::string str() const;
  static Poly from_integers(QuadRing R, const std::vector<i64>& leading_first);
};

bool has_root_mod(const Poly& f, const PrimeIdeal& P);

// conjugate cubic pair g * sigma(g) = sextic, found from complex roots and verified exactly
std::optional<std::pair<Poly, Poly>> conjugate_cubic_split(const Poly& sextic);

// ---- field configurations and certificates

struct FieldConfig {
  std::string name;
  QuadRing ring;
  std::vector<QuadInt> S;
  std::vector<PrimeIdeal> T, U;
  std::vector<QuadInt> generators;
  std::vector<std::string> generator_labels;
  bool one_is_square = false;  // table convention; the character itself is always 1 = non-square
  bool sqrt2_evenness = false;  // E = Q_2[sqrt2] with maximal ideal (sqrt2)
};

FieldConfig load_field_config(const std::string& path);

struct CharRow {
  PrimeIdeal P;
  F2Vec bits = 0;        // as printed under the config convention
  F2Vec frobenius = 0;   // 1 = generator is a non-square
};

std::vector<CharRow> build_char_table(const FieldConfig& cfg);
std::string char_table_str(const FieldConfig& cfg, const std::vector<CharRow>& rows);

struct CubicFieldDatum {
  std::vector<i64> sextic;  // leading coefficient first
  Poly cubic1, cubic2;
  std::optional<i64> witness;  // printed rational prime under the witness ideal
  bool derived = false;        // factors computed rather than ingested
};

std::vector<CubicFieldDatum> load_cubic_data(const std::string& path);

bool verify_factorization(const CubicFieldDatum& d);
// first candidate at which the cubic has no root in the residue field
PrimeIdeal irreducibility_witness(const Poly& cubic, const std::vector<PrimeIdeal>& candidates);
// rule matching the printed witnesses: scan by ascending rational prime, first ideal where both factors are rootless
PrimeIdeal datum_witness(const CubicFieldDatum& d, const std::vector<PrimeIdeal>& U);

// ---- representation data and the certificate

struct RepEntry {
  PrimeIdeal P;
  std::optional<QuadInt> trace;  // in Z[sqrt2] over Q(sqrt2), rational otherwise
  std::optional<i64> det;
  std::optional<bool> even_attested;  // parity recorded without a value
  std::string source;
};

struct Rep {
  std::string name;
  std::vector<RepEntry> entries;
  const RepEntry* find(const PrimeIdeal& P) const;
};

struct CheckLine {
  std::string prime;
  bool pass = false;
  std::string detail;
};

struct Certificate {
  std::string config;
  std::vector<CheckLine> evenness, cubic_witnesses, determinants, equality;
  bool cond1 = false, cond2 = false, cond3 = false;
  NonCubicResult noncubic_printed, noncubic_printed_with_zero, noncubic_frobenius;
  bool noncubic = false;
  bool verdict = false;
  std::string json() const;
};

bool even_in_E(const QuadInt& t, bool sqrt2_evenness);

Certificate certify(const Rep& rho1, const Rep& rho2, const FieldConfig& cfg, const std::vector<CubicFieldDatum>& cubics);

}  // namespace octic
