#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "octic/qarith.hpp"

namespace octic {

struct FormMeta {
  std::string name;   // h1 | h2 | f72
  QuadRing base;      // ignored when rational_base
  bool rational_base = false;
  std::vector<int> weight;
  std::string level;
  int max_weight() const;
};

FormMeta form_meta(const std::string& name);

struct Eigenvalue {
  PrimeIdeal P;   // for a rational base only P.p is meaningful
  QuadInt value;  // in Z[sqrt2]; rational tables keep b = 0
  int line = 0;
};

struct EigenvalueTable {
  FormMeta meta;
  std::vector<Eigenvalue> rows;
  std::vector<std::string> diagnostics;  // Hecke bound flags
};

// TSV rows: p gen_a gen_b ev_a ev_b, '#' starts a comment
EigenvalueTable parse_table(std::istream& in, const FormMeta& meta);
EigenvalueTable load_table(const std::string& path, const FormMeta& meta);
std::string serialize(const EigenvalueTable& t);

// exact stored value; for h1 a missing key falls back to sigma of the conjugate key
QuadInt lookup(const EigenvalueTable& t, const PrimeIdeal& P);
i64 lookup_rational(const EigenvalueTable& t, i64 p);
// sigma on values with conjugate keys swapped
EigenvalueTable conjugate_table(const EigenvalueTable& t);

// parity attestations: p gen_a gen_b even
struct ParityFact {
  PrimeIdeal P;
  bool even = false;
};
std::vector<ParityFact> load_parity(const std::string& path, QuadRing R);

struct TraceQuery {
  PrimeIdeal P;
  QuadInt value;
  std::string tag;
};

using TwistRule = std::function<int(const PrimeIdeal&)>;

struct CompareRow {
  TraceQuery query;
  std::optional<QuadInt> expected;  // after the twist
  int sign = 1;
  bool match = false;
};

struct CompareReport {
  std::string form;
  std::vector<CompareRow> rows;
  bool pass() const;
  std::string str() const;
};

CompareReport compare_traces(const std::vector<TraceQuery>& traces, const EigenvalueTable& table,
                             const std::optional<TwistRule>& twist = std::nullopt);

}  // namespace octic
