#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "octic/arrangement.hpp"
#include "octic/gf.hpp"

namespace octic {

using Elem = GaloisField::elem;

struct ReducedArrangement {
  const GaloisField* F = nullptr;
  std::string label;
  std::vector<std::array<Elem, 4>> forms;
};

// reduce the forms modulo P and embed into F (a field containing O_K/P)
ReducedArrangement reduce(const Arrangement& arr, const PrimeIdeal& P, const GaloisField& F, bool force = false);

struct CountResult {
  std::string label;
  std::string ideal;  // generator of the prime the count was taken at
  i64 q = 0;
  i64 N = 0;
  i64 char_sum = 0;  // sum over P^3 of chi(f)
  std::string engine;
  double seconds = 0;
};

// chi lookup for one field, shared read-only by counting threads
class CharTable {
 public:
  explicit CharTable(const GaloisField& F);
  i64 q() const { return (i64)table_.size(); }
  int operator[](Elem x) const { return table_[x]; }
  const std::int8_t* data() const { return table_.data(); }

 private:
  std::vector<std::int8_t> table_;
};

// T(lambda) = sum_x chi(x(x-1)(x-lambda))
class LegendreTraceTable {
 public:
  explicit LegendreTraceTable(const GaloisField& F, int threads = 1);
  i64 q() const { return q_; }
  int operator()(Elem lambda) const { return t_[lambda]; }

 private:
  i64 q_;
  std::vector<std::int32_t> t_;
};

i64 quartic_char_sum(const GaloisField& F, const LegendreTraceTable& T, Elem c, const std::array<Elem, 4>& roots);

int find_pivot(const ReducedArrangement& A);
CountResult generic_count(const ReducedArrangement& A, int threads = 1);
CountResult semiseparated_count(const ReducedArrangement& A, int pivot, int threads = 1,
                                const LegendreTraceTable* T = nullptr);

enum class Engine { Generic, Semisep };
Engine parse_engine(const std::string& s);
const char* engine_name(Engine e);

// count the singular double cover reduced at P over F_q, q = p^k; k must be a multiple of the
// residue degree unless the arrangement has rational coefficients
CountResult count_at(const Arrangement& arr, const PrimeIdeal& P, int k, Engine engine, int threads = 1,
                     bool force = false);

// points of u^2 = alpha xyz(x+y+z) in P(1,1,1,2)
i64 surface_e_count(const GaloisField& F, Elem alpha);
i64 surface_e_enumerate(const GaloisField& F, Elem alpha);

class CountLedger {
 public:
  CountLedger() = default;
  explicit CountLedger(std::string path);
  std::optional<CountResult> lookup(const std::string& label, const std::string& ideal, i64 q) const;
  void record(const CountResult& r);
  const std::vector<CountResult>& rows() const { return rows_; }
  static std::string header();
  static std::string row(const CountResult& r);

 private:
  std::string path_;
  std::vector<CountResult> rows_;
};

}  // namespace octic
