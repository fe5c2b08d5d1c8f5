#include <algorithm>
#include <sstream>

#include "octic/fsl.hpp"

namespace octic {

namespace {

// homogeneous cubic monomials x_i x_j x_k, i <= j <= k, as functions on F_2^n: the support set {i, j, k}
std::vector<F2Vec> cubic_monomials(int n) {
  std::vector<F2Vec> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) out.push_back((1u << i) | (1u << j) | (1u << k));
  return out;
}

int monomial_at(F2Vec mono, F2Vec v) { return (mono & v) == mono; }

// kernel basis of the |points| x |monos| evaluation matrix, as coefficient masks over monomials
std::vector<std::vector<int>> kernel(const std::vector<F2Vec>& points, const std::vector<F2Vec>& monos) {
  const int m = (int)monos.size();
  std::vector<std::vector<int>> rows;
  for (F2Vec v : points) {
    std::vector<int> r(m);
    for (int j = 0; j < m; ++j) r[j] = monomial_at(monos[j], v);
    rows.push_back(r);
  }
  std::vector<int> pivot_of_col(m, -1);
  int rank = 0;
  for (int col = 0; col < m && rank < (int)rows.size(); ++col) {
    int sel = -1;
    for (int i = rank; i < (int)rows.size(); ++i)
      if (rows[i][col]) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (int i = 0; i < (int)rows.size(); ++i)
      if (i != rank && rows[i][col])
        for (int j = 0; j < m; ++j) rows[i][j] ^= rows[rank][j];
    pivot_of_col[col] = rank++;
  }
  std::vector<std::vector<int>> basis;
  for (int f = 0; f < m; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<int> x(m, 0);
    x[f] = 1;
    for (int col = 0; col < m; ++col)
      if (pivot_of_col[col] >= 0 && rows[pivot_of_col[col]][f]) x[col] = 1;
    basis.push_back(x);
  }
  return basis;
}

// multilinear terms of the function sum_j x_j * mono_j on F_2^n
std::vector<F2Vec> multilinear(const std::vector<int>& coef, const std::vector<F2Vec>& monos) {
  std::vector<F2Vec> terms;
  for (size_t j = 0; j < monos.size(); ++j)
    if (coef[j]) {
      auto it = std::find(terms.begin(), terms.end(), monos[j]);
      if (it == terms.end())
        terms.push_back(monos[j]);
      else
        terms.erase(it);
    }
  std::sort(terms.begin(), terms.end(), [](F2Vec a, F2Vec b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  return terms;
}

std::string term_str(F2Vec t) {
  // a term on k variables is the function of a cubic monomial with repeated factors
  std::vector<int> idx;
  for (int i = 0; i < 32; ++i)
    if (t >> i & 1) idx.push_back(i + 1);
  std::ostringstream os;
  if (idx.size() == 3) {
    os << 'x' << idx[0] << 'x' << idx[1] << 'x' << idx[2];
  } else if (idx.size() == 2) {
    os << 'x' << idx[0] << "^2x" << idx[1];
  } else {
    os << 'x' << idx[0] << "^3";
  }
  return os.str();
}

}  // namespace

int eval_terms(const std::vector<F2Vec>& terms, F2Vec v) {
  int s = 0;
  for (F2Vec t : terms) s ^= (t & v) == t;
  return s;
}

std::string vec_str(F2Vec v, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (v >> i & 1) ? '1' : '0';
  return s;
}

NonCubicResult is_noncubic(const std::vector<F2Vec>& vectors, int n) {
  const auto monos = cubic_monomials(n);
  NonCubicResult r;
  // ker(M_all) is contained in ker(M_V); the set is non-cubic iff they coincide
  auto kv = kernel(vectors, monos);
  for (const auto& k : kv) {
    auto terms = multilinear(k, monos);
    if (terms.empty()) continue;  // vanishes identically as a function
    r.witness_terms = terms;
    for (size_t i = 0; i < terms.size(); ++i) r.witness += (i ? " + " : "") + term_str(terms[i]);
    r.noncubic = false;
    return r;
  }
  r.noncubic = true;
  return r;
}

}  // namespace octic
