#include "wco/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wco {

MultiPoly::MultiPoly(int dim, std::vector<Term> terms) : dim_(dim) {
  if (dim < 1) throw DegenerateInput("polynomial dimension must be >= 1");
  std::map<std::vector<int>, cplx> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != dim) {
      throw DegenerateInput("term exponent vector has wrong length");
    }
    for (int e : t.exponents) {
      if (e < 0) throw DegenerateInput("negative exponent in weight term");
    }
    merged[t.exponents] += t.coeff;
  }
  for (auto& [e, c] : merged) {
    if (c != cplx(0.0, 0.0)) terms_.push_back({e, c});
  }
  if (terms_.empty()) throw DegenerateInput("weight is identically zero");
}

MultiPoly MultiPoly::univariate(int dim, int var, std::span<const cplx> coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(var)] = static_cast<int>(k);
    terms.push_back({e, coeffs[k]});
  }
  return MultiPoly(dim, std::move(terms));
}

cplx MultiPoly::operator()(std::span<const cplx> z) const {
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    cplx v = t.coeff;
    for (int j = 0; j < dim_; ++j) {
      for (int p = 0; p < t.exponents[static_cast<std::size_t>(j)]; ++p) v *= z[static_cast<std::size_t>(j)];
    }
    acc += v;
  }
  return acc;
}

cplx MultiPoly::constant_term() const {
  for (const auto& t : terms_) {
    if (std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; })) return t.coeff;
  }
  return 0.0;
}

double MultiPoly::nonconstant_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) {
    if (!std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; })) {
      s += std::abs(t.coeff);
    }
  }
  return s;
}

bool MultiPoly::dominant_constant() const { return std::abs(constant_term()) > nonconstant_l1(); }

double MultiPoly::partial_bound(int var, double radius) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    const int e = t.exponents[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    int total = 0;
    for (int x : t.exponents) total += x;
    s += e * std::abs(t.coeff) * std::pow(radius, total - 1);
  }
  return s;
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[static_cast<std::size_t>(var)]);
  return d;
}

std::vector<cplx> MultiPoly::restrict_to(int var, std::span<const cplx> z) const {
  std::vector<cplx> c(static_cast<std::size_t>(degree_in(var)) + 1, 0.0);
  for (const auto& t : terms_) {
    cplx v = t.coeff;
    for (int j = 0; j < dim_; ++j) {
      if (j == var) continue;
      for (int p = 0; p < t.exponents[static_cast<std::size_t>(j)]; ++p) v *= z[static_cast<std::size_t>(j)];
    }
    c[static_cast<std::size_t>(t.exponents[static_cast<std::size_t>(var)])] += v;
  }
  return c;
}

}  // namespace wco
