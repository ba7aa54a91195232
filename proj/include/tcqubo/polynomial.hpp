// Copyright 2026 The tc-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcqubo/error.hpp"

namespace tcqubo {

using Coeff = std::int64_t;

class OverflowError : public Error {
 public:
  OverflowError() : Error("integer overflow in coefficient arithmetic") {}
};

namespace detail {
inline Coeff CheckedAdd(Coeff a, Coeff b) {
  Coeff out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError();
  return out;
}
inline Coeff CheckedMul(Coeff a, Coeff b) {
  Coeff out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError();
  return out;
}
}  // namespace detail

// A term coefficient * var, used when expanding squares.
struct LinearTerm {
  Coeff coeff;
  std::size_t var;
};

// Integer pseudo-Boolean polynomial of degree <= 2 over binary variables.
// Zero coefficients are never stored; x*x folds into x.
class QuadraticPolynomial {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;  // first < second

  Coeff constant() const { return constant_; }
  const std::map<std::size_t, Coeff>& linear() const { return linear_; }
  const std::map<Pair, Coeff>& quadratic() const { return quadratic_; }

  void add_constant(Coeff c) { constant_ = detail::CheckedAdd(constant_, c); }

  void add_linear(std::size_t v, Coeff c) { Accumulate(linear_, v, c); }

  void add_quadratic(std::size_t a, std::size_t b, Coeff c) {
    if (a == b) {
      add_linear(a, c);
      return;
    }
    Accumulate(quadratic_, Pair{std::min(a, b), std::max(a, b)}, c);
  }

  // weight * (constant + sum coeff_k * var_k)^2, expanded with x^2 = x.
  void add_square(Coeff constant, std::span<const LinearTerm> terms, Coeff weight = 1) {
    using detail::CheckedAdd;
    using detail::CheckedMul;
    add_constant(CheckedMul(weight, CheckedMul(constant, constant)));
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& t = terms[k];
      Coeff self = CheckedAdd(CheckedMul(2 * constant, t.coeff), CheckedMul(t.coeff, t.coeff));
      add_linear(t.var, CheckedMul(weight, self));
      for (std::size_t l = k + 1; l < terms.size(); ++l) {
        add_quadratic(t.var, terms[l].var,
                      CheckedMul(weight, CheckedMul(2, CheckedMul(t.coeff, terms[l].coeff))));
      }
    }
  }

  // weight * (x1 x2 - 2 x1 y - 2 x2 y + 3 y): zero iff y = x1 x2, else >= weight.
  void add_product_block(std::size_t x1, std::size_t x2, std::size_t y, Coeff weight = 1) {
    using detail::CheckedMul;
    add_quadratic(x1, x2, weight);
    add_quadratic(x1, y, CheckedMul(-2, weight));
    add_quadratic(x2, y, CheckedMul(-2, weight));
    add_linear(y, CheckedMul(3, weight));
  }

  void add(const QuadraticPolynomial& other, Coeff weight = 1) {
    using detail::CheckedMul;
    add_constant(CheckedMul(weight, other.constant_));
    for (const auto& [v, c] : other.linear_) add_linear(v, CheckedMul(weight, c));
    for (const auto& [p, c] : other.quadratic_) {
      Accumulate(quadratic_, p, CheckedMul(weight, c));
    }
  }

  bool is_zero() const { return constant_ == 0 && linear_.empty() && quadratic_.empty(); }

  // Largest variable index mentioned plus one.
  std::size_t span_size() const {
    std::size_t n = 0;
    if (!linear_.empty()) n = linear_.rbegin()->first + 1;
    for (const auto& [p, c] : quadratic_) n = std::max(n, p.second + 1);
    return n;
  }

  template <class Bits>
  Coeff evaluate(const Bits& bits) const {
    using detail::CheckedAdd;
    Coeff total = constant_;
    for (const auto& [v, c] : linear_) {
      if (bits[v]) total = CheckedAdd(total, c);
    }
    for (const auto& [p, c] : quadratic_) {
      if (bits[p.first] && bits[p.second]) total = CheckedAdd(total, c);
    }
    return total;
  }

 private:
  template <class Map, class Key>
  static void Accumulate(Map& map, const Key& key, Coeff c) {
    if (c == 0) return;
    auto [it, inserted] = map.try_emplace(key, c);
    if (inserted) return;
    it->second = detail::CheckedAdd(it->second, c);
    if (it->second == 0) map.erase(it);
  }

  Coeff constant_ = 0;
  std::map<std::size_t, Coeff> linear_;
  std::map<Pair, Coeff> quadratic_;
};

struct QuboEntry {
  std::size_t i;
  std::size_t j;  // i <= j
  Coeff value;
  bool operator==(const QuboEntry&) const = default;
};

// Upper-triangular Q plus offset: energy(x) = x^T Q x + offset.
class QuboMatrix {
 public:
  QuboMatrix() = default;
  QuboMatrix(std::size_t dimension, std::vector<QuboEntry> entries, Coeff offset)
      : dimension_(dimension), entries_(std::move(entries)), offset_(offset) {
    std::sort(entries_.begin(), entries_.end(), [](const QuboEntry& a, const QuboEntry& b) {
      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      const auto& e = entries_[k];
      if (e.i > e.j || e.j >= dimension_) throw Error("QUBO entry outside the upper triangle");
      if (e.value == 0) throw Error("QUBO entry with zero value");
      if (k > 0 && entries_[k - 1].i == e.i && entries_[k - 1].j == e.j) {
        throw Error("duplicate QUBO entry");
      }
    }
  }

  std::size_t dimension() const { return dimension_; }
  const std::vector<QuboEntry>& entries() const { return entries_; }
  Coeff offset() const { return offset_; }

  template <class Bits>
  Coeff evaluate(const Bits& bits) const {
    if (bits.size() != dimension_) {
      throw Error("assignment has " + std::to_string(bits.size()) + " bits, QUBO has dimension " +
                  std::to_string(dimension_));
    }
    Coeff total = offset_;
    for (const auto& e : entries_) {
      if (bits[e.i] && bits[e.j]) total = detail::CheckedAdd(total, e.value);
    }
    return total;
  }

  bool operator==(const QuboMatrix&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<QuboEntry> entries_;
  Coeff offset_ = 0;
};

// Linear coefficients move to the diagonal, the constant to the offset.
inline QuboMatrix ToQubo(const QuadraticPolynomial& p, std::size_t dimension) {
  if (p.span_size() > dimension) throw Error("polynomial uses variables beyond the dimension");
  std::vector<QuboEntry> entries;
  for (const auto& [v, c] : p.linear()) entries.push_back({v, v, c});
  for (const auto& [pair, c] : p.quadratic()) entries.push_back({pair.first, pair.second, c});
  return QuboMatrix(dimension, std::move(entries), p.constant());
}

struct QuboStats {
  std::size_t logical_qubits = 0;
  std::size_t diagonal_nonzeros = 0;
  std::size_t off_diagonal_nonzeros = 0;
  double density = 0.0;  // off-diagonal nonzeros / (m (m - 1) / 2)
  Coeff max_abs_coefficient = 0;
};

inline QuboStats Stats(const QuboMatrix& q) {
  QuboStats s;
  s.logical_qubits = q.dimension();
  for (const auto& e : q.entries()) {
    (e.i == e.j ? s.diagonal_nonzeros : s.off_diagonal_nonzeros)++;
    s.max_abs_coefficient = std::max(s.max_abs_coefficient, e.value < 0 ? -e.value : e.value);
  }
  const std::size_t m = q.dimension();
  if (m >= 2) {
    s.density = static_cast<double>(s.off_diagonal_nonzeros) /
                (static_cast<double>(m) * static_cast<double>(m - 1) / 2.0);
  }
  return s;
}

}  // namespace tcqubo
