#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "jka/weighted_function.hpp"

namespace jka {

/// Linear operator on WeightedFunction given as an expression tree of
/// multiplications, vector fields, compositions and linear combinations.
class ConeOperator {
 public:
  struct Node;

  ConeOperator() = default;

  static ConeOperator zero(int dim);
  static ConeOperator identity(int dim);
  static ConeOperator multiply(const WeightedFunction& g, std::string label);
  static ConeOperator vector_field(VectorField v, std::string label);
  static ConeOperator second_order(SecondOrderOperator op, std::string label);
  static ConeOperator compose(const ConeOperator& a, const ConeOperator& b);  // a after b
  static ConeOperator lincomb(const std::vector<std::pair<ComplexRational, ConeOperator>>& parts);
  /// Same operator with a new display name.
  ConeOperator named(std::string label) const;

  int dim() const;
  WeightedFunction apply(const WeightedFunction& f) const;
  WeightedFunction operator()(const WeightedFunction& f) const { return apply(f); }
  /// Human-readable expression tree.
  std::string expr() const;

  friend ConeOperator operator+(const ConeOperator& a, const ConeOperator& b);
  friend ConeOperator operator-(const ConeOperator& a, const ConeOperator& b);
  friend ConeOperator operator*(const ComplexRational& c, const ConeOperator& a);
  friend ConeOperator operator*(const ConeOperator& a, const ConeOperator& b) { return compose(a, b); }

 private:
  explicit ConeOperator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

ConeOperator commutator(const ConeOperator& a, const ConeOperator& b);
ConeOperator anticommutator(const ConeOperator& a, const ConeOperator& b);

}  // namespace jka
