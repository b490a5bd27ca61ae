#include "jka/cone_operator.hpp"

#include <deque>
#include <sstream>

namespace jka {

struct ConeOperator::Node {
  enum class Kind { multiply, vector_field, second_order, compose, lincomb, named };
  Kind kind;
  int dim = 0;
  std::string label;
  WeightedFunction g;
  VectorField v;
  SecondOrderOperator second;
  std::vector<std::pair<ComplexRational, ConeOperator>> parts;  // compose: (1, a), (1, b)
  // named nodes remember their last few results; X is applied to the same
  // function many times inside nested commutators
  mutable std::deque<std::pair<WeightedFunction, WeightedFunction>> cache;
};

namespace {

constexpr std::size_t kCacheSize = 6;

}  // namespace

ConeOperator ConeOperator::zero(int dim) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::lincomb;
  n->dim = dim;
  n->label = "0";
  return ConeOperator(n);
}

ConeOperator ConeOperator::identity(int dim) {
  return multiply(WeightedFunction::constant(dim, ComplexRational(1)), "1");
}

ConeOperator ConeOperator::multiply(const WeightedFunction& g, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::multiply;
  n->dim = g.dim();
  n->g = g;
  n->label = std::move(label);
  return ConeOperator(n);
}

ConeOperator ConeOperator::vector_field(VectorField v, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::vector_field;
  n->dim = static_cast<int>(v.components.size());
  n->v = std::move(v);
  n->label = std::move(label);
  return ConeOperator(n);
}

ConeOperator ConeOperator::second_order(SecondOrderOperator op, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::second_order;
  n->dim = op.dim;
  n->second = std::move(op);
  n->label = std::move(label);
  return ConeOperator(n);
}

ConeOperator ConeOperator::compose(const ConeOperator& a, const ConeOperator& b) {
  if (a.dim() != b.dim()) throw AlgebraMismatch();
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::compose;
  n->dim = a.dim();
  n->parts = {{ComplexRational(1), a}, {ComplexRational(1), b}};
  return ConeOperator(n);
}

ConeOperator ConeOperator::lincomb(const std::vector<std::pair<ComplexRational, ConeOperator>>& parts) {
  if (parts.empty()) throw Error("ConeOperator::lincomb: no operators");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::lincomb;
  n->dim = parts.front().second.dim();
  for (const auto& p : parts) {
    if (p.second.dim() != n->dim) throw AlgebraMismatch();
    if (!p.first.is_zero()) n->parts.push_back(p);
  }
  return ConeOperator(n);
}

ConeOperator ConeOperator::named(std::string label) const {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::named;
  n->dim = dim();
  n->label = std::move(label);
  n->parts = {{ComplexRational(1), *this}};
  return ConeOperator(n);
}

int ConeOperator::dim() const {
  if (!node_) throw Error("ConeOperator: empty operator");
  return node_->dim;
}

WeightedFunction ConeOperator::apply(const WeightedFunction& f) const {
  if (!node_) throw Error("ConeOperator: empty operator");
  const Node& n = *node_;
  if (f.dim() != 0 && f.dim() != n.dim) throw AlgebraMismatch();
  switch (n.kind) {
    case Node::Kind::multiply:
      return n.g * f;
    case Node::Kind::vector_field:
      return n.v.apply(f);
    case Node::Kind::second_order:
      return n.second.apply(f);
    case Node::Kind::compose:
      return n.parts[0].second.apply(n.parts[1].second.apply(f));
    case Node::Kind::lincomb: {
      WeightedFunction out(n.dim);
      for (const auto& [c, op] : n.parts) out.add_scaled(op.apply(f), c);
      return out;
    }
    case Node::Kind::named: {
      for (const auto& [in, out] : n.cache)
        if (in == f) return out;
      WeightedFunction out = n.parts[0].second.apply(f);
      n.cache.emplace_back(f, out);
      if (n.cache.size() > kCacheSize) n.cache.pop_front();
      return out;
    }
  }
  return WeightedFunction(n.dim);
}

std::string ConeOperator::expr() const {
  if (!node_) return "<empty>";
  const Node& n = *node_;
  switch (n.kind) {
    case Node::Kind::multiply:
    case Node::Kind::vector_field:
    case Node::Kind::second_order:
    case Node::Kind::named:
      return n.label;
    case Node::Kind::compose:
      return n.parts[0].second.expr() + " " + n.parts[1].second.expr();
    case Node::Kind::lincomb: {
      if (n.parts.empty()) return "0";
      std::ostringstream os;
      os << "(";
      for (std::size_t i = 0; i < n.parts.size(); ++i) {
        if (i) os << " + ";
        const auto& c = n.parts[i].first;
        if (!(c == ComplexRational(1))) os << "(" << c << ") ";
        os << n.parts[i].second.expr();
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

ConeOperator operator+(const ConeOperator& a, const ConeOperator& b) {
  return ConeOperator::lincomb({{ComplexRational(1), a}, {ComplexRational(1), b}});
}

ConeOperator operator-(const ConeOperator& a, const ConeOperator& b) {
  return ConeOperator::lincomb({{ComplexRational(1), a}, {ComplexRational(-1), b}});
}

ConeOperator operator*(const ComplexRational& c, const ConeOperator& a) { return ConeOperator::lincomb({{c, a}}); }

ConeOperator commutator(const ConeOperator& a, const ConeOperator& b) {
  return ConeOperator::lincomb({{ComplexRational(1), a * b}, {ComplexRational(-1), b * a}});
}

ConeOperator anticommutator(const ConeOperator& a, const ConeOperator& b) {
  return ConeOperator::lincomb({{ComplexRational(1), a * b}, {ComplexRational(1), b * a}});
}

}  // namespace jka
