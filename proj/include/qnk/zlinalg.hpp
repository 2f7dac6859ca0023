#pragma once

#include "qnk/bigint.hpp"
#include "qnk/contfrac.hpp"
#include "qnk/epoint.hpp"

#include <span>
#include <vector>

namespace qnk {

/// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t dim);
  static IntMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<BigInt> a_;
};

/// s_1 | s_2 | ... | s_g, trailing zeros allowed.
using InvariantFactors = std::vector<BigInt>;

IntMatrix dmatrix(std::span<const BigInt> entries);
IntMatrix dmatrix(const NCF& f);

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntMatrix& m);

/// Smith invariant factors by row and column reduction.
InvariantFactors smith_invariants(const IntMatrix& m);

/// D^{-1} = numerators / denominator with numerators(i,j) = d[i,j].
struct DInverse {
  BigInt denominator;
  IntMatrix numerators;
};
DInverse d_inverse(const NCF& f);

/// Symmetric tridiagonal A(a;b): diagonal a_1+b_1, a_i+b_{i-1}+b_i, a_g+b_{g-1}; off-diagonal b_i.
IntMatrix intersection_matrix(std::span<const BigInt> a, std::span<const BigInt> b);
BigInt intersection_number(std::span<const BigInt> a, std::span<const BigInt> b);

/// Multiplicities of the point 0 in the standard divisor components D_1..D_g.
std::vector<BigInt> standard_divisor_degrees(const NCF& f);

struct GraphEdge {
  std::size_t i;  // 0-based
  std::size_t j;
  BigInt label;
};

class WeightedGraph {
 public:
  WeightedGraph(std::size_t vertices, std::vector<GraphEdge> edges);
  std::size_t vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

 private:
  std::size_t vertices_;
  std::vector<GraphEdge> edges_;
};

/// Path graph with edge labels -1 and loop labels n_i + 2 - [i=1] - [i=g].
WeightedGraph dnk_graph(const NCF& f);

struct GraphDivisorInvariants {
  IntMatrix m;
  BigInt selfint;
  InvariantFactors kernel_structure;
  BigInt kernel_order;  // product of s_i^2 over nonzero s_i; 0 if some s_i = 0 (infinite kernel)
};
GraphDivisorInvariants graph_divisor_invariants(const WeightedGraph& g);

/// Divisor data sum_i pr_i^*(d_i) + sum_j Delta_{j,j+1}^{z_j} with d_i formal point sums.
struct StandardDivisor {
  std::vector<std::vector<std::pair<EPoint, BigInt>>> d;  // g entries, (point, multiplicity)
  EVector z;                                              // g-1 shifts
  std::size_t g() const { return d.size(); }
};

StandardDivisor dnk_standard_divisor(const NCF& f);
bool std_divisor_equivalent(const StandardDivisor& a, const StandardDivisor& b);

}  // namespace qnk
