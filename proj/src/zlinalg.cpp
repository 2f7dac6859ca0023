#include "qnk/zlinalg.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace qnk {

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0) {
  if (dim == 0) throw PreconditionError("matrix dimension must be >= 1");
}

IntMatrix IntMatrix::identity(std::size_t dim) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (o.dim_ != dim_) throw PreconditionError("matrix dimension mismatch");
  IntMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const BigInt& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

IntMatrix dmatrix(std::span<const BigInt> entries) {
  if (entries.empty()) throw PreconditionError("dmatrix needs a nonempty sequence");
  IntMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(i, i) = entries[i];
    if (i + 1 < entries.size()) m(i, i + 1) = m(i + 1, i) = -1;
  }
  return m;
}

IntMatrix dmatrix(const NCF& f) { return dmatrix(std::span<const BigInt>(f.entries())); }

BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

InvariantFactors smith_invariants(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntMatrix a = m;
  InvariantFactors out(n, 0);
  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 != r2) for (std::size_t j = 0; j < n; ++j) std::swap(a(r1, j), a(r2, j));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 != c2) for (std::size_t i = 0; i < n; ++i) std::swap(a(i, c1), a(i, c2));
  };
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pr = n, pc = n;
      BigInt best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          BigInt v = abs(a(i, j));
          if (pr == n || v < best) { best = v; pr = i; pc = j; }
        }
      if (pr == n) return out;  // remaining block is zero
      swap_rows(t, pr);
      swap_cols(t, pc);
      const BigInt p = a(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        BigInt q = a(i, t) / p;
        for (std::size_t j = t; j < n; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        BigInt q = a(t, j) / p;
        for (std::size_t i = t; i < n; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility condition on the trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % p != 0) {
            for (std::size_t c = t; c < n; ++c) a(t, c) += a(i, c);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out[t] = abs(a(t, t));
  }
  return out;
}

DInverse d_inverse(const NCF& f) {
  const auto& e = f.entries();
  const std::size_t g = e.size();
  std::span<const BigInt> all(e);
  // prefix[i] = d(n_1..n_i), suffix[i] = d(n_{i+1}..n_g)
  std::vector<BigInt> prefix(g + 1), suffix(g + 1);
  for (std::size_t i = 0; i <= g; ++i) {
    prefix[i] = d(all.first(i));
    suffix[i] = d(all.subspan(i));
  }
  DInverse r{prefix[g], IntMatrix(g)};
  if (r.denominator == 0) throw PreconditionError("D is singular");
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      std::size_t lo = std::min(i, j), hi = std::max(i, j);
      r.numerators(i, j) = prefix[lo] * suffix[hi + 1];
    }
  return r;
}

IntMatrix intersection_matrix(std::span<const BigInt> a, std::span<const BigInt> b) {
  const std::size_t g = a.size();
  if (g == 0) throw PreconditionError("intersection_number needs g >= 1");
  if (b.size() + 1 != g) throw PreconditionError("b must have length g-1");
  IntMatrix m(g);
  for (std::size_t i = 0; i < g; ++i) {
    m(i, i) = a[i];
    if (i > 0) m(i, i) += b[i - 1];
    if (i + 1 < g) {
      m(i, i) += b[i];
      m(i, i + 1) = m(i + 1, i) = b[i];
    }
  }
  return m;
}

BigInt intersection_number(std::span<const BigInt> a, std::span<const BigInt> b) {
  return determinant(intersection_matrix(a, b));
}

std::vector<BigInt> standard_divisor_degrees(const NCF& f) {
  const std::size_t g = f.g();
  std::vector<BigInt> out(g);
  for (std::size_t i = 0; i < g; ++i) {
    int ends = (i == 0) + (i == g - 1);
    out[i] = f[i] - 2 + ends;
  }
  return out;
}

WeightedGraph::WeightedGraph(std::size_t vertices, std::vector<GraphEdge> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  if (vertices_ == 0) throw PreconditionError("graph needs at least one vertex");
  for (const auto& e : edges_) {
    if (e.i >= vertices_ || e.j >= vertices_) throw PreconditionError("edge endpoint out of range");
    if (e.label == 0) throw PreconditionError("edge labels must be nonzero");
  }
}

WeightedGraph dnk_graph(const NCF& f) {
  const std::size_t g = f.g();
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < g; ++i) {
    int ends = (i == 0) + (i == g - 1);
    edges.push_back({i, i, f[i] + 2 - ends});
    if (i + 1 < g) edges.push_back({i, i + 1, BigInt(-1)});
  }
  return WeightedGraph(g, std::move(edges));
}

GraphDivisorInvariants graph_divisor_invariants(const WeightedGraph& gr) {
  IntMatrix m(gr.vertices());
  for (const auto& e : gr.edges()) {
    if (e.i == e.j) {
      m(e.i, e.i) += e.label;
    } else {
      m(e.i, e.j) += e.label;
      m(e.j, e.i) += e.label;
      m(e.i, e.i) += e.label;
      m(e.j, e.j) += e.label;
    }
  }
  GraphDivisorInvariants out{m, determinant(m), smith_invariants(m), 1};
  for (const auto& s : out.kernel_structure) out.kernel_order *= s * s;
  return out;
}

StandardDivisor dnk_standard_divisor(const NCF& f) {
  StandardDivisor s;
  for (const auto& deg : standard_divisor_degrees(f)) {
    std::vector<std::pair<EPoint, BigInt>> di;
    if (deg != 0) di.emplace_back(EPoint::zero(), deg);
    s.d.push_back(std::move(di));
  }
  s.z.assign(f.g() - 1, EPoint::zero());
  return s;
}

namespace {

std::pair<BigInt, EPoint> degree_and_sum(const std::vector<std::pair<EPoint, BigInt>>& di) {
  BigInt deg = 0;
  EPoint sum;
  for (const auto& [p, m] : di) {
    deg += m;
    sum = sum + p.scaled(m);
  }
  return {deg, sum};
}

// sum(d_i) - z_i + z_{i-1} with z_0 = z_g = 0
EPoint balanced_sum(const StandardDivisor& s, std::size_t i, const EPoint& sum) {
  EPoint out = sum;
  if (i < s.z.size()) out = out - s.z[i];
  if (i > 0) out = out + s.z[i - 1];
  return out;
}

}  // namespace

bool std_divisor_equivalent(const StandardDivisor& a, const StandardDivisor& b) {
  if (a.g() != b.g()) throw PreconditionError("standard divisors over different g");
  if (a.z.size() + 1 != a.g() || b.z.size() + 1 != b.g())
    throw PreconditionError("standard divisor needs g-1 diagonal shifts");
  for (std::size_t i = 0; i < a.g(); ++i) {
    auto [da, sa] = degree_and_sum(a.d[i]);
    auto [db, sb] = degree_and_sum(b.d[i]);
    if (da != db) return false;
    if (balanced_sum(a, i, sa) != balanced_sum(b, i, sb)) return false;
  }
  return true;
}

}  // namespace qnk
