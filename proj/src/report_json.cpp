#include "qnk/report_json.hpp"

#include <limits>

namespace qnk {

json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

json to_json(const NCF& f) {
  json a = json::array();
  for (const auto& x : f.entries()) a.push_back(to_json(x));
  return a;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

json to_json(const EPoint& p) { return p.str(); }

json to_json(const CharVarReport& r) {
  json orbits = json::array();
  for (const auto& o : r.partition.orbits) orbits.push_back(o);
  return {
      {"ncf", to_json(r.ncf)},
      {"sigma_group", {{"runs", r.sigma.run_lengths}, {"generators", r.sigma.generator_indices},
                       {"order", to_json(r.sigma.order)}}},
      {"partition", {{"J", r.partition.fixed}, {"orbits", orbits}}},
      {"bundle", {{"base_dim", r.bundle.base_dim}, {"fibers", r.bundle.fibers},
                  {"tag", tag_name(r.bundle.tag)}, {"very_ample", r.bundle.very_ample}}},
      {"etale_order", to_json(r.etale_order)},
  };
}

json to_json(const GLatticeFn& f) {
  const ThetaSpace& sp = *f.space();
  json coeffs = json::array();
  for (const auto& [beta, a] : f.coefficients()) coeffs.push_back({beta, a.real(), a.imag()});
  return {{"ncf", to_json(sp.params().ncf)}, {"c", to_json(sp.c())}, {"coeffs", coeffs}};
}

json to_json(const VerificationReport& r) {
  return {{"identity", r.identity},   {"n", r.n},
          {"k", r.k},                 {"samples", r.samples},
          {"rejected", r.rejected},   {"degenerate", r.degenerate},
          {"max_residual", r.max_residual}, {"mean_residual", r.mean_residual},
          {"tolerance", r.tolerance}, {"passed", r.passed()}};
}

json to_json(const RelationSet& r) {
  json rel = json::array();
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) {
      json terms = json::array();
      for (int s = 0; s < r.n; ++s) {
        cplx c = r.coefficient(i, j, s);
        // coefficient of x_{j-s} x_{i+s}
        terms.push_back({{"r", s}, {"left", ((j - s) % r.n + r.n) % r.n}, {"right", (i + s) % r.n},
                         {"coefficient", to_json(c)}});
      }
      rel.push_back({{"i", i}, {"j", j}, {"terms", terms}});
    }
  return {{"n", r.n}, {"k", r.k}, {"tau", to_json(r.tau)}, {"eta", to_json(r.lattice.eta)}, {"relations", rel}};
}

json to_json(const PhiDescentReport& r) {
  return {{"reflections", r.reflections}, {"exact_ok", r.exact_ok},
          {"samples", r.samples},         {"max_distance", r.max_distance},
          {"worst_reflection", r.worst_reflection}, {"worst_sample", to_json(r.worst_sample)},
          {"vacuous", r.vacuous()}};
}

json to_json(const PointModuleTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back(to_json(row));
  return {{"z", to_json(t.z)}, {"depth", t.depth}, {"rows", rows},
          {"max_residual", t.max_residual}, {"min_row_distance", t.min_row_distance}};
}

json error_object(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

namespace {
BigInt big_from(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) return BigInt(v.get<std::string>());
  throw PreconditionError("expected an integer label");
}
}  // namespace

WeightedGraph graph_from_json(const json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw PreconditionError("graph needs \"vertices\" and \"edges\"");
  std::vector<GraphEdge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw PreconditionError("edge must be [i, j, label] with 1-based vertices");
    long long a = e[0].get<long long>(), b = e[1].get<long long>();
    if (a < 1 || b < 1) throw PreconditionError("vertices are numbered from 1");
    edges.push_back({static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1), big_from(e[2])});
  }
  return WeightedGraph(j.at("vertices").get<std::size_t>(), std::move(edges));
}

}  // namespace qnk
