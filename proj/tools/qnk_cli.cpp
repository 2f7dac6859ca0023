#include "qnk/charvar.hpp"
#include "qnk/contfrac.hpp"
#include "qnk/eqa.hpp"
#include "qnk/report_json.hpp"
#include "qnk/thetag.hpp"
#include "qnk/zlinalg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace qnk;

namespace {

struct RunConfig {
  std::string eta = "0.8i";
  std::string tau;
  std::optional<double> tolerance;
  std::uint64_t seed = 20240601;
};

struct ExitCode {
  int code;
};

cplx parse_eta(const RunConfig& rc) {
  cplx eta = parse_complex(rc.eta);
  if (eta.imag() <= 0) throw PreconditionError("eta must have positive imaginary part");
  return eta;
}

// "a+bi" or an exact pair "p/q,r/s" meaning a + b eta.
struct TauInput {
  cplx value;
  std::optional<EPoint> exact;
};

TauInput parse_tau(const std::string& text, cplx eta) {
  if (text.find(',') != std::string::npos) {
    EPoint p = EPoint::parse(text);
    return {p.a().convert_to<double>() + p.b().convert_to<double>() * eta, p};
  }
  return {parse_complex(text), std::nullopt};
}

LatticeParams lattice_of(const RunConfig& rc) {
  LatticeParams lp;
  lp.eta = parse_eta(rc);
  if (!rc.tau.empty()) lp.tau = parse_tau(rc.tau, lp.eta).value;
  lp.validate();
  return lp;
}

Slope slope_of(const std::string& n, const std::string& k) {
  try {
    return Slope::make(BigInt(n), BigInt(k));
  } catch (const std::runtime_error&) {
    throw PreconditionError("n and k must be integers");
  }
}

int small(const BigInt& x, const char* what) {
  if (x > 100000) throw PreconditionError(std::string(what) + " is too large for numeric evaluation");
  return static_cast<int>(x);
}

NCF ncf_of_list(const std::vector<std::string>& xs) {
  std::vector<BigInt> v;
  for (const auto& s : xs) {
    try {
      v.emplace_back(s);
    } catch (const std::runtime_error&) {
      throw PreconditionError("entries must be integers: " + s);
    }
  }
  return NCF(std::move(v));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json slope_json(const Slope& s) { return {{"n", to_json(s.n)}, {"k", to_json(s.k)}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative continued fractions, theta functions and elliptic algebras Q_{n,k}(E,tau)"};
  app.require_subcommand(1);
  RunConfig rc;
  double tol_value = 0;
  auto* tol_opt = app.add_option("--tolerance", tol_value, "residual tolerance for verification")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "seed for sampled points");
  app.add_option("--eta", rc.eta, "lattice parameter, e.g. 0.8i or 0.3+0.9i");
  app.add_option("--tau", rc.tau, "translation parameter: a+bi, or exact p/q,r/s for a + b eta");
  app.fallthrough();

  std::string n_s, k_s;
  auto add_nk = [&](CLI::App* sc) {
    sc->add_option("n", n_s)->required();
    sc->add_option("k", k_s)->required();
  };

  auto* contfrac = app.add_subcommand("contfrac", "negative continued fraction of n/k");
  add_nk(contfrac);
  auto* seqs = app.add_subcommand("sequences", "k_i, l_i and k'");
  add_nk(seqs);
  std::vector<std::string> entries;
  auto* smith = app.add_subcommand("smith", "invariant factors of D(n_1,...,n_g)");
  smith->add_option("entries", entries)->required();
  std::vector<long long> avec, bvec;
  auto* intersect = app.add_subcommand("intersect", "intersection number of a standard divisor pair");
  intersect->add_option("--a", avec)->required();
  intersect->add_option("--b", bvec)->required();
  std::string graph_file;
  auto* gdiv = app.add_subcommand("graph-divisor", "invariants of a weighted graph divisor");
  gdiv->add_option("file", graph_file)->required()->check(CLI::ExistingFile);
  auto* charvar = app.add_subcommand("charvar", "classification of the characteristic variety");
  add_nk(charvar);
  int nmax = 60, gmax = 12;
  bool csv = false;
  auto* sweep = app.add_subcommand("sweep", "classification table over all coprime n > k");
  sweep->add_option("--nmax", nmax)->check(CLI::Range(2, 500));
  sweep->add_option("--gmax", gmax)->check(CLI::Range(1, 12));
  sweep->add_flag("--csv", csv);
  auto* rels = app.add_subcommand("relations", "relation coefficients c_{ij,r}");
  add_nk(rels);
  std::string which;
  int samples = 20, depth = 7;
  auto* verify = app.add_subcommand("verify", "sampled verification of an identity");
  verify->add_option("which", which)->required()->check(
      CLI::IsMember({"identity", "graph", "degenerate", "k1", "point-module", "descent"}));
  add_nk(verify);
  verify->add_option("--samples", samples)->check(CLI::Range(1, 100000));
  verify->add_option("--depth", depth)->check(CLI::Range(0, 1000));
  std::string zlist;
  auto* phic = app.add_subcommand("phi", "projective point Phi(z) in the w-basis");
  add_nk(phic);
  phic->add_option("--z", zlist)->required();
  auto* etale = app.add_subcommand("etale", "order of the etale cover group");
  add_nk(etale);
  auto* obstr = app.add_subcommand("obstruction", "whether (n - k_i - l_i) tau = 0 for each i");
  add_nk(obstr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_object("usage", e.what()));
    return 1;
  }
  if (!tol_opt->empty()) rc.tolerance = tol_value;

  try {
    if (*contfrac) {
      Slope s = slope_of(n_s, k_s);
      json j = slope_json(s);
      j["ncf"] = to_json(expand(s));
      emit(j);
    } else if (*seqs) {
      Slope s = slope_of(n_s, k_s);
      NCF f = expand(s);
      SlopeSequences q = sequences(f);
      json ks = json::array(), ls = json::array();
      for (std::size_t i = 1; i <= f.g(); ++i) {
        ks.push_back(to_json(q.k_seq[i]));
        ls.push_back(to_json(q.l_seq[i]));
      }
      json j = slope_json(s);
      j["ncf"] = to_json(f);
      j["k"] = ks;
      j["l"] = ls;
      j["k_prime"] = to_json(q.k_prime);
      j["k_input"] = to_json(s.k);
      emit(j);
    } else if (*smith) {
      NCF f = ncf_of_list(entries);
      IntMatrix d = dmatrix(f);
      json inv = json::array();
      for (const auto& x : smith_invariants(d)) inv.push_back(to_json(x));
      Slope s = evaluate(f);
      emit({{"ncf", to_json(f)}, {"n", to_json(s.n)}, {"k", to_json(s.k)},
            {"determinant", to_json(determinant(d))}, {"invariants", inv}});
    } else if (*intersect) {
      if (avec.size() != bvec.size() + 1)
        throw PreconditionError("--a needs g values and --b needs g-1 values");
      std::vector<BigInt> a(avec.begin(), avec.end()), b(bvec.begin(), bvec.end());
      IntMatrix m = intersection_matrix(a, b);
      json rows = json::array();
      for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
      }
      emit({{"matrix", rows}, {"intersection_number", to_json(intersection_number(a, b))}});
    } else if (*gdiv) {
      std::ifstream in(graph_file);
      json gj;
      try {
        gj = json::parse(in);
      } catch (const json::exception& e) {
        throw PreconditionError(std::string("invalid graph file: ") + e.what());
      }
      WeightedGraph graph = graph_from_json(gj);
      GraphDivisorInvariants inv = graph_divisor_invariants(graph);
      json ks = json::array();
      for (const auto& x : inv.kernel_structure) ks.push_back(to_json(x));
      // second reading of the kernel: E[|det|]^g, of order |det|^(2g)
      BigInt det = abs(inv.selfint), alt = 1;
      for (std::size_t i = 0; i < graph.vertices(); ++i) alt *= det * det;
      emit({{"selfint", to_json(inv.selfint)},
            {"kernel_structure", ks},
            {"kernel_order", to_json(inv.kernel_order)},
            {"kernel_finite", inv.kernel_order != 0},
            {"kernel_order_power_reading", to_json(alt)}});
    } else if (*charvar) {
      emit(to_json(charvar_report(expand(slope_of(n_s, k_s)))));
    } else if (*sweep) {
      json rows = json::array();
      if (csv) std::cout << "n,k,g,ncf,tag,very_ample,sigma_order,base_dim,fibers,etale_order\n";
      for (int n = 2; n <= nmax; ++n)
        for (int k = 1; k < n; ++k) {
          if (std::gcd(n, k) != 1) continue;
          NCF f = expand(Slope::make(n, k));
          if (static_cast<int>(f.g()) > gmax) continue;
          CharVarReport r = charvar_report(f);
          if (csv) {
            std::string ncf, fib;
            for (std::size_t i = 0; i < f.g(); ++i) ncf += (i ? " " : "") + f[i].str();
            for (std::size_t i = 0; i < r.bundle.fibers.size(); ++i)
              fib += (i ? " " : "") + std::to_string(r.bundle.fibers[i]);
            std::cout << n << "," << k << "," << f.g() << ",[" << ncf << "]," << tag_name(r.bundle.tag) << ","
                      << (r.bundle.very_ample ? "true" : "false") << "," << r.sigma.order << ","
                      << r.bundle.base_dim << ",[" << fib << "]," << r.etale_order << "\n";
          } else {
            json j = to_json(r);
            j["n"] = n;
            j["k"] = k;
            rows.push_back(j);
          }
        }
      if (!csv) emit({{"nmax", nmax}, {"gmax", gmax}, {"rows", rows}});
    } else if (*rels) {
      Slope s = slope_of(n_s, k_s);
      LatticeParams lp = lattice_of(rc);
      if (rc.tau.empty()) throw PreconditionError("relations needs --tau");
      emit(to_json(relations(small(s.n, "n"), small(s.k, "k"), lp.tau, lp)));
    } else if (*verify) {
      Slope s = slope_of(n_s, k_s);
      const int n = small(s.n, "n"), k = small(s.k, "k");
      SampleConfig cfg;
      cfg.lattice = lattice_of(rc);
      cfg.seed = rc.seed;
      cfg.samples = samples;
      const bool g1 = expand(s).g() == 1;
      cfg.tolerance = rc.tolerance.value_or(g1 ? 1e-8 : 1e-6);
      json out;
      bool ok = true;
      if (which == "descent") {
        NCF f = expand(s);
        WBasis wb = w_basis(ThetaSpace::create(ThetaSpaceParams::standard(f, cfg.lattice)));
        PhiDescentReport r = phi_descent_check(wb, samples, rc.seed);
        out = to_json(r);
        out["n"] = n;
        out["k"] = k;
        out["tolerance"] = cfg.tolerance;
        ok = r.exact_ok && r.max_distance < cfg.tolerance;
        out["passed"] = ok;
      } else {
        VerificationReport r;
        if (which == "identity") r = verify_odesskii(n, k, cfg);
        else if (which == "graph") r = verify_graph_vanishing(n, k, cfg);
        else if (which == "point-module") r = verify_point_modules(n, k, depth, cfg);
        else {
          if (k != 1) throw PreconditionError(which + " applies to k = 1");
          r = which == "degenerate" ? verify_degenerate(n, cfg) : verify_k1_identity(n, cfg);
        }
        out = to_json(r);
        ok = r.passed();
      }
      out["eta"] = to_json(cfg.lattice.eta);
      if (!rc.tau.empty()) out["tau"] = to_json(cfg.lattice.tau);
      out["seed"] = rc.seed;
      emit(out);
      if (!ok) return 2;
    } else if (*phic) {
      Slope s = slope_of(n_s, k_s);
      NCF f = expand(s);
      LatticeParams lp = lattice_of(rc);
      CVector z = parse_complex_list(zlist);
      if (z.size() != f.g()) throw PreconditionError("--z needs " + std::to_string(f.g()) + " coordinates");
      WBasis wb = w_basis(ThetaSpace::create(ThetaSpaceParams::standard(f, lp)));
      json j = slope_json(s);
      j["ncf"] = to_json(f);
      j["z"] = to_json(z);
      j["phi"] = to_json(phi(wb, z));
      emit(j);
    } else if (*etale) {
      Slope s = slope_of(n_s, k_s);
      OrbitPartition p = orbit_partition(expand(s));
      json j = slope_json(s);
      j["J"] = p.fixed;
      json orbits = json::array();
      for (const auto& o : p.orbits) orbits.push_back(o);
      j["orbits"] = orbits;
      j["etale_order"] = to_json(etale_cover_group_order(p));
      emit(j);
    } else if (*obstr) {
      Slope s = slope_of(n_s, k_s);
      NCF f = expand(s);
      if (rc.tau.empty()) throw PreconditionError("obstruction needs --tau");
      LatticeParams lp = lattice_of(rc);
      TauInput t = parse_tau(rc.tau, lp.eta);
      std::vector<bool> flags =
          t.exact ? commutativity_obstruction(f, *t.exact) : commutativity_obstruction(f, t.value, lp);
      json j = slope_json(s);
      j["ncf"] = to_json(f);
      j["exact"] = t.exact.has_value();
      j["vanishes"] = flags;
      j["headline"] = flags.front();
      j["all"] = std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });
      emit(j);
    }
  } catch (const PreconditionError& e) {
    emit(error_object("precondition", e.what()));
    return 1;
  } catch (const NumericalError& e) {
    emit(error_object("numerical", e.what()));
    return 1;
  } catch (const std::exception& e) {
    emit(error_object("internal", e.what()));
    return 3;
  }
  return 0;
}
