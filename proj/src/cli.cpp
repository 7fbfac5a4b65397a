#include "tetra/cli.hpp"

#include "tetra/dilation.hpp"
#include "tetra/error.hpp"
#include "tetra/factorization.hpp"
#include "tetra/fundops.hpp"
#include "tetra/geometry.hpp"
#include "tetra/instances.hpp"
#include "tetra/io.hpp"
#include "tetra/triples.hpp"
#include "tetra/varieties.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace tetra::cli {

namespace {

using io::Json;

struct Globals {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool json = false;

  Tolerances tolerances() const {
    Tolerances t = Tolerances::from_environment();
    if (tol) t.residual_tol = *tol;
    t.validate();
    return t;
  }
};

// Input problems map to exit code 2; every other library error is a failed check.
bool is_input_error(ErrorCode c) {
  return c == ErrorCode::SchemaError || c == ErrorCode::InvalidArgument || c == ErrorCode::DimensionMismatch;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool is_matrix(const Json& j) { return j.is_object() && j.contains("rows") && j.contains("data"); }

void print_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (is_matrix(j)) {
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    out << prefix << ": " << rows << "x" << cols << "\n";
    for (std::size_t i = 0; i < rows; ++i) {
      out << "  ";
      for (std::size_t k = 0; k < cols; ++k) {
        const auto& e = j["data"][i * cols + k];
        out << (k ? " " : "") << "(" << format_double(e[0].get<double>()) << "," << format_double(e[1].get<double>())
            << ")";
      }
      out << "\n";
    }
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_structured())) {
    for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": ";
  if (j.is_number_float()) {
    out << format_double(j.get<double>());
  } else if (j.is_string()) {
    out << j.get<std::string>();
  } else {
    out << j.dump();
  }
  out << "\n";
}

void emit(const Json& report, const Globals& g, std::ostream& out) {
  if (g.json) {
    out << io::dump(report);
  } else {
    print_text(report, "", out);
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json point_json(const TetraPoint& p) {
  return Json::array({complex_json(p.x1), complex_json(p.x2), complex_json(p.x3)});
}

Complex parse_coordinate(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma);
    const std::string b = s.substr(comma + 1);
    std::size_t ub = 0;
    const double re = std::stod(a, &used);
    const double im = std::stod(b, &ub);
    if (used != a.size() || ub != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "bad coordinate '" + s + "' (expected re or re,im)");
  }
}

Json membership_json(const MembershipReport& r) {
  Json j;
  j["in_open"] = r.in_open;
  j["in_closed"] = r.in_closed;
  j["in_bE"] = r.in_bE;
  j["is_triangular"] = r.is_triangular;
  j["marginal"] = r.marginal;
  j["lhs2"] = r.lhs2;
  j["rhs2"] = r.rhs2;
  j["lhs3"] = r.lhs3;
  j["rhs3"] = r.rhs3;
  j["closure_residual"] = r.closure_residual;
  if (r.alpha1) j["alpha1"] = complex_json(*r.alpha1);
  if (r.alpha2) j["alpha2"] = complex_json(*r.alpha2);
  return j;
}

Json dilation_json(const DilationReport& r) {
  Json j;
  j["max_degree_checked"] = r.max_degree_checked;
  j["max_residual"] = r.max_residual;
  return j;
}

Json generator_json(const GeneratorReport& r) {
  Json j;
  j["commutator"] = r.commutator;
  j["selfcomm_gap"] = r.selfcomm_gap;
  j["circle_sup"] = r.circle_sup;
  j["circle_upper_bound"] = r.circle_upper_bound;
  j["algebraic"] = r.algebraic;
  j["strict"] = r.strict;
  j["non_strict"] = r.non_strict;
  return j;
}

Json dss_report_json(const DSSReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["failed"] = r.failed;
  j["max_residual"] = r.max_residual();
  j["projection_defect"] = r.projection_defect;
  j["unitarity_defect"] = r.unitarity_defect;
  j["isometry_defect"] = r.isometry_defect;
  j["coinvariance_phi"] = r.coinvariance_phi;
  j["coinvariance_psi"] = r.coinvariance_psi;
  j["coinvariance_z"] = r.coinvariance_z;
  j["cond_i_phipsi"] = r.cond_i_phipsi;
  j["cond_i_psiphi"] = r.cond_i_psiphi;
  j["cond_ii_t1"] = r.cond_ii_t1;
  j["cond_ii_t2"] = r.cond_ii_t2;
  j["commutator"] = r.commutator;
  j["spectral_margin"] = r.spectral_margin;
  return j;
}

Json bivariate_json(const BivariatePoly& p) { return io::matrix_to_json(p.coeffs); }

VarietyGenerators load_generators(const std::string& path, const Tolerances& tol) {
  const auto [a1, a2] = io::generators_from_json(io::load_json_file(path));
  return variety_generator_check(a1, a2, tol);
}

using Action = std::function<int(std::ostream&)>;

constexpr int kDefaultDegree = 6;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for commuting operator triples on the tetrablock"};
  app.name("tetra");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Residual tolerance (overrides TETRA_TOL)");
  app.add_option("--seed", g.seed, "Seed for randomized steps");
  app.add_flag("--json", g.json, "Emit the report as JSON");

  Action action;

  // membership
  std::vector<std::string> coords;
  auto* membership = app.add_subcommand("membership", "Test a point (x1, x2, x3); coordinates as re or re,im");
  membership->add_option("coords", coords)->required()->expected(3);
  membership->callback([&] {
    action = [&](std::ostream& os) {
      const TetraPoint p{parse_coordinate(coords[0]), parse_coordinate(coords[1]), parse_coordinate(coords[2])};
      const MembershipReport r = tetra_membership(p, g.tolerances().residual_tol);
      emit(membership_json(r), g, os);
      return r.in_closed ? kPass : kFail;
    };
  });

  // mu
  std::string file;
  auto* mu = app.add_subcommand("mu", "Decide mu < 1 for a 2x2 matrix via its tetrablock point");
  mu->add_option("file", file)->required();
  mu->callback([&] {
    action = [&](std::ostream& os) {
      const Matrix m = io::matrix_from_json(io::load_json_file(file));
      const bool below = mu_diag2(m, g.tolerances().residual_tol);
      Json j;
      j["mu_below_one"] = below;
      emit(j, g, os);
      return below ? kPass : kFail;
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Classify a commuting triple");
  classify->add_option("file", file)->required();
  classify->callback([&] {
    action = [&](std::ostream& os) {
      const CommutingTriple t = io::triple_from_json(io::load_json_file(file));
      ClassifyOptions opts;
      opts.seed = g.seed;
      const ClassificationReport r = classify_triple(t, g.tolerances(), opts);
      Json j;
      j["verdict"] = to_string(r.verdict);
      j["commuting"] = r.commuting;
      j["e_unitary"] = r.e_unitary;
      j["e_isometry"] = r.e_isometry;
      j["e_coisometry"] = r.e_coisometry;
      j["triangular"] = r.triangular;
      j["contraction_norms"] = r.contraction_norms;
      j["spectrum_in_closure"] = r.spectrum_in_closure;
      j["fundamental_residual"] = r.fundamental_residual;
      j["von_neumann_ratio"] = r.von_neumann_ratio;
      Json spec = Json::array();
      for (const auto& p : r.spectrum) spec.push_back(point_json(p));
      j["spectrum"] = spec;
      emit(j, g, os);
      return r.verdict == Verdict::NotEContraction ? kFail : kPass;
    };
  });

  // fundops
  auto* fund = app.add_subcommand("fundops", "Solve the fundamental equations of a triple and of its adjoint");
  fund->add_option("file", file)->required();
  fund->callback([&] {
    action = [&](std::ostream& os) {
      const CommutingTriple t = io::triple_from_json(io::load_json_file(file));
      const Tolerances tol = g.tolerances();
      const FundamentalPair f = fundamental_pair_unchecked(t.A(), t.B(), t.P(), tol);
      const CommutingTriple adj = t.adjoint();
      const FundamentalPair gp = fundamental_pair_unchecked(adj.A(), adj.B(), adj.P(), tol);
      const double eps = tol.residual_tol;
      const bool solvable = f.residual() <= 100 * eps && gp.residual() <= 100 * eps;
      Json j;
      j["solvable"] = solvable;
      j["defect_rank"] = f.defect.rank;
      j["residual"] = f.residual();
      j["F_conditions"] = f.conditions_hold(100 * eps);
      j["G_conditions"] = gp.conditions_hold(100 * eps);
      j["F_commutator"] = f.commutator_norm;
      j["F_selfcomm_gap"] = f.selfcomm_gap;
      j["G_commutator"] = gp.commutator_norm;
      j["G_selfcomm_gap"] = gp.selfcomm_gap;
      j["F1"] = io::matrix_to_json(f.F1);
      j["F2"] = io::matrix_to_json(f.F2);
      j["G1"] = io::matrix_to_json(gp.F1);
      j["G2"] = io::matrix_to_json(gp.F2);
      emit(j, g, os);
      return solvable ? kPass : kFail;
    };
  });

  // dilate
  Index blocks = 0;
  int degree = -1;
  std::string kind;
  auto* dilate = app.add_subcommand("dilate", "Build and verify a dilation");
  dilate->add_option("kind", kind)->required()->check(CLI::IsMember({"schaeffer", "pure", "ando"}));
  dilate->add_option("file", file)->required();
  dilate->add_option("--blocks", blocks, "Truncation size")->required();
  dilate->add_option("--degree", degree, "Maximal monomial degree to verify (default: min(safe degree, 6))");
  dilate->callback([&] {
    action = [&](std::ostream& os) {
      const Tolerances tol = g.tolerances();
      const io::Json doc = io::load_json_file(file);
      Json j;
      j["kind"] = kind;
      j["blocks"] = blocks;
      DilationReport rep;
      double pass_tol = tol.residual_tol;
      if (kind == "schaeffer") {
        const CommutingTriple t = io::triple_from_json(doc);
        const BlockDilation d = schaeffer_e_unitary_dilation(t, blocks, tol);
        const int deg = degree < 0 ? std::min(d.safe_degree, kDefaultDegree) : degree;
        rep = verify_dilation(t, d.T1, d.T2, d.U, d.H_embedding, deg, tol);
        j["safe_degree"] = d.safe_degree;
        j["interior_residual"] = d.interior.max();
      } else if (kind == "pure") {
        const CommutingTriple t = io::triple_from_json(doc);
        const PureDilation d = pure_e_isometric_dilation(t, blocks, tol);
        const int deg = degree < 0 ? std::min(d.safe_degree, kDefaultDegree) : degree;
        rep = verify_dilation(t, d.R1, d.R2, d.V, d.W_embedding, deg, tol);
        j["safe_degree"] = d.safe_degree;
        j["embedding_defect"] = d.embedding_defect;
        // The pure model truncation error decays like r(P)^N.
        pass_tol = 10 * tol.residual_tol;
      } else {
        const auto [t1, t2] = io::pair_from_json(doc);
        const AndoDilation d = ando_dilation(t1, t2, blocks, tol);
        const int deg = degree < 0 ? std::min(d.safe_degree, kDefaultDegree) : degree;
        rep = verify_pair_dilation(t1, t2, d.V1, d.V2, d.H_embedding, deg, tol);
        j["safe_degree"] = d.safe_degree;
        j["commutator_defect"] = d.commutator_defect;
        j["isometry_defect"] = d.isometry_defect;
      }
      j["verification"] = dilation_json(rep);
      const bool ok = rep.max_residual <= pass_tol;
      j["passed"] = ok;
      emit(j, g, os);
      return ok ? kPass : kFail;
    };
  });

  // bcl
  std::string mode;
  std::vector<std::string> files;
  auto* bcl = app.add_subcommand("bcl", "Extract or verify (Q, W) for triangular inner symbols");
  bcl->add_option("mode", mode)->required()->check(CLI::IsMember({"extract", "verify"}));
  bcl->add_option("files", files)->required();
  bcl->callback([&] {
    action = [&](std::ostream& os) {
      const Tolerances tol = g.tolerances();
      std::vector<AnalyticSymbol> symbols;
      for (const auto& f : files) symbols.push_back(io::symbol_from_json(io::load_json_file(f)));
      Json j;
      if (mode == "verify") {
        const BCLReport r = bcl_verify_n(symbols, tol);
        j["passed"] = r.passed();
        j["failed"] = r.failed;
        j["inner_residual"] = r.inner_residual;
        j["commute_residual"] = r.commute_residual;
        j["product_residual"] = r.product_residual;
        j["partner_residual"] = r.partner_residual;
        emit(j, g, os);
        return r.passed() ? kPass : kFail;
      }
      if (symbols.size() == 1) {
        const BCLPair qw = bcl_extract(symbols[0], tol);
        j["Q"] = io::matrix_to_json(qw.Q);
        j["W"] = io::matrix_to_json(qw.W);
      } else {
        const BCLExtraction ex = bcl_extract_n(symbols, tol);
        Json pairs = Json::array();
        for (const auto& p : ex.pairs) {
          Json pj;
          pj["Q"] = io::matrix_to_json(p.Q);
          pj["W"] = io::matrix_to_json(p.W);
          pairs.push_back(pj);
        }
        Json fund = Json::array();
        for (const auto& [a, b] : ex.fundamental) {
          Json fj;
          fj["F1"] = io::matrix_to_json(a);
          fj["F2"] = io::matrix_to_json(b);
          fund.push_back(fj);
        }
        j["pairs"] = pairs;
        j["fundamental"] = fund;
      }
      emit(j, g, os);
      return kPass;
    };
  });

  // dss
  auto* dss = app.add_subcommand("dss", "Verify or construct a factorization certificate for a pure pair");
  dss->add_option("mode", mode)->required()->check(CLI::IsMember({"verify", "construct"}));
  dss->add_option("files", files)->required();
  dss->callback([&] {
    action = [&](std::ostream& os) {
      const Tolerances tol = g.tolerances();
      const Json pair_doc = io::load_json_file(files[0]);
      const auto [t1, t2] = io::pair_from_json(pair_doc);
      Json j;
      if (mode == "verify") {
        DSSCertificate cert;
        if (files.size() > 1) {
          cert = io::certificate_from_json(io::load_json_file(files[1]));
        } else if (pair_doc.contains("certificate")) {
          cert = io::certificate_from_json(pair_doc["certificate"], "$.certificate");
        } else {
          throw Error(ErrorCode::InvalidArgument, "dss verify needs a certificate file");
        }
        const DSSReport r = dss_verify(t1, t2, cert, tol);
        emit(dss_report_json(r), g, os);
        return r.passed() ? kPass : kFail;
      }
      const DSSCertificate cert = dss_construct(t1, t2, tol);
      const DSSReport r = dss_verify(t1, t2, cert, tol);
      j["certificate"] = io::certificate_to_json(cert);
      j["report"] = dss_report_json(r);
      emit(j, g, os);
      return r.passed() ? kPass : kFail;
    };
  });

  // variety
  Index radial = 16;
  Index angular = 64;
  std::string out_path;
  auto* variety = app.add_subcommand("variety", "Generator checks and sampling of the associated variety");
  variety->add_option("mode", mode)
      ->required()
      ->check(CLI::IsMember({"check", "sample", "polys", "exit", "equivalence"}));
  variety->add_option("file", file)->required();
  variety->add_option("--radial", radial, "Radial grid steps")->check(CLI::PositiveNumber);
  variety->add_option("--angular", angular, "Angular grid steps")->check(CLI::PositiveNumber);
  variety->add_option("--out", out_path, "CSV output path for samples (default: stdout)");
  variety->callback([&] {
    action = [&](std::ostream& os) {
      const Tolerances tol = g.tolerances();
      Json j;
      if (mode == "equivalence") {
        const CommutingTriple t = io::triple_from_json(io::load_json_file(file));
        const EquivalenceReport r = dilation_variety_report(t, tol);
        j["cond1"] = r.cond1;
        j["cond2"] = r.cond2;
        j["cond3"] = r.cond3;
        j["cond4"] = r.cond4;
        j["agree"] = r.agree;
        j["f_conditions"] = r.f_conditions;
        j["compression_residual"] = r.compression_residual;
        j["laurent_residual"] = r.laurent_residual;
        j["boundary_residual"] = r.boundary_residual;
        j["generators"] = generator_json(r.generators);
        j["warnings"] = r.warnings;
        emit(j, g, os);
        return r.agree && r.cond1 ? kPass : kFail;
      }
      const VarietyGenerators gen = load_generators(file, tol);
      if (mode == "check") {
        j = generator_json(gen.report);
        emit(j, g, os);
        return gen.report.non_strict ? kPass : kFail;
      }
      if (mode == "polys") {
        const DeterminantalPolys p = determinantal_polys(gen.A1, gen.A2);
        j["f1"] = bivariate_json(p.f1);
        j["f2"] = bivariate_json(p.f2);
        emit(j, g, os);
        return kPass;
      }
      if (mode == "exit") {
        const ExitReport r = distinguished_exit_check(gen, angular, tol);
        j["points"] = r.points;
        j["max_closure_residual"] = r.max_closure_residual;
        j["max_x3_deviation"] = r.max_x3_deviation;
        j["violations"] = r.violations;
        j["passed"] = r.passed;
        emit(j, g, os);
        return r.passed ? kPass : kFail;
      }
      const VarietySample s = variety_sample(gen, radial, angular, tol);
      if (out_path.empty()) {
        io::write_variety_csv(os, s);
      } else {
        std::ostringstream csv;
        io::write_variety_csv(csv, s);
        io::write_file(out_path, csv.str());
        j["points"] = s.points.size();
        j["skipped_nodes"] = s.skipped_nodes;
        j["flagged"] = s.flagged;
        j["out"] = out_path;
        emit(j, g, os);
      }
      return s.flagged == 0 ? kPass : kFail;
    };
  });

  // gen
  InstanceSpec spec;
  std::string pair_mode = "polynomial";
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"contraction", "commuting-pair", "unitary", "projection", "triangular-triple",
                             "dss-ground-truth", "strict-generators"}));
  gen->add_option("--dim", spec.dim, "Dimension")->check(CLI::PositiveNumber);
  gen->add_option("--rank", spec.rank, "Projection rank");
  gen->add_option("--margin", spec.margin, "Norm margin below 1");
  gen->add_option("--k", spec.k, "Coefficient blocks kept (dss-ground-truth)");
  gen->add_option("--mode", pair_mode, "Pair mode: polynomial, direct-sum, normal, dilatable");
  gen->add_flag("--staircase", spec.staircase, "Cut the last kept block (dss-ground-truth)");
  gen->add_option("--out", out_path, "Output path (default: stdout)");
  gen->callback([&] {
    action = [&](std::ostream& os) {
      spec.kind = parse_instance_kind(kind);
      spec.mode = parse_pair_mode(pair_mode);
      spec.seed = g.seed;
      const Instance inst = generate(spec);
      Json j = io::named_matrices_to_json(inst.matrices);
      if (inst.certificate) j["certificate"] = io::certificate_to_json(*inst.certificate);
      if (out_path.empty()) {
        os << io::dump(j);
      } else {
        io::write_file(out_path, io::dump(j));
      }
      return kPass;
    };
  });

  std::vector<std::string> argv_store{"tetra"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "tetra: " << e.what() << "\n";
    return kInputError;
  }

  try {
    return action(out);
  } catch (const Error& e) {
    if (is_input_error(e.code())) {
      err << "tetra: " << e.what() << "\n";
      return kInputError;
    }
    Json j;
    j["error"] = to_string(e.code());
    j["detail"] = e.what();
    emit(j, g, out);
    return kFail;
  } catch (const std::exception& e) {
    err << "tetra: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace tetra::cli
