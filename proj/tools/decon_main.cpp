#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "decon/bounds.hpp"
#include "decon/constants.hpp"
#include "decon/corpus.hpp"
#include "decon/errors.hpp"
#include "decon/io.hpp"
#include "decon/recon.hpp"
#include "decon/spline_model.hpp"
#include "decon/symbol.hpp"
#include "decon/verify.hpp"

using nlohmann::json;
using namespace decon;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kInf;
  try {
    double p = std::stod(s);
    require(p >= 1.0, ErrorCode::validation, "p must lie in [1, inf]");
    return p;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::validation, "cannot parse p value: " + s);
  }
}

int default_grid_size() {
  if (const char* env = std::getenv("DECON_GRID_N")) {
    int n = std::atoi(env);
    require(n >= 64, ErrorCode::validation,
            "DECON_GRID_N must be an integer >= 64");
    return n;
  }
  return 1024;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

struct DeconvolveArgs {
  std::string in, out_dir = ".", dump_symbol;
  int grid_size = default_grid_size();
  double trunc_tol = 1e-9;
};

int cmd_deconvolve(const DeconvolveArgs& a, uint64_t seed) {
  WeightedSequence seq = load_sequence(a.in);
  DeconvResult dec = deconvolve(seq, a.grid_size, a.trunc_tol);
  save_sequence(dec.b, join_path(a.out_dir, "b.json"));
  write_abs_profile_csv(dec.b, join_path(a.out_dir, "abs_b.csv"));
  if (!a.dump_symbol.empty())
    write_symbol_csv(build_symbol(seq, a.grid_size), a.dump_symbol);

  json reports = json::array();
  reports.push_back(report_to_json(make_report(
      "certified_symbol_range",
      {{"A_certified", dec.A_certified}, {"B_certified", dec.B_certified}},
      dec.A_certified, dec.A_certified > 0.0)));
  if (seq.dim() == 1) {
    double m12 = momentum(seq, MultiIndex{1}, NormTag::l2).value;
    OneDimInverseBounds b = one_dim_inverse_bounds(m12, dec.A_certified);
    reports.push_back(report_to_json(
        make_report("inverse_weighted_l2_bound",
                    {{"M12_a", m12}, {"A", dec.A_certified}}, b.m12_b, true)));
    reports.push_back(report_to_json(
        make_report("inverse_l1_bound",
                    {{"M12_a", m12}, {"A", dec.A_certified}}, b.l1_b, true)));
  } else {
    MultiIndex alpha = MultiIndex::zeros(seq.dim());
    std::map<MultiIndex, double> momenta;
    for (int j = 0; j < seq.dim(); ++j) {
      MultiIndex e = MultiIndex::unit(seq.dim(), j);
      alpha = alpha.plus(e);
      momenta[e] = momentum_op(seq, e, dec.grid_size ? dec.grid_size : a.grid_size).upper;
    }
    std::map<MultiIndex, double> mb =
        recursive_op_bounds(momenta, dec.A_certified, alpha);
    for (const auto& [idx, v] : mb)
      reports.push_back(report_to_json(make_report(
          "inverse_op_momentum_bound_" + idx.to_string(),
          {{"A", dec.A_certified}}, v, true)));
  }
  json out{{"seed", seed},
           {"grid_size", dec.grid_size},
           {"trunc_tol", a.trunc_tol},
           {"A_certified", dec.A_certified},
           {"B_certified", dec.B_certified},
           {"residual_l2", dec.residual_l2},
           {"truncation_radius", dec.truncation_radius},
           {"bounds", reports}};
  save_json(out, join_path(a.out_dir, "report.json"));
  std::cout << "A_certified = " << dec.A_certified
            << ", B_certified = " << dec.B_certified
            << ", residual_l2 = " << dec.residual_l2 << "\n";
  return 0;
}

struct BoundsArgs {
  double alpha = 2.0, A = 1.0, C = 1.0;
  double m12 = -1.0, deriv_norm = -1.0, q = kInf, delta = -1.0,
         rho_target = -1.0;
  std::string out;
};

int cmd_bounds(const BoundsArgs& a, uint64_t seed) {
  DecayCertificate cert{a.C, a.alpha};
  cert.validate();
  KConstant k = constant_K(a.alpha, true);
  json reports = json::array();
  auto emit = [&](const BoundReport& r) {
    reports.push_back(report_to_json(r));
    std::cout << r.name << " = " << r.value << (r.valid ? "" : "  [hypotheses unmet]")
              << "\n";
  };
  emit(make_report("W_alpha", {{"alpha", a.alpha}}, constant_W(a.alpha), true));
  emit(make_report("S_alpha", {{"alpha", a.alpha}}, constant_S(a.alpha), true));
  emit(make_report("K_alpha_closed", {{"alpha", a.alpha}}, k.closed_bound, true));
  emit(make_report("K_alpha_sharpened", {{"alpha", a.alpha}}, k.sharpened, false));
  if (a.m12 >= 0.0) {
    OneDimInverseBounds b = one_dim_inverse_bounds(a.m12, a.A);
    emit(make_report("inverse_weighted_l2_bound", {{"M12_a", a.m12}, {"A", a.A}},
                     b.m12_b, true));
    emit(make_report("inverse_l1_bound", {{"M12_a", a.m12}, {"A", a.A}}, b.l1_b,
                     true));
  }
  DualWindowBounds dw = dual_window_bounds(cert, a.A);
  emit(make_report("phi_amalgam_bound", {{"C", a.C}, {"alpha", a.alpha}}, dw.phi_w,
                   true));
  emit(make_report("psi_amalgam_bound",
                   {{"C", a.C}, {"alpha", a.alpha}, {"A", a.A}}, dw.psi_w, true));
  RieszBounds rb = riesz_bounds(cert, a.A);
  emit(make_report("riesz_lower", {{"C", a.C}, {"alpha", a.alpha}, {"A", a.A}},
                   rb.r, true));
  emit(make_report("riesz_upper", {{"C", a.C}, {"alpha", a.alpha}}, rb.R, true));
  if (a.deriv_norm >= 0.0 && a.delta > 0.0) {
    double rho = sampling_rho(cert, a.A, a.deriv_norm, a.q, a.delta);
    emit(make_report("sampling_rho",
                     {{"deriv_norm", a.deriv_norm}, {"q", a.q}, {"delta", a.delta}},
                     rho, rho < 1.0));
  }
  if (a.deriv_norm >= 0.0 && a.rho_target > 0.0) {
    double ds = solve_max_delta(cert, a.A, a.deriv_norm, a.q, a.rho_target);
    emit(make_report("max_delta",
                     {{"deriv_norm", a.deriv_norm}, {"rho_target", a.rho_target}},
                     ds, true));
  }
  if (!a.out.empty())
    save_json(json{{"seed", seed}, {"bounds", reports}}, a.out);
  return 0;
}

struct DualWindowArgs {
  std::string gen, out_dir = ".";
  int grid_size = default_grid_size();
  double trunc_tol = 1e-10;
};

int cmd_dual_window(const DualWindowArgs& a, uint64_t seed) {
  Generator gen = load_generator(a.gen);
  SplineModelOptions opts;
  opts.grid_size = a.grid_size;
  opts.trunc_tol = a.trunc_tol;
  SplineModel model = build_spline_model(gen, opts);
  save_sequence(model.b, join_path(a.out_dir, "psi_coefficients.json"));

  double r = std::ceil(model.psi_support_radius()) + 1.0;
  SampledFunction psi;
  psi.x0 = -r;
  psi.dx = 1.0 / 64;
  psi.v.resize(static_cast<size_t>(std::round(2.0 * r / psi.dx)) + 1);
  for (size_t i = 0; i < psi.v.size(); ++i) psi.v[i] = model.psi_eval(psi.x_at(i));
  double psi_w_num = amalgam_norm(psi, kInf, 1.0);
  DualWindowBounds dw = dual_window_bounds(gen.certificate(), model.A_gram);

  json out{{"seed", seed},
           {"kind", generator_kind_name(gen.kind())},
           {"A_gram", model.A_gram},
           {"B_gram", model.B_gram},
           {"residual_l2", model.residual_l2},
           {"biorthogonality_defect", model.biorth_defect},
           {"psi_w_numeric", psi_w_num},
           {"psi_w_certified", dw.psi_w},
           {"phi_w_certified", dw.phi_w},
           {"certificate", {{"C", gen.certificate().C}, {"alpha", gen.certificate().alpha}}}};
  save_json(out, join_path(a.out_dir, "report.json"));
  std::cout << "A_gram = " << model.A_gram << ", defect = " << model.biorth_defect
            << ", ||psi||_W " << psi_w_num << " <= " << dw.psi_w << "\n";
  return 0;
}

struct RieszArgs {
  std::string gen, p_list = "1,2,inf", out;
  int trials = 200;
};

int cmd_riesz_check(const RieszArgs& a, uint64_t seed) {
  Generator gen = load_generator(a.gen);
  SplineModel model = build_spline_model(gen);
  RieszBounds rb = riesz_bounds(gen.certificate(), model.A_gram);
  json rows = json::array();
  bool ok = true;
  std::stringstream ss(a.p_list);
  std::string tok;
  int salt = 0;
  while (std::getline(ss, tok, ',')) {
    double p = parse_p(tok);
    RatioRange rr = riesz_ratio_empirical(model, p, a.trials,
                                          seed + static_cast<uint64_t>(salt++));
    bool inside = rr.min_ratio >= rb.r && rr.max_ratio <= rb.R;
    ok = ok && inside;
    rows.push_back(json{{"p", std::isinf(p) ? json("inf") : json(p)},
                        {"min_ratio", rr.min_ratio},
                        {"max_ratio", rr.max_ratio},
                        {"inside", inside}});
    std::cout << "p = " << tok << ": ratios [" << rr.min_ratio << ", "
              << rr.max_ratio << "] vs certified [" << rb.r << ", " << rb.R
              << "] " << (inside ? "OK" : "VIOLATION") << "\n";
  }
  if (!a.out.empty())
    save_json(json{{"seed", seed},
                   {"r_certified", rb.r},
                   {"R_certified", rb.R},
                   {"trials", a.trials},
                   {"ratios", rows}},
              a.out);
  if (!ok) fail(ErrorCode::numeric, "empirical ratios escaped the certified interval");
  return 0;
}

struct SampleReconArgs {
  std::string gen, set_file, out_dir = ".";
  double window_lo = 0.0, window_hi = 64.0;
  double spacing = 0.5, jitter = 0.1, delta = -1.0;
  std::string p = "2";
  double tol = 1e-10, rho_target = 0.9;
  int max_iter = 400;
  bool allow_uncertified = false;
};

int cmd_sample_recon(const SampleReconArgs& a, uint64_t seed) {
  Generator gen = load_generator(a.gen);
  SplineModel model = build_spline_model(gen);
  Window window{a.window_lo, a.window_hi};
  require(window.hi > window.lo, ErrorCode::validation, "empty window");

  std::mt19937_64 rng(seed);
  std::vector<double> pts;
  double delta = a.delta;
  if (!a.set_file.empty()) {
    pts = load_points_csv(a.set_file);
    require(delta > 0.0, ErrorCode::validation,
            "--delta is required with --set");
  } else {
    pts = corpus::jittered_points(rng, window, a.spacing, a.jitter);
    if (delta <= 0.0) delta = 0.5 * a.spacing + a.jitter + 0.01;
  }
  SamplingSet set = validate_set(std::move(pts), delta, window);
  PartitionOfUnity pou(set);

  double p = parse_p(a.p);
  const DecayCertificate& cert = gen.certificate();
  double deriv_norm = oscillation_bound(gen, delta, kInf).deriv_amalgam;
  double rho_at_delta = sampling_rho(cert, model.A_gram, deriv_norm, kInf, delta);
  double delta_star =
      solve_max_delta(cert, model.A_gram, deriv_norm, kInf, a.rho_target);
  double rho_star = sampling_rho(cert, model.A_gram, deriv_norm, kInf, delta_star);
  SamplingFrameBounds fb = sampling_frame_bounds(
      cert, model.A_gram, set.N_X, delta_star, rho_star, p);

  ReconContext ctx = make_recon_context(model, window);
  double gamma_emp = estimate_gamma(ctx, set, pou, 30, seed + 1);

  // demo signal: random interior coefficients, sampled exactly
  WeightedSequence c_true = corpus::random_coeffs(
      rng, ctx.k_lo + 2 * ctx.interior_margin, ctx.k_hi - 2 * ctx.interior_margin);
  std::vector<cplx> samples = operator_Z(ctx, set, c_true);

  ReconOptions opts;
  opts.p = p;
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  opts.certified_rho = rho_at_delta;
  opts.allow_uncertified = a.allow_uncertified;
  ReconResult rr = reconstruct(ctx, set, pou, samples, opts);

  std::vector<cplx> resampled = operator_Z(ctx, set, rr.coeffs);
  long violations = 0;
  for (size_t i = 0; i < samples.size(); ++i)
    if (std::abs(resampled[i] - samples[i]) > 10.0 * a.tol) ++violations;

  save_sequence(rr.coeffs, join_path(a.out_dir, "coefficients.json"));
  write_series_csv(rr.error_history, "error", join_path(a.out_dir, "error_history.csv"));
  json out{{"seed", seed},
           {"points", set.points.size()},
           {"N_X", set.N_X},
           {"delta", delta},
           {"delta_star", delta_star},
           {"rho_certified", rho_at_delta},
           {"rho_star", rho_star},
           {"certified_density", rho_at_delta < 1.0},
           {"gamma_observed", gamma_emp},
           {"iterations", rr.iterations},
           {"final_error", rr.error_history.empty() ? 0.0 : rr.error_history.back()},
           {"observed_ratio", rr.observed_ratio},
           {"c_p", fb.c_p},
           {"C_p", fb.C_p},
           {"violations", violations},
           {"max_coeff_err", max_abs_diff(rr.coeffs, c_true)}};
  save_json(out, join_path(a.out_dir, "report.json"));
  std::cout << "points = " << set.points.size() << ", iterations = "
            << rr.iterations << ", observed ratio = " << rr.observed_ratio
            << ", gamma_emp = " << gamma_emp
            << (rho_at_delta < 1.0 ? " (certified density)"
                                   : " (uncertified density)")
            << "\n";
  return violations == 0 ? 0 : 3;
}

struct VerifyArgs {
  std::string config, report;
  bool quick = false;
};

int cmd_verify(const VerifyArgs& a, uint64_t seed) {
  VerifyConfig cfg;
  cfg.seed = seed;
  cfg.quick = a.quick;
  if (!a.config.empty()) {
    json j = load_json(a.config);
    for (const auto& [key, value] : j.items()) {
      if (key == "seed")
        cfg.seed = value.get<uint64_t>();
      else if (key == "quick")
        cfg.quick = value.get<bool>();
      else if (key == "recon_tol")
        cfg.recon_tol = value.get<double>();
      else
        fail(ErrorCode::validation, "unknown verify config key: " + key);
    }
  }
  VerifyReport report = run_acceptance(cfg, std::cout);
  if (!a.report.empty()) {
    json rows = json::array();
    for (const CriterionResult& c : report.criteria) {
      json metrics = json::object();
      for (const auto& [k, v] : c.metrics) metrics[k] = v;
      rows.push_back(json{{"id", c.id},
                          {"name", c.name},
                          {"pass", c.pass},
                          {"detail", c.detail},
                          {"metrics", metrics}});
    }
    save_json(json{{"seed", cfg.seed},
                   {"quick", cfg.quick},
                   {"all_pass", report.all_pass},
                   {"digest", report.digest},
                   {"criteria", rows}},
              a.report);
  }
  std::cout << (report.all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED")
            << "\n";
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decon: certified deconvolution bounds and spline-space sampling"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t seed = 20260810ULL;
  bool json_errors = false;
  app.add_option("--seed", seed, "RNG seed recorded in all outputs");
  app.add_flag("--json-errors", json_errors, "emit machine-readable error JSON");

  DeconvolveArgs da;
  auto* sc_dec = app.add_subcommand("deconvolve", "invert a sequence with certified bounds");
  sc_dec->add_option("--in", da.in, "sequence JSON")->required();
  sc_dec->add_option("--grid-size", da.grid_size, "symbol grid size (power of two)");
  sc_dec->add_option("--trunc-tol", da.trunc_tol, "relative l2 truncation tolerance");
  sc_dec->add_option("--out-dir", da.out_dir, "output directory");
  sc_dec->add_option("--dump-symbol", da.dump_symbol, "write the symbol grid CSV here");

  BoundsArgs ba;
  auto* sc_b = app.add_subcommand("bounds", "print certified bound tables");
  sc_b->add_option("--alpha", ba.alpha, "decay exponent (> 3/2)");
  sc_b->add_option("--A", ba.A, "lower symbol/gramian bound");
  sc_b->add_option("--C", ba.C, "decay amplitude");
  sc_b->add_option("--M12", ba.m12, "weighted l2 momentum of a");
  sc_b->add_option("--deriv-norm", ba.deriv_norm, "||phi'||_{W(L^q,l^1)}");
  sc_b->add_option("--q", ba.q, "oscillation exponent q (> 1)");
  sc_b->add_option("--delta", ba.delta, "density radius for rho");
  sc_b->add_option("--rho-target", ba.rho_target, "target contraction for delta*");
  sc_b->add_option("--out", ba.out, "bound report JSON path");

  DualWindowArgs dwa;
  auto* sc_dw = app.add_subcommand("dual-window", "build the dual window of a generator");
  sc_dw->add_option("--gen", dwa.gen, "generator spec JSON")->required();
  sc_dw->add_option("--grid-size", dwa.grid_size, "symbol grid size");
  sc_dw->add_option("--trunc-tol", dwa.trunc_tol, "truncation tolerance for b");
  sc_dw->add_option("--out-dir", dwa.out_dir, "output directory");

  RieszArgs ra;
  auto* sc_r = app.add_subcommand("riesz-check", "empirical ratios vs certified interval");
  sc_r->add_option("--gen", ra.gen, "generator spec JSON")->required();
  sc_r->add_option("--p", ra.p_list, "comma list of exponents, e.g. 1,2,inf");
  sc_r->add_option("--trials", ra.trials, "random coefficient vectors per p");
  sc_r->add_option("--out", ra.out, "report JSON path");

  SampleReconArgs sa;
  auto* sc_s = app.add_subcommand("sample-recon", "nonuniform sampling reconstruction");
  sc_s->add_option("--gen", sa.gen, "generator spec JSON")->required();
  sc_s->add_option("--set", sa.set_file, "sampling set CSV (one point per line)");
  sc_s->add_option("--window-lo", sa.window_lo, "window start");
  sc_s->add_option("--window-hi", sa.window_hi, "window end");
  sc_s->add_option("--spacing", sa.spacing, "jittered lattice spacing");
  sc_s->add_option("--jitter", sa.jitter, "jitter amplitude");
  sc_s->add_option("--delta", sa.delta, "claimed density radius");
  sc_s->add_option("--p", sa.p, "norm exponent (1, 2, ..., inf)");
  sc_s->add_option("--tol", sa.tol, "iteration stopping tolerance");
  sc_s->add_option("--max-iter", sa.max_iter, "iteration cap");
  sc_s->add_option("--rho-target", sa.rho_target, "target for the delta* solve");
  sc_s->add_flag("--allow-uncertified", sa.allow_uncertified,
                 "iterate on the empirical contraction estimate when rho >= 1");
  sc_s->add_option("--out-dir", sa.out_dir, "output directory");

  VerifyArgs va;
  auto* sc_v = app.add_subcommand("verify", "run the verification suite");
  sc_v->add_option("--config", va.config, "suite config JSON");
  sc_v->add_option("--report", va.report, "write the report JSON here");
  sc_v->add_flag("--quick", va.quick, "reduced corpus sizes (development only)");

  try {
    app.parse(argc, argv);
    if (*sc_dec) return cmd_deconvolve(da, seed);
    if (*sc_b) return cmd_bounds(ba, seed);
    if (*sc_dw) return cmd_dual_window(dwa, seed);
    if (*sc_r) return cmd_riesz_check(ra, seed);
    if (*sc_s) return cmd_sample_recon(sa, seed);
    if (*sc_v) return cmd_verify(va, seed);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (json_errors)
      std::cout << json{{"error", error_code_name(e.code())},
                        {"exit_code", error_exit_code(e.code())},
                        {"message", e.what()}}
                       .dump(2)
                << "\n";
    else
      std::cerr << e.what() << "\n";
    return error_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
