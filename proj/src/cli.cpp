#include "avqc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "avqc/catalog.hpp"
#include "avqc/coding.hpp"
#include "avqc/continuity.hpp"
#include "avqc/entropy.hpp"
#include "avqc/error.hpp"
#include "avqc/io.hpp"
#include "avqc/linalg.hpp"
#include "avqc/secrecy.hpp"
#include "avqc/symmetrizability.hpp"

namespace avqc {

namespace {

const std::vector<std::string> kSubcommands{"analyze",  "symmetrize",    "capacity",
                                            "continuity", "evaluate-code", "verify-example"};

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out_path;
};

Json tolerances() {
  return Json{{"state", kStateTolerance},
              {"trace_preserving", kTracePreservingTolerance},
              {"prior", kPriorTolerance},
              {"hermitian", kHermitianTolerance},
              {"jacobi_off_diagonal", kJacobiOffDiagonalTolerance},
              {"eigen_clamp", kEigenClamp},
              {"probe_distinctness", kProbeDistinctness},
              {"symmetrizable_threshold", kSymmetrizableThreshold},
              {"decoder", kDecoderTolerance}};
}

std::string join_labels(const AVQCFamily& fam, const std::vector<std::size_t>& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ",";
    s += fam.theta()[seq[i]];
  }
  return s;
}

Json seq_labels(const AVQCFamily& fam, const std::vector<std::size_t>& seq) {
  Json a = Json::array();
  for (std::size_t t : seq) a.push_back(fam.theta()[t]);
  return a;
}

Json ket_to_json(const std::vector<Complex>& ket) {
  Json a = Json::array();
  for (const auto& z : ket) a.push_back(Json::array({z.real(), z.imag()}));
  return a;
}

std::vector<std::size_t> parse_sequence(const AVQCFamily& fam, const std::string& text) {
  std::vector<std::size_t> seq;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string label = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    seq.push_back(fam.index_of(label));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return seq;
}

Json cmd_analyze(const std::string& avqc_path, const std::string& source_path) {
  const AVQCFamily fam = family_from_json(load_json_file(avqc_path));
  std::optional<CQSource> src;
  if (!source_path.empty()) src = source_from_json(load_json_file(source_path));
  if (src && src->dim() != fam.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "source dimension differs from the channel input dimension");
  }
  Json channels = Json::array();
  for (std::size_t t = 0; t < fam.size(); ++t) {
    const KrausChannel& ch = fam.channel(t);
    ComplexMatrix sum(ch.dim_in(), ch.dim_in());
    for (const auto& a : ch.kraus()) sum += a.adjoint() * a;
    Json entry{{"label", fam.theta()[t]},
               {"dim_in", ch.dim_in()},
               {"dim_out", ch.dim_out()},
               {"dim_env", ch.kraus_count()},
               {"kraus_count", ch.kraus_count()},
               {"trace_preserving_error", frobenius_distance(sum, ComplexMatrix::identity(ch.dim_in()))}};
    if (src) {
      std::vector<ComplexMatrix> bob, env;
      const KrausChannel comp = complementary(ch);
      for (const auto& s : src->states) {
        bob.push_back(hermitian_part(ch.apply_matrix(s.matrix())));
        env.push_back(hermitian_part(comp.apply_matrix(s.matrix())));
      }
      entry["holevo_output"] = holevo_of(src->prior, bob);
      entry["holevo_environment"] = holevo_of(src->prior, env);
      entry["output_entropy"] = vn_entropy(apply_to_source(ch, *src));
    }
    channels.push_back(std::move(entry));
  }
  Json result{{"family_size", fam.size()}, {"dim_in", fam.dim_in()}, {"dim_out", fam.dim_out()},
              {"channels", channels}};
  if (src) result["source_entropy"] = shannon_entropy(src->prior);
  return result;
}

Json solution_to_json(const AVQCFamily& fam, std::size_t l, const FlResult& f) {
  const auto seqs = theta_sequences(fam.size(), l);
  Json tau = Json::array();
  for (std::size_t i = 0; i < f.solution.tau.size(); ++i) {
    Json dist = Json::object();
    for (std::size_t t = 0; t < seqs.size(); ++t) dist[join_labels(fam, seqs[t])] = f.solution.tau[i][t];
    tau.push_back(Json{{"probe", i}, {"distribution", dist}});
  }
  const bool symmetric = f.solution.symmetrizable_on_probe_set();
  return Json{{"L", l},
              {"f_l", f.value},
              {"residual_trace_norm", f.solution.residual_trace_norm},
              {"residual_frobenius", f.solution.residual_frobenius},
              {"certified_lower_bound", f.solution.certified_lower_bound},
              {"verdict", symmetric ? "symmetrizable on probe set" : "not symmetrizable on probe set"},
              {"worst_pair", Json::array({f.solution.worst_pair_first, f.solution.worst_pair_second})},
              {"restart_index", f.solution.restart_index},
              {"probe_count", f.probe_count},
              {"probe_set", f.probe_description},
              {"tau", tau}};
}

Json cmd_symmetrize(const std::string& avqc_path, std::size_t l, std::size_t l_max, std::size_t pairs,
                    const Common& c, std::string& probe_description) {
  const AVQCFamily fam = family_from_json(load_json_file(avqc_path));
  FlOptions fo;
  fo.solver.seed = c.seed;
  fo.solver.threads = c.threads;
  fo.extra_random_pairs = pairs;
  if (l_max > 0) {
    Json blocks = Json::array();
    FTotalResult total;
    if (l_max > kMaxSymmetrizationBlock) throw Error(ErrorKind::BlocklengthTooLarge, "L_max must be 1..3");
    double scale = 1.0;
    for (std::size_t b = 1; b <= l_max; ++b) {
      scale *= 0.5;
      const FlResult f = f_l(fam, b, fo);
      probe_description += (b > 1 ? "; " : "") + f.probe_description;
      blocks.push_back(solution_to_json(fam, b, f));
      total.value += scale * f.value;
    }
    total.tail_bound = 2.0 * scale;
    return Json{{"f_total", total.value}, {"tail_bound", total.tail_bound}, {"blocks", blocks}};
  }
  const FlResult f = f_l(fam, l, fo);
  probe_description = f.probe_description;
  return solution_to_json(fam, l, f);
}

Json functional_to_json(const AVQCFamily& fam, const FunctionalReport& r) {
  Json q = Json::object();
  for (std::size_t t = 0; t < fam.size(); ++t) q[fam.theta()[t]] = r.argmin_q[t];
  return Json{{"value", r.value},
              {"clamped_value", r.clamped_value},
              {"legitimate_chi", r.legitimate_chi},
              {"eavesdropper_chi", r.eavesdropper_chi},
              {"argmax_prior", r.argmax_prior},
              {"argmin_q", q},
              {"argmax_theta_seq", seq_labels(fam, r.argmax_theta_seq)},
              {"distinct_legitimate_outputs", r.distinct_legitimate_outputs},
              {"n", r.n}};
}

Json cmd_capacity(const std::string& avqc_path, const std::string& source_path, std::size_t n, std::size_t grid,
                  const std::string& mode, bool fixed_prior, std::size_t aux_kernels, const Common& c) {
  if (n == 0 || n > kMaxSecrecyBlocklength) {
    throw Error(ErrorKind::BlocklengthTooLarge, "blocklength must be 1..3, got " + std::to_string(n));
  }
  if (grid == 0) throw Error(ErrorKind::OutOfRange, "grid resolution must be positive");
  const AVQCFamily fam = family_from_json(load_json_file(avqc_path));
  const CQSource src = source_from_json(load_json_file(source_path));
  FunctionalOptions fo;
  fo.prior_search.grid_resolution = grid;
  fo.q_search.grid_resolution = grid;
  fo.prior_search.seed = c.seed;
  fo.q_search.seed = c.seed;
  fo.optimize_prior = !fixed_prior;
  fo.threads = c.threads;
  Json result{{"mode", mode}};
  if (mode == "avqc") {
    result["functional"] = functional_to_json(fam, avqc_secrecy_functional(fam, src, n, fo));
  } else if (mode == "aux") {
    AuxiliarySearchOptions ao;
    ao.functional = fo;
    ao.random_kernels = aux_kernels;
    ao.seed = c.seed;
    const AuxiliaryReport a = auxiliary_secrecy_search(fam, src, n, ao);
    result["functional"] = functional_to_json(fam, a.best);
    result["kernel"] = Json{{"u_alphabet", a.kernel.u_alphabet}, {"p_u", a.kernel.p_u}, {"kernel", a.kernel.kernel}};
  } else if (mode == "csi" || mode == "nocsi") {
    const CompoundReport r = mode == "csi" ? compound_secrecy_csi(fam, src, n, fo) : compound_secrecy_nocsi(fam, src, n, fo);
    Json j{{"value", r.value},
           {"clamped_value", r.clamped_value},
           {"argmax_prior", r.argmax_prior},
           {"argmin_theta", fam.theta()[r.argmin_theta]},
           {"argmax_theta", fam.theta()[r.argmax_theta]},
           {"n", r.n}};
    if (mode == "csi") {
      Json branches = Json::object();
      for (std::size_t t = 0; t < fam.size(); ++t) branches[fam.theta()[t]] = r.per_branch[t];
      j["per_branch"] = branches;
    }
    result["compound"] = j;
  } else {
    throw Error(ErrorKind::OutOfRange, "mode must be avqc, aux, csi or nocsi");
  }
  return result;
}

Json signed_bound(const SignedBound& b) { return Json{{"corrected", b.corrected}, {"literal", b.literal}}; }

Json cmd_continuity(const std::string& a_path, const std::string& b_path, const Common& c) {
  const KrausChannel a = channel_from_json(load_json_file(a_path));
  const KrausChannel b = channel_from_json(load_json_file(b_path));
  ChannelDistanceOptions opts;
  opts.seed = c.seed;
  const ChannelDistance d = channel_distance(a, b, opts);
  const double delta = d.upper_bound.value_or(d.value);
  Json result{{"distance", d.value},
              {"argmax_input", ket_to_json(d.argmax)},
              {"distance_upper_bound", d.upper_bound ? Json(*d.upper_bound) : Json(nullptr)},
              {"gap_estimate", d.gap_estimate ? Json(*d.gap_estimate) : Json(nullptr)},
              {"delta_used", delta},
              {"delta_is_certified_upper_bound", d.upper_bound.has_value()}};
  const std::size_t dim = std::max<std::size_t>(a.dim_out(), 2);
  const double inverse_e = std::exp(-1.0);
  Json bounds = Json::object();
  const double mu = delta / 2.0;
  bounds["fannes_audenaert_output_entropy"] = mu < inverse_e ? Json(fannes_audenaert(mu, dim)) : Json(nullptr);
  bounds["alicki_fannes"] = mu < 1.0 ? signed_bound(alicki_fannes(mu, dim)) : Json(nullptr);
  bounds["secrecy_continuity"] = delta < inverse_e ? signed_bound(secrecy_continuity_bound(delta, dim)) : Json(nullptr);
  result["bounds"] = bounds;
  return result;
}

Json cmd_evaluate(const std::vector<std::string>& code_paths, const std::vector<double>& weights,
                  const std::string& avqc_path, const std::string& source_path, const std::string& criterion_name,
                  const std::string& theta_text, const Common& c) {
  const AVQCFamily fam = family_from_json(load_json_file(avqc_path));
  const CQSource src = source_from_json(load_json_file(source_path));
  ErrorCriterion criterion;
  if (criterion_name == "avg") criterion = ErrorCriterion::Average;
  else if (criterion_name == "max") criterion = ErrorCriterion::Maximal;
  else throw Error(ErrorKind::OutOfRange, "criterion must be avg or max");

  std::vector<BlockCode> codes;
  for (const auto& p : code_paths) codes.push_back(code_from_json(load_json_file(p)));
  Json result{{"criterion", criterion_name}, {"code_count", codes.size()}};

  if (codes.size() == 1 && weights.empty()) {
    const BlockCode& code = codes.front();
    const WorstCase err = worst_case(code, fam, src, criterion, c.threads);
    const WorstCase leak = worst_case_leakage(code, fam, src, c.threads);
    result["worst_case_error"] = err.value;
    result["worst_case_error_theta_seq"] = seq_labels(fam, err.argmax_theta_seq);
    result["worst_case_leakage"] = leak.value;
    result["worst_case_leakage_theta_seq"] = seq_labels(fam, leak.argmax_theta_seq);
    if (!theta_text.empty()) {
      const auto seq = parse_sequence(fam, theta_text);
      const CodeScore s = score_code(code, fam, src, seq);
      result["at_theta_seq"] = Json{{"theta_seq", seq_labels(fam, seq)},
                                    {"avg_error", s.avg_error},
                                    {"max_error", s.max_error},
                                    {"leakage", s.leakage},
                                    {"success", s.success}};
    }
    return result;
  }
  std::vector<double> w = weights;
  if (w.empty()) w.assign(codes.size(), 1.0 / static_cast<double>(codes.size()));
  const RandomizedCode rc(std::move(codes), w);
  const RandomizedEvaluation ev = randomized_eval(rc, fam, src, criterion, c.threads);
  result["weights"] = rc.weights();
  result["worst_case_error"] = ev.error.value;
  result["worst_case_error_theta_seq"] = seq_labels(fam, ev.error.argmax_theta_seq);
  result["worst_case_leakage"] = ev.leakage.value;
  result["worst_case_leakage_theta_seq"] = seq_labels(fam, ev.leakage.argmax_theta_seq);
  return result;
}

Json cmd_verify(const std::string& name, const Common& c, std::string& probe_description) {
  VerifyOptions opts{c.seed, c.threads};
  VerificationReport r;
  if (name == "example1") {
    r = verify_example1(opts);
  } else if (name == "superactivation") {
    r = verify_superactivation(opts);
  } else if (name.rfind("lambda:", 0) == 0) {
    double lambda = 0.0;
    try {
      std::size_t used = 0;
      lambda = std::stod(name.substr(7), &used);
      if (used != name.size() - 7) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error(ErrorKind::OutOfRange, "cannot parse lambda in '" + name + "'");
    }
    r = verify_lambda(lambda, opts);
  } else {
    throw Error(ErrorKind::OutOfRange, "unknown example '" + name + "' (example1, lambda:<value>, superactivation)");
  }
  for (std::size_t i = 0; i < r.probe_descriptions.size(); ++i)
    probe_description += (i ? "; " : "") + r.probe_descriptions[i];
  return report_to_json(r);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() >= 2 && args[1].rfind("-", 0) != 0 &&
      std::find(kSubcommands.begin(), kSubcommands.end(), args[1]) == kSubcommands.end()) {
    err << "error: " << Error(ErrorKind::UnknownSubcommand, "'" + args[1] + "'").what() << "\n";
    return 2;
  }

  CLI::App app{"Numerical toolkit for arbitrarily varying quantum channels", "avqc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for all stochastic restarts")->default_val(0);
    sub->add_option("--threads", common.threads, "Worker threads (1 is bit-reproducible)")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", common.out_path, "Write the JSON report to this file instead of stdout");
  };

  std::string avqc_path, source_path, a_path, b_path, name, mode = "avqc", criterion = "max", theta;
  std::vector<std::string> code_paths;
  std::vector<double> weights;
  std::size_t l = 1, l_max = 0, pairs = 2, n = 1, grid = 64, aux_kernels = 8;
  bool fixed_prior = false;

  auto* analyze = app.add_subcommand("analyze", "Channel and family diagnostics");
  analyze->add_option("--avqc", avqc_path, "AVQC family file")->required();
  analyze->add_option("--source", source_path, "CQ source file");
  add_common(analyze);

  auto* sym = app.add_subcommand("symmetrize", "L-symmetrizability residuals and F_L");
  sym->add_option("--avqc", avqc_path, "AVQC family file")->required();
  sym->add_option("--L", l, "Block length (1..3)")->default_val(1);
  sym->add_option("--L-max", l_max, "Report the truncated sum over L = 1..L_max instead");
  sym->add_option("--extra-pairs", pairs, "Random pure-state pairs added to the spanning probes")->default_val(2);
  add_common(sym);

  auto* cap = app.add_subcommand("capacity", "Secrecy functionals at blocklength n");
  cap->add_option("--avqc", avqc_path, "AVQC family file")->required();
  cap->add_option("--source", source_path, "CQ source file")->required();
  cap->add_option("--n", n, "Blocklength")->default_val(1);
  cap->add_option("--grid", grid, "Simplex grid resolution")->default_val(64);
  cap->add_option("--mode", mode, "avqc | aux | csi | nocsi")->default_val("avqc");
  cap->add_flag("--fixed-prior", fixed_prior, "Use the source prior instead of optimizing it");
  cap->add_option("--aux-kernels", aux_kernels, "Random preprocessing kernels in aux mode")->default_val(8);
  add_common(cap);

  auto* cont = app.add_subcommand("continuity", "Channel distance and continuity bounds");
  cont->add_option("--a", a_path, "First channel file")->required();
  cont->add_option("--b", b_path, "Second channel file")->required();
  add_common(cont);

  auto* eval = app.add_subcommand("evaluate-code", "Worst-case error and leakage of explicit codes");
  eval->add_option("--code", code_paths, "Code file (repeat for a randomized code)")->required();
  eval->add_option("--weights", weights, "Weights of the code list, comma separated (default uniform)")
      ->delimiter(',');
  eval->add_option("--avqc", avqc_path, "AVQC family file")->required();
  eval->add_option("--source", source_path, "CQ source file")->required();
  eval->add_option("--criterion", criterion, "avg | max")->default_val("max");
  eval->add_option("--theta", theta, "Also score this comma-separated jammer sequence");
  add_common(eval);

  auto* verify = app.add_subcommand("verify-example", "Re-derive the worked examples");
  verify->add_option("--name", name, "example1 | lambda:<value> | superactivation")->required();
  add_common(verify);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << to_string(ErrorKind::SchemaViolation) << ": " << e.what() << "\n";
    return 2;
  }

  std::string command;
  std::string probe_description = "none";
  try {
    Json result;
    if (analyze->parsed()) {
      command = "analyze";
      result = cmd_analyze(avqc_path, source_path);
    } else if (sym->parsed()) {
      command = "symmetrize";
      probe_description.clear();
      result = cmd_symmetrize(avqc_path, l, l_max, pairs, common, probe_description);
    } else if (cap->parsed()) {
      command = "capacity";
      result = cmd_capacity(avqc_path, source_path, n, grid, mode, fixed_prior, aux_kernels, common);
    } else if (cont->parsed()) {
      command = "continuity";
      result = cmd_continuity(a_path, b_path, common);
    } else if (eval->parsed()) {
      command = "evaluate-code";
      result = cmd_evaluate(code_paths, weights, avqc_path, source_path, criterion, theta, common);
    } else {
      command = "verify-example";
      probe_description.clear();
      result = cmd_verify(name, common, probe_description);
    }
    const Json report{{"command", command},
                      {"version", kToolVersion},
                      {"seed", common.seed},
                      {"threads", common.threads},
                      {"tolerances", tolerances()},
                      {"probe_set", probe_description},
                      {"result", result}};
    const std::string text = report.dump(2) + "\n";
    if (common.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(common.out_path);
      if (!file) throw Error(ErrorKind::FileNotFound, "cannot write " + common.out_path);
      file << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_validation_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: NumericalFailure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace avqc
