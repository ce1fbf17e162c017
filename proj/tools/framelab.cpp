#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framelab/framelab.hpp"

using namespace framelab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerification = 2;
constexpr int kExitInput = 3;

struct Common {
  std::string builtin;
  std::string frame;
  double p = 2.0;
  std::string ladder;
  std::size_t nmax = 60;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string json;
};

bool use_color() {
  const char* env = std::getenv("FRAMELAB_COLOR");
  if (env && std::string(env) == "never") return false;
  return isatty(fileno(stdout)) != 0;
}

std::string status(bool ok) {
  const char* word = ok ? "PASS" : "FAIL";
  if (!use_color()) return word;
  return std::string(ok ? "\033[32m" : "\033[31m") + word + "\033[0m";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string num(double x, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::file_not_found, "cannot write " + path);
  out << j.dump(2) << '\n';
}

struct LoadedSystem {
  std::string label;
  FrameSystem system;
};

LoadedSystem load_system(const std::string& builtin, const std::string& frame) {
  if (!builtin.empty() && !frame.empty()) throw Error(ErrorKind::invalid_argument, "give either --builtin or --frame");
  if (!builtin.empty()) return {builtin, builtin_examples().system(builtin)};
  if (!frame.empty()) return {frame, load_frame(frame)};
  throw Error(ErrorKind::invalid_argument, "a frame is required (--builtin NAME or --frame PATH)");
}

Ladder parse_ladder(const std::string& text) {
  Ladder ladder;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::invalid_argument, "ladder entries look like n:m, got '" + item + "'");
    try {
      ladder.push_back({std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, "bad ladder entry '" + item + "'");
    }
  }
  if (!is_valid_ladder(ladder)) throw Error(ErrorKind::invalid_argument, "ladder must be strictly increasing in n and m");
  return ladder;
}

Ladder resolve_ladder(const FrameSystem& fs, const std::string& text, const std::vector<std::size_t>& default_blocks) {
  if (!text.empty()) return parse_ladder(text);
  return aligned_ladder(fs, default_blocks);
}

Vec parse_vector(const std::string& text) {
  std::vector<Scalar> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto s = parse_scalar(item);
    if (!s) throw Error(ErrorKind::invalid_argument, "bad probe coordinate '" + item + "'");
    coords.push_back(*s);
  }
  if (coords.empty()) throw Error(ErrorKind::invalid_argument, "empty probe vector");
  return Vec(std::move(coords));
}

Json level_json(const TruncationLevel& l) { return level_to_json(l); }

NormMode parse_mode(const std::string& mode, std::size_t dims) {
  if (mode == "oracle") return NormMode::oracle;
  if (mode == "heuristic") return NormMode::heuristic;
  if (mode == "auto") return dims <= kOracleMaxCols ? NormMode::oracle : NormMode::heuristic;
  throw Error(ErrorKind::invalid_argument, "mode must be auto, oracle or heuristic");
}

int cmd_bounds(const Common& c, const std::string& mode) {
  const LoadedSystem ls = load_system(c.builtin, c.frame);
  const SequenceSpaceSpec spec(c.p);
  const Ladder ladder = resolve_ladder(ls.system, c.ladder, {4, 8, 16, 32});
  const bool hilbert = c.p == 2.0;

  std::cout << "system " << ls.label << ", X_d = " << spec.describe() << '\n';
  if (hilbert)
    std::cout << "     n      m   A (hilbert-squared)   B (hilbert-squared)      A (xd-unsquared)      B (xd-unsquared)  method\n";
  else
    std::cout << "     n      m      A (xd-unsquared)      B (xd-unsquared)  certified  method\n";

  Json levels = Json::array();
  bool consistent = true;
  for (const TruncationLevel& level : ladder) {
    const BoundsReport xd = xd_frame_bounds(ls.system, spec, level.n, level.m, parse_mode(mode, level.m));
    Json entry = level_json(level);
    consistent = consistent && xd.consistent();
    if (hilbert) {
      const BoundsReport h = hilbert_frame_bounds(ls.system, level.n, level.m);
      consistent = consistent && h.consistent();
      entry["hilbert"] = bounds_to_json(h);
      std::cout << pad(std::to_string(level.n), 6) << ' ' << pad(std::to_string(level.m), 6) << pad(num(h.A), 22)
                << pad(num(h.B), 22) << pad(num(xd.A), 22) << pad(num(xd.B), 22) << "  " << xd.method << '\n';
    } else {
      std::cout << pad(std::to_string(level.n), 6) << ' ' << pad(std::to_string(level.m), 6) << pad(num(xd.A), 22)
                << pad(num(xd.B), 22) << pad(xd.certified ? "yes" : "no", 11) << "  " << xd.method << '\n';
    }
    entry["xd"] = bounds_to_json(xd);
    levels.push_back(entry);
  }
  Json j;
  j["command"] = "bounds";
  j["system"] = ls.label;
  j["p"] = c.p;
  j["seed"] = c.seed;
  j["levels"] = levels;
  j["pass"] = consistent;
  write_json(c.json, j);
  return consistent ? kExitPass : kExitVerification;
}

LinearMapMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  LinearMapMatrix z(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t col = 0; col < cols; ++col) z(r, col) = Scalar(gauss(rng));
  return z;
}

std::string row_string(const LinearMapMatrix& m, std::size_t r) {
  std::string s = "(";
  for (std::size_t col = 0; col < m.cols(); ++col) s += (col ? ", " : "") + m(r, col).pretty();
  return s + ")";
}

int cmd_duals(const Common& c, std::size_t samples) {
  const LoadedSystem ls = load_system(c.builtin, c.frame);
  const Ladder ladder = resolve_ladder(ls.system, c.ladder, {4, 8});
  const TruncationLevel level = ladder.back();
  const DualParametrization param = dual_parametrization(ls.system, level.n, level.m);
  const std::size_t kernel_rank = level.n - rank_of(materialize(ls.system, level));

  std::cout << "system " << ls.label << " at (n, m) = (" << level.n << ", " << level.m << ")\n";
  std::cout << "kernel projector rank (dim R(U)^perp): " << kernel_rank << '\n';
  Json j;
  j["command"] = "duals";
  j["system"] = ls.label;
  j["seed"] = c.seed;
  j["level"] = level_json(level);
  j["kernel_rank"] = kernel_rank;
  if (ladder.size() >= 2) {
    const PseudoDualFamily fam = complement_dimension(ls.system, ladder);
    std::cout << "family: " << fam.structure << '\n';
    j["family"] = family_to_json(fam);
  }

  const FrameSystem canonical = canonical_dual(ls.system, level.n, level.m);
  const std::size_t shown = std::min<std::size_t>(level.n, 6);
  std::cout << "canonical dual (first " << shown << " of " << level.n << "):\n";
  for (std::size_t r = 0; r < shown; ++r) std::cout << "  f_" << r + 1 << " = " << row_string(canonical.dense(), r) << '\n';
  j["canonical_dual"] = matrix_to_json(canonical.dense());

  const LinearMapMatrix u = materialize(ls.system, level);
  std::mt19937_64 rng(c.seed);
  bool ok = true;
  Json sampled = Json::array();
  const std::size_t count = kernel_rank == 0 ? 0 : samples;
  if (kernel_rank == 0) std::cout << "unique dual: R(U)^perp = {0}\n";
  for (std::size_t s = 0; s < count; ++s) {
    const LinearMapMatrix z = random_matrix(rng, level.m, level.n);
    const FrameSystem dual = sample_dual(param, z);
    const LinearMapMatrix l = dual.dense().transpose();
    const double residual = max_abs_difference(l * u, LinearMapMatrix::identity(level.m));
    ok = ok && residual < 1e-10;
    std::cout << "sample " << s + 1 << ": reconstruction residual " << num(residual, 3) << "  f_1 = "
              << row_string(dual.dense(), 0).substr(0, 60) << '\n';
    sampled.push_back(Json{{"residual", residual}, {"rows", matrix_to_json(dual.dense())}});
  }
  j["samples"] = sampled;
  j["pass"] = ok;
  std::cout << status(ok) << '\n';
  write_json(c.json, j);
  return ok ? kExitPass : kExitVerification;
}

int cmd_classify(const Common& c, const std::string& operator_path) {
  LinearMapMatrix t = LinearMapMatrix::identity(1);
  std::string label;
  if (!operator_path.empty()) {
    t = load_matrix(operator_path);
    label = operator_path;
  } else {
    const LoadedSystem ls = load_system(c.builtin, c.frame);
    const TruncationLevel level = resolve_ladder(ls.system, c.ladder, {4}).back();
    t = materialize(ls.system, level).transpose();
    label = ls.label;
  }
  const Classification cls = classify(t, SequenceSpaceSpec(c.p));
  std::cout << "operator " << label << " (" << t.rows() << " x " << t.cols() << "), X_d = l^" << num(c.p) << '\n';
  const std::pair<const char*, Tri> flags[] = {{"bessel", cls.bessel},
                                               {"lower_condition", cls.lower_condition},
                                               {"xd_frame", cls.xd_frame},
                                               {"banach_frame", cls.banach_frame},
                                               {"riesz_basis", cls.riesz_basis}};
  for (const auto& [name, value] : flags) std::cout << "  " << name << ": " << to_string(value) << '\n';
  for (const auto& [name, value] : cls.certificates) std::cout << "  " << name << " = " << num(value) << '\n';
  Json j;
  j["command"] = "classify";
  j["operator"] = label;
  j["classification"] = classification_to_json(cls);
  j["pass"] = cls.consistent();
  write_json(c.json, j);
  return cls.consistent() ? kExitPass : kExitVerification;
}

struct ExpandArgs {
  std::string pair;
  std::string partner;
  std::string partner_frame;
  std::string probe;
  std::size_t basis = 0;
  std::string side = "primal";
  std::string csv;
  std::string expect;
  bool floating = false;
};

int cmd_expand(const Common& c, const ExpandArgs& a) {
  std::optional<LoadedSystem> g;
  std::optional<LoadedSystem> f;
  if (!a.pair.empty()) {
    const NamedPair& pr = builtin_examples().pair(a.pair);
    g = LoadedSystem{pr.analysis, builtin_examples().system(pr.analysis)};
    f = LoadedSystem{pr.synthesis, builtin_examples().system(pr.synthesis)};
  } else {
    g = load_system(c.builtin, c.frame);
    f = load_system(a.partner, a.partner_frame);
  }
  Vec probe;
  if (!a.probe.empty()) {
    probe = parse_vector(a.probe);
  } else if (a.basis > 0) {
    probe = Vec::basis(a.basis, a.basis - 1);
  } else {
    throw Error(ErrorKind::invalid_argument, "give --probe v1,v2,... or --basis k");
  }
  ExpandOptions opt;
  opt.tol = c.tol;
  opt.p = c.p;
  opt.arithmetic = a.floating ? Arithmetic::floating : Arithmetic::as_given;
  ExpansionTrace tr;
  if (a.side == "primal") {
    tr = primal_expand(g->system, f->system, probe, c.nmax, opt);
  } else if (a.side == "dual") {
    tr = dual_expand(g->system, f->system, probe, c.nmax, opt);
  } else {
    throw Error(ErrorKind::invalid_argument, "side must be primal or dual");
  }

  std::cout << a.side << " expansion, G = " << g->label << ", F = " << f->label << ", N_max = " << c.nmax << '\n';
  std::cout << "     N  residual\n";
  for (const ResidualEntry& e : tr.residuals) {
    if (e.N <= 12 || e.N + 6 > tr.residuals.back().N || e.N % 10 == 0)
      std::cout << pad(std::to_string(e.N), 6) << "  " << e.residual.pretty() << (e.exact ? "" : "  (float)") << '\n';
  }
  const Verdict& v = tr.verdict;
  std::cout << "verdict: " << to_string(v.kind);
  if (v.at) std::cout << " at N = " << *v.at;
  std::cout << " (tol " << num(v.tol) << ", tail liminf " << v.liminf.pretty() << ", limsup " << v.limsup.pretty() << ")\n";

  bool ok = true;
  if (!a.expect.empty()) {
    ok = a.expect == to_string(v.kind);
    std::cout << status(ok) << ": expected " << a.expect << '\n';
  }
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw Error(ErrorKind::file_not_found, "cannot write " + a.csv);
    out << trace_to_csv(tr);
  }
  Json j;
  j["command"] = "expand";
  j["analysis"] = g->label;
  j["synthesis"] = f->label;
  j["p"] = c.p;
  j["trace"] = trace_to_json(tr);
  j["pass"] = ok;
  write_json(c.json, j);
  return ok ? kExitPass : kExitVerification;
}

int cmd_reproduce(const Common& c, const std::string& name) {
  std::vector<std::string> names;
  if (name == "all") {
    names = reproducible_examples();
  } else {
    names.push_back(name);
  }
  bool ok = true;
  Json all = Json::array();
  for (const std::string& n : names) {
    const Transcript t = reproduce(n, c.seed);
    std::cout << "== " << n << " (seed " << c.seed << ")\n";
    for (const std::string& line : t.lines) std::cout << line << '\n';
    for (const Check& chk : t.checks) std::cout << status(chk.pass) << "  " << chk.name << '\n';
    std::cout << "-> " << status(t.pass()) << '\n';
    ok = ok && t.pass();
    all.push_back(t.to_json());
  }
  Json j;
  j["command"] = "reproduce";
  j["seed"] = c.seed;
  j["transcripts"] = all;
  j["pass"] = ok;
  write_json(c.json, j);
  return ok ? kExitPass : kExitVerification;
}

int cmd_transform(const Common& c, const std::string& operator_path, const std::string& target) {
  const LoadedSystem ls = load_system(c.builtin, c.frame);
  const TruncationLevel level = resolve_ladder(ls.system, c.ladder, {4}).back();
  Json j;
  j["command"] = "transform";
  j["system"] = ls.label;
  j["level"] = level_json(level);
  bool ok = true;
  if (!target.empty()) {
    const FrameSystem& h = builtin_examples().system(target);
    std::size_t m_to = 1;
    if (h.is_dense()) {
      m_to = h.dense().cols();
    } else {
      for (std::size_t i = 1; i <= level.n; ++i) m_to = std::max(m_to, h.term(i).max_index());
    }
    const auto v = solve_transform(ls.system, h, level.n, level.m, m_to);
    std::cout << "V g_i = h_i for i <= " << level.n << " with h = " << target << ": "
              << (v ? "solvable" : "infeasible") << '\n';
    j["target"] = target;
    j["feasible"] = v.has_value();
  }
  if (!operator_path.empty()) {
    const LinearMapMatrix v = load_matrix(operator_path);
    const PreservationReport r = transform_report(v, ls.system, SequenceSpaceSpec(c.p), level.n, level.m);
    std::cout << "V: surjective " << to_string(r.v_properties.surjective) << ", bijective "
              << to_string(r.v_properties.bijective);
    if (r.v_properties.right_inverse_norm) std::cout << ", right inverse norm " << num(*r.v_properties.right_inverse_norm);
    std::cout << '\n';
    std::cout << "               input        output\n";
    const std::pair<const char*, std::pair<Tri, Tri>> rows[] = {
        {"bessel", {r.input_class.bessel, r.output_class.bessel}},
        {"xd_frame", {r.input_class.xd_frame, r.output_class.xd_frame}},
        {"banach_frame", {r.input_class.banach_frame, r.output_class.banach_frame}},
        {"riesz_basis", {r.input_class.riesz_basis, r.output_class.riesz_basis}}};
    for (const auto& [name, pair] : rows) {
      std::string label = name;
      label.resize(14, ' ');
      std::string in(to_string(pair.first));
      in.resize(13, ' ');
      std::cout << label << ' ' << in << to_string(pair.second) << '\n';
    }
    std::cout << "output sigma_min of adjoint: " << num(r.output_class.certificates.at("sigma_min_adjoint")) << '\n';
    for (const std::string& viol : r.violations) std::cout << "violation: " << viol << '\n';
    ok = r.violations.empty();
    j["report"] = preservation_to_json(r);
  }
  if (operator_path.empty() && target.empty())
    throw Error(ErrorKind::invalid_argument, "transform needs --operator PATH and/or --target NAME");
  j["pass"] = ok;
  std::cout << status(ok) << '\n';
  write_json(c.json, j);
  return ok ? kExitPass : kExitVerification;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::lower_bound_violation:
    case ErrorKind::singular_frame_operator:
    case ErrorKind::not_surjective:
      return kExitVerification;
    default:
      return kExitInput;
  }
}

void add_common(CLI::App* app, Common& c, bool frame_options = true) {
  if (frame_options) {
    app->add_option("--builtin", c.builtin, "builtin system name");
    app->add_option("--frame", c.frame, "frame definition file (JSON)");
  }
  app->add_option("--p", c.p, "exponent of X_d = l^p");
  app->add_option("--ladder", c.ladder, "truncation ladder n:m,n:m,...");
  app->add_option("--nmax", c.nmax, "expansion horizon");
  app->add_option("--tol", c.tol, "convergence tolerance");
  app->add_option("--seed", c.seed, "seed for randomized probes");
  app->add_option("--json", c.json, "write a JSON report to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framelab: frames, duals and expansions in sequence spaces"};
  app.require_subcommand(1);
  Common c;

  std::string mode = "auto";
  auto* bounds = app.add_subcommand("bounds", "frame bounds along a truncation ladder");
  add_common(bounds, c);
  bounds->add_option("--mode", mode, "auto, oracle or heuristic for p != 2");

  std::size_t samples = 3;
  auto* duals = app.add_subcommand("duals", "canonical dual and sampled left-inverse duals");
  add_common(duals, c);
  duals->add_option("--samples", samples, "number of sampled duals");

  std::string operator_path;
  auto* cls = app.add_subcommand("classify", "classify the sequence generated by an operator");
  add_common(cls, c);
  cls->add_option("--operator", operator_path, "matrix file (JSON); columns are the sequence elements");

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "partial sums of a primal or dual expansion");
  add_common(expand, c);
  expand->add_option("--pair", ea.pair, "builtin (G, F) pair");
  expand->add_option("--partner", ea.partner, "builtin name of F");
  expand->add_option("--partner-frame", ea.partner_frame, "frame file of F");
  expand->add_option("--probe", ea.probe, "probe vector v1,v2,... (p/q allowed)");
  expand->add_option("--basis", ea.basis, "probe e_k");
  expand->add_option("--side", ea.side, "primal or dual");
  expand->add_option("--csv", ea.csv, "write the residual trace as CSV");
  expand->add_option("--expect", ea.expect, "expected verdict; mismatch exits 2");
  expand->add_flag("--float", ea.floating, "evaluate in floating point");

  std::string example;
  auto* repro = app.add_subcommand("reproduce", "run a named example script");
  add_common(repro, c, false);
  repro->add_option("example", example, "example name or 'all'")->required();

  std::string target;
  auto* transform = app.add_subcommand("transform", "transfer of frame properties under an operator V");
  add_common(transform, c);
  transform->add_option("--operator", operator_path, "matrix file of V (JSON)");
  transform->add_option("--target", target, "builtin system h; test whether V g_i = h_i is solvable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*bounds) return cmd_bounds(c, mode);
    if (*duals) return cmd_duals(c, samples);
    if (*cls) return cmd_classify(c, operator_path);
    if (*expand) return cmd_expand(c, ea);
    if (*repro) return cmd_reproduce(c, example);
    if (*transform) return cmd_transform(c, operator_path, target);
  } catch (const Error& e) {
    std::cerr << "framelab: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitInput;
}
