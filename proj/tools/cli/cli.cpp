#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "dioprime/count.hpp"
#include "dioprime/exppair.hpp"
#include "dioprime/kernel.hpp"
#include "dioprime/ledger.hpp"
#include "dioprime/primes.hpp"
#include "dioprime/solver.hpp"
#include "dioprime/sums.hpp"
#include "json.hpp"

namespace dioprime::cli {

namespace {

using json = nlohmann::ordered_json;

// Resolved settings shared by every subcommand; embedded in each report.
struct Config {
  double c = 1.5;
  double N = 0.0;
  double X = 0.0;
  double eps = 0.0;
  double kernel_eps = 0.0;
  double eta = 0.05;
  double k_exponent = 10.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output;
  std::string format;
  bool timing = false;
  bool degenerate = false;
};

json config_json(const Config& cfg) {
  json j;
  j["c"] = cfg.c;
  j["N"] = cfg.N;
  j["X"] = cfg.X;
  j["eps"] = cfg.eps;
  j["kernel_eps"] = cfg.kernel_eps;
  j["eta"] = cfg.eta;
  j["k_exponent"] = cfg.k_exponent;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["output"] = cfg.output;
  j["format"] = cfg.format;
  j["degenerate"] = cfg.degenerate;
  return j;
}

json instance_json(const ProblemInstance& inst) {
  json j;
  j["c"] = inst.c;
  j["X"] = inst.X;
  j["eps"] = inst.eps;
  j["tau"] = inst.tau;
  j["K"] = inst.K;
  j["k"] = inst.k;
  j["eta"] = inst.eta;
  j["E"] = inst.E();
  j["degenerate"] = inst.degenerate;
  return j;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a command needs to emit its report.
class Context {
 public:
  Context(Config& cfg, std::ostream& out) : cfg_(cfg), out_(out), start_(std::chrono::steady_clock::now()) {}

  Config& cfg() { return cfg_; }

  const std::string& format(const std::string& fallback) {
    if (cfg_.format.empty()) cfg_.format = fallback;
    return cfg_.format;
  }

  void require_format(std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
      if (cfg_.format == a) return;
    }
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
    throw UsageError("--format: this command supports " + list);
  }

  json envelope(const std::string& command) const {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["config"] = config_json(cfg_);
    return j;
  }

  void emit_json(json j) {
    if (cfg_.timing) {
      j["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    sink() << j.dump(2) << '\n';
  }

  std::ostream& sink() {
    if (cfg_.output.empty()) return out_;
    if (!file_) {
      std::filesystem::path p(cfg_.output);
      if (const char* dir = std::getenv("DIOPRIME_OUTPUT_DIR"); dir != nullptr && p.is_relative()) {
        p = std::filesystem::path(dir) / p;
      }
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      file_.emplace(p);
      if (!*file_) throw std::runtime_error("cannot open output file " + p.string());
    }
    return *file_;
  }

 private:
  Config& cfg_;
  std::ostream& out_;
  std::optional<std::ofstream> file_;
  std::chrono::steady_clock::time_point start_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void require_positive(double v, const char* flag) {
  if (!(v > 0.0)) throw UsageError(std::string(flag) + " must be positive");
}

InstanceOptions instance_options(const Config& cfg, int k = 3) {
  InstanceOptions io;
  io.eta = cfg.eta;
  io.k_exponent = cfg.k_exponent;
  io.eps = cfg.eps;
  io.k = k;
  io.allow_degenerate = cfg.degenerate;
  return io;
}

ProblemInstance sums_instance(const Config& cfg) {
  require_positive(cfg.X, "--X");
  return make_instance(cfg.c, cfg.X, instance_options(cfg));
}

SolverOptions solver_options(const Config& cfg) {
  SolverOptions so;
  so.eps = cfg.eps;
  so.eta = cfg.eta;
  so.k_exponent = cfg.k_exponent;
  so.allow_degenerate = cfg.degenerate;
  return so;
}

KernelParams solver_kernel(const Config& cfg, const ProblemInstance& inst) {
  const double eps = cfg.kernel_eps > 0.0 ? cfg.kernel_eps : std::pow(std::log(inst.X), -4.0);
  return kernel_from_instance(eps, inst.X);
}

json kernel_json(const KernelParams& k) {
  return json{{"a", k.a}, {"b", k.b}, {"r", k.r}, {"order", k.order()}};
}

json record_json(const SolutionRecord& r) {
  return json{{"primes", r.primes}, {"value", r.value}, {"deviation", r.deviation}, {"ambiguous", r.ambiguous}};
}

json ledger_rows(const ledger::LedgerReport& rep) { return json::parse(ledger::to_json(rep)); }

// ---- subcommands ---------------------------------------------------------

int cmd_pairs_eval(Context& ctx, const std::string& word) {
  const ExponentPair p = apply_word(word);
  const std::string& fmt = ctx.format("text");
  ctx.require_format({"text", "json"});
  if (fmt == "text") {
    ctx.sink() << p.str() << '\n';
    return kOk;
  }
  json j = ctx.envelope("pairs eval");
  j["word"] = ChainWord::parse(word).render();
  j["kappa"] = p.kappa.fraction_str();
  j["lambda"] = p.lambda.fraction_str();
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_pairs_search(Context& ctx, int depth, double alpha, double beta, std::size_t beam) {
  if (depth < 0) throw UsageError("--depth must be >= 0");
  SearchOptions opts;
  opts.beam_width = beam;
  opts.workers = ctx.cfg().workers;
  const auto res = search_pairs(
      [&](const ExponentPair& p) { return alpha * p.kappa.to_double() + beta * p.lambda.to_double(); }, depth, opts);
  const std::string& fmt = ctx.format("json");
  ctx.require_format({"text", "json"});
  if (fmt == "text") {
    ctx.sink() << res.pair.str() << ' ' << (res.word.empty() ? "-" : res.word.render()) << '\n';
    return kOk;
  }
  json j = ctx.envelope("pairs search");
  j["depth"] = depth;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["kappa"] = res.pair.kappa.fraction_str();
  j["lambda"] = res.pair.lambda.fraction_str();
  j["word"] = res.word.render();
  j["value"] = res.value;
  j["exhaustive"] = res.exhaustive;
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_ledger(Context& ctx, const std::string& which) {
  ledger::LedgerReport rep;
  if (which == "all") {
    rep = ledger::run_all();
  } else {
    const auto names = ledger::check_names();
    if (std::find(names.begin(), names.end(), which) == names.end()) {
      std::string list;
      for (const auto& n : names) list += " " + n;
      throw UsageError("unknown ledger check '" + which + "'; expected all or one of:" + list);
    }
    rep = ledger::run_check(which);
  }
  const std::string& fmt = ctx.format("json");
  ctx.require_format({"json", "csv"});
  if (fmt == "csv") {
    auto& s = ctx.sink();
    s << "check,lhs,rel,rhs,pass,slack,informational\n";
    for (const auto& r : rep.rows) {
      s << csv_field(r.check) << ',' << r.lhs.fraction_str() << ',' << csv_field(ledger::to_string(r.rel)) << ','
        << r.rhs.fraction_str() << ',' << (r.pass ? "true" : "false") << ',' << r.slack.fraction_str() << ','
        << (r.informational ? "true" : "false") << '\n';
    }
  } else {
    json j = ctx.envelope("ledger " + which);
    j["report"] = rep.name;
    j["passed"] = rep.passed();
    j["rows"] = ledger_rows(rep);
    ctx.emit_json(std::move(j));
  }
  return rep.passed() ? kOk : kCheckFailed;
}

struct KernelOpts {
  double a = 0.9;
  double b = 0.1;
  int r = 3;
  bool strict = false;
  std::vector<double> xs;
  double from = -10.0;
  double to = 10.0;
  std::size_t n = 21;
  int r_max = 8;
  std::size_t samples = 100000;
  double range = 1000.0;

  KernelParams params(int order_r) const {
    KernelParams k{a, b, order_r, strict};
    k.validate();
    return k;
  }
};

int cmd_kernel_eval(Context& ctx, const KernelOpts& o) {
  const KernelParams k = o.params(o.r);
  std::vector<double> xs = o.xs;
  if (xs.empty()) {
    if (o.n < 2) throw UsageError("--n must be >= 2");
    for (std::size_t i = 0; i < o.n; ++i) {
      xs.push_back(o.from + (o.to - o.from) * static_cast<double>(i) / static_cast<double>(o.n - 1));
    }
  }
  ctx.format("csv");
  ctx.require_format({"csv"});
  auto& s = ctx.sink();
  s << "x,phi,Phi,bound\n";
  for (double x : xs) {
    s << num(x) << ',' << num(phi_eval(k, x)) << ',' << num(phi_fourier(k, x)) << ',' << num(phi_fourier_bound(k, x))
      << '\n';
  }
  return kOk;
}

int cmd_kernel_check(Context& ctx, const KernelOpts& o) {
  if (o.r_max < 1) throw UsageError("--r-max must be >= 1");
  ctx.format("csv");
  ctx.require_format({"csv"});
  auto& s = ctx.sink();
  s << "r,x,phi,Phi,bound,pass\n";
  bool all = true;
  for (int r = 1; r <= o.r_max; ++r) {
    const KernelParams k = o.params(r);
    std::mt19937_64 rng(ctx.cfg().seed + static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> dist(-o.range, o.range);
    double worst_margin = -std::numeric_limits<double>::infinity();
    double worst_x = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < o.samples; ++i) {
      const double x = dist(rng);
      const double margin = std::abs(phi_fourier(k, x)) - phi_fourier_bound(k, x);
      if (margin > 1e-12) pass = false;
      if (margin > worst_margin) {
        worst_margin = margin;
        worst_x = x;
      }
    }
    all = all && pass;
    s << r << ',' << num(worst_x) << ',' << num(phi_eval(k, worst_x)) << ',' << num(phi_fourier(k, worst_x)) << ','
      << num(phi_fourier_bound(k, worst_x)) << ',' << (pass ? "true" : "false") << '\n';
  }
  return all ? kOk : kCheckFailed;
}

struct SumsOpts {
  std::string which = "S";
  std::vector<double> xs;
  std::size_t n = 20;
};

int cmd_sums_eval(Context& ctx, const SumsOpts& o) {
  const ProblemInstance inst = sums_instance(ctx.cfg());
  if (o.xs.empty()) throw UsageError("--x: at least one point is required");
  std::vector<cplx> vals;
  if (o.which == "S") {
    const PrimeTable primes = sieve_primes(inst.X);
    const PhaseSum S = make_S(inst, primes);
    for (double x : o.xs) vals.push_back(S(x, ctx.cfg().workers));
  } else if (o.which == "T") {
    const PhaseSum T = make_T(inst);
    for (double x : o.xs) vals.push_back(T(x, ctx.cfg().workers));
  } else {
    for (double x : o.xs) vals.push_back(integral_I(inst, x).value);
  }
  const std::string& fmt = ctx.format("csv");
  ctx.require_format({"csv", "json"});
  if (fmt == "csv") {
    std::ostringstream tmp;
    write_sum_csv(tmp, o.xs, vals);
    ctx.sink() << tmp.str();
    return kOk;
  }
  json j = ctx.envelope("sums eval");
  j["instance"] = instance_json(inst);
  j["which"] = o.which;
  json rows = json::array();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    rows.push_back({{"x", o.xs[i]}, {"re", vals[i].real()}, {"im", vals[i].imag()}, {"abs", std::abs(vals[i])}});
  }
  j["values"] = std::move(rows);
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_sums_moment(Context& ctx, const SumsOpts& o) {
  const ProblemInstance inst = sums_instance(ctx.cfg());
  if (o.which == "T") throw UsageError("--which: moment supports S or I");
  std::optional<PrimeTable> primes;
  if (o.which == "S") primes = sieve_primes(inst.X);
  const MomentResult m =
      moment4(inst, o.which == "S" ? MomentOf::S : MomentOf::I, primes ? &*primes : nullptr, ctx.cfg().workers);
  ctx.format("json");
  ctx.require_format({"json"});
  const double norm = std::pow(inst.X, 4.0 - inst.c) * std::pow(std::log(inst.X), 5.0);
  json j = ctx.envelope("sums moment");
  j["instance"] = instance_json(inst);
  j["which"] = o.which;
  j["value"] = m.value;
  j["error"] = m.error;
  j["evals"] = m.evals;
  j["converged"] = m.converged;
  j["normalized"] = m.value / norm;
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_sums_profile(Context& ctx, const SumsOpts& o) {
  const ProblemInstance inst = sums_instance(ctx.cfg());
  const PrimeTable primes = sieve_primes(inst.X);
  const std::vector<double> xs = o.xs.empty() ? chebyshev_points(inst.tau, o.n) : o.xs;
  const Profile prof = s_minus_i_profile(inst, primes, xs, ctx.cfg().workers);
  // Desk tolerance for the asymptotic S = I + o(X) statement.
  const double tol = 5.0 * std::pow(inst.X, 0.75);
  const bool pass = prof.max_diff <= tol;
  const std::string& fmt = ctx.format("csv");
  ctx.require_format({"csv", "json"});
  if (fmt == "csv") {
    auto& s = ctx.sink();
    s << "x,diff,S_re,S_im,I_re,I_im\n";
    for (const auto& p : prof.points) {
      s << num(p.x) << ',' << num(p.diff) << ',' << num(p.S.real()) << ',' << num(p.S.imag()) << ','
        << num(p.I.real()) << ',' << num(p.I.imag()) << '\n';
    }
  } else {
    json j = ctx.envelope("sums profile");
    j["instance"] = instance_json(inst);
    json pts = json::array();
    for (const auto& p : prof.points) pts.push_back({{"x", p.x}, {"diff", p.diff}});
    j["points"] = std::move(pts);
    j["max_diff"] = prof.max_diff;
    j["tolerance"] = tol;
    j["tolerance_note"] = "5*X^(3/4) is an engineering desk tolerance; the underlying bound is asymptotic";
    j["pass"] = pass;
    ctx.emit_json(std::move(j));
  }
  return pass ? kOk : kCheckFailed;
}

struct CountOpts {
  std::uint64_t Y = 2;
  std::vector<std::uint64_t> Ys{64, 128, 256, 512, 1024};
  double gamma = 1.0;
  double delta = 1e-9;
  double tau = 1.0;
  bool naive = false;
};

int cmd_count_rs(Context& ctx, const CountOpts& o) {
  const CountSpec s{o.Y, ctx.cfg().c, o.gamma, o.delta};
  const CountResult r = o.naive ? count_tuples_naive(s) : count_tuples_fast(s, ctx.cfg().workers);
  ctx.format("json");
  ctx.require_format({"json"});
  json j = ctx.envelope("count rs");
  j["Y"] = o.Y;
  j["gamma"] = o.gamma;
  j["delta"] = o.delta;
  j["algorithm"] = o.naive ? "naive" : "fast";
  j["count"] = r.count;
  j["ambiguous"] = r.ambiguous;
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_count_ladder(Context& ctx, const CountOpts& o) {
  const ScalingReport rep = rs_scaling_report(ctx.cfg().c, o.gamma, o.Ys, ctx.cfg().workers);
  const std::string& fmt = ctx.format("csv");
  ctx.require_format({"csv", "json"});
  if (fmt == "csv") {
    auto& s = ctx.sink();
    s << "Y,count,ambiguous,slope,bound,pass,out_of_regime\n";
    for (std::size_t i = 0; i < rep.Ys.size(); ++i) {
      s << rep.Ys[i] << ',' << rep.counts[i].count << ',' << rep.counts[i].ambiguous << ',' << num(rep.slope) << ','
        << num(rep.bound + rep.allowance) << ',' << (rep.pass ? "true" : "false") << ','
        << (rep.out_of_regime ? "true" : "false") << '\n';
    }
  } else {
    json j = ctx.envelope("count ladder");
    j["gamma"] = o.gamma;
    json rows = json::array();
    for (std::size_t i = 0; i < rep.Ys.size(); ++i) {
      rows.push_back({{"Y", rep.Ys[i]}, {"count", rep.counts[i].count}, {"ambiguous", rep.counts[i].ambiguous}});
    }
    j["ladder"] = std::move(rows);
    j["slope"] = rep.slope;
    j["bound"] = rep.bound + rep.allowance;
    j["out_of_regime"] = rep.out_of_regime;
    j["pass"] = rep.pass;
    ctx.emit_json(std::move(j));
  }
  return rep.pass ? kOk : kCheckFailed;
}

int cmd_count_V(Context& ctx, const CountOpts& o) {
  require_positive(o.tau, "--tau");
  const CountSpec s{o.Y, ctx.cfg().c, 1.0 / o.tau, o.delta};
  const HarmonicV v = harmonic_V(s, o.tau, ctx.cfg().workers);
  ctx.format("json");
  ctx.require_format({"json"});
  json j = ctx.envelope("count V");
  j["Y"] = o.Y;
  j["tau"] = o.tau;
  j["V"] = v.total;
  json buckets = json::array();
  for (std::size_t k = 0; k < v.buckets.size(); ++k) {
    buckets.push_back({{"k", k}, {"ell", v.ell(k, o.tau)}, {"V_ell", v.buckets[k]}, {"count", v.bucket_counts[k]}});
  }
  j["buckets"] = std::move(buckets);
  ctx.emit_json(std::move(j));
  return kOk;
}

struct SolveOpts {
  double R = 0.0;
  bool records = false;
  int k = 3;
  std::size_t samples = 50;
  bool mainterm = false;
};

int cmd_solve_triple(Context& ctx, const SolveOpts& o) {
  Config& cfg = ctx.cfg();
  require_positive(cfg.N, "--N");
  const ProblemInstance inst = instance_for_theorem1(cfg.N, cfg.c, solver_options(cfg));
  const double R = o.R > 0.0 ? o.R : cfg.N;
  const TripleSolver solver(inst, sieve_primes(inst.X));
  const TripleCount tc = solver.count_B(R, o.records);
  const KernelParams kern = solver_kernel(cfg, inst);
  const double B1 = solver.weighted_B1(R, kern);
  const MainTerm H = main_term_H(inst, R, 3, kern, cfg.workers);
  ctx.format("json");
  ctx.require_format({"json"});
  json j = ctx.envelope("solve triple");
  j["instance"] = instance_json(inst);
  j["kernel"] = kernel_json(kern);
  j["R"] = R;
  j["count"] = tc.unweighted;
  j["weighted"] = tc.weighted;
  j["B1"] = B1;
  j["H"] = H.value;
  j["H_converged"] = H.converged;
  json recs = json::array();
  for (const auto& r : tc.records) recs.push_back(record_json(r));
  j["records"] = std::move(recs);
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_solve_sextuple(Context& ctx) {
  Config& cfg = ctx.cfg();
  require_positive(cfg.N, "--N");
  const ProblemInstance inst = instance_for_theorem2(cfg.N, cfg.c, solver_options(cfg));
  const SextupleResult res = find_sextuple(inst, cfg.N, cfg.workers);
  ctx.format("json");
  ctx.require_format({"json"});
  json j = ctx.envelope("solve sextuple");
  j["instance"] = instance_json(inst);
  j["R"] = cfg.N;
  j["feasible"] = res.feasibility.feasible;
  j["range"] = {res.feasibility.lower, res.feasibility.upper};
  j["table_size"] = res.table_size;
  j["found"] = res.record.has_value();
  j["best_deviation"] = res.best_deviation;
  j["records"] = res.record ? json::array({record_json(*res.record)}) : json::array();
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_scan(Context& ctx, const SolveOpts& o) {
  Config& cfg = ctx.cfg();
  require_positive(cfg.N, "--N");
  const ProblemInstance inst = instance_for_theorem1(cfg.N, cfg.c, solver_options(cfg));
  const TripleSolver solver(inst, sieve_primes(inst.X));
  const KernelParams kern = solver_kernel(cfg, inst);
  const ScanReport rep = exceptional_scan(solver, cfg.N, o.samples, cfg.seed, o.mainterm ? &kern : nullptr,
                                          cfg.workers);
  const std::string& fmt = ctx.format("csv");
  ctx.require_format({"csv", "json"});
  if (fmt == "csv") {
    auto& s = ctx.sink();
    s << "# seed=" << rep.seed << " N=" << num(rep.N) << " zero_fraction=" << num(rep.zero_fraction) << '\n';
    s << "index,R,count" << (o.mainterm ? ",B1,H" : "") << '\n';
    for (std::size_t i = 0; i < rep.Rs.size(); ++i) {
      s << i << ',' << num(rep.Rs[i]) << ',' << rep.counts[i];
      if (o.mainterm) s << ',' << num(rep.B1[i]) << ',' << num(rep.H[i]);
      s << '\n';
    }
    return kOk;
  }
  json j = ctx.envelope("scan");
  j["instance"] = instance_json(inst);
  j["seed"] = rep.seed;
  j["samples"] = o.samples;
  j["zero_fraction"] = rep.zero_fraction;
  j["mean_count"] = rep.mean_count;
  j["median_count"] = rep.median_count;
  json hist = json::object();
  for (const auto& [count, freq] : rep.histogram) hist[std::to_string(count)] = freq;
  j["histogram"] = std::move(hist);
  j["R"] = rep.Rs;
  j["counts"] = rep.counts;
  if (o.mainterm) {
    j["kernel"] = kernel_json(kern);
    j["B1"] = rep.B1;
    j["H"] = rep.H;
    j["median_B1_over_H"] = rep.median_ratio;
  }
  ctx.emit_json(std::move(j));
  return kOk;
}

int cmd_mainterm(Context& ctx, const SolveOpts& o) {
  Config& cfg = ctx.cfg();
  require_positive(cfg.N, "--N");
  if (o.k != 3 && o.k != 6) throw UsageError("--k must be 3 or 6");
  const ProblemInstance inst = o.k == 3 ? instance_for_theorem1(cfg.N, cfg.c, solver_options(cfg))
                                        : instance_for_theorem2(cfg.N, cfg.c, solver_options(cfg));
  const double R = o.R > 0.0 ? o.R : cfg.N;
  const KernelParams kern = solver_kernel(cfg, inst);
  const MainTerm H = main_term_H(inst, R, o.k, kern, cfg.workers);
  ctx.format("json");
  ctx.require_format({"json"});
  json j = ctx.envelope("mainterm");
  j["instance"] = instance_json(inst);
  j["kernel"] = kernel_json(kern);
  j["R"] = R;
  j["k"] = o.k;
  j["H"] = H.value;
  j["error"] = H.error;
  j["tail_bound"] = H.tail_bound;
  j["tau_prime"] = H.tau_prime;
  j["grid_points"] = H.grid_points;
  j["converged"] = H.converged;
  ctx.emit_json(std::move(j));
  return H.converged ? kOk : kCheckFailed;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  q += '"';
  return q;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Diophantine inequalities over primes: exact exponent bookkeeping and desk-scale numerics",
               "dioprime"};
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--c", cfg.c, "Exponent c");
  app.add_option("--N", cfg.N, "Target size N");
  app.add_option("--X", cfg.X, "Range parameter X (primes in (X,2X])");
  app.add_option("--eps", cfg.eps, "Window width; default 1/log N for solvers, log^-4 X otherwise");
  app.add_option("--kernel-eps", cfg.kernel_eps, "Kernel epsilon for B1/H; default log^-4 X");
  app.add_option("--eta", cfg.eta, "tau = X^(1-c-eta)");
  app.add_option("--k-exponent", cfg.k_exponent, "K = (log X)^k_exponent");
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--output", cfg.output, "Write the report here (relative paths honour DIOPRIME_OUTPUT_DIR)");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--timing", cfg.timing, "Add elapsed seconds to JSON reports");
  app.add_flag("--degenerate", cfg.degenerate, "Allow the c = 1 test mode");

  std::function<int(Context&)> action;
  auto bind = [&](CLI::App* sub, std::function<int(Context&)> f) {
    sub->fallthrough();
    sub->callback([&action, f = std::move(f)] { action = f; });
  };

  // pairs
  auto* pairs = app.add_subcommand("pairs", "Exponent-pair calculus")->require_subcommand(1);
  pairs->fallthrough();
  std::string word;
  auto* pe = pairs->add_subcommand("eval", "Apply an A/B word to (0,1)");
  pe->add_option("--word", word, "Word such as A^2B")->required();
  bind(pe, [&](Context& c) { return cmd_pairs_eval(c, word); });
  int depth = 6;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t beam = std::size_t{1} << 14;
  auto* ps = pairs->add_subcommand("search", "Minimise alpha*kappa + beta*lambda over words");
  ps->add_option("--depth", depth, "Maximum word length");
  ps->add_option("--alpha", alpha, "Weight on kappa");
  ps->add_option("--beta", beta, "Weight on lambda");
  ps->add_option("--beam", beam, "Pairs kept per level");
  bind(ps, [&](Context& c) { return cmd_pairs_search(c, depth, alpha, beta, beam); });

  // ledger
  std::string check = "all";
  auto* led = app.add_subcommand("ledger", "Exact exponent checks");
  led->add_option("check", check, "all or a check name");
  bind(led, [&](Context& c) { return cmd_ledger(c, check); });

  // kernel
  KernelOpts ko;
  auto* kern = app.add_subcommand("kernel", "Smoothing kernel")->require_subcommand(1);
  kern->fallthrough();
  for (auto* sub : {kern->add_subcommand("eval", "Tabulate phi, Phi and the bound"),
                    kern->add_subcommand("check", "Random check of |Phi| against its bound")}) {
    sub->add_option("--a", ko.a, "Half-width a");
    sub->add_option("--b", ko.b, "Transition b (< a/4)");
    sub->add_flag("--strict", ko.strict, "Use order r+1");
  }
  auto* ke = kern->get_subcommand("eval");
  ke->add_option("--r", ko.r, "Smoothness r");
  ke->add_option("--x", ko.xs, "Points");
  ke->add_option("--from", ko.from, "Grid start");
  ke->add_option("--to", ko.to, "Grid end");
  ke->add_option("--n", ko.n, "Grid points");
  bind(ke, [&](Context& c) { return cmd_kernel_eval(c, ko); });
  auto* kc = kern->get_subcommand("check");
  kc->add_option("--r-max", ko.r_max, "Check r = 1..r_max");
  kc->add_option("--samples", ko.samples, "Samples per r");
  kc->add_option("--range", ko.range, "x drawn from [-range, range]");
  bind(kc, [&](Context& c) { return cmd_kernel_check(c, ko); });

  // sums
  SumsOpts so;
  auto* sums = app.add_subcommand("sums", "Exponential sums and integrals")->require_subcommand(1);
  sums->fallthrough();
  auto* se = sums->add_subcommand("eval", "S(x), T(x) or I(x) at points");
  se->add_option("--which", so.which, "S, T or I")->check(CLI::IsMember({"S", "T", "I"}));
  se->add_option("--x", so.xs, "Points")->required();
  bind(se, [&](Context& c) { return cmd_sums_eval(c, so); });
  auto* sm = sums->add_subcommand("moment", "Fourth moment over [-tau, tau]");
  sm->add_option("--which", so.which, "S or I")->check(CLI::IsMember({"S", "I"}));
  bind(sm, [&](Context& c) { return cmd_sums_moment(c, so); });
  auto* sp = sums->add_subcommand("profile", "|S - I| on [-tau, tau]");
  sp->add_option("--x", so.xs, "Points (default Chebyshev)");
  sp->add_option("--n", so.n, "Chebyshev points");
  bind(sp, [&](Context& c) { return cmd_sums_profile(c, so); });

  // count
  CountOpts co;
  auto* count = app.add_subcommand("count", "Fourth-power tuple counting")->require_subcommand(1);
  count->fallthrough();
  auto* cr = count->add_subcommand("rs", "Count tuples with |delta| < gamma");
  cr->add_option("--Y", co.Y, "Y")->required();
  cr->add_option("--gamma", co.gamma, "Window gamma");
  cr->add_option("--delta", co.delta, "Ambiguity band");
  cr->add_flag("--naive", co.naive, "Use the O(Y^4) counter");
  bind(cr, [&](Context& c) { return cmd_count_rs(c, co); });
  auto* cl = count->add_subcommand("ladder", "Scaling slope over a doubling ladder");
  cl->add_option("--Y", co.Ys, "Ladder of Y");
  cl->add_option("--gamma", co.gamma, "Window gamma");
  bind(cl, [&](Context& c) { return cmd_count_ladder(c, co); });
  auto* cv = count->add_subcommand("V", "Harmonic sum over |delta| > 1/tau");
  cv->add_option("--Y", co.Y, "Y")->required();
  cv->add_option("--tau", co.tau, "tau");
  bind(cv, [&](Context& c) { return cmd_count_V(c, co); });

  // solvers
  SolveOpts sv;
  auto* solve = app.add_subcommand("solve", "Direct solvers")->require_subcommand(1);
  solve->fallthrough();
  auto* st = solve->add_subcommand("triple", "B(R), B1(R) and H(R) for three primes");
  st->add_option("--R", sv.R, "Target R (default N)");
  st->add_flag("--records", sv.records, "List the solutions");
  bind(st, [&](Context& c) { return cmd_solve_triple(c, sv); });
  auto* sx = solve->add_subcommand("sextuple", "Find six primes near N");
  bind(sx, [&](Context& c) { return cmd_solve_sextuple(c); });
  auto* sc = app.add_subcommand("scan", "Zero-count fraction over seeded random R");
  sc->add_option("--samples", sv.samples, "Number of R");
  sc->add_flag("--mainterm", sv.mainterm, "Also compute B1 and H");
  bind(sc, [&](Context& c) { return cmd_scan(c, sv); });
  auto* mt = app.add_subcommand("mainterm", "Main term H(R)");
  mt->add_option("--R", sv.R, "Target R (default N)");
  mt->add_option("--k", sv.k, "Number of primes (3 or 6)");
  bind(mt, [&](Context& c) { return cmd_mainterm(c, sv); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  if (!action) {
    err << "usage error: no command given\n";
    return kUsage;
  }
  try {
    Context ctx(cfg, out);
    return action(ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dioprime"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dioprime::cli
