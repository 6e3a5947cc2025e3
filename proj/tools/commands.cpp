#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "csv.hpp"
#include "gsg/gsg.hpp"

namespace gsg::cli {

namespace {

int g_status = 0;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- flag parsing helpers -------------------------------------------------

std::vector<double> ParseList(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(what + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

std::vector<int> ParseIntList(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (double v : ParseList(text, what)) {
    if (v != static_cast<int>(v)) throw ValidationError(what + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// "1,0;0,1" -> rows
std::vector<std::vector<double>> ParseMatrix(const std::string& text,
                                             const std::string& what) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) out.push_back(ParseList(row, what));
  return out;
}

InformantSet ParseInformants(const GameInstance& inst, const std::string& text) {
  std::vector<int> members;
  std::stringstream ss(text);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    const auto& ids = inst.graph.informant_ids;
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw ValidationError("unknown informant id '" + id + "'");
    members.push_back(static_cast<int>(it - ids.begin()));
  }
  return InformantSet(std::move(members));
}

std::string FormatInformants(const GameInstance& inst, const InformantSet& set) {
  std::vector<std::string> ids;
  for (int u : set.members()) ids.push_back(inst.graph.informant_ids[u]);
  return Join(ids, ';');
}

// Output goes to --out when given, standard output otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// --- instance sources -----------------------------------------------------

struct GenFlags {
  GenerationParams params;
  double sum_cap = 0.0;
  double fixed_p = 0.0;
  bool has_sum_cap = false;
  bool has_fixed_p = false;
};

void AddGenFlags(CLI::App* cmd, GenFlags& g) {
  auto& p = g.params;
  cmd->add_option("--nx", p.num_informants, "number of informants |X|")->capture_default_str();
  cmd->add_option("--ny", p.num_attackers, "number of attackers |Y|")->capture_default_str();
  cmd->add_option("--n", p.num_targets, "number of targets")->capture_default_str();
  cmd->add_option("--r", p.resources, "defender resources")->capture_default_str();
  cmd->add_option("--k", p.recruit_budget, "informant budget")->capture_default_str();
  cmd->add_option("--lambda", p.lambda, "quantal response precision")->capture_default_str();
  cmd->add_option("--payoff-scale", p.payoff_scale, "Q, payoff magnitude bound")
      ->capture_default_str();
  cmd->add_option("--max-w", p.max_intensity, "edge intensities drawn from U[0, max-w]")
      ->capture_default_str();
  cmd->add_option("--sum-pv-cap", g.sum_cap, "cap C' on the expected number of attacks")
      ->each([&g](const std::string&) { g.has_sum_cap = true; });
  cmd->add_option("--fixed-p", g.fixed_p, "use this attack probability for every attacker")
      ->each([&g](const std::string&) { g.has_fixed_p = true; });
  cmd->add_flag("--full-graph", p.full_graph, "connect every informant to every attacker");
}

GenerationParams Resolve(const GenFlags& g) {
  GenerationParams p = g.params;
  if (g.has_sum_cap) p.sum_attack_prob_cap = g.sum_cap;
  if (g.has_fixed_p) p.fixed_attack_prob = g.fixed_p;
  return p;
}

struct BatchFlags {
  std::string instance;
  int seeds = 30;
  std::uint64_t seed_start = 1;
};

void AddBatchFlags(CLI::App* cmd, BatchFlags& b) {
  cmd->add_option("--instance", b.instance, "instance file (otherwise generate per seed)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seeds", b.seeds, "number of generated instances")->capture_default_str();
  cmd->add_option("--seed-start", b.seed_start, "first generator seed")->capture_default_str();
}

struct LabeledInstance {
  std::string label;
  GameInstance instance;
};

std::vector<LabeledInstance> LoadInstances(const BatchFlags& b, const GenFlags& g) {
  std::vector<LabeledInstance> out;
  if (!b.instance.empty()) {
    out.push_back({b.instance, ReadInstanceFile(b.instance)});
    return out;
  }
  if (b.seeds < 1) throw ValidationError("--seeds must be >= 1");
  const auto params = Resolve(g);
  for (int s = 0; s < b.seeds; ++s) {
    const std::uint64_t seed = b.seed_start + s;
    out.push_back({std::to_string(seed), GenerateInstance(seed, params)});
  }
  return out;
}

// --- evaluator flags --------------------------------------------------------

struct EvalFlags {
  std::string method = "exact";
  int max_reported = 6;
  long samples = 100;
  std::uint64_t seed = 1;
};

void AddEvalFlags(CLI::App* cmd, EvalFlags& e, const std::string& seed_flag) {
  cmd->add_option("--method", e.method, "exact | ctrunc | sampled | sisi | mc")
      ->check(CLI::IsMember({"exact", "ctrunc", "sampled", "sisi", "mc"}))
      ->capture_default_str();
  cmd->add_option("--C", e.max_reported, "truncation size C (ctrunc)")->capture_default_str();
  cmd->add_option("--T", e.samples, "samples (sampled) or episodes (mc)")->capture_default_str();
  cmd->add_option(seed_flag, e.seed, "evaluation seed (sampled, mc)")->capture_default_str();
}

EvaluatorSpec ToSpec(const EvalFlags& e) {
  EvaluatorSpec spec;
  if (e.method == "exact") spec.method = EvalMethod::kExact;
  else if (e.method == "ctrunc") spec.method = EvalMethod::kCTruncated;
  else if (e.method == "sampled") spec.method = EvalMethod::kSampled;
  else if (e.method == "sisi") spec.method = EvalMethod::kSisi;
  else spec.method = EvalMethod::kMonteCarlo;
  spec.max_reported = e.max_reported;
  spec.samples = e.samples;
  spec.seed = e.seed;
  return spec;
}

// Running means keyed by a label, reported in first-seen order.
class MeanTable {
 public:
  void Add(const std::string& key, const std::vector<double>& values) {
    auto it = index_.find(key);
    if (it == index_.end()) {
      it = index_.emplace(key, rows_.size()).first;
      rows_.push_back({key, std::vector<double>(values.size(), 0.0), 0});
    }
    auto& row = rows_[it->second];
    for (std::size_t i = 0; i < values.size(); ++i) row.sums[i] += values[i];
    ++row.count;
  }

  struct Row {
    std::string key;
    std::vector<double> sums;
    int count;
    double Mean(std::size_t i) const { return sums[i] / count; }
  };
  const std::vector<Row>& rows() const { return rows_; }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<Row> rows_;
};

// --- gen --------------------------------------------------------------------

void RegisterGen(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen", "generate a random instance");
  struct Opts {
    GenFlags gen;
    std::uint64_t seed = 1;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  AddGenFlags(cmd, o->gen);
  cmd->add_option("--seed", o->seed, "generator seed")->capture_default_str();
  cmd->add_option("-o,--out", o->out, "output file (default: standard output)");
  cmd->callback([o] {
    const auto inst = GenerateInstance(o->seed, Resolve(o->gen));
    RequireValid(inst);
    if (o->out.empty()) {
      std::cout << DumpInstance(inst);
    } else {
      WriteInstanceFile(o->out, inst);
    }
  });
}

// --- eval -------------------------------------------------------------------

void RegisterEval(CLI::App& app) {
  auto* cmd = app.add_subcommand("eval", "evaluate DefEU(U) for one recruited set");
  struct Opts {
    std::string instance;
    std::string informants;
    EvalFlags eval;
    double attack_cap = 0.0;
    bool has_attack_cap = false;
    double payoff_scale = 0.0;
    bool has_payoff_scale = false;
    int level = 0;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--instance", o->instance, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--u", o->informants, "recruited informant ids, comma separated");
  AddEvalFlags(cmd, o->eval, "--seed");
  cmd->add_option("--cprime", o->attack_cap, "C' for the truncation error bound")
      ->each([o](const std::string&) { o->has_attack_cap = true; });
  cmd->add_option("--Q", o->payoff_scale, "payoff bound Q (default: largest |Rd|, |Pd|)")
      ->each([o](const std::string&) { o->has_payoff_scale = true; });
  cmd->add_option("--level", o->level, "evaluate against a level-kappa attacker")
      ->capture_default_str();
  cmd->add_option("-o,--out", o->out, "CSV output file (default: standard output)");
  cmd->callback([o] {
    const auto inst = ReadInstanceFile(o->instance);
    RequireValid(inst);
    const auto set = ParseInformants(inst, o->informants);
    if (o->level < 0) throw ValidationError("--level must be >= 0");
    EvalContext ctx = MakeLevelZeroContext(inst);
    if (o->level > 0) {
      const auto trace = IterateLevels(inst, ctx.routine, set, o->level);
      ctx = MakeContext(inst, ctx.routine, trace.q_seq.back());
    }
    const auto spec = ToSpec(o->eval);
    EvaluationResult res;
    switch (spec.method) {
      case EvalMethod::kExact: res = EvalExact(ctx, set); break;
      case EvalMethod::kCTruncated: {
        std::optional<TruncationBoundParams> bound;
        if (o->has_attack_cap) {
          bound = TruncationBoundParams{
              o->attack_cap,
              o->has_payoff_scale ? o->payoff_scale : inst.MaxDefenderPayoff()};
        }
        res = EvalTruncated(ctx, set, spec.max_reported, bound);
        break;
      }
      case EvalMethod::kSampled: res = EvalSampled(ctx, set, spec.samples, spec.seed); break;
      case EvalMethod::kSisi: res = EvalSisi(ctx, set); break;
      case EvalMethod::kMonteCarlo:
        res = EvalMonteCarlo(ctx, set, spec.samples, spec.seed);
        break;
    }
    Output out(o->out);
    CsvWriter csv(out.stream());
    csv.Header({"method", "informants", "level", "value", "error_bound", "samples", "seed",
                "standard_error"});
    auto opt = [](const auto& v) -> Cell {
      if (!v) return Cell("");
      return Cell(*v);
    };
    csv.Row({ToString(res.method), FormatInformants(inst, set), o->level, res.value,
             opt(res.error_bound), opt(res.sample_count), opt(res.seed),
             opt(res.standard_error)});
  });
}

// --- select -----------------------------------------------------------------

SelectionResult RunSelector(const std::string& name, const GameInstance& inst,
                            const SetEvaluator& evaluator) {
  if (name == "esa") return SelectExhaustive(inst, evaluator);
  if (name == "gsa") return SelectGsa(inst, evaluator);
  return SelectGreedyBaseline(inst, evaluator);
}

void RegisterSelect(CLI::App& app) {
  auto* cmd = app.add_subcommand("select", "choose informants to recruit");
  struct Opts {
    BatchFlags batch;
    GenFlags gen;
    EvalFlags eval;
    std::string selector = "all";
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  AddBatchFlags(cmd, o->batch);
  AddGenFlags(cmd, o->gen);
  AddEvalFlags(cmd, o->eval, "--eval-seed");
  cmd->add_option("--selector", o->selector, "esa | gsa | greedy | all")
      ->check(CLI::IsMember({"esa", "gsa", "greedy", "all"}))
      ->capture_default_str();
  cmd->add_option("-o,--out", o->out, "CSV output file (default: standard output)");
  cmd->callback([o] {
    const auto instances = LoadInstances(o->batch, o->gen);
    const std::vector<std::string> selectors =
        o->selector == "all" ? std::vector<std::string>{"esa", "gsa", "greedy"}
                             : std::vector<std::string>{o->selector};
    Output out(o->out);
    CsvWriter csv(out.stream());
    csv.Header({"instance", "selector", "informants", "value", "evaluations", "seconds",
                "error"});
    MeanTable means;
    for (const auto& [label, inst] : instances) {
      for (const auto& name : selectors) {
        const auto start = Clock::now();
        try {
          const auto ctx = MakeLevelZeroContext(inst);
          const auto evaluator = MakeEvaluator(ctx, ToSpec(o->eval));
          const auto sel = RunSelector(name, inst, evaluator);
          const double secs = SecondsSince(start);
          csv.Row({label, name, FormatInformants(inst, sel.chosen), sel.value,
                   sel.evaluations_used, secs, ""});
          means.Add(name, {sel.value, static_cast<double>(sel.evaluations_used), secs});
        } catch (const Error& e) {
          csv.Row({label, name, "", "", "", SecondsSince(start), e.what()});
        }
      }
    }
    for (const auto& row : means.rows()) {
      csv.Row({"mean", row.key, "", row.Mean(0), row.Mean(1), row.Mean(2), ""});
    }
  });
}

// --- levelk / fixedpoint ----------------------------------------------------

struct SetupFlags {
  std::string instance;
  std::string informants;
  std::string x0;
  std::vector<std::string> tips;
  std::string ra, pa, rd, pd;
  double w = 0.0;
  double lambda = 0.0;
};

void AddSetupFlags(CLI::App* cmd, SetupFlags& s) {
  cmd->add_option("--instance", s.instance, "instance file (general multi-attacker map)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--u", s.informants, "recruited informant ids (with --instance)");
  cmd->add_option("--x0", s.x0, "routine patrol, comma separated");
  cmd->add_option("--tips", s.tips, "tip strategy x(V_j); repeat per target or separate rows by ';'");
  cmd->add_option("--w", s.w, "report probability (single-attacker setup)")
      ->capture_default_str();
  cmd->add_option("--ra", s.ra, "attacker rewards");
  cmd->add_option("--pa", s.pa, "attacker penalties");
  cmd->add_option("--rd", s.rd, "defender rewards (default 1)");
  cmd->add_option("--pd", s.pd, "defender penalties (default -1)");
  cmd->add_option("--lambda", s.lambda, "precision (single-attacker setup)")
      ->capture_default_str();
}

// Either the general map on an instance or the single-attacker setup.
struct LevelInput {
  std::optional<GameInstance> instance;
  InformantSet recruited;
  SingleAttackerSetup setup;
  CoverageVector x0;
};

LevelInput BuildLevelInput(const SetupFlags& s) {
  LevelInput in;
  if (!s.instance.empty()) {
    in.instance = ReadInstanceFile(s.instance);
    RequireValid(*in.instance);
    in.recruited = ParseInformants(*in.instance, s.informants);
    in.x0 = s.x0.empty() ? SolveRoutine(*in.instance).x0
                         : CoverageVector(ParseList(s.x0, "--x0"));
    if (static_cast<int>(in.x0.size()) != in.instance->NumTargets()) {
      throw ValidationError("--x0 has the wrong number of entries");
    }
    return in;
  }
  const auto ra = ParseList(s.ra, "--ra");
  const auto pa = ParseList(s.pa, "--pa");
  const std::size_t n = ra.size();
  if (n == 0 || pa.size() != n) throw ValidationError("--ra and --pa must have equal, non-zero length");
  const auto rd = s.rd.empty() ? std::vector<double>(n, 1.0) : ParseList(s.rd, "--rd");
  const auto pd = s.pd.empty() ? std::vector<double>(n, -1.0) : ParseList(s.pd, "--pd");
  if (rd.size() != n || pd.size() != n) throw ValidationError("--rd/--pd length mismatch");
  auto& setup = in.setup;
  for (std::size_t i = 0; i < n; ++i) setup.payoffs.push_back({rd[i], pd[i], ra[i], pa[i]});
  setup.lambda = s.lambda;
  setup.w = s.w;
  setup.routine = CoverageVector(ParseList(s.x0, "--x0"));
  for (const auto& arg : s.tips) {
    for (const auto& row : ParseMatrix(arg, "--tips")) setup.tip_strategies.emplace_back(row);
  }
  in.x0 = setup.routine;
  return in;
}

std::vector<std::string> IndexedColumns(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void RegisterLevelK(CLI::App& app) {
  auto* cmd = app.add_subcommand("levelk", "trace the level-kappa attacker distributions");
  struct Opts {
    SetupFlags setup;
    int max_levels = kDefaultMaxLevels;
    int window = 2;
    int every = 1;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  AddSetupFlags(cmd, o->setup);
  cmd->add_option("--max-levels", o->max_levels, "level cap")->capture_default_str();
  cmd->add_option("--window", o->window, "largest cycle period detected")->capture_default_str();
  cmd->add_option("--every", o->every, "print every n-th level")->capture_default_str();
  cmd->add_option("-o,--out", o->out, "CSV output file (default: standard output)");
  cmd->callback([o] {
    const auto in = BuildLevelInput(o->setup);
    const auto trace = in.instance ? IterateLevels(*in.instance, in.x0, in.recruited,
                                                   o->max_levels, o->window)
                                   : IterateLevels(in.setup, o->max_levels, o->window);
    Output out(o->out);
    CsvWriter csv(out.stream());
    const std::size_t n = in.x0.size();
    auto header = std::vector<std::string>{"level"};
    for (const auto& c : IndexedColumns("q", n)) header.push_back(c);
    for (const auto& c : IndexedColumns("xhat", n)) header.push_back(c);
    header.push_back("step");
    csv.Header(header);
    const int every = std::max(1, o->every);
    const std::size_t last = trace.q_seq.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
      if (k % every != 0 && k != last) continue;
      std::vector<Cell> row{static_cast<long>(k)};
      for (double v : trace.q_seq[k]) row.emplace_back(v);
      for (double v : trace.x_hat_seq[k]) row.emplace_back(v);
      row.emplace_back(k == 0 ? 0.0 : L1Distance(trace.q_seq[k].span(), trace.q_seq[k - 1].span()));
      csv.Row(row);
    }
    if (trace.converged) {
      std::cerr << "converged after " << last << " levels\n";
    } else if (trace.cycle) {
      std::cerr << "cycle of period " << trace.cycle_period << " after " << last << " levels\n";
    } else {
      std::cerr << "no convergence within " << last << " levels (step " << trace.residual
                << ")\n";
      g_status = 2;
    }
  });
}

void RegisterFixedPoint(CLI::App& app) {
  auto* cmd = app.add_subcommand("fixedpoint", "solve for the level-infinity attacker");
  struct Opts {
    SetupFlags setup;
    FixedPointOptions fp;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  AddSetupFlags(cmd, o->setup);
  cmd->add_option("--damping", o->fp.damping, "initial step in (0,1]")->capture_default_str();
  cmd->add_option("--tol", o->fp.tolerance, "residual tolerance")->capture_default_str();
  cmd->add_option("--max-iter", o->fp.max_iterations, "iteration cap")->capture_default_str();
  cmd->add_option("-o,--out", o->out, "CSV output file (default: standard output)");
  cmd->callback([o] {
    const auto in = BuildLevelInput(o->setup);
    const auto res = in.instance ? SolveFixedPoint(*in.instance, in.x0, in.recruited, o->fp)
                                 : SolveFixedPoint(in.setup, o->fp);
    Output out(o->out);
    CsvWriter csv(out.stream());
    auto header = std::vector<std::string>{"iterations", "residual", "damping"};
    for (const auto& c : IndexedColumns("q", res.q.size())) header.push_back(c);
    csv.Header(header);
    std::vector<Cell> row{res.iterations, res.residual, res.damping};
    for (double v : res.q) row.emplace_back(v);
    csv.Row(row);
  });
}

// --- bilevel ----------------------------------------------------------------

struct BilevelFlags {
  BatchFlags batch;
  GenFlags gen;
  std::string ws = "0,0.25,0.5,0.75,1";
  std::string rs;
  double attack_prob = 1.0;
  OuterOptions outer;
  std::string out;
};

GenFlags SingleAttackerDefaults() {
  GenFlags g;
  g.params.num_attackers = 1;
  g.params.num_informants = 6;
  g.params.num_targets = 6;
  g.params.full_graph = true;
  g.fixed_p = 1.0;
  g.has_fixed_p = true;
  return g;
}

void AddBilevelFlags(CLI::App* cmd, BilevelFlags& f) {
  AddBatchFlags(cmd, f.batch);
  AddGenFlags(cmd, f.gen);
  cmd->add_option("--ws", f.ws, "report probabilities to sweep")->capture_default_str();
  cmd->add_option("--rs", f.rs, "resource counts to sweep (default: instance r)");
  cmd->add_option("--p", f.attack_prob, "attack probability of the single attacker")
      ->capture_default_str();
  cmd->add_option("--restarts", f.outer.restarts, "outer restarts")->capture_default_str();
  cmd->add_option("--opt-seed", f.outer.seed, "seed for random restarts")->capture_default_str();
  cmd->add_option("-o,--out", f.out, "CSV output file (default: standard output)");
}

void RunBilevel(const BilevelFlags& f) {
  const auto instances = LoadInstances(f.batch, f.gen);
  const auto ws = ParseList(f.ws, "--ws");
  const auto rs_flag = ParseIntList(f.rs, "--rs");
  Output out(f.out);
  CsvWriter csv(out.stream());
  csv.Header({"instance", "r", "w", "bilevel_value", "level0_value", "improvement",
              "sum_xhat", "outer_iterations", "seconds", "error"});
  MeanTable means;
  for (const auto& [label, base] : instances) {
    const auto rs = rs_flag.empty() ? std::vector<int>{base.resources} : rs_flag;
    for (int r : rs) {
      for (double w : ws) {
        const auto start = Clock::now();
        try {
          GameInstance inst = base;
          inst.resources = r;
          const auto problem = MakeBilevelProblem(inst, w, f.attack_prob);
          const auto sol = OuterOptimize(problem, f.outer);
          const auto pair = EvaluateLevelZeroPair(problem);
          double sum = 0.0;
          for (double v : sol.x_hat) sum += v;
          const double secs = SecondsSince(start);
          csv.Row({label, r, w, sol.def_eu, pair.value, sol.def_eu - pair.value, sum,
                   sol.outer_iterations, secs, ""});
          std::ostringstream key;
          key << r << "," << w;
          means.Add(key.str(), {sol.def_eu, pair.value, sum});
        } catch (const Error& e) {
          csv.Row({label, r, w, "", "", "", "", "", SecondsSince(start), e.what()});
        }
      }
    }
  }
  for (const auto& row : means.rows()) {
    const auto comma = row.key.find(',');
    csv.Row({"mean", row.key.substr(0, comma), row.key.substr(comma + 1), row.Mean(0),
             row.Mean(1), row.Mean(0) - row.Mean(1), row.Mean(2), "", "", ""});
  }
}

void RegisterBilevel(CLI::App& app) {
  auto* cmd = app.add_subcommand("bilevel", "optimal strategy against a level-infinity attacker");
  auto f = std::make_shared<BilevelFlags>();
  f->gen = SingleAttackerDefaults();
  AddBilevelFlags(cmd, *f);
  cmd->callback([f] { RunBilevel(*f); });
}

// --- qri --------------------------------------------------------------------

struct QriFlags {
  BatchFlags batch;
  GenFlags gen;
  std::string rs = "1,2,3,4,5,6";
  std::string ks = "0,1,2,3,4,5,6";
  int segments = kDefaultSegments;
  std::string out;
};

void AddQriFlags(CLI::App* cmd, QriFlags& f) {
  AddBatchFlags(cmd, f.batch);
  AddGenFlags(cmd, f.gen);
  cmd->add_option("--rs", f.rs, "resource counts to sweep")->capture_default_str();
  cmd->add_option("--ks", f.ks, "informant counts to sweep")->capture_default_str();
  cmd->add_option("--K", f.segments, "piecewise-linear segments")->capture_default_str();
  cmd->add_option("-o,--out", f.out, "CSV output file (default: standard output)");
}

void RunQri(const QriFlags& f) {
  const auto instances = LoadInstances(f.batch, f.gen);
  const auto rs = ParseIntList(f.rs, "--rs");
  const auto ks = ParseIntList(f.ks, "--ks");
  Output out(f.out);
  CsvWriter csv(out.stream());
  csv.Header({"instance", "r", "k", "w", "objective", "exact_objective", "seconds", "error"});
  MeanTable means;
  for (const auto& [label, inst] : instances) {
    for (int r : rs) {
      for (int k : ks) {
        const auto start = Clock::now();
        try {
          RequireValid(inst);
          const auto pick = SelectInformantsByW(inst.graph, k);
          const auto sol = SolveQri(inst.targets, inst.lambda, r, pick.w, f.segments);
          const double secs = SecondsSince(start);
          csv.Row({label, r, k, pick.w, sol.objective, sol.exact_objective, secs, ""});
          means.Add(std::to_string(r) + "," + std::to_string(k),
                    {pick.w, sol.objective, sol.exact_objective});
        } catch (const Error& e) {
          csv.Row({label, r, k, "", "", "", SecondsSince(start), e.what()});
        }
      }
    }
  }
  for (const auto& row : means.rows()) {
    const auto comma = row.key.find(',');
    csv.Row({"mean", row.key.substr(0, comma), row.key.substr(comma + 1), row.Mean(0),
             row.Mean(1), row.Mean(2), "", ""});
  }
}

void RegisterQri(CLI::App& app) {
  auto* cmd = app.add_subcommand("qri", "strategies against informant-aware attackers");
  auto f = std::make_shared<QriFlags>();
  f->gen = SingleAttackerDefaults();
  f->gen.params.full_graph = false;
  f->gen.params.max_intensity = 1.0;
  AddQriFlags(cmd, *f);
  cmd->callback([f] { RunQri(*f); });
}

// --- tradeoff ---------------------------------------------------------------

void RegisterTradeoff(CLI::App& app) {
  auto* cmd = app.add_subcommand("tradeoff", "budget split between resources and informants");
  struct Opts {
    std::string instance;
    GenFlags gen;
    std::uint64_t seed = 1;
    EvalFlags eval;
    std::string budgets = "12";
    double cost_resource = 3.0;
    double cost_informant = 1.0;
    bool exhaustive = false;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  o->gen.params.num_informants = 6;
  o->gen.params.num_attackers = 6;
  o->gen.params.num_targets = 6;
  cmd->add_option("--instance", o->instance, "instance file (otherwise generate)")
      ->check(CLI::ExistingFile);
  AddGenFlags(cmd, o->gen);
  cmd->add_option("--seed", o->seed, "generator seed")->capture_default_str();
  AddEvalFlags(cmd, o->eval, "--eval-seed");
  cmd->add_option("--budget", o->budgets, "budgets B, comma separated")->capture_default_str();
  cmd->add_option("--cost-resource", o->cost_resource, "C_r")->capture_default_str();
  cmd->add_option("--cost-informant", o->cost_informant, "C_i")->capture_default_str();
  cmd->add_flag("--exhaustive", o->exhaustive, "select with ESA instead of GSA");
  cmd->add_option("-o,--out", o->out, "CSV output file (default: standard output)");
  cmd->callback([o] {
    GameInstance inst = o->instance.empty() ? GenerateInstance(o->seed, Resolve(o->gen))
                                            : ReadInstanceFile(o->instance);
    Output out(o->out);
    CsvWriter csv(out.stream());
    csv.Header({"budget", "k", "r", "value", "informants", "best"});
    for (double b : ParseList(o->budgets, "--budget")) {
      const auto table = BudgetTradeoff(inst, b, o->cost_resource, o->cost_informant,
                                        ToSpec(o->eval), o->exhaustive);
      for (std::size_t j = 0; j < table.rows.size(); ++j) {
        const auto& row = table.rows[j];
        csv.Row({b, row.informants, row.resources, row.value,
                 FormatInformants(inst, row.chosen), static_cast<int>(j) == table.best ? 1 : 0});
      }
    }
  });
}

// --- experiment -------------------------------------------------------------

void SelectionExperiment(const std::vector<int>& sizes, const BatchFlags& batch,
                         GenFlags gen, std::ostream& os) {
  CsvWriter csv(os);
  csv.Header({"ny", "instance", "method", "seconds", "value", "relative_error", "error"});
  MeanTable means;
  struct Method {
    std::string name;
    std::string selector;
    EvaluatorSpec spec;
  };
  EvaluatorSpec exact, trunc, sampled;
  trunc.method = EvalMethod::kCTruncated;
  trunc.max_reported = 6;
  sampled.method = EvalMethod::kSampled;
  sampled.samples = 100;
  const std::vector<Method> methods{{"esa-exact", "esa", exact},
                                    {"esa-ctrunc", "esa", trunc},
                                    {"esa-sampled", "esa", sampled},
                                    {"gsa", "gsa", exact},
                                    {"greedy", "greedy", exact}};
  for (int ny : sizes) {
    gen.params.num_attackers = ny;
    for (const auto& [label, inst] : LoadInstances(batch, gen)) {
      try {
        const auto ctx = MakeLevelZeroContext(inst);
        const auto truth = MakeEvaluator(ctx, exact);
        double optimum = 0.0;
        for (const auto& m : methods) {
          const auto start = Clock::now();
          const auto sel = RunSelector(m.selector, inst, MakeEvaluator(ctx, m.spec));
          const double secs = SecondsSince(start);
          const double value = truth(sel.chosen);
          if (m.name == "esa-exact") optimum = value;
          const double rel = optimum != 0.0 ? (optimum - value) / std::abs(optimum) : 0.0;
          csv.Row({ny, label, m.name, secs, value, rel, ""});
          means.Add(std::to_string(ny) + "," + m.name, {secs, value, rel});
        }
      } catch (const Error& e) {
        csv.Row({ny, label, "", "", "", "", e.what()});
      }
    }
  }
  for (const auto& row : means.rows()) {
    const auto comma = row.key.find(',');
    csv.Row({row.key.substr(0, comma), "mean", row.key.substr(comma + 1), row.Mean(0),
             row.Mean(1), row.Mean(2), ""});
  }
}

void EvaluationExperiment(const std::vector<int>& sizes, const BatchFlags& batch,
                          GenFlags gen, std::ostream& os) {
  CsvWriter csv(os);
  csv.Header({"ny", "instance", "method", "seconds", "value", "abs_error", "error"});
  MeanTable means;
  for (int ny : sizes) {
    gen.params.num_attackers = ny;
    for (const auto& [label, inst] : LoadInstances(batch, gen)) {
      try {
        const auto ctx = MakeLevelZeroContext(inst);
        std::vector<int> all(inst.graph.NumInformants());
        std::iota(all.begin(), all.end(), 0);
        const InformantSet set(all);
        auto run = [&](const std::string& name, auto fn, double truth) {
          const auto start = Clock::now();
          const double v = fn();
          const double secs = SecondsSince(start);
          const double err = std::isnan(truth) ? 0.0 : std::abs(v - truth);
          csv.Row({ny, label, name, secs, v, err, ""});
          means.Add(std::to_string(ny) + "," + name, {secs, err});
          return v;
        };
        const double exact = run("exact", [&] { return EvalExact(ctx, set).value; },
                                 std::numeric_limits<double>::quiet_NaN());
        run("ctrunc", [&] { return EvalTruncated(ctx, set, 6).value; }, exact);
        run("sampled", [&] { return EvalSampled(ctx, set, 100, 1).value; }, exact);
      } catch (const Error& e) {
        csv.Row({ny, label, "", "", "", "", e.what()});
      }
    }
  }
  for (const auto& row : means.rows()) {
    const auto comma = row.key.find(',');
    csv.Row({row.key.substr(0, comma), "mean", row.key.substr(comma + 1), row.Mean(0), "",
             row.Mean(1), ""});
  }
}

void RegisterExperiment(CLI::App& app) {
  auto* cmd = app.add_subcommand("experiment", "batch experiments emitting CSV tables");
  struct Opts {
    std::string name = "selection";
    BatchFlags batch;
    GenFlags gen;
    std::string sizes = "2,4,6,8";
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  o->gen.params.num_informants = 6;
  o->gen.params.recruit_budget = 4;
  o->gen.params.num_targets = 8;
  o->gen.params.resources = 3;
  cmd->add_option("--name", o->name, "selection | evaluation | qri | bilevel")
      ->check(CLI::IsMember({"selection", "evaluation", "qri", "bilevel"}))
      ->capture_default_str();
  AddBatchFlags(cmd, o->batch);
  AddGenFlags(cmd, o->gen);
  cmd->add_option("--sizes", o->sizes, "attacker counts |Y| to sweep (selection, evaluation)")
      ->capture_default_str();
  cmd->add_option("-o,--out", o->out, "CSV output file (default: standard output)");
  cmd->callback([o] {
    if (o->name == "qri") {
      QriFlags f;
      f.batch = o->batch;
      f.gen = SingleAttackerDefaults();
      f.gen.params.full_graph = false;
      f.gen.params.max_intensity = 1.0;
      f.out = o->out;
      RunQri(f);
      return;
    }
    if (o->name == "bilevel") {
      BilevelFlags f;
      f.batch = o->batch;
      f.gen = SingleAttackerDefaults();
      f.rs = "1,2,3,4,5,6";
      f.out = o->out;
      RunBilevel(f);
      return;
    }
    Output out(o->out);
    const auto sizes = ParseIntList(o->sizes, "--sizes");
    if (o->name == "selection") {
      SelectionExperiment(sizes, o->batch, o->gen, out.stream());
    } else {
      EvaluationExperiment(sizes, o->batch, o->gen, out.stream());
    }
  });
}

}  // namespace

void RegisterCommands(CLI::App& app) {
  RegisterGen(app);
  RegisterEval(app);
  RegisterSelect(app);
  RegisterLevelK(app);
  RegisterFixedPoint(app);
  RegisterBilevel(app);
  RegisterQri(app);
  RegisterTradeoff(app);
  RegisterExperiment(app);
}

int CommandStatus() { return g_status; }

}  // namespace gsg::cli
