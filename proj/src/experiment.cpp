#include "syndromest/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "syndromest/errors.hpp"
#include "syndromest/fisher.hpp"
#include "syndromest/io.hpp"

namespace syndromest {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTrialTag = 0x545249414cULL;
constexpr std::uint64_t kPerfectTag = 0x50455246ULL;
constexpr std::uint64_t kCrbTag = 0x435242ULL;

// Per-trial stream purposes.
enum StreamPurpose : std::uint64_t {
  kInitStream = 1,
  kDataStream = 2,
  kLerInitStream = 3,
  kLerEmStream = 4,
  kLerHemStream = 5,
  kTruthStream = 6,
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> flatten(const RateSet& r) {
  std::vector<double> v;
  v.reserve(r.num_parameters());
  for (const QubitRates& q : r.qubit) {
    v.push_back(q.x);
    v.push_back(q.y);
    v.push_back(q.z);
  }
  for (double f : r.flip) v.push_back(f);
  return v;
}

struct TrialOutput {
  std::vector<TrialRecord> records;  // one per estimator
  // mse_trace rows: estimator, iteration, parameter index, estimate, sq_error
  struct TraceRow {
    std::string estimator;
    int iteration;
    std::size_t param;
    double estimate;
    double truth;
    double sq_error;
  };
  std::vector<TraceRow> trace;
  struct IterRow {
    std::string estimator;
    int iteration;
    double loglik;
    double wall_s;
  };
  std::vector<IterRow> iters;
};

}  // namespace

void ExperimentConfig::validate() const {
  if (!seed) throw ConfigError("a master seed is required");
  if (levels < 1) throw ConfigError("levels must be >= 1");
  if (!(p > 0.0 && 3.0 * p < 1.0)) throw ConfigError("p must satisfy 0 < 3p < 1");
  if (p_m && !(*p_m > 0.0 && *p_m < 1.0)) throw ConfigError("p_m must lie in (0, 1)");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (beta && !(*beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  if (n_est < 1) throw ConfigError("n_est must be positive");
  if (n_iter < 1) throw ConfigError("n_iter must be positive");
  if (n_trials < 1) throw ConfigError("n_trials must be positive");
  if (n_decode_trials < 1) throw ConfigError("n_decode_trials must be positive");
  if (estimator != "em" && estimator != "hem" && estimator != "both")
    throw ConfigError("estimator must be em, hem, or both");
  if (out_dir.empty()) throw ConfigError("output directory must not be empty");
}

std::string ExperimentConfig::canonical_json() const {
  json j;
  j["code"] = code;
  j["levels"] = levels;
  j["p"] = p;
  if (p_m) j["p_m"] = *p_m;
  j["alpha"] = alpha;
  if (beta) j["beta"] = *beta;
  j["n_est"] = n_est;
  j["n_iter"] = n_iter;
  j["tol"] = tol;
  j["estimator"] = estimator;
  j["n_trials"] = n_trials;
  j["n_decode_trials"] = n_decode_trials;
  j["seed"] = seed ? *seed : 0;
  j["fixed_init_random_truth"] = fixed_init_random_truth;
  j["dirichlet_literal_exponent"] = dirichlet_literal_exponent;
  j["crb_mc_samples"] = crb_mc_samples;
  return j.dump();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical_json()); }

ExperimentConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  ExperimentConfig c;
  if (j.contains("code")) c.code = j.at("code").get<std::string>();
  if (j.contains("levels")) c.levels = j.at("levels").get<int>();
  if (j.contains("p")) c.p = j.at("p").get<double>();
  if (j.contains("p_m")) c.p_m = j.at("p_m").get<double>();
  if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
  if (j.contains("beta")) c.beta = j.at("beta").get<double>();
  if (j.contains("n_est")) c.n_est = j.at("n_est").get<std::size_t>();
  if (j.contains("n_iter")) c.n_iter = j.at("n_iter").get<int>();
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  if (j.contains("estimator")) c.estimator = j.at("estimator").get<std::string>();
  if (j.contains("n_trials")) c.n_trials = j.at("n_trials").get<std::size_t>();
  if (j.contains("n_decode_trials")) c.n_decode_trials = j.at("n_decode_trials").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("fixed_init_random_truth"))
    c.fixed_init_random_truth = j.at("fixed_init_random_truth").get<bool>();
  if (j.contains("dirichlet_literal_exponent"))
    c.dirichlet_literal_exponent = j.at("dirichlet_literal_exponent").get<bool>();
  if (j.contains("crb_mc_samples")) c.crb_mc_samples = j.at("crb_mc_samples").get<std::uint64_t>();
  return c;
}

namespace {

struct ExperimentContext {
  ExperimentConfig config;
  ConcatTree tree;
  RateSet base_truth;
};

ExperimentContext make_context(const ExperimentConfig& config) {
  config.validate();
  ConcatTree tree(code_from_name(config.code), config.levels);
  RateSet truth = uniform_rates(tree, config.p, config.p_m);
  return ExperimentContext{config, std::move(tree), std::move(truth)};
}

RateSet draw_dirichlet_rates(const ExperimentContext& ctx, std::uint64_t stream_seed) {
  const ExperimentConfig& c = ctx.config;
  Rng rng(stream_seed);
  RateSet r;
  r.qubit = sample_dirichlet_init(c.alpha, c.p, ctx.tree.num_leaves(), rng,
                                  c.dirichlet_literal_exponent);
  if (c.p_m)
    r.flip = sample_dirichlet_flip_init(c.alpha, *c.p_m, ctx.tree.num_syndrome_bits(), rng,
                                        c.dirichlet_literal_exponent);
  return r;
}

// One trial: draw init and data, run the configured estimators, evaluate the
// decoder with initial and final rates.
TrialOutput run_trial(const ExperimentContext& ctx, std::size_t trial) {
  const ExperimentConfig& c = ctx.config;
  const std::uint64_t trial_seed = derive_seed(*c.seed, kTrialTag, trial);

  RateSet truth = ctx.base_truth;
  RateSet init;
  if (c.fixed_init_random_truth) {
    init = ctx.base_truth;
    truth = draw_dirichlet_rates(ctx, derive_seed(trial_seed, kTruthStream));
  } else {
    init = draw_dirichlet_rates(ctx, derive_seed(trial_seed, kInitStream));
  }
  const std::vector<double> truth_flat = flatten(truth);

  const SyndromeDataset data = sample_dataset(ctx.tree, truth_from_rates(truth), c.n_est,
                                              derive_seed(trial_seed, kDataStream));

  TrialOutput out;
  std::vector<std::string> estimators;
  if (c.estimator == "both") {
    estimators = {"em", "hem"};
  } else {
    estimators = {c.estimator};
  }

  // Initial-rates decoder, shared by every estimator row of this trial.
  double ler_init = std::numeric_limits<double>::quiet_NaN();
  {
    const FactorGraph g = build_factor_graph(ctx.tree, init.qubit, init.flip);
    ler_init = logical_error_rate(g, truth_from_rates(truth), c.n_decode_trials,
                                  derive_seed(trial_seed, kLerInitStream))
                   .rate;
  }

  for (const std::string& name : estimators) {
    TrialRecord rec;
    rec.trial = trial;
    rec.estimator = name;
    rec.ler_init = ler_init;

    EmOptions opts;
    opts.n_iter = c.n_iter;
    opts.tol = c.tol;
    opts.hard = name == "hem";
    if (c.beta && !opts.hard) {
      RegularizerConfig reg;
      reg.beta = *c.beta;
      reg.reference = init;
      opts.regularizer = reg;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
      const EstimationRun run = run_em(ctx.tree, init, data, opts);
      rec.iterations = int(run.iterations.size());
      rec.converged_at = run.converged_at;

      for (const EmIteration& it : run.iterations) {
        out.iters.push_back({name, it.iter, it.loglik, it.wall_seconds});
        const std::vector<double> est = flatten(it.rates);
        for (std::size_t pidx = 0; pidx < est.size(); ++pidx) {
          const double d = est[pidx] - truth_flat[pidx];
          out.trace.push_back({name, it.iter, pidx, est[pidx], truth_flat[pidx], d * d});
        }
      }
      const std::vector<double> final_flat = flatten(run.final_rates);
      double mse = 0.0;
      for (std::size_t pidx = 0; pidx < final_flat.size(); ++pidx) {
        const double d = final_flat[pidx] - truth_flat[pidx];
        mse += d * d;
        out.trace.push_back(
            {name, int(run.iterations.size()), pidx, final_flat[pidx], truth_flat[pidx], d * d});
      }
      rec.mse_mean = mse / double(final_flat.size());

      const FactorGraph g =
          build_factor_graph(ctx.tree, run.final_rates.qubit, run.final_rates.flip);
      rec.ler_est = logical_error_rate(
                        g, truth_from_rates(truth), c.n_decode_trials,
                        derive_seed(trial_seed, name == "hem" ? kLerHemStream : kLerEmStream))
                        .rate;
    } catch (const ZeroSupportError&) {
      rec.status = "zero_support";
      rec.ler_est = std::numeric_limits<double>::quiet_NaN();
      rec.mse_mean = std::numeric_limits<double>::quiet_NaN();
    }
    rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.records.push_back(std::move(rec));
  }
  return out;
}

void write_csv_header(std::ofstream& f, const std::string& schema, const ExperimentConfig& c) {
  f << "# schema=" << schema << "\n";
  f << "# config_hash=" << hex64(c.hash()) << " seed=" << *c.seed << "\n";
}

}  // namespace

TrialSummary run_experiment(const ExperimentConfig& config) {
  ExperimentContext ctx = make_context(config);
  const ExperimentConfig& c = ctx.config;
  std::filesystem::create_directories(c.out_dir);

  std::vector<TrialOutput> outputs(c.n_trials);
  for_each_index(Exec::Parallel, std::int64_t(c.n_trials),
                 [&](std::int64_t t) { outputs[std::size_t(t)] = run_trial(ctx, std::size_t(t)); });

  TrialSummary summary;
  if (!c.fixed_init_random_truth) {
    const FactorGraph g = build_factor_graph(ctx.tree, ctx.base_truth.qubit, ctx.base_truth.flip);
    summary.perfect = logical_error_rate(g, truth_from_rates(ctx.base_truth), c.n_decode_trials,
                                         derive_seed(*c.seed, kPerfectTag), Exec::Parallel);
  }

  // Persist everything ordered by trial index.
  write_file(c.out_dir + "/config.json", [&] {
    json j = json::parse(c.canonical_json());
    j["schema"] = "syndromest.config.v1";
    j["config_hash"] = hex64(c.hash());
    j["out_dir"] = c.out_dir;
    return j.dump(2);
  }());

  std::ofstream trials(c.out_dir + "/trials.csv");
  write_csv_header(trials, "syndromest.trials.v1", c);
  trials << "trial,estimator,status,iterations,converged_at,ler_init,ler_est,mse_mean,wall_s\n";
  std::ofstream iters(c.out_dir + "/iterations.csv");
  write_csv_header(iters, "syndromest.iterations.v1", c);
  iters << "trial,estimator,iteration,loglik,wall_s\n";
  std::ofstream trace(c.out_dir + "/mse_trace.csv");
  write_csv_header(trace, "syndromest.mse_trace.v1", c);
  trace << "trial,estimator,iteration,parameter,estimate,truth,sq_error\n";

  const FactorGraph graph_names = build_factor_graph(ctx.tree, ctx.base_truth.qubit, ctx.base_truth.flip);
  const std::vector<std::string> names = parameter_names(graph_names);

  std::map<std::string, std::vector<double>> ler_values;
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    for (const TrialRecord& r : outputs[t].records) {
      trials << r.trial << ',' << r.estimator << ',' << r.status << ',' << r.iterations << ','
             << r.converged_at << ',' << r.ler_init << ',' << r.ler_est << ',' << r.mse_mean << ','
             << r.wall_s << "\n";
      if (r.status == "ok") ler_values[r.estimator].push_back(r.ler_est);
      summary.trials.push_back(r);
    }
    for (const auto& row : outputs[t].iters)
      iters << t << ',' << row.estimator << ',' << row.iteration << ',' << row.loglik << ','
            << row.wall_s << "\n";
    for (const auto& row : outputs[t].trace)
      trace << t << ',' << row.estimator << ',' << row.iteration << ',' << names[row.param] << ','
            << row.estimate << ',' << row.truth << ',' << row.sq_error << "\n";
  }

  json js;
  js["schema"] = "syndromest.summary.v1";
  js["config_hash"] = hex64(c.hash());
  js["seed"] = *c.seed;
  if (!c.fixed_init_random_truth) {
    js["perfect_knowledge"] = {{"rate", summary.perfect.rate},
                               {"lo", summary.perfect.lo},
                               {"hi", summary.perfect.hi},
                               {"trials", summary.perfect.trials}};
  }
  for (auto& [name, values] : ler_values) {
    const BoxStats box = box_stats(values);
    summary.ler_boxes[name] = box;
    js["ler_" + name] = {{"q1", box.q1},
                         {"median", box.median},
                         {"q3", box.q3},
                         {"whisker_lo", box.whisker_lo},
                         {"whisker_hi", box.whisker_hi},
                         {"outliers", box.outliers}};
  }
  write_file(c.out_dir + "/summary.json", js.dump(2));
  return summary;
}

std::vector<MseCrbRow> mse_vs_crb(const ExperimentConfig& config) {
  ExperimentContext ctx = make_context(config);
  const ExperimentConfig& c = ctx.config;
  std::filesystem::create_directories(c.out_dir);

  std::vector<std::string> estimators;
  if (c.estimator == "both") {
    estimators = {"em", "hem"};
  } else {
    estimators = {c.estimator};
  }

  // Final estimates per estimator per trial.
  const std::vector<double> truth_flat = flatten(ctx.base_truth);
  std::map<std::string, std::vector<std::vector<double>>> finals;
  for (const auto& name : estimators) finals[name].resize(c.n_trials);
  std::vector<char> ok(c.n_trials, 1);

  for_each_index(Exec::Parallel, std::int64_t(c.n_trials), [&](std::int64_t ti) {
    const std::size_t t = std::size_t(ti);
    const std::uint64_t trial_seed = derive_seed(*c.seed, kTrialTag, t);
    const RateSet init = draw_dirichlet_rates(ctx, derive_seed(trial_seed, kInitStream));
    const SyndromeDataset data = sample_dataset(ctx.tree, truth_from_rates(ctx.base_truth),
                                                c.n_est, derive_seed(trial_seed, kDataStream));
    try {
      for (const std::string& name : estimators) {
        EmOptions opts;
        opts.n_iter = c.n_iter;
        opts.tol = c.tol;
        opts.hard = name == "hem";
        if (c.beta && !opts.hard) {
          RegularizerConfig reg;
          reg.beta = *c.beta;
          reg.reference = init;
          opts.regularizer = reg;
        }
        const EstimationRun run = run_em(ctx.tree, init, data, opts);
        finals[name][t] = flatten(run.final_rates);
      }
    } catch (const ZeroSupportError&) {
      ok[t] = 0;
    }
  });

  // CRB at the true rates: exact when the syndrome space is enumerable.
  const FactorGraph truth_graph =
      build_factor_graph(ctx.tree, ctx.base_truth.qubit, ctx.base_truth.flip);
  const FisherMatrix fisher =
      ctx.tree.num_syndrome_bits() <= 20
          ? fisher_exact(truth_graph, Exec::Parallel)
          : fisher_mc(truth_graph, c.crb_mc_samples, derive_seed(*c.seed, kCrbTag), Exec::Parallel);
  const CrbReport bound = crb(fisher, c.n_est);
  const std::vector<std::string> names = parameter_names(truth_graph);

  std::vector<MseCrbRow> rows;
  for (const std::string& name : estimators) {
    for (std::size_t pidx = 0; pidx < truth_flat.size(); ++pidx) {
      double sum = 0.0, sum_sq = 0.0;
      std::size_t kept = 0;
      for (std::size_t t = 0; t < c.n_trials; ++t) {
        if (!ok[t]) continue;
        const double err = finals[name][t][pidx] - truth_flat[pidx];
        sum += err;
        sum_sq += err * err;
        ++kept;
      }
      if (kept == 0) continue;
      MseCrbRow row;
      row.estimator = name;
      row.level = c.levels;
      row.n_est = c.n_est;
      row.parameter = names[pidx];
      row.mse = sum_sq / double(kept);
      row.bias2 = (sum / double(kept)) * (sum / double(kept));
      row.variance = row.mse - row.bias2;
      row.crb = bound.bounds[pidx];
      rows.push_back(std::move(row));
    }
  }

  std::ofstream out(c.out_dir + "/mse_vs_crb.csv");
  write_csv_header(out, "syndromest.mse_vs_crb.v1", c);
  out << "estimator,level,n_est,parameter,mse,crb,bias2,variance\n";
  for (const MseCrbRow& r : rows)
    out << r.estimator << ',' << r.level << ',' << r.n_est << ',' << r.parameter << ',' << r.mse
        << ',' << r.crb << ',' << r.bias2 << ',' << r.variance << "\n";
  return rows;
}

std::vector<SummaryRow> emit_summary(const std::string& results_dir) {
  std::ifstream in(results_dir + "/trials.csv");
  if (!in) throw ConfigError("no trials.csv in " + results_dir);

  std::map<std::pair<std::string, std::string>, std::vector<double>> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("trial,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 9 || fields[2] != "ok") continue;
    const std::string& estimator = fields[1];
    const auto push = [&](const std::string& metric, const std::string& text) {
      const double v = std::stod(text);
      if (std::isfinite(v)) values[{estimator, metric}].push_back(v);
    };
    push("ler_init", fields[5]);
    push("ler_est", fields[6]);
    push("mse_mean", fields[7]);
  }
  if (values.empty()) throw ConfigError("trials.csv holds no usable rows");

  std::vector<SummaryRow> rows;
  std::ofstream out(results_dir + "/boxes.csv");
  out << "# schema=syndromest.boxes.v1\n";
  out << "estimator,metric,count,q1,median,q3,whisker_lo,whisker_hi,outliers\n";
  for (auto& [key, vals] : values) {
    SummaryRow row;
    row.estimator = key.first;
    row.metric = key.second;
    row.count = vals.size();
    row.box = box_stats(vals);
    out << row.estimator << ',' << row.metric << ',' << row.count << ',' << row.box.q1 << ','
        << row.box.median << ',' << row.box.q3 << ',' << row.box.whisker_lo << ','
        << row.box.whisker_hi << ',';
    for (std::size_t i = 0; i < row.box.outliers.size(); ++i) {
      if (i) out << ';';
      out << row.box.outliers[i];
    }
    out << "\n";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace syndromest
