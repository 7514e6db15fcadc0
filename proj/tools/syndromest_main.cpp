// syndromest command line: seeded experiment pipelines over the library.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syndromest/closedform.hpp"
#include "syndromest/errors.hpp"
#include "syndromest/experiment.hpp"
#include "syndromest/fisher.hpp"
#include "syndromest/identify.hpp"
#include "syndromest/io.hpp"

using nlohmann::json;
using namespace syndromest;

namespace {

json report_to_json(const JacobianReport& rep, bool include_matrix) {
  json j;
  j["rows"] = rep.rows;
  j["cols"] = rep.cols;
  j["numerical_rank"] = rep.numerical_rank;
  j["tolerance"] = rep.tolerance;
  j["gap"] = rep.gap;
  j["locally_identifiable"] = rep.locally_identifiable;
  j["singular_values"] = rep.singular_values;
  j["parameters"] = rep.col_labels;
  if (include_matrix) {
    json rows = json::array();
    for (std::size_t r = 0; r < rep.rows; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < rep.cols; ++c) row.push_back(rep.at(r, c));
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
  }
  return j;
}

void write_estimation_run(const std::string& out_dir, const EstimationRun& run,
                          const std::vector<std::string>& names, const json& meta) {
  std::filesystem::create_directories(out_dir);
  json j = meta;
  j["schema"] = "syndromest.run.v1";
  j["converged"] = run.converged;
  j["converged_at"] = run.converged_at;
  json iters = json::array();
  for (const EmIteration& it : run.iterations) {
    json ji;
    ji["iteration"] = it.iter;
    ji["loglik"] = it.loglik;
    ji["wall_s"] = it.wall_seconds;
    json rates = json::object();
    std::size_t c = 0;
    for (const QubitRates& q : it.rates.qubit) {
      rates[names[c]] = q.x;
      rates[names[c + 1]] = q.y;
      rates[names[c + 2]] = q.z;
      c += 3;
    }
    for (double f : it.rates.flip) rates[names[c++]] = f;
    ji["rates"] = std::move(rates);
    iters.push_back(std::move(ji));
  }
  j["iterations"] = std::move(iters);
  json final_rates = json::object();
  std::size_t c = 0;
  for (const QubitRates& q : run.final_rates.qubit) {
    final_rates[names[c]] = q.x;
    final_rates[names[c + 1]] = q.y;
    final_rates[names[c + 2]] = q.z;
    c += 3;
  }
  for (double f : run.final_rates.flip) final_rates[names[c++]] = f;
  j["final_rates"] = std::move(final_rates);
  write_file(out_dir + "/run.json", j.dump(2));

  std::ofstream csv(out_dir + "/iterations.csv");
  csv << "# schema=syndromest.run_iterations.v1\n";
  csv << "iteration,loglik,wall_s\n";
  for (const EmIteration& it : run.iterations)
    csv << it.iter << ',' << it.loglik << ',' << it.wall_seconds << "\n";
}

int dispatch(CLI::App& app, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise estimation for stabilizer codes from syndrome statistics"};
  app.require_subcommand(1);
  try {
    return dispatch(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

namespace {

int dispatch(CLI::App& app, int argc, char** argv) {
  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "Sample a syndrome dataset");
  struct {
    std::string code = "five_qubit";
    int levels = 1;
    double p = 0.13;
    double pm = -1.0;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    std::string out = "dataset.json";
  } sim;
  simulate->add_option("--code", sim.code, "five_qubit | steane | repetition:<n> | file.json");
  simulate->add_option("--levels", sim.levels, "concatenation levels");
  simulate->add_option("--p", sim.p, "depolarizing rate per qubit");
  simulate->add_option("--pm", sim.pm, "syndrome-bit flip rate (enables measurement noise)");
  simulate->add_option("--n", sim.n, "number of syndromes");
  simulate->add_option("--seed", sim.seed, "master seed")->required();
  simulate->add_option("--out", sim.out, "output dataset file");

  // ---- estimate ----
  auto* estimate = app.add_subcommand("estimate", "Run EM or HEM on a dataset");
  struct {
    std::string data;
    std::string code = "five_qubit";
    int levels = 1;
    double p = 0.13;
    double pm = -1.0;
    std::size_t n_est = 1000;
    double alpha = 20.0;
    double beta = -1.0;
    std::string estimator = "em";
    int n_iter = 30;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    std::string out = "run";
  } est;
  estimate->add_option("--data", est.data, "dataset file from `simulate` (overrides code/p flags)");
  estimate->add_option("--code", est.code, "code name when sampling in place");
  estimate->add_option("--levels", est.levels, "concatenation levels");
  estimate->add_option("--p", est.p, "true depolarizing rate");
  estimate->add_option("--pm", est.pm, "true flip rate (enables measurement noise)");
  estimate->add_option("--n-est", est.n_est, "dataset size when sampling in place");
  estimate->add_option("--alpha", est.alpha, "Dirichlet initialization concentration");
  estimate->add_option("--beta", est.beta, "regularization strength (EM only)");
  estimate->add_option("--estimator", est.estimator, "em | hem");
  estimate->add_option("--n-iter", est.n_iter, "iteration cap");
  estimate->add_option("--tol", est.tol, "convergence tolerance on max |dtheta|");
  estimate->add_option("--seed", est.seed, "master seed")->required();
  estimate->add_option("--out", est.out, "output directory");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "Seeded multi-trial experiment (plus MSE/CRB table)");
  struct {
    std::string config_file;
    ExperimentConfig cfg;
    std::uint64_t seed = 0;
    double pm = -1.0, beta = -1.0;
    bool with_mse_crb = false;
  } sw;
  sweep->add_option("--config", sw.config_file, "config JSON file (flags override it)");
  auto* sw_code = sweep->add_option("--code", sw.cfg.code);
  auto* sw_levels = sweep->add_option("--levels", sw.cfg.levels);
  auto* sw_p = sweep->add_option("--p", sw.cfg.p);
  auto* sw_pm = sweep->add_option("--pm", sw.pm);
  auto* sw_alpha = sweep->add_option("--alpha", sw.cfg.alpha);
  auto* sw_beta = sweep->add_option("--beta", sw.beta);
  auto* sw_nest = sweep->add_option("--n-est", sw.cfg.n_est);
  auto* sw_niter = sweep->add_option("--n-iter", sw.cfg.n_iter);
  auto* sw_estimator = sweep->add_option("--estimator", sw.cfg.estimator, "em | hem | both");
  auto* sw_ntrials = sweep->add_option("--n-trials", sw.cfg.n_trials);
  auto* sw_ndecode = sweep->add_option("--n-decode-trials", sw.cfg.n_decode_trials);
  auto* sw_seed = sweep->add_option("--seed", sw.seed);
  auto* sw_out = sweep->add_option("--out", sw.cfg.out_dir);
  auto* sw_variant = sweep->add_flag("--fixed-init-random-truth", sw.cfg.fixed_init_random_truth);
  sweep->add_flag("--mse-crb", sw.with_mse_crb, "also write mse_vs_crb.csv");

  // ---- crb ----
  auto* crbcmd = app.add_subcommand("crb", "Fisher information and Cramer-Rao bounds");
  struct {
    std::string code = "five_qubit";
    int levels = 1;
    double p = 0.13;
    double pm = -1.0;
    std::size_t m = 1000;
    std::uint64_t samples = 1000000;
    bool force_mc = false;
    std::uint64_t seed = 0;
    std::string out = "crb";
  } cr;
  crbcmd->add_option("--code", cr.code);
  crbcmd->add_option("--levels", cr.levels);
  crbcmd->add_option("--p", cr.p);
  crbcmd->add_option("--pm", cr.pm);
  crbcmd->add_option("--m", cr.m, "syndrome count entering the bound");
  crbcmd->add_option("--samples", cr.samples, "Monte-Carlo sample count");
  crbcmd->add_flag("--mc", cr.force_mc, "force Monte-Carlo even when exact is feasible");
  crbcmd->add_option("--seed", cr.seed, "master seed")->required();
  crbcmd->add_option("--out", cr.out, "output directory");

  // ---- identify ----
  auto* identify = app.add_subcommand("identify", "Identifiability rank reports");
  struct {
    std::string code = "five_qubit";
    double p = 0.13;
    bool xonly = false;
    std::string model_file;
    bool with_matrix = false;
    std::string out = "identify.json";
  } id;
  identify->add_option("--code", id.code);
  identify->add_option("--p", id.p, "equal rate used for the depolarizing/X-only model");
  identify->add_flag("--xonly", id.xonly, "independent X errors instead of depolarizing");
  identify->add_option("--model", id.model_file, "explicit decomposable model JSON");
  identify->add_flag("--matrix", id.with_matrix, "embed the full matrices in the report");
  identify->add_option("--out", id.out, "output JSON file");

  // ---- weights ----
  auto* weights = app.add_subcommand("weights", "Perfect-code weight distribution recursion");
  struct {
    std::string code = "five_qubit";
    std::size_t qhat = 1;
    std::string sstar = "1000";
    std::string out = "weights.json";
  } wt;
  weights->add_option("--code", wt.code);
  weights->add_option("--qhat", wt.qhat, "distinguished qubit (1-based)");
  weights->add_option("--sstar", wt.sstar, "target syndrome bits, e.g. 1000");
  weights->add_option("--out", wt.out, "output JSON file");

  // ---- closedform ----
  auto* closed = app.add_subcommand("closedform", "Correlation-based closed-form estimators");
  struct {
    std::string code = "repetition:3";
    std::vector<double> rates;
    std::string model_file;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string out = "closedform.json";
  } cf;
  closed->add_option("--code", cf.code);
  closed->add_option("--rates", cf.rates, "X-error rate per qubit")->delimiter(',');
  closed->add_option("--model", cf.model_file, "explicit decomposable model JSON");
  closed->add_option("--samples", cf.samples, "estimate moments from samples instead of exactly");
  closed->add_option("--seed", cf.seed, "seed for sampled moments");
  closed->add_option("--out", cf.out, "output JSON file");

  // ---- summary ----
  auto* summary = app.add_subcommand("summary", "Box-plot quartiles over a results directory");
  struct {
    std::string dir = "results";
  } su;
  summary->add_option("--dir", su.dir, "results directory with trials.csv");

  app.parse(argc, argv);

  if (simulate->parsed()) {
    ConcatTree tree(code_from_name(sim.code), sim.levels);
    RateSet truth = uniform_rates(tree, sim.p, sim.pm >= 0 ? std::optional<double>(sim.pm)
                                                           : std::nullopt);
    const SyndromeDataset ds =
        sample_dataset(tree, truth_from_rates(truth), sim.n, sim.seed, Exec::Parallel);
    DatasetFile file;
    file.code = sim.code;
    file.levels = sim.levels;
    file.p = sim.p;
    if (sim.pm >= 0) file.p_m = sim.pm;
    file.seed = sim.seed;
    file.syndromes = ds.syndromes;
    write_file(sim.out, dataset_to_json(file));
    std::cout << "wrote " << sim.out << " (" << ds.syndromes.size() << " syndromes)\n";
    return 0;
  }

  if (estimate->parsed()) {
    std::string code_name = est.code;
    int levels = est.levels;
    double p = est.p;
    std::optional<double> pm = est.pm >= 0 ? std::optional<double>(est.pm) : std::nullopt;
    std::vector<Syndrome> syndromes;
    if (!est.data.empty()) {
      const DatasetFile ds = dataset_from_json(read_file(est.data));
      code_name = ds.code;
      levels = ds.levels;
      p = ds.p;
      pm = ds.p_m;
      syndromes = ds.syndromes;
    }
    ConcatTree tree(code_from_name(code_name), levels);
    if (syndromes.empty()) {
      RateSet truth = uniform_rates(tree, p, pm);
      syndromes = sample_dataset(tree, truth_from_rates(truth), est.n_est,
                                 derive_seed(est.seed, 2), Exec::Parallel)
                      .syndromes;
    }

    Rng init_rng(derive_seed(est.seed, 1));
    RateSet init;
    init.qubit = sample_dirichlet_init(est.alpha, p, tree.num_leaves(), init_rng);
    if (pm) init.flip = sample_dirichlet_flip_init(est.alpha, *pm, tree.num_syndrome_bits(), init_rng);

    EmOptions opts;
    opts.n_iter = est.n_iter;
    opts.tol = est.tol;
    opts.hard = est.estimator == "hem";
    opts.exec = Exec::Parallel;
    if (est.beta >= 0 && !opts.hard) {
      RegularizerConfig reg;
      reg.beta = est.beta;
      reg.reference = init;
      opts.regularizer = reg;
    }
    SyndromeDataset data;
    data.syndromes = std::move(syndromes);
    const EstimationRun run = run_em(tree, init, data, opts);

    const FactorGraph g = build_factor_graph(tree, init.qubit, init.flip);
    json meta;
    meta["seed"] = est.seed;
    meta["estimator"] = est.estimator;
    meta["alpha"] = est.alpha;
    if (est.beta >= 0) meta["beta"] = est.beta;
    meta["n_syndromes"] = data.syndromes.size();
    write_estimation_run(est.out, run, parameter_names(g), meta);
    std::cout << "wrote " << est.out << "/run.json (" << run.iterations.size() << " iterations, "
              << (run.converged ? "converged" : "iteration cap reached") << ")\n";
    return 0;
  }

  if (sweep->parsed()) {
    ExperimentConfig cfg;
    if (!sw.config_file.empty()) cfg = config_from_json(read_file(sw.config_file));
    if (sw_code->count()) cfg.code = sw.cfg.code;
    if (sw_levels->count()) cfg.levels = sw.cfg.levels;
    if (sw_p->count()) cfg.p = sw.cfg.p;
    if (sw_pm->count()) cfg.p_m = sw.pm;
    if (sw_alpha->count()) cfg.alpha = sw.cfg.alpha;
    if (sw_beta->count()) cfg.beta = sw.beta;
    if (sw_nest->count()) cfg.n_est = sw.cfg.n_est;
    if (sw_niter->count()) cfg.n_iter = sw.cfg.n_iter;
    if (sw_estimator->count()) cfg.estimator = sw.cfg.estimator;
    if (sw_ntrials->count()) cfg.n_trials = sw.cfg.n_trials;
    if (sw_ndecode->count()) cfg.n_decode_trials = sw.cfg.n_decode_trials;
    if (sw_seed->count()) cfg.seed = sw.seed;
    if (sw_out->count()) cfg.out_dir = sw.cfg.out_dir;
    if (sw_variant->count()) cfg.fixed_init_random_truth = true;

    const TrialSummary summary = run_experiment(cfg);
    if (sw.with_mse_crb) mse_vs_crb(cfg);
    std::cout << "wrote " << cfg.out_dir << " (" << summary.trials.size() << " trial rows)\n";
    if (!cfg.fixed_init_random_truth)
      std::cout << "perfect-knowledge logical error rate: " << summary.perfect.rate << " ["
                << summary.perfect.lo << ", " << summary.perfect.hi << "]\n";
    return 0;
  }

  if (crbcmd->parsed()) {
    ConcatTree tree(code_from_name(cr.code), cr.levels);
    RateSet rates =
        uniform_rates(tree, cr.p, cr.pm >= 0 ? std::optional<double>(cr.pm) : std::nullopt);
    const FactorGraph g = build_factor_graph(tree, rates.qubit, rates.flip);
    const bool exact = !cr.force_mc && tree.num_syndrome_bits() <= 20;
    const FisherMatrix fisher = exact
                                    ? fisher_exact(g, Exec::Parallel)
                                    : fisher_mc(g, cr.samples, cr.seed, Exec::Parallel);
    const CrbReport rep = crb(fisher, cr.m);
    const std::vector<std::string> names = parameter_names(g);

    std::filesystem::create_directories(cr.out);
    json j;
    j["schema"] = "syndromest.crb.v1";
    j["mode"] = exact ? "exact" : "monte_carlo";
    if (!exact) j["n_samples"] = cr.samples;
    j["seed"] = cr.seed;
    j["m"] = cr.m;
    j["condition_number"] = rep.condition_number;
    j["rank"] = rep.rank;
    j["pseudo_inverse"] = rep.pseudo_inverse;
    json fm = json::array();
    for (std::size_t r = 0; r < fisher.dim; ++r) {
      json row = json::array();
      for (std::size_t c2 = 0; c2 < fisher.dim; ++c2) row.push_back(fisher.at(r, c2));
      fm.push_back(std::move(row));
    }
    j["fisher"] = std::move(fm);
    json bounds = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) bounds[names[i]] = rep.bounds[i];
    j["bounds"] = std::move(bounds);
    write_file(cr.out + "/crb.json", j.dump(2));

    std::ofstream csv(cr.out + "/bounds.csv");
    csv << "# schema=syndromest.crb_bounds.v1 seed=" << cr.seed << "\n";
    csv << "parameter,bound\n";
    for (std::size_t i = 0; i < names.size(); ++i) csv << names[i] << ',' << rep.bounds[i] << "\n";
    std::cout << "wrote " << cr.out << "/crb.json\n";
    return 0;
  }

  if (identify->parsed()) {
    const StabilizerCode code = code_from_name(id.code);
    std::optional<DecomposableModel> model;
    if (!id.model_file.empty()) {
      NoiseSpec spec = noise_from_json(read_file(id.model_file));
      if (!spec.explicit_model) throw ConfigError("--model file must define explicit sets");
      model = std::move(spec.explicit_model);
    } else if (id.xonly) {
      std::vector<ErrorSet> sets;
      std::vector<std::vector<double>> rates;
      for (std::size_t q = 0; q < code.num_qubits(); ++q) {
        ErrorSet s;
        s.elements.emplace_back(PauliString::single(code.num_qubits(), q, Pauli::X), Syndrome(0));
        sets.push_back(std::move(s));
        rates.push_back({id.p});
      }
      model.emplace(code.num_qubits(), 0, std::move(sets), std::move(rates));
    } else {
      model = model_from_rates(depolarizing_rates(code.num_qubits(), id.p));
    }

    json j;
    j["schema"] = "syndromest.identify.v1";
    j["code"] = id.code;
    j["at_zero"] = report_to_json(jacobian_at_zero(code, *model), id.with_matrix);
    j["jtilde"] = report_to_json(jtilde(code, *model), id.with_matrix);
    write_file(id.out, j.dump(2));
    std::cout << "wrote " << id.out << "\n";
    return 0;
  }

  if (weights->parsed()) {
    const StabilizerCode code = code_from_name(wt.code);
    if (wt.qhat < 1 || wt.qhat > code.num_qubits())
      throw ConfigError("--qhat must be a 1-based qubit index");
    const Syndrome sstar = Syndrome::from_string(wt.sstar);
    const auto recursive = kw_recursive(code, wt.qhat - 1, sstar);

    json j;
    j["schema"] = "syndromest.weights.v1";
    j["code"] = wt.code;
    j["qhat"] = wt.qhat;
    j["sstar"] = wt.sstar;
    json arr = json::array();
    for (const WeightDistribution& wd : recursive) {
      const WeightDistribution brute = kw_bruteforce(code, wd.e, wd.qhat, wd.sstar);
      json je;
      je["e"] = std::string(1, pauli_char(wd.e));
      je["case"] = wd.tag == KwCase::Matching ? "matching"
                   : wd.tag == KwCase::OtherOnQhat ? "other_on_qhat"
                                                   : "off_qhat";
      je["k_recursive"] = wd.k;
      je["k_bruteforce"] = brute.k;
      je["match"] = wd.k == brute.k;
      arr.push_back(std::move(je));
    }
    j["distributions"] = std::move(arr);
    write_file(wt.out, j.dump(2));
    std::cout << "wrote " << wt.out << "\n";
    return 0;
  }

  if (closed->parsed()) {
    std::optional<BinaryCircuitModel> model;
    const StabilizerCode code = code_from_name(cf.code);
    if (!cf.model_file.empty()) {
      NoiseSpec spec = noise_from_json(read_file(cf.model_file));
      if (!spec.explicit_model) throw ConfigError("--model file must define explicit sets");
      std::vector<ErrorEvent> errors;
      std::vector<double> rates;
      for (std::size_t i = 0; i < spec.explicit_model->num_sets(); ++i) {
        const auto& set = spec.explicit_model->set(i);
        if (set.elements.size() != 1)
          throw ConfigError("binary circuit noise needs single-element sets");
        errors.push_back(set.elements[0]);
        rates.push_back(spec.explicit_model->rates(i)[0]);
      }
      model.emplace(code, std::move(errors), std::move(rates));
    } else {
      if (cf.rates.size() != code.num_qubits())
        throw ConfigError("--rates must list one X rate per qubit");
      model = x_only_model(code, cf.rates);
    }

    json j;
    j["schema"] = "syndromest.closedform.v1";
    j["code"] = cf.code;
    const std::size_t l = model->num_syndrome_bits();
    const EquationCount eq = count_equations(*model);
    j["equations"] = {{"usable_so1_pairs", eq.usable_so1_pairs},
                      {"so2_equations", eq.so2_equations},
                      {"max_so1_pairs", eq.max_so1_pairs}};

    json pairs = json::array();
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t jj = i + 1; jj < l; ++jj) {
        json jp;
        jp["pair"] = {i + 1, jj + 1};
        int usable_q = -1;
        for (std::size_t q = 0; q < model->num_errors(); ++q)
          if (check_so1_preconditions(*model, i, jj, q).all_hold()) {
            usable_q = int(q);
            break;
          }
        jp["so1_applicable"] = usable_q >= 0;
        const SyndromeMoments mom = cf.samples > 0
                                        ? sampled_moments(*model, i, jj, cf.samples, cf.seed)
                                        : exact_moments(*model, i, jj);
        jp["moments"] = {{"e_s1", mom.e1}, {"e_s2", mom.e2}, {"e_s1s2", mom.e11},
                         {"e_xor", mom.exor}};
        if (usable_q >= 0) {
          jp["error"] = usable_q + 1;
          try {
            jp["so1_estimate"] = so1_estimate(mom);
            jp["truth"] = model->rate(std::size_t(usable_q));
          } catch (const std::exception& e) {
            jp["so1_error"] = e.what();
          }
        }
        pairs.push_back(std::move(jp));
      }
    j["so1"] = std::move(pairs);

    json so2 = json::array();
    for (std::size_t i = 0; i < l; ++i) {
      json js;
      js["bit"] = i + 1;
      const double mean = cf.samples > 0
                              ? sampled_moments(*model, i, i, cf.samples, cf.seed).e1
                              : exact_mean(*model, i);
      js["e_s"] = mean;
      // Solve for the first incident error given the true rates of the rest.
      int first = -1;
      std::vector<double> others;
      for (std::size_t q = 0; q < model->num_errors(); ++q) {
        if (!model->flips(q, i)) continue;
        if (first < 0)
          first = int(q);
        else
          others.push_back(model->rate(q));
      }
      if (first >= 0) {
        const So2Result r = so2_estimate(mean, others);
        js["error"] = first + 1;
        js["so2_estimate"] = r.theta;
        js["clamped"] = r.clamped;
        js["truth"] = model->rate(std::size_t(first));
      }
      so2.push_back(std::move(js));
    }
    j["so2"] = std::move(so2);
    write_file(cf.out, j.dump(2));
    std::cout << "wrote " << cf.out << "\n";
    return 0;
  }

  if (summary->parsed()) {
    const auto rows = emit_summary(su.dir);
    std::cout << "wrote " << su.dir << "/boxes.csv (" << rows.size() << " rows)\n";
    return 0;
  }

  return 0;
}

}  // namespace
