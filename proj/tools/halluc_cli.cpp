// Command-line front end. Every command prints one JSON document (or CSV with
// --format csv) to stdout, or to --out when given.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "halluc/adversaries.hpp"
#include "halluc/concepts.hpp"
#include "halluc/harness.hpp"
#include "halluc/io.hpp"
#include "halluc/learners.hpp"
#include "halluc/measure.hpp"
#include "halluc/solvers.hpp"

using namespace halluc;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::size_t workers = 1;
  std::string format = "json";
};

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
nlohmann::json load_json(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return nlohmann::json::parse(arg);
  std::ifstream f(arg);
  if (!f) throw std::runtime_error("cannot read " + arg);
  return nlohmann::json::parse(f);
}

void emit(const Globals& g, const ojson& doc) {
  std::ostringstream text;
  if (g.format == "csv" && doc.is_object()) {
    text << "key,value\n";
    for (const auto& [k, v] : doc.items()) text << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  } else {
    text << doc.dump(2) << '\n';
  }
  if (g.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << text.str();
  }
}

ConceptPrior load_prior(const nlohmann::json& j) {
  if (j.contains("concepts")) return concept_class_from_json(j);
  const Universe u = universe_from_json(j);
  return AnchoredFamily(EventSet(u, j.at("anchors").get<std::vector<Atom>>()), j.at("concept_size").get<std::size_t>(),
                        j.value("name", std::string{}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hallucination-rate measures, solvers, learners and Monte Carlo experiments"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base seed")->default_val(0);
  app.add_option("--out", g.out, "Output file (experiments: output directory)");
  app.add_option("--workers", g.workers, "Worker threads for experiments (0 = all cores)")->default_val(1);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->default_val("json");

  // measure -----------------------------------------------------------------
  auto* measure = app.add_subcommand("measure", "Scalar measures on distributions");
  measure->require_subcommand(1);
  std::string p_arg, q_arg, facts_arg, info_name = "shannon";
  double eps = 0.0;
  auto* m_hall = measure->add_subcommand("hall", "Mass of p outside the facts set");
  m_hall->add_option("--p", p_arg, "Distribution")->required();
  m_hall->add_option("--facts", facts_arg, "Facts set")->required();
  auto* m_hall_eps = measure->add_subcommand("hall-eps", "Largest p-mass on an event of q-mass <= eps");
  m_hall_eps->add_option("--p", p_arg)->required();
  m_hall_eps->add_option("--q", q_arg)->required();
  m_hall_eps->add_option("--eps", eps)->required();
  auto* m_tv = measure->add_subcommand("tv", "Total variation distance");
  m_tv->add_option("--p", p_arg)->required();
  m_tv->add_option("--q", q_arg)->required();
  auto* m_kl = measure->add_subcommand("kl", "KL divergence in nats");
  m_kl->add_option("--p", p_arg)->required();
  m_kl->add_option("--q", q_arg)->required();
  auto* m_entropy = measure->add_subcommand("entropy", "Shannon or Renyi entropy in nats");
  m_entropy->add_option("--p", p_arg)->required();
  m_entropy->add_option("--measure", info_name, "shannon or renyi:<alpha>")->default_val("shannon");

  // concepts ----------------------------------------------------------------
  auto* concepts = app.add_subcommand("concepts", "Concept classes");
  concepts->require_subcommand(1);
  std::string class_arg, sample_arg;
  std::size_t cap = 20, d = 0, max_tries = 10'000;
  auto* c_vc = concepts->add_subcommand("vc", "VC dimension of an explicit class");
  c_vc->add_option("--class", class_arg)->required();
  c_vc->add_option("--cap", cap)->default_val(20);
  auto* c_vs = concepts->add_subcommand("version-space", "Concepts containing every sample point");
  c_vs->add_option("--class", class_arg)->required();
  c_vs->add_option("--sample", sample_arg, "Sample JSON or list of atoms")->required();
  auto* c_pack = concepts->add_subcommand("packing", "Rejection-sampled packing of d/2-subsets");
  c_pack->add_option("--d", d)->required();
  c_pack->add_option("--max-tries", max_tries)->default_val(10'000);

  // solve -------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Optimize over a feasible region");
  solve->require_subcommand(1);
  std::string region_arg;
  auto* s_max = solve->add_subcommand("max-info", "Information maximizer over the region");
  s_max->add_option("--region", region_arg)->required();
  s_max->add_option("--sample", sample_arg, "Sample (needed for out_of_sample)");
  s_max->add_option("--measure", info_name)->default_val("out_of_sample");

  // learn -------------------------------------------------------------------
  auto* learn_cmd = app.add_subcommand("learn", "Run a learner on a sample drawn from a construction");
  std::string kind_name, construction_name, params_arg = "{}";
  std::size_t n = 1;
  LearnerConfig lcfg;
  learn_cmd->add_option("kind", kind_name, "empirical|improper_max_info|proper_max_info|fixed")->required();
  learn_cmd->add_option("--construction", construction_name)->required();
  learn_cmd->add_option("--params", params_arg, "Construction parameters (JSON)")->default_val("{}");
  learn_cmd->add_option("--n", n, "Sample size")->default_val(1);
  learn_cmd->add_option("--eps", lcfg.eps)->default_val(0.1);
  learn_cmd->add_option("--measure", info_name)->default_val("out_of_sample");
  learn_cmd->add_flag("!--closed", lcfg.strict, "Closed budget hall <= eps instead of hall < eps");

  // adversary ---------------------------------------------------------------
  auto* adversary = app.add_subcommand("adversary", "Hard instances");
  adversary->require_subcommand(1);
  auto* a_gen = adversary->add_subcommand("gen", "Draw one instance of a construction");
  a_gen->add_option("name", construction_name)->required();
  a_gen->add_option("--params", params_arg)->default_val("{}");

  // experiment --------------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->require_subcommand(1);
  std::string config_arg;
  auto* e_run = experiment->add_subcommand("run", "Run trials for every n");
  e_run->add_option("config", config_arg)->required();
  auto* e_curve = experiment->add_subcommand("curve", "Sample-complexity curve over increasing n");
  e_curve->add_option("config", config_arg)->required();

  // bounds ------------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->require_subcommand(1);
  std::uint64_t class_size = 2, dd = 1;
  double kl_sup = 0.0, delta = 0.1;
  std::string base = "bits";
  auto* b_fano = bounds->add_subcommand("fano", "Identification error lower bound");
  b_fano->add_option("--n", n)->required();
  b_fano->add_option("--class-size", class_size)->required();
  b_fano->add_option("--kl-sup", kl_sup)->required();
  auto* b_req = bounds->add_subcommand("required-n", "Sample size of the upper bound");
  b_req->add_option("--d", dd)->required();
  b_req->add_option("--eps", eps)->required();
  b_req->add_option("--delta", delta)->required();
  auto* b_thr = bounds->add_subcommand("entropy-threshold", "Root of h(2e)+5e=1");
  b_thr->add_option("--base", base)->check(CLI::IsMember({"bits", "nats"}))->default_val("bits");

  CLI11_PARSE(app, argc, argv);

  try {
    if (m_hall->parsed()) {
      const Dist p = dist_from_json(load_json(p_arg));
      emit(g, {{"hall", hall(p, event_set_from_json(load_json(facts_arg), p.universe()))}});
    } else if (m_hall_eps->parsed()) {
      const Dist p = dist_from_json(load_json(p_arg));
      emit(g, {{"hall_eps", hall_eps(p, dist_from_json(load_json(q_arg), p.universe()), eps)}});
    } else if (m_tv->parsed()) {
      const Dist p = dist_from_json(load_json(p_arg));
      emit(g, {{"tv", tv(p, dist_from_json(load_json(q_arg), p.universe()))}});
    } else if (m_kl->parsed()) {
      const Dist p = dist_from_json(load_json(p_arg));
      const double v = kl(p, dist_from_json(load_json(q_arg), p.universe()));
      emit(g, {{"kl", std::isfinite(v) ? ojson(v) : ojson("inf")}});
    } else if (m_entropy->parsed()) {
      const Dist p = dist_from_json(load_json(p_arg));
      const InfoMeasure m = InfoMeasure::parse(info_name);
      if (m.kind() == InfoMeasure::Kind::out_of_sample) throw std::domain_error("entropy: measure must be shannon or renyi");
      emit(g, {{"measure", m.name()}, {"entropy", info(m, p, Sample(p.universe(), {}))}});
    } else if (c_vc->parsed()) {
      const VcResult r = vc_dimension(concept_class_from_json(load_json(class_arg)), cap);
      emit(g, {{"dimension", r.dimension}, {"at_least", r.at_least}, {"witness", r.witness}});
    } else if (c_vs->parsed()) {
      const ConceptClass cls = concept_class_from_json(load_json(class_arg));
      const ConceptClass vs = version_space(cls, sample_from_json(load_json(sample_arg), cls.universe()));
      emit(g, to_json(vs));
    } else if (c_pack->parsed()) {
      emit(g, to_json(packing_construct(d, g.seed, max_tries)));
    } else if (s_max->parsed()) {
      const FeasibleRegion region = region_from_json(load_json(region_arg));
      const Sample s = sample_arg.empty() ? Sample(region.universe(), {}) : sample_from_json(load_json(sample_arg), region.universe());
      emit(g, to_json(max_info(InfoMeasure::parse(info_name), region, s)));
    } else if (learn_cmd->parsed()) {
      const InstanceEnsemble ens = make_ensemble(construction_name, load_json(params_arg));
      lcfg.kind = parse_learner_kind(kind_name);
      lcfg.measure = InfoMeasure::parse(info_name);
      const LearnerSpec spec = make_learner(lcfg, ens);
      const HardInstance inst = ens.draw(g.seed);
      const Sample s = sample_from(inst.q, n, hash_words({g.seed, 2}));
      const LearnedModel model = learn(spec, s);
      ojson doc = {{"construction", inst.meta},
                   {"learner", to_json(lcfg)},
                   {"sample", to_json(s)},
                   {"model", to_json(model.dist)},
                   {"hall", hall(model.dist, inst.truth)},
                   {"info_learned", info(spec.measure, model.dist, s)},
                   {"info_demonstrator", info(spec.measure, inst.q, s)},
                   {"version_space_size", model.version_space_size},
                   {"relaxed", model.relaxed}};
      if (model.hypothesis_index) doc["hypothesis_index"] = *model.hypothesis_index;
      if (model.solver_report) doc["solver"] = to_json(*model.solver_report);
      emit(g, doc);
    } else if (a_gen->parsed()) {
      const InstanceEnsemble ens = make_ensemble(construction_name, load_json(params_arg));
      ojson doc = to_json(ens.draw(g.seed));
      ojson hyps = ojson::array();
      for (const auto& p : ens.hypotheses) hyps.push_back(to_json(p));
      doc["hypotheses"] = std::move(hyps);
      if (ens.prior) doc["prior_size"] = prior_size(*ens.prior);
      emit(g, doc);
    } else if (e_run->parsed() || e_curve->parsed()) {
      ExperimentConfig cfg = config_from_json(load_json(config_arg));
      if (app.get_option("--workers")->count() > 0) cfg.workers = g.workers;
      if (app.get_option("--seed")->count() > 0) cfg.base_seed = g.seed;
      if (!g.out.empty()) cfg.output_dir = g.out;
      const ExperimentResult result = e_curve->parsed() ? complexity_curve(cfg) : run_trials(cfg);
      if (!cfg.output_dir.empty()) write_outputs(cfg.output_dir, cfg, result);
      if (g.format == "csv") {
        write_summary_csv(std::cout, result.summary);
      } else {
        ojson rows = ojson::array();
        for (const auto& r : result.summary) rows.push_back(to_json(r));
        std::cout << rows.dump(2) << '\n';
      }
    } else if (b_fano->parsed()) {
      emit(g, {{"fano_bound", fano_bound(n, class_size, kl_sup)}});
    } else if (b_req->parsed()) {
      emit(g, {{"required_n", required_n(dd, eps, delta)}});
    } else if (b_thr->parsed()) {
      emit(g, {{"base", base}, {"root", entropy_threshold(base == "bits" ? LogBase::bits : LogBase::nats)}});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
