// Command-line front end: rank replayed timings, measure live commands,
// explore matrix-chain instances, and generate synthetic timing data.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "algorank/algorank.hpp"

namespace {

using namespace algorank;

struct SharedOpts {
  double eps = 0.03;
  int max = 30;
  int batch = 3;
  std::string quantiles = "default";
  double rt_threshold = 1.5;
  int warmup = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool timestamp = false;
};

void add_campaign_options(CLI::App* cmd, SharedOpts& o) {
  cmd->add_option("--eps", o.eps, "Convergence threshold")->capture_default_str();
  cmd->add_option("--max", o.max, "Measurement cap per algorithm")->capture_default_str();
  cmd->add_option("--batch", o.batch, "Measurements added per algorithm per iteration (M)")
      ->capture_default_str();
  cmd->add_option("--quantiles", o.quantiles,
                  "Quantile range family: default | fast | l1,u1;l2,u2;...")
      ->capture_default_str();
  cmd->add_option("--rt-threshold", o.rt_threshold,
                  "Relative-time cutoff for the candidate shortlist")
      ->capture_default_str();
  cmd->add_option("--warmup", o.warmup, "Untimed runs before the first timed one")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for shuffling and synthetic data")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Write the report here instead of stdout");
  cmd->add_flag("--timestamp", o.timestamp, "Embed a UTC timestamp in the report");
}

void write_json_output(const nlohmann::ordered_json& doc, const std::string& out) {
  if (out.empty())
    std::cout << doc.dump(2) << '\n';
  else
    emit_report(doc, std::filesystem::path(out));
}

std::vector<long long> parse_dims(const std::string& text) {
  std::vector<long long> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    try {
      dims.push_back(std::stoll(text.substr(pos, end - pos)));
    } catch (const std::exception&) {
      throw ConfigError("dimension list must be comma-separated integers: " + text);
    }
    pos = end + 1;
  }
  return dims;
}

// Runs the measurement loop, assembles the report, and maps the verdict to
// the process exit code (0 valid / 10 anomaly).
int run_campaign(const std::vector<std::string>& order0, MeasurementSource& source,
                 const SharedOpts& shared, int effective_max,
                 const std::map<std::string, long long>& flops, bool want_verdict,
                 const InstanceLabel& instance, const std::vector<std::string>& all_ids) {
  DriverOptions opt;
  opt.batch = shared.batch;
  opt.eps = shared.eps;
  opt.max_measurements = effective_max;
  opt.ranges = parse_quantile_set(shared.quantiles);
  opt.seed = shared.seed;

  CampaignResult result = measure_and_rank(order0, source, opt);

  std::optional<Verdict> verdict;
  if (want_verdict) verdict = classify(result.table.headline, flops, result.table.mean);

  ReportConfig rc;
  rc.batch = shared.batch;
  rc.eps = shared.eps;
  rc.max_measurements = effective_max;
  rc.quantile_set = opt.ranges;
  rc.seed = shared.seed;
  rc.rt_threshold = shared.rt_threshold;
  rc.warmup = shared.warmup;

  const auto rows = report_algorithms(result.table, all_ids, flops);
  const auto report =
      build_report(instance, rows, result.table, result.state, verdict, rc, shared.timestamp);
  write_json_output(report, shared.out);

  std::cerr << (result.state.converged ? "converged" : "measurement cap reached") << " after "
            << result.state.n << " measurements per algorithm over " << result.state.iterations
            << " iteration(s)";
  if (verdict) std::cerr << "; verdict: " << to_string(verdict->kind);
  std::cerr << '\n';
  if (!result.state.converged)
    std::cerr << "warning: mean ranks did not converge below eps=" << shared.eps << '\n';

  return verdict && verdict->anomaly() ? 10 : 0;
}

int cmd_rank(const std::string& input, const std::string& flops_path,
             const std::string& instance_label, const SharedOpts& shared) {
  TimingTable table = load_timings_csv(std::filesystem::path(input));
  if (table.algorithm_order.empty()) throw Error("timings file lists no measurements: " + input);
  ReplaySource source(std::move(table));
  const std::vector<std::string> order0 = source.table().algorithm_order;

  // Cap the loop at whole batches of what the recording can supply.
  const auto available = static_cast<long long>(source.min_available());
  const long long whole_batches = available / shared.batch * shared.batch;
  if (whole_batches < shared.batch)
    throw Error("replay provides fewer than one batch of " + std::to_string(shared.batch) +
                " samples per algorithm");
  const int effective_max = static_cast<int>(std::min<long long>(shared.max, whole_batches));

  std::map<std::string, long long> flops;
  bool want_verdict = false;
  if (!flops_path.empty()) {
    flops = load_flops_map(flops_path);
    for (const auto& id : order0)
      if (flops.find(id) == flops.end())
        throw ConfigError("FLOPs file does not cover algorithm: " + id);
    want_verdict = true;
  }

  InstanceLabel instance;
  if (!instance_label.empty()) instance = instance_label;
  return run_campaign(order0, source, shared, effective_max, flops, want_verdict, instance,
                      order0);
}

int cmd_measure(const std::string& manifest_path, double timeout,
                const std::string& instance_label, const SharedOpts& shared) {
  const std::vector<AlgorithmSpec> specs = load_manifest(manifest_path);

  // Warm up, then time each command exactly once to form the initial
  // hypothesis and the shortlist.
  std::vector<double> single_run;
  single_run.reserve(specs.size());
  for (const auto& spec : specs) {
    std::cerr << "single run: " << spec.id << '\n';
    const auto times = run_external(*spec.command, shared.warmup, 1, timeout);
    single_run.push_back(times.at(0));
  }

  const bool have_flops = std::all_of(specs.begin(), specs.end(),
                                      [](const AlgorithmSpec& s) { return s.flops.has_value(); });
  std::vector<std::string> candidates;
  if (have_flops) {
    candidates = shortlist_ids(specs, single_run, shared.rt_threshold);
  } else {
    for (const auto& s : specs) candidates.push_back(s.id);
    std::cerr << "note: manifest has no complete FLOP counts; ranking all algorithms, "
                 "no verdict\n";
  }

  // Initial hypothesis: candidates by increasing single-run time.
  std::map<std::string, double> time_of;
  std::map<std::string, std::string> command_of;
  std::map<std::string, long long> flops;
  std::vector<std::string> all_ids;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    time_of[specs[i].id] = single_run[i];
    command_of[specs[i].id] = *specs[i].command;
    if (specs[i].flops) flops[specs[i].id] = *specs[i].flops;
    all_ids.push_back(specs[i].id);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const std::string& a, const std::string& b) {
                     return time_of.at(a) < time_of.at(b);
                   });

  std::map<std::string, std::string> campaign_commands;
  for (const auto& id : candidates) campaign_commands[id] = command_of.at(id);
  ExternalCommandSource source(std::move(campaign_commands), timeout);

  InstanceLabel instance;
  if (!instance_label.empty()) instance = instance_label;
  return run_campaign(candidates, source, shared, shared.max, flops, have_flops, instance,
                      all_ids);
}

int cmd_chain(const std::string& dims_text, const std::string& timings_path,
              std::size_t max_matrices, const SharedOpts& shared) {
  const ChainInstance inst(parse_dims(dims_text));
  const std::vector<AlgorithmVariant> variants = enumerate_variants(inst, max_matrices);

  std::vector<long long> costs;
  costs.reserve(variants.size());
  for (const auto& v : variants) costs.push_back(v.cost);
  const std::vector<double> rf = relative_flops(costs);

  if (timings_path.empty()) {
    nlohmann::ordered_json doc;
    doc["instance"] = inst.dims;
    doc["parenthesizations"] = count_parenthesizations(variants);
    doc["variant_count"] = variants.size();
    doc["algorithms"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < variants.size(); ++i) {
      nlohmann::ordered_json a;
      a["id"] = variants[i].id;
      a["expression"] = variants[i].expression(inst);
      a["kernels"] = variants[i].kernel_sequence(inst);
      a["cost"] = variants[i].cost;
      a["flops"] = variants[i].flops();
      a["rf"] = rf[i];
      doc["algorithms"].push_back(std::move(a));
    }
    write_json_output(doc, shared.out);
    return 0;
  }

  TimingTable table = load_timings_csv(std::filesystem::path(timings_path));
  std::map<std::string, long long> flops;
  for (const auto& v : variants) {
    flops[v.id] = v.flops();
    if (table.samples.find(v.id) == table.samples.end())
      throw Error("timings file has no samples for variant " + v.id);
  }
  for (const auto& id : table.algorithm_order)
    if (flops.find(id) == flops.end())
      throw Error("timings file lists unknown algorithm: " + id);

  ReplaySource source(std::move(table));
  const std::vector<std::string> order0 = source.table().algorithm_order;
  const auto available = static_cast<long long>(source.min_available());
  const long long whole_batches = available / shared.batch * shared.batch;
  if (whole_batches < shared.batch)
    throw Error("replay provides fewer than one batch of " + std::to_string(shared.batch) +
                " samples per algorithm");
  const int effective_max = static_cast<int>(std::min<long long>(shared.max, whole_batches));

  return run_campaign(order0, source, shared, effective_max, flops, true, inst.dims, order0);
}

int cmd_synth(const std::string& spec_path, int samples, const SharedOpts& shared) {
  if (samples < 0) throw ConfigError("sample count must be non-negative");
  const std::vector<AlgorithmSpec> specs = load_mixture_spec(spec_path);
  SyntheticSource source(mixture_spec_of(specs), shared.seed);

  TimingTable table;
  for (const auto& spec : specs) {
    table.algorithm_order.push_back(spec.id);
    table.samples[spec.id] = source.next_batch(spec.id, samples);
  }
  if (shared.out.empty())
    write_timings_csv(std::cout, table);
  else
    write_timings_csv(std::filesystem::path(shared.out), table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank equivalent algorithm implementations into statistical performance "
               "classes and test FLOP counts as a discriminant"};
  app.require_subcommand(1);

  SharedOpts shared;

  auto* rank = app.add_subcommand("rank", "Rank algorithms from a recorded timings CSV");
  std::string rank_input, rank_flops, rank_instance;
  rank->add_option("--input", rank_input, "Timings CSV (algorithm,run_index,time_seconds)")
      ->required();
  rank->add_option("--flops", rank_flops, "JSON object mapping algorithm id to FLOP count");
  rank->add_option("--instance", rank_instance, "Label recorded in the report");
  add_campaign_options(rank, shared);

  auto* measure = app.add_subcommand("measure", "Measure external commands and rank them");
  std::string measure_manifest, measure_instance;
  double measure_timeout = 0.0;
  measure->add_option("--manifest", measure_manifest, "JSON manifest of algorithm commands")
      ->required();
  measure->add_option("--timeout", measure_timeout, "Per-execution timeout in seconds (0 = none)")
      ->capture_default_str();
  measure->add_option("--instance", measure_instance, "Label recorded in the report");
  add_campaign_options(measure, shared);

  auto* chain = app.add_subcommand(
      "chain", "Enumerate matrix-chain variants with FLOP costs; optionally rank timings");
  std::string chain_dims, chain_timings;
  std::size_t chain_cap = 8;
  chain->add_option("--dims", chain_dims, "Chain dimensions, e.g. 75,75,8,75,75")->required();
  chain->add_option("--timings", chain_timings,
                    "Timings CSV with samples for every variant (algorithm0, algorithm1, ...)");
  chain->add_option("--max-matrices", chain_cap, "Enumeration cap on the number of matrices")
      ->capture_default_str();
  add_campaign_options(chain, shared);

  auto* synth = app.add_subcommand("synth", "Generate a timings CSV from a mixture spec");
  std::string synth_spec;
  int synth_samples = 30;
  synth->add_option("--spec", synth_spec, "JSON mixture spec")->required();
  synth->add_option("--samples", synth_samples, "Samples per algorithm")->capture_default_str();
  synth->add_option("--seed", shared.seed, "Seed for the generator")->capture_default_str();
  synth->add_option("--out", shared.out, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(rank)) return cmd_rank(rank_input, rank_flops, rank_instance, shared);
    if (app.got_subcommand(measure))
      return cmd_measure(measure_manifest, measure_timeout, measure_instance, shared);
    if (app.got_subcommand(chain)) return cmd_chain(chain_dims, chain_timings, chain_cap, shared);
    if (app.got_subcommand(synth)) return cmd_synth(synth_spec, synth_samples, shared);
  } catch (const CampaignError& e) {
    std::cerr << "error: " << e.what() << " (" << e.partial.iterations
              << " iteration(s) completed)\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
