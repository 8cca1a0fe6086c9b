#include "rbm/cli.hpp"

#include "rbm/butterfly.hpp"
#include "rbm/coherence.hpp"
#include "rbm/dct.hpp"
#include "rbm/error.hpp"
#include "rbm/haar.hpp"
#include "rbm/parallel.hpp"
#include "rbm/randomizer.hpp"
#include "rbm/serialize.hpp"
#include "rbm/spectral.hpp"
#include "rbm/stats.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#ifndef RBM_VERSION
#define RBM_VERSION "0.0.0"
#endif

namespace rbm::cli {
namespace {

using nlohmann::json;

constexpr int kOpcountCap = 24;
constexpr int kHaarOpcountCap = kDefaultDenseCap;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string default_format(const std::string& command) {
  if (command == "moments" || command == "coherence" || command == "opcount") return "json";
  return "csv";
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw UsageError("--format " + c.format + " is not available for " + c.command);
}

void require_positive_n(const RunConfig& c) {
  if (c.n < 1) throw UsageError("--n must be at least 1");
}

void require_trials(const RunConfig& c, std::size_t minimum) {
  if (c.trials < minimum) throw UsageError("--trials must be at least " + std::to_string(minimum));
}

std::string csv_header(const RunConfig& c) { return "# " + header_line(c) + "\n"; }

// ---------------------------------------------------------------------------

std::string run_spectrum(const RunConfig& c) {
  require_positive_n(c);
  require_trials(c, 1);
  require_format(c, {"csv", "json"});
  const Ensemble e = parse_ensemble(c.ensemble);
  const auto rows = spectrum_cloud(e, c.n, c.trials, c.seed);

  if (c.format == "json") {
    json doc;
    doc["header"] = header_line(c);
    doc["ensemble"] = std::string(to_string(e));
    doc["n"] = c.n;
    doc["trials"] = c.trials;
    json phases = json::array();
    const std::size_t dim = dimension_for_levels(c.n);
    for (std::size_t t = 0; t < c.trials; ++t) {
      json one = json::array();
      for (std::size_t i = 0; i < dim; ++i) one.push_back(rows[t * dim + i].phase);
      phases.push_back(std::move(one));
    }
    doc["phases"] = std::move(phases);
    return doc.dump() + "\n";
  }

  std::string s = csv_header(c) + "trial,ensemble,n,phase\n";
  const std::string_view name = to_string(e);
  for (const auto& r : rows) fmt::format_to(std::back_inserter(s), "{},{},{},{}\n", r.trial, name, c.n, r.phase);
  return s;
}

std::string run_moments(const RunConfig& c) {
  require_positive_n(c);
  require_trials(c, 2);
  require_format(c, {"json", "csv"});
  const Ensemble e = parse_ensemble(c.ensemble);
  const MomentReport r = moment_experiment(e, c.n, c.k, c.trials, c.seed);
  if (c.format == "csv") {
    return csv_header(c) +
           "k,mean_normalized_trace,second_moment,trials,std_error,second_moment_std_error\n" +
           fmt::format("{},{},{},{},{},{}\n", r.k, r.mean_normalized_trace, r.second_moment, r.trials,
                       r.std_error, r.second_moment_std_error);
  }
  json doc;
  doc["header"] = header_line(c);
  doc["ensemble"] = std::string(to_string(e));
  doc["n"] = c.n;
  doc["k"] = r.k;
  doc["mean_normalized_trace"] = r.mean_normalized_trace;
  doc["second_moment"] = r.second_moment;
  doc["trials"] = r.trials;
  doc["std_error"] = r.std_error;
  doc["second_moment_std_error"] = r.second_moment_std_error;
  return doc.dump() + "\n";
}

std::string run_clt(const RunConfig& c) {
  require_positive_n(c);
  require_trials(c, 1);
  require_format(c, {"csv", "json"});
  const CltResult r = clt_failure_statistic(c.n, c.k, c.trials, c.seed);
  if (c.format == "json") {
    json doc;
    doc["header"] = header_line(c);
    doc["n"] = c.n;
    doc["k"] = c.k;
    doc["trials"] = c.trials;
    doc["mean"] = stats::mean(r.values);
    doc["std"] = stats::sample_std(r.values);
    doc["std_error"] = stats::standard_error(r.values);
    doc["limit"] = -std::numbers::ln2;
    doc["degenerate_resamples"] = r.degenerate_resamples;
    return doc.dump() + "\n";
  }
  std::string s = csv_header(c) + "trial,statistic\n";
  for (std::size_t t = 0; t < r.values.size(); ++t) fmt::format_to(std::back_inserter(s), "{},{}\n", t, r.values[t]);
  return s;
}

std::string run_coherence(const RunConfig& c) {
  require_positive_n(c);
  require_trials(c, 1);
  require_format(c, {"json", "csv", "hist"});
  if (!(c.bin_width > 0.0)) throw UsageError("--bins must be a positive bin width");
  CoherenceConfig cfg;
  cfg.matrix = parse_test_matrix(c.matrix);
  cfg.randomizer = parse_randomizer(c.randomizer);
  cfg.n = c.n;
  cfg.m = c.m;
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  cfg.fix_base = c.fix_base;
  if (c.m < 1) throw UsageError("--M must be at least 1");
  if (c.n <= 20 && c.m > dimension_for_levels(c.n)) throw UsageError("--M must not exceed 2^n");
  const CoherenceExperiment ex = coherence_experiment(cfg);
  const ExperimentSummary& sum = ex.summary;

  if (c.format == "csv") {
    std::string s = csv_header(c) + "trial,matrix,randomizer,n,M,seed,coherence\n";
    const std::string_view mat = to_string(sum.matrix);
    const std::string_view rnd = to_string(sum.randomizer);
    for (std::size_t t = 0; t < ex.trials.size(); ++t) {
      const CoherenceResult& r = ex.trials[t];
      fmt::format_to(std::back_inserter(s), "{},{},{},{},{},{},{}\n", t, mat, rnd, r.n, r.m, r.seed, r.value);
    }
    return s;
  }
  if (c.format == "hist") {
    std::vector<double> values(ex.trials.size());
    for (std::size_t t = 0; t < values.size(); ++t) values[t] = ex.trials[t].value;
    std::string s = csv_header(c) + "bin_left,bin_right,count\n";
    for (const auto& b : stats::histogram(values, c.bin_width)) {
      fmt::format_to(std::back_inserter(s), "{},{},{}\n", b.left, b.right, b.count);
    }
    return s;
  }
  json doc;
  doc["header"] = header_line(c);
  doc["randomizer"] = std::string(to_string(sum.randomizer));
  doc["matrix"] = std::string(to_string(sum.matrix));
  doc["n"] = sum.n;
  doc["M"] = sum.m;
  doc["trials"] = sum.trials;
  doc["sample_mean"] = sum.sample_mean;
  if (sum.trials >= 2) doc["sample_std"] = sum.sample_std;
  else doc["sample_std"] = nullptr;
  doc["seed"] = c.seed;
  doc["fix_base"] = c.fix_base;
  return doc.dump() + "\n";
}

struct CountRow {
  std::string operation;
  std::optional<int> k;
  std::uint64_t multiplications;
  std::uint64_t closed_form;
  std::optional<std::uint64_t> bound;
};

std::string run_opcount(const RunConfig& c) {
  require_positive_n(c);
  require_format(c, {"json", "csv"});
  if (c.n > kOpcountCap) throw CapacityError("opcount level", kOpcountCap, c.n);
  if (c.subsample_k && (*c.subsample_k < 0 || *c.subsample_k > c.n)) {
    throw UsageError("--k must lie in [0, n] for opcount");
  }
  const int n = c.n;
  const std::uint64_t dim = dimension_for_levels(n);
  RngState rng(c.seed);
  std::vector<double> v(dim);
  for (auto& x : v) x = standard_normal(rng);

  std::vector<CountRow> rows;
  {
    OpCounter oc;
    apply_simple(sample_simple(n, rng), v, oc);
    rows.push_back({"apply_simple", std::nullopt, oc.multiplications, n * (dim << 1), std::nullopt});
  }
  {
    OpCounter oc;
    apply_nonsimple(sample_nonsimple(n, rng), v, oc);
    rows.push_back({"apply_nonsimple", std::nullopt, oc.multiplications, n * (dim << 1), std::nullopt});
  }
  {
    OpCounter oc;
    DctPlan plan(dim);
    std::vector<double> out(dim);
    plan.apply(v, out, &oc);
    rows.push_back({"dct", std::nullopt, oc.multiplications, 2 * dim * n + 2 * dim, std::nullopt});
  }
  if (n <= kHaarOpcountCap) {
    OpCounter oc;
    apply_haar(sample_haar(dim, rng), v, oc);
    rows.push_back({"apply_haar", std::nullopt, oc.multiplications, dim * dim + 2 * dim - 2, std::nullopt});
  }

  const SimpleButterfly b = sample_simple(n, rng);
  const int k_lo = c.subsample_k.value_or(0);
  const int k_hi = c.subsample_k.value_or(n);
  for (int k = k_lo; k <= k_hi; ++k) {
    OpCounter oc;
    apply_simple_subsampled(b, v, 1, k, oc);
    const std::uint64_t bound = (dim << 1) * static_cast<std::uint64_t>(n - k + 1);
    rows.push_back({"apply_simple_subsampled", k, oc.multiplications, bound - (dim >> k << 1), bound});
  }

  if (c.format == "csv") {
    std::string s = csv_header(c) + "operation,n,k,multiplications,closed_form,bound\n";
    for (const auto& r : rows) {
      fmt::format_to(std::back_inserter(s), "{},{},{},{},{},{}\n", r.operation, n,
                     r.k ? std::to_string(*r.k) : "", r.multiplications, r.closed_form,
                     r.bound ? std::to_string(*r.bound) : "");
    }
    return s;
  }
  json doc;
  doc["header"] = header_line(c);
  doc["n"] = n;
  json sub = json::array();
  for (const auto& r : rows) {
    json entry{{"multiplications", r.multiplications}, {"closed_form", r.closed_form}};
    if (r.k) {
      entry["k"] = *r.k;
      entry["bound"] = *r.bound;
      sub.push_back(std::move(entry));
    } else {
      doc[r.operation] = std::move(entry);
    }
  }
  doc["apply_simple_subsampled"] = std::move(sub);
  return doc.dump() + "\n";
}

std::string run_materialize(const RunConfig& c, bool from_randomizer) {
  require_positive_n(c);
  require_format(c, {"csv", "json"});
  if (c.n > kDefaultDenseCap) throw CapacityError("dense materialization level", kDefaultDenseCap, c.n);
  RngState rng(c.seed);
  Matrix m;
  json angles;
  std::string kind;
  if (from_randomizer) {
    const Randomizer r = sample_randomizer(parse_randomizer(c.randomizer), c.n, rng);
    kind = to_string(r.kind());
    m = r.materialize();
  } else {
    const Ensemble e = parse_ensemble(c.ensemble);
    kind = to_string(e);
    switch (e) {
      case Ensemble::Simple: {
        const auto b = sample_simple(c.n, rng);
        angles = json::parse(to_json(b));
        m = materialize(b);
        break;
      }
      case Ensemble::Nonsimple: {
        const auto b = sample_nonsimple(c.n, rng);
        angles = json::parse(to_json(b));
        m = materialize(b);
        break;
      }
      case Ensemble::Haar: m = materialize(sample_haar(dimension_for_levels(c.n), rng)); break;
      case Ensemble::Iid: throw UsageError("the iid ensemble has no matrix to materialize");
    }
  }
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_header(c);
    write_matrix_csv(os, m);
    return os.str();
  }
  json doc;
  doc["header"] = header_line(c);
  doc["kind"] = kind;
  doc["n"] = c.n;
  if (!angles.is_null()) doc["angles"] = angles["angles"];
  doc["matrix"] = json::parse(matrix_to_json(m));
  return doc.dump() + "\n";
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--n", c.n, "levels; dimension N = 2^n")->required();
  sub->add_option("--seed", c.seed, "base seed");
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--format", c.format, "output format");
  sub->add_option("--threads", c.threads, "worker threads (default: all cores)");
}

}  // namespace

std::vector<std::string> canonical_args(const RunConfig& c) {
  std::vector<std::string> a{c.command};
  auto add = [&a](const char* flag, const std::string& value) {
    a.emplace_back(flag);
    a.push_back(value);
  };
  const std::string format = c.format.empty() ? default_format(c.command) : c.format;
  if (c.command == "spectrum" || c.command == "moments") add("--ensemble", c.ensemble);
  if (c.command == "materialize") {
    if (c.ensemble.empty()) add("--randomizer", c.randomizer);
    else add("--ensemble", c.ensemble);
  }
  if (c.command == "coherence") {
    add("--matrix", c.matrix);
    add("--randomizer", c.randomizer);
  }
  add("--n", std::to_string(c.n));
  if (c.command == "coherence") add("--M", std::to_string(c.m));
  if (c.command == "moments" || c.command == "clt") add("--k", std::to_string(c.k));
  if (c.command == "opcount" && c.subsample_k) add("--k", std::to_string(*c.subsample_k));
  if (c.command != "opcount" && c.command != "materialize") add("--trials", std::to_string(c.trials));
  add("--seed", std::to_string(c.seed));
  add("--format", format);
  if (c.command == "coherence") {
    if (format == "hist") add("--bins", format_double(c.bin_width));
    if (c.fix_base) a.emplace_back("--fix-base");
  }
  return a;
}

std::string header_line(const RunConfig& c) {
  std::string h = std::string("rbm ") + RBM_VERSION;
  for (const auto& s : canonical_args(c)) h += " " + s;
  return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random butterfly matrices: spectra, trace moments and coherence experiments", "rbm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("rbm ") + RBM_VERSION);

  RunConfig c;
  int opcount_k = -1;

  auto* spectrum = app.add_subcommand("spectrum", "eigen-phases of sampled matrices (CSV: trial,ensemble,n,phase)");
  add_common(spectrum, c);
  spectrum->add_option("--ensemble", c.ensemble, "simple, nonsimple, iid or haar");
  spectrum->add_option("--trials", c.trials, "number of sampled matrices");

  auto* moments = app.add_subcommand("moments", "Monte Carlo trace moments E[tr Q^k / N] and E[(tr Q^k)^2]");
  add_common(moments, c);
  moments->add_option("--ensemble", c.ensemble, "simple or nonsimple");
  moments->add_option("--k", c.k, "power k");
  moments->add_option("--trials", c.trials, "number of trials");

  auto* clt = app.add_subcommand("clt", "per-trial (1/n) log((tr B^k)^2 / N) for the simple ensemble");
  add_common(clt, c);
  clt->add_option("--k", c.k, "power k");
  clt->add_option("--trials", c.trials, "number of trials");

  auto* coh = app.add_subcommand("coherence", "coherence of Omega A over random Omega");
  add_common(coh, c);
  coh->add_option("--matrix", c.matrix, "hilbert or randn");
  coh->add_option("--randomizer", c.randomizer, "hbdct, rbdct, rdct or haar");
  coh->add_option("--M", c.m, "number of columns");
  coh->add_option("--trials", c.trials, "number of trials");
  coh->add_flag("--fix-base", c.fix_base, "draw one randn base matrix for all trials");
  coh->add_option("--bins", c.bin_width, "histogram bin width for --format hist");

  auto* op = app.add_subcommand("opcount", "measured multiplication counts against closed forms");
  add_common(op, c);
  op->add_option("--k", opcount_k, "only this subsampling depth (default: every k <= n)");

  auto* mat = app.add_subcommand("materialize", "dense dump of one sampled matrix");
  add_common(mat, c);
  auto* mat_ensemble = mat->add_option("--ensemble", c.ensemble, "simple, nonsimple or haar");
  auto* mat_randomizer = mat->add_option("--randomizer", c.randomizer, "hbdct, rbdct, rdct or haar");
  mat_ensemble->excludes(mat_randomizer);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  const bool from_randomizer = chosen == mat && mat_randomizer->count() > 0;
  if (chosen == mat && from_randomizer) c.ensemble.clear();
  if (chosen == op && op->count("--k") > 0) c.subsample_k = opcount_k;
  if (c.format.empty()) c.format = default_format(c.command);

  const int previous_threads = thread_count();
  if (c.threads < 0) {
    err << "error: --threads must be nonnegative\n";
    return kUsage;
  }
  set_thread_count(c.threads);

  int code = kOk;
  std::string text;
  try {
    if (c.command == "spectrum") text = run_spectrum(c);
    else if (c.command == "moments") text = run_moments(c);
    else if (c.command == "clt") text = run_clt(c);
    else if (c.command == "coherence") text = run_coherence(c);
    else if (c.command == "opcount") text = run_opcount(c);
    else text = run_materialize(c, from_randomizer);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    code = kCapacity;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    code = kNumerical;
  } catch (const std::logic_error& e) {
    err << "usage error: " << e.what() << "\n";
    code = kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kFailure;
  }
  set_thread_count(previous_threads);
  if (code != kOk) return code;

  if (c.out.empty()) {
    out << text;
    out.flush();
    return kOk;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << c.out << " for writing\n";
    return kFailure;
  }
  file << text;
  if (!file.flush()) {
    err << "error: failed writing " << c.out << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace rbm::cli
