#include "gyp/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gyp/engine.hpp"
#include "gyp/json_io.hpp"
#include "gyp/quadrature.hpp"
#include "gyp/verify.hpp"

namespace gyp {

namespace {

struct CliError {
  std::string kind;
  std::string message;
  int code;
};

OrderParam make_order(const std::string& family, double order, bool order_set) {
  if (family == "kl") return OrderParam::kl();
  if (!order_set) throw InputError("--order is required for family " + family);
  if (family == "renyi") return OrderParam::renyi(order);
  if (family == "tsallis") return OrderParam::tsallis(order);
  throw InputError("unknown family: " + family);
}

SplitStrategy make_strategy(const std::string& s) {
  if (s == "midpoint") return SplitStrategy::Midpoint;
  if (s == "phi-level") return SplitStrategy::PhiLevel;
  if (s == "mass-median") return SplitStrategy::MassMedian;
  throw InputError("unknown strategy: " + s);
}

/// start:step:end, inclusive of end up to a half-step slack.
std::vector<double> parse_orders(const std::string& spec) {
  double start, step, end;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> step >> c2 >> end) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof() || step <= 0 || end < start)
    throw InputError("bad --orders spec (want start:step:end): " + spec);
  std::vector<double> out;
  for (int i = 0;; ++i) {
    double v = start + i * step;
    if (v > end + 0.5 * step) break;
    out.push_back(std::min(v, end));
  }
  return out;
}

std::string estimate_json(const std::string& family, double order,
                          const CertifiedEstimate& est) {
  JsonObject o;
  o.field("family", family);
  o.field("order", order);
  o.field("lower_bound", est.lower_bound)
      .field("oracle", est.oracle)
      .field("gap", est.gap)
      .field("converged", est.converged)
      .field("cells", static_cast<int>(est.trace.final_partition.cells.size()));
  return o.str();
}

int cmd_compute(const std::string& p_path, const std::string& r_path,
                const OrderParam& order, std::ostream& out) {
  ProbabilityMeasure P = validate_measure(load_measure(p_path));
  ProbabilityMeasure R = validate_measure(load_measure(r_path));
  ExtendedReal v = divergence(P, R, order, QuadratureConfig{});
  std::string fam = order.family == Family::KL      ? "kl"
                    : order.family == Family::Renyi ? "renyi"
                                                    : "tsallis";
  JsonObject o;
  o.field("family", fam)
      .field("order", order.order)
      .field("value", v)
      .field("method", "quadrature");
  out << o.str() << "\n";
  return 0;
}

int cmd_refine(const std::string& p_path, const std::string& r_path,
               const std::string& family, const OrderParam& order,
               const RefinementConfig& cfg, const std::string& trace_path,
               std::ostream& out) {
  ProbabilityMeasure P = validate_measure(load_measure(p_path));
  ProbabilityMeasure R = validate_measure(load_measure(r_path));
  CertifiedEstimate est = supremum_estimate(P, R, order, cfg);
  out << estimate_json(family, order.order, est) << "\n";
  if (!trace_path.empty()) {
    std::ofstream tf(trace_path);
    if (!tf) throw InputError("cannot open trace file " + trace_path);
    tf << trace_to_csv(est.trace);
  }
  return 0;
}

int cmd_sweep(const std::string& p_path, const std::string& r_path,
              const std::string& family, const std::string& orders_spec,
              const RefinementConfig& cfg, std::ostream& out) {
  ProbabilityMeasure P = validate_measure(load_measure(p_path));
  ProbabilityMeasure R = validate_measure(load_measure(r_path));
  std::vector<double> orders = parse_orders(orders_spec);
  std::sort(orders.begin(), orders.end());
  for (double a : orders) {
    OrderParam o = family == "tsallis" ? OrderParam::tsallis(a) : OrderParam::renyi(a);
    CertifiedEstimate est = supremum_estimate(P, R, o, cfg);
    out << estimate_json(family, a, est) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& p_path, const std::string& r_path,
               std::ostream& out) {
  // Optional measure specs are validated up front so corrupted fixtures are
  // rejected before any suite runs.
  if (!p_path.empty()) validate_measure(load_measure(p_path));
  if (!r_path.empty()) validate_measure(load_measure(r_path));
  std::vector<SuiteReport> reports = run_verify_suites(suite, seed);
  bool all_pass = true;
  for (const SuiteReport& r : reports) {
    JsonObject o;
    o.field("suite", r.suite)
        .field("seed", static_cast<long>(seed))
        .field("trials", r.trials)
        .field("max_violation", r.max_violation)
        .field("pass", r.pass);
    if (!r.pass) o.field("counterexample", r.detail);
    out << o.str() << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entropy and relative-entropy toolkit with certified "
               "partition-refinement lower bounds"};
  app.require_subcommand(1);

  std::string p_path, r_path, family = "kl", orders_spec, strategy = "phi-level";
  std::string trace_path, suite = "all";
  double order = 2.0, tol = 1e-4;
  bool order_set = false;
  int max_cells = 4096;
  std::uint64_t seed = 42;

  auto add_pair = [&](CLI::App* sc) {
    sc->add_option("--p", p_path, "P measure JSON path")->required();
    sc->add_option("--r", r_path, "R measure JSON path")->required();
  };
  auto add_family = [&](CLI::App* sc) {
    sc->add_option("--family", family, "kl | renyi | tsallis");
    sc->add_option("--order", order, "order (alpha or q)")
        ->each([&](const std::string&) { order_set = true; });
  };
  auto add_engine = [&](CLI::App* sc) {
    sc->add_option("--tol", tol, "relative gap tolerance");
    sc->add_option("--max-cells", max_cells, "cell budget");
    sc->add_option("--strategy", strategy, "midpoint | phi-level | mass-median");
  };

  CLI::App* compute = app.add_subcommand("compute", "divergence by quadrature");
  add_pair(compute);
  add_family(compute);

  CLI::App* refine = app.add_subcommand("refine", "certified refinement estimate");
  add_pair(refine);
  add_family(refine);
  add_engine(refine);
  refine->add_option("--trace", trace_path, "CSV trace output path");

  CLI::App* sweep = app.add_subcommand("sweep", "refinement over an order range");
  add_pair(sweep);
  sweep->add_option("--family", family, "renyi | tsallis");
  sweep->add_option("--orders", orders_spec, "start:step:end, inclusive")->required();
  add_engine(sweep);

  CLI::App* verify = app.add_subcommand("verify", "invariant suites");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--p", p_path, "optional measure to validate first");
  verify->add_option("--r", r_path, "optional measure to validate first");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << JsonObject().field("error", "InputError").field("message", e.what()).str()
        << "\n";
    return 2;
  }

  CliError ce{"", "", 0};
  try {
    if (compute->parsed())
      return cmd_compute(p_path, r_path, make_order(family, order, order_set), out);
    if (refine->parsed() || sweep->parsed()) {
      RefinementConfig cfg;
      cfg.max_cells = max_cells;
      cfg.rel_gap_tol = tol;
      cfg.strategy = make_strategy(strategy);
      if (refine->parsed())
        return cmd_refine(p_path, r_path, family,
                          make_order(family, order, order_set), cfg, trace_path, out);
      if (family == "kl") throw InputError("sweep needs --family renyi or tsallis");
      return cmd_sweep(p_path, r_path, family, orders_spec, cfg, out);
    }
    return cmd_verify(suite, seed, p_path, r_path, out);
  } catch (const QuadratureDidNotConverge& e) {
    ce = {"QuadratureDidNotConverge", e.what(), 3};
  } catch (const LevelSetResolutionFailure& e) {
    ce = {"LevelSetResolutionFailure", e.what(), 3};
  } catch (const NoValidSplit& e) {
    ce = {"NoValidSplit", e.what(), 3};
  } catch (const NotNormalized& e) {
    ce = {"NotNormalized", e.what(), 2};
  } catch (const NegativeDensity& e) {
    ce = {"NegativeDensity", e.what(), 2};
  } catch (const OrderOutOfRange& e) {
    ce = {"OrderOutOfRange", e.what(), 2};
  } catch (const MismatchedReference& e) {
    ce = {"MismatchedReference", e.what(), 2};
  } catch (const InvalidPartition& e) {
    ce = {"InvalidPartition", e.what(), 2};
  } catch (const InputError& e) {
    ce = {"InputError", e.what(), 2};
  } catch (const Error& e) {
    ce = {"Error", e.what(), 2};
  }
  err << JsonObject().field("error", ce.kind).field("message", ce.message).str()
      << "\n";
  return ce.code;
}

}  // namespace gyp
