// digraphon: analysis of step digraphons from the command line.
//
// Input is a digraphon JSON file ({"measures": [...], "values": [[...]]}) or
// a digraph edge list ("n", then "u v" lines), auto-detected by extension and
// overridable with --format. Every command prints one JSON report on stdout;
// errors go to stderr as JSON. Exit codes: 0 ok, 1 check failure, 2 usage,
// 3 parse/validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "digraphon/core.hpp"
#include "digraphon/densities.hpp"
#include "digraphon/json_io.hpp"
#include "digraphon/metric.hpp"
#include "digraphon/regularity.hpp"
#include "digraphon/spectral.hpp"
#include "digraphon/structure.hpp"

namespace {

using digraphon::Error;
using digraphon::ErrorCode;
using digraphon::StepDigraphon;
using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::ParseError, "cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// FNV-1a over the canonical serialization; stable across runs.
std::string digest(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx",
                static_cast<unsigned long long>(h));
  return out;
}

StepDigraphon load_digraphon(const std::string& path,
                             const std::string& format) {
  std::string text = read_file(path);
  bool edges = format == "edges" ||
               (format.empty() && path.size() > 6 &&
                path.substr(path.size() - 6) == ".edges");
  if (edges) return digraphon::from_digraph(digraphon::parse_digraph(text));
  return digraphon::parse_digraphon(text);
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json complex_json(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

json decomposition_json(const digraphon::Decomposition& dec) {
  json out;
  out["components"] = dec.components;
  out["fragmented"] = dec.fragmented;
  json cond = json::array(), ext = json::array();
  for (auto [a, b] : dec.condensation) cond.push_back(json::array({a, b}));
  for (auto [a, b] : dec.extended_condensation) ext.push_back(json::array({a, b}));
  out["condensation"] = cond;
  out["extended_condensation"] = ext;
  return out;
}

json spectrum_json(const digraphon::SpectrumResult& spec) {
  json out;
  json vals = json::array();
  for (const auto& e : spec.eigenvalues)
    vals.push_back(json{{"value", complex_json(e.value)},
                        {"multiplicity", e.multiplicity}});
  out["eigenvalues"] = vals;
  out["rho"] = spec.rho;
  json peri = json::array();
  for (const auto& e : spec.peripheral)
    peri.push_back(json{{"value", complex_json(e.value)},
                        {"multiplicity", e.multiplicity}});
  out["peripheral"] = peri;
  out["tol_rel"] = spec.tol_rel;
  return out;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<double>& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot open csv path: " + path);
  out << header << "\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    json value = series[i];  // shortest-round-trip double formatting
    out << (i + 1) << "," << value.dump() << "\n";
  }
}

struct Options {
  std::string input;
  std::string second_input;
  std::string format;
  std::string csv;
  std::optional<std::uint64_t> seed;
  double epsilon = 0.1;
  double d = 0.25;
  int k = 3;
  int lmax = 40;
  int horizon = 0;
  double tol = 1e-9;
  int max_cells = 64;
  std::string motif;
};

void require_seed(const Options& opt) {
  if (!opt.seed)
    throw CLI::ValidationError("--seed is required for randomized commands");
}

json run_check(const StepDigraphon& g, json& failures);

int dispatch(const std::string& command, const Options& opt, json& report) {
  StepDigraphon g = load_digraphon(opt.input, opt.format);
  report["input_digest"] = digest(digraphon::serialize(g));

  if (command == "info") {
    digraphon::Degrees deg = digraphon::degrees(g);
    report["result"] = {
        {"blocks", g.block_count()},
        {"measures", vector_json(g.measures())},
        {"values", matrix_json(g.values())},
        {"deg_out", vector_json(deg.out)},
        {"deg_in", vector_json(deg.in)},
        {"deg_min_out", deg.min_out},
        {"deg_max_out", deg.max_out},
        {"deg_min_in", deg.min_in},
        {"deg_max_in", deg.max_in},
        {"ground", digraphon::ground(g)},
    };
  } else if (command == "components") {
    report["result"] = decomposition_json(digraphon::decompose(g));
  } else if (command == "period") {
    digraphon::Decomposition dec = digraphon::decompose(g);
    json comps = json::array();
    for (const auto& blocks : dec.components) {
      digraphon::PeriodicStructure ps = digraphon::period_and_classes(g, blocks);
      comps.push_back(json{{"component", blocks},
                           {"period", ps.period},
                           {"classes", ps.classes}});
    }
    report["result"] = {{"components", comps}};
  } else if (command == "spectrum") {
    digraphon::SpectrumResult spec = digraphon::spectrum(g, opt.tol);
    report["result"] = spectrum_json(spec);
    if (!opt.csv.empty())
      write_csv(opt.csv, "k,gelfand_l2",
                digraphon::gelfand_estimate(g, std::max(2, opt.k)));
  } else if (command == "power") {
    report["result"] =
        json::parse(digraphon::serialize(digraphon::power(g, opt.k)));
  } else if (command == "density") {
    json result;
    if (!opt.motif.empty()) {
      digraphon::Digraph motif =
          digraphon::parse_digraph(read_file(opt.motif));
      digraphon::DensityReport dr = digraphon::hom_density(motif, g);
      result["motif_density"] = dr.value;
      result["assignments"] = dr.assignment_count;
    }
    result["cycle_k"] = opt.k;
    result["cycle_density"] = digraphon::cycle_density(g, opt.k);
    result["rooted_cycle_density"] =
        vector_json(digraphon::rooted_cycle_density(g, opt.k));
    report["result"] = result;
  } else if (command == "cutnorm" || command == "cutdist") {
    StepDigraphon h = load_digraphon(opt.second_input, opt.format);
    if (command == "cutnorm") {
      auto [ga, gb] = digraphon::equal_measure_grid(g, h);
      digraphon::Kernel k = digraphon::Kernel::difference(ga, gb);
      digraphon::CutMode mode = k.block_count() <= 24
                                    ? digraphon::CutMode::Exact
                                    : digraphon::CutMode::Heuristic;
      if (mode == digraphon::CutMode::Heuristic) require_seed(opt);
      digraphon::CutCertificate cert =
          digraphon::cut_norm(k, mode, opt.seed.value_or(0));
      report["result"] = {{"value", cert.value},
                          {"S", cert.s},
                          {"T", cert.t},
                          {"exact", mode == digraphon::CutMode::Exact}};
    } else {
      auto [ga, gb] = digraphon::equal_measure_grid(g, h);
      digraphon::CutMode mode = ga.block_count() <= 8
                                    ? digraphon::CutMode::Exact
                                    : digraphon::CutMode::Heuristic;
      if (mode == digraphon::CutMode::Heuristic) require_seed(opt);
      digraphon::CutDistanceResult dist =
          digraphon::cut_distance(g, h, mode, opt.seed.value_or(0));
      report["result"] = {{"upper_bound", dist.upper_bound},
                          {"permutation", dist.permutation},
                          {"exact_over_permutations",
                           mode == digraphon::CutMode::Exact}};
    }
  } else if (command == "regularity") {
    require_seed(opt);
    digraphon::RegularPartitionResult part = digraphon::weak_regular_partition(
        g, opt.epsilon, opt.max_cells, *opt.seed);
    digraphon::ClusterDigraphResult cluster = digraphon::cluster_digraph(
        part.atoms, part.cells, opt.d, opt.epsilon, *opt.seed);
    json edges = json::array();
    for (auto [u, v] : cluster.digraph.edges) edges.push_back(json::array({u, v}));
    report["result"] = {
        {"cells", part.cells},
        {"compliant", part.compliant},
        {"iterations", part.iterations},
        {"energies", part.energies},
        {"densities", matrix_json(cluster.densities)},
        {"edges", edges},
        {"min_outdegree", cluster.min_outdegree},
        {"outdegree_ok", cluster.outdegree_ok},
        {"verified", digraphon::verify_cluster_digraph(part.atoms, cluster)},
    };
  } else if (command == "asymptotics") {
    digraphon::AsymptoticsReport rep = digraphon::asymptotic_analysis(g, opt.lmax);
    report["result"] = {
        {"rho", rep.rho},
        {"period", rep.period},
        {"classes", rep.classes},
        {"residuals", rep.residuals},
        {"fitted_rate", rep.fitted_rate},
        {"subdominant", rep.subdominant},
        {"offclass_zero", rep.offclass_zero},
    };
    if (!opt.csv.empty()) write_csv(opt.csv, "l,residual", rep.residuals);
  } else if (command == "sample") {
    require_seed(opt);
    digraphon::Digraph sampled = digraphon::sample_digraph(g, opt.k, *opt.seed);
    std::cout << digraphon::serialize(sampled);
    report["result"] = {{"n", sampled.n}, {"edges", sampled.edge_count()}};
    return 0;
  } else if (command == "check") {
    json failures = json::array();
    report["result"] = run_check(g, failures);
    report["result"]["failures"] = failures;
    if (!failures.empty()) return 1;
  }
  return 0;
}

// The verification suite: every library self-check plus module invariants
// that make sense for arbitrary input.
json run_check(const StepDigraphon& g, json& failures) {
  json out;
  auto record = [&](const std::string& name, bool ok) {
    out[name] = ok;
    if (!ok) failures.push_back(name);
  };

  // Round trip.
  StepDigraphon reparsed = digraphon::parse_digraphon(digraphon::serialize(g));
  record("serialize_round_trip",
         reparsed.measures() == g.measures() && reparsed.values() == g.values());

  // Decomposition and its oracle (when small enough).
  digraphon::Decomposition dec = digraphon::decompose(g);
  if (g.block_count() <= 12)
    record("decomposition_oracle", digraphon::verify_decomposition(g));
  bool acyclic = true;
  for (auto [a, b] : dec.condensation) acyclic = acyclic && a < b;
  record("condensation_acyclic", acyclic);

  if (!dec.fragmented.empty()) {
    bool ordered = true;
    try {
      digraphon::fragmented_order(g, dec.fragmented);
    } catch (const Error&) {
      ordered = false;
    }
    record("fragmented_nilpotent", ordered);
  }

  record("cycles_confined", digraphon::cycles_confined_check(g, 6));

  digraphon::SpectrumResult spec = digraphon::spectrum(g);
  record("spectrum_transpose_invariant", [&] {
    digraphon::SpectrumResult st = digraphon::spectrum(digraphon::transpose(g));
    if (st.eigenvalues.size() != spec.eigenvalues.size()) return false;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
      if (std::abs(spec.eigenvalues[i].value - st.eigenvalues[i].value) > 1e-9)
        return false;
    return true;
  }());
  out["rho"] = spec.rho;

  record("cycle_spectrum_identity", digraphon::cycle_spectrum_check(g, 12) <=
                                        1e-8 * std::max(1.0, double(g.block_count())));

  digraphon::ComponentRadiusReport radius = digraphon::component_radius_check(g);
  record("component_radius", radius.holds());

  // Strong-component checks only apply when the whole input is one component.
  bool strongly_connected = dec.fragmented.empty() && dec.components.size() == 1;
  if (strongly_connected && spec.rho > 0) {
    record("powering_periodic", digraphon::powering_periodic_check(g).holds());
    digraphon::AsymptoticsReport rep =
        digraphon::asymptotic_analysis(g, std::max(20, 10 * digraphon::period_and_classes(
                                                            g, dec.components[0]).period));
    record("asymptotics_offclass_zero", rep.offclass_zero);
    out["gelfand"] = digraphon::gelfand_estimate(g, 60).back();
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step digraphon analysis"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> commands = {
      "info",    "components", "period",      "spectrum",
      "power",   "density",    "cutnorm",     "cutdist",
      "regularity", "asymptotics", "sample",  "check"};
  std::string chosen;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", opt.input)->required();
    if (name == "cutnorm" || name == "cutdist")
      sub->add_option("second", opt.second_input)->required();
    sub->add_option("--format", opt.format)
        ->check(CLI::IsMember({"json", "edges"}));
    sub->add_option_function<std::uint64_t>(
        "--seed", [&opt](const std::uint64_t& v) { opt.seed = v; });
    sub->add_option("--epsilon", opt.epsilon);
    sub->add_option("--d", opt.d);
    sub->add_option("--k", opt.k);
    sub->add_option("--lmax", opt.lmax);
    sub->add_option("--horizon", opt.horizon);
    sub->add_option("--csv", opt.csv);
    sub->add_option("--tol", opt.tol);
    sub->add_option("--max-cells", opt.max_cells);
    sub->add_option("--motif", opt.motif);
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::json{{"error", "usage"},
                                {"message", e.what()}}
                     .dump()
              << "\n";
    return 2;
  }

  json report;
  report["command"] = chosen;
  report["parameters"] = {
      {"epsilon", opt.epsilon}, {"d", opt.d},       {"k", opt.k},
      {"lmax", opt.lmax},       {"tol", opt.tol},   {"max_cells", opt.max_cells},
  };
  if (opt.seed) report["parameters"]["seed"] = *opt.seed;
  report["warnings"] = nlohmann::json::array();

  try {
    int code = dispatch(chosen, opt, report);
    if (chosen != "sample") std::cout << report.dump(2) << "\n";
    return code;
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", digraphon::error_code_name(e.code())},
                                {"message", e.what()}}
                     .dump()
              << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "internal"}, {"message", e.what()}}.dump()
              << "\n";
    return 3;
  }
}
