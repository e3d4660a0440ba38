#include "mqw/experiment.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "mqw/coin.hpp"
#include "mqw/eigensolver.hpp"
#include "mqw/fock.hpp"
#include "mqw/io.hpp"
#include "mqw/magnetic.hpp"
#include "mqw/spectra.hpp"
#include "mqw/walk.hpp"

namespace mqw {

using Json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, "cannot parse \"" + text + "\" as a number");
  }
  return value;
}

long long parse_integer(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, "cannot parse \"" + text + "\" as an integer");
  }
  return value;
}

bool is_builtin_coin(const std::string& name) {
  return name == "grover" || name == "hadamard-partition" || name == "fourier" ||
         name == "identity" || name == "random";
}

struct InitialSpec {
  std::string kind;
  std::uint32_t mask = 0;
  int coin = 0;
};

InitialSpec parse_initial(const std::string& text, int n) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("initial", "expected vertex:<mask>[:<coin>], uniform:<mask> or eigen:<mask>[:<coin>]");
  }
  InitialSpec spec;
  spec.kind = parts[0];
  if (spec.kind != "vertex" && spec.kind != "uniform" && spec.kind != "eigen") {
    throw ConfigError("initial", "unknown state kind \"" + spec.kind + "\"");
  }
  if (spec.kind == "uniform" && parts.size() == 3) {
    throw ConfigError("initial", "uniform states take no coin index");
  }
  const long long mask = parse_integer("initial", parts[1]);
  if (mask < 0 || !Subset{static_cast<std::uint32_t>(mask)}.fits(n) || mask > 0xffffffffLL) {
    throw ConfigError("initial", "vertex mask " + parts[1] + " outside the hypercube for n=" +
                                     std::to_string(n));
  }
  spec.mask = static_cast<std::uint32_t>(mask);
  if (parts.size() == 3) {
    const long long coin = parse_integer("initial", parts[2]);
    if (coin < 0 || coin > 1 << 20) throw ConfigError("initial", "coin index out of range");
    spec.coin = static_cast<int>(coin);
  }
  return spec;
}

MagneticPotential parse_phase_list(const std::string& text, int n) {
  std::vector<double> phases;
  for (const auto& part : split(text, ',')) phases.push_back(parse_double("nu", part));
  if (phases.size() != static_cast<std::size_t>(n + 1)) {
    throw ConfigError("nu", "expected " + std::to_string(n + 1) + " phases, got " +
                                std::to_string(phases.size()));
  }
  for (std::size_t j = 0; j < phases.size(); ++j) {
    if (!std::isfinite(phases[j]) || phases[j] < -kPi || phases[j] > kPi) {
      throw ConfigError("nu", "phase " + std::to_string(j) + " outside [-pi, pi]");
    }
  }
  return MagneticPotential(std::move(phases));
}

CoinSystem build_coins(const ExperimentConfig& c, std::mt19937_64& rng) {
  if (c.coin_file) {
    CoinSystem cs = [&] {
      try {
        return io::coin_system_from_json(io::read_json_file(*c.coin_file));
      } catch (const std::exception& e) {
        throw ConfigError("coin-file", e.what());
      }
    }();
    if (cs.n() != c.n) {
      throw ConfigError("coin-file", "coin system has n=" + std::to_string(cs.n()) +
                                         " but --n is " + std::to_string(c.n));
    }
    return cs;
  }
  if (c.coin == "grover") return grover_coin_system(c.n);
  if (c.coin == "hadamard-partition") return hadamard_partition_coin();
  if (c.coin == "fourier") return fourier_coin_system(c.n);
  if (c.coin == "identity") return identity_coin_system(c.n);
  const int d = c.coin_dim == 0 ? c.n + 1 : c.coin_dim;
  return random_coin_system(c.n, d, rng());
}

MagneticPotential build_potential(const ExperimentConfig& c, std::mt19937_64& rng) {
  if (c.potential_file) {
    try {
      const FullPotentialTable table = io::potential_table_from_json(io::read_json_file(*c.potential_file));
      if (table.n() != c.n) throw ConfigError("potential-file", "table n does not match --n");
      return reduce_potential(table);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("potential-file", e.what());
    }
  }
  if (c.nu == "null") return MagneticPotential::null(c.n);
  if (c.nu == "random") return MagneticPotential::random(c.n, rng);
  return parse_phase_list(c.nu, c.n);
}

void require_dense_capacity(const ExperimentConfig& c, const CoinSystem& cs) {
  const std::size_t dim = vertex_count(c.n) * static_cast<std::size_t>(cs.d());
  if (c.n > kMaxDenseOrder || dim > kMaxDenseDim) {
    throw CapacityError("dense walk of dimension " + std::to_string(dim) +
                        " exceeds the dense limit (n <= " + std::to_string(kMaxDenseOrder) +
                        ", dim <= " + std::to_string(kMaxDenseDim) +
                        "); use a smaller n or coin dimension, or the simulate task which is "
                        "matrix-free");
  }
}

Json multiset_json(const MultisetComparison& m) {
  return {{"equal", m.equal}, {"clusters", m.clusters}, {"mismatched", m.mismatched}};
}

Json point_json(const PointSpectrumCheck& p) {
  return {{"passed", p.passed},
          {"hausdorff", p.hausdorff},
          {"multiset", multiset_json(p.multiset)},
          {"walk_spectrum", io::to_json(p.walk)},
          {"coin_union_spectrum", io::to_json(p.coin_union)}};
}

Json aev_json(const ApproximateSpectrumCheck& a) {
  Json out = {{"passed", a.passed},
              {"hausdorff", a.hausdorff},
              {"multiset", multiset_json(a.multiset)},
              {"point_route_walk_distance", a.point_route_walk_distance},
              {"point_route_union_distance", a.point_route_union_distance},
              {"agrees_with_point_check", a.agrees_with_point_check},
              {"lifted_witness_residual", a.lifted_witness_residual},
              {"lifted_witnesses", a.lifted_witnesses}};
  if (a.walk_witnesses) {
    out["walk_witnesses"] = {{"count", a.walk_witnesses->count},
                             {"max_residual", a.walk_witnesses->max_residual}};
  } else {
    out["walk_witnesses"] = nullptr;
  }
  return out;
}

Json stability_json(const StabilityCheck& s) {
  Json potentials = Json::array();
  for (const auto& p : s.potentials) potentials.push_back(p.phases());
  return {{"passed", s.passed},
          {"max_spectrum_distance", s.max_spectrum_distance},
          {"max_operator_difference", s.max_operator_difference},
          {"nonvacuous", s.nonvacuous},
          {"potentials", potentials}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

WalkState initial_state(const WalkOperator& op, const InitialSpec& spec) {
  const Subset sigma{spec.mask};
  if (spec.kind != "uniform" && spec.coin >= op.d()) {
    throw ConfigError("initial", "coin index " + std::to_string(spec.coin) +
                                     " outside coin dimension " + std::to_string(op.d()));
  }
  if (spec.kind == "vertex") return vertex_state(op, sigma, spec.coin);
  if (spec.kind == "uniform") return uniform_coin_state(op, sigma);
  const SchurEigenpairs pairs = unitary_schur(algebraic_sum(op.coins(), sigma));
  return magnetic_eigenstate(op, sigma, pairs.vectors.col(spec.coin));
}

RunResult simulate(const ExperimentConfig& c, const WalkOperator& op, const Json& header) {
  const InitialSpec spec = parse_initial(c.initial, c.n);
  WalkState state = initial_state(op, spec);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(c.steps) + 1);
  rows.push_back(position_distribution(op, state));
  for (int t = 0; t < c.steps; ++t) {
    state = step(op, state);
    rows.push_back(position_distribution(op, state));
  }

  RunResult result;
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    out.precision(17);
    out << 't';
    for (std::size_t s = 0; s < op.positions(); ++s) out << ',' << s;
    out << '\n';
    for (std::size_t t = 0; t < rows.size(); ++t) {
      out << t;
      for (const double p : rows[t]) out << ',' << p;
      out << '\n';
    }
    result.report = out.str();
  } else {
    Json doc = header;
    doc["initial"] = c.initial;
    doc["steps"] = c.steps;
    doc["distributions"] = rows;
    doc["final_norm"] = state.vector.norm();
    doc["final_state"] = io::state_to_json(state.vector);
    result.report = dump(doc);
  }
  return result;
}

RunResult spectrum(const ExperimentConfig& c, const MagneticPotential& nu, const CoinSystem& cs,
                   const SpectrumOptions& opts, const Json& header) {
  require_dense_capacity(c, cs);
  const SpectrumReport report = walk_point_spectrum(nu, cs, opts);
  RunResult result;
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "re,im,arg,multiplicity\n";
    for (const auto& ev : report.eigenvalues) {
      out << format_double(ev.value.real()) << ',' << format_double(ev.value.imag()) << ','
          << format_double(ev.arg()) << ',' << ev.multiplicity << '\n';
    }
    result.report = out.str();
  } else {
    Json doc = header;
    doc["spectrum"] = io::to_json(report);
    result.report = dump(doc);
  }
  return result;
}

RunResult run_checked(const ExperimentConfig& c) {
  validate(c);
  std::mt19937_64 rng(c.seed);
  const CoinSystem cs = build_coins(c, rng);
  const MagneticPotential nu = build_potential(c, rng);

  SpectrumOptions opts;
  opts.cluster_tol = c.tol_spectrum;

  Json header = {{"generator", "mt19937_64"},
                 {"seed", c.seed},
                 {"task", task_name(c.task)},
                 {"config", config_to_json(c)},
                 {"n", cs.n()},
                 {"d", cs.d()},
                 {"nu", nu.phases()}};

  const CoinReport coin_report = validate_coin_system(cs);
  if (!coin_report.passed()) {
    throw ConfigError(c.coin_file ? "coin-file" : "coin", "coin system fails validation");
  }

  if (c.task == Task::spectrum) return spectrum(c, nu, cs, opts, header);
  if (c.task == Task::simulate) {
    return simulate(c, evolution_operator(nu, cs), header);
  }

  require_dense_capacity(c, cs);

  Json doc = header;
  bool passed = true;

  if (c.task == Task::verify_point) {
    const auto point = verify_point_spectrum_theorem(nu, cs, c.tol_spectrum, opts);
    doc["point_spectrum"] = point_json(point);
    passed = point.passed;
  } else if (c.task == Task::verify_aev) {
    const auto aev = verify_approximate_spectrum_theorem(nu, cs, c.tol_spectrum, opts);
    doc["approximate_spectrum"] = aev_json(aev);
    passed = aev.passed;
  } else if (c.task == Task::verify_stability) {
    const auto stability = verify_spectral_stability(cs, c.samples, rng(), c.tol_spectrum, opts);
    doc["spectral_stability"] = stability_json(stability);
    passed = stability.passed;
  } else {
    const CarReport car = verify_car(c.n);
    doc["car"] = {{"passed", car.passed(c.tol_construct)},
                  {"annihilators_commute", car.annihilators_commute},
                  {"creators_commute", car.creators_commute},
                  {"mixed_commute", car.mixed_commute},
                  {"annihilator_square", car.annihilator_square},
                  {"creator_square", car.creator_square},
                  {"anticommutator", car.anticommutator}};
    passed = passed && car.passed(c.tol_construct);

    doc["coin"] = {{"passed", coin_report.passed()},
                   {"mutual_annihilation", coin_report.mutual_annihilation},
                   {"sum_unitarity", coin_report.sum_unitarity},
                   {"completeness", coin_report.completeness}};

    const MagneticReport magnetic = check_magnetic_structure(nu);
    const bool magnetic_ok = magnetic.passed(c.tol_construct, kCompositeTol);
    doc["magnetic"] = {{"passed", magnetic_ok},
                       {"involution", magnetic.involution},
                       {"hermiticity", magnetic.hermiticity},
                       {"commutation", magnetic.commutation},
                       {"gram", magnetic.gram},
                       {"eigen_relation", magnetic.eigen_relation},
                       {"formula_agreement", magnetic.formula_agreement}};
    passed = passed && magnetic_ok;

    const WalkOperator op = evolution_operator(nu, cs);
    const double walk_unitarity = unitarity_residual_estimate(op.dense());
    double sum_max = 0.0;
    for (std::uint32_t s = 0; s < vertex_count(c.n); ++s) {
      sum_max = std::max(sum_max, unitarity_residual(algebraic_sum(cs, Subset{s})));
    }
    const bool unitary_ok = walk_unitarity <= kCompositeTol && sum_max <= kCompositeTol;
    doc["unitarity"] = {{"passed", unitary_ok},
                        {"walk", walk_unitarity},
                        {"algebraic_sums", sum_max}};
    passed = passed && unitary_ok;

    const IntertwiningReport inter = intertwining_check(op);
    doc["intertwining"] = {{"passed", inter.passed()},
                           {"max_residual", inter.max_residual},
                           {"off_block", inter.off_block},
                           {"block_deviation", inter.block_deviation},
                           {"dense_checked", inter.dense_checked}};
    passed = passed && inter.passed();

    const auto point = verify_point_spectrum_theorem(nu, cs, c.tol_spectrum, opts);
    doc["point_spectrum"] = point_json(point);
    const auto aev = verify_approximate_spectrum_theorem(nu, cs, c.tol_spectrum, opts, &point);
    doc["approximate_spectrum"] = aev_json(aev);
    const auto stability = verify_spectral_stability(cs, c.samples, rng(), c.tol_spectrum, opts);
    doc["spectral_stability"] = stability_json(stability);
    passed = passed && point.passed && aev.passed && stability.passed;
  }

  doc["passed"] = passed;
  RunResult result;
  result.report = dump(doc);
  result.exit_code = passed ? 0 : 1;
  if (!passed) result.diagnostic = "one or more checks failed; see report";
  return result;
}

template <typename T>
T json_get(const Json& doc, const char* key, const char* type) {
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(key, std::string("expected ") + type);
  }
}

}  // namespace

Task parse_task(const std::string& name) {
  if (name == "simulate") return Task::simulate;
  if (name == "spectrum") return Task::spectrum;
  if (name == "verify-point") return Task::verify_point;
  if (name == "verify-aev") return Task::verify_aev;
  if (name == "verify-stability") return Task::verify_stability;
  if (name == "verify-all") return Task::verify_all;
  throw ConfigError("task", "unknown task \"" + name + "\"");
}

std::string task_name(Task task) {
  switch (task) {
    case Task::simulate: return "simulate";
    case Task::spectrum: return "spectrum";
    case Task::verify_point: return "verify-point";
    case Task::verify_aev: return "verify-aev";
    case Task::verify_stability: return "verify-stability";
    case Task::verify_all: return "verify-all";
  }
  return "unknown";
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw ConfigError("format", "unknown format \"" + name + "\"");
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_null() && (key == "coin-file" || key == "potential-file" || key == "out")) {
      continue;
    }
    if (key == "n") {
      c.n = json_get<int>(doc, "n", "an integer");
    } else if (key == "coin") {
      c.coin = json_get<std::string>(doc, "coin", "a string");
    } else if (key == "coin-file") {
      c.coin_file = json_get<std::string>(doc, "coin-file", "a path");
    } else if (key == "coin-dim") {
      c.coin_dim = json_get<int>(doc, "coin-dim", "an integer");
    } else if (key == "nu") {
      if (value.is_array()) {
        std::string joined;
        for (const auto& v : value) {
          if (!v.is_number()) throw ConfigError("nu", "phase list entries must be numbers");
          if (!joined.empty()) joined += ',';
          joined += format_double(v.get<double>());
        }
        c.nu = joined;
      } else if (value.is_null()) {
        c.nu = "null";
      } else {
        c.nu = json_get<std::string>(doc, "nu", "\"null\", \"random\", or a phase list");
      }
    } else if (key == "potential-file") {
      c.potential_file = json_get<std::string>(doc, "potential-file", "a path");
    } else if (key == "samples") {
      c.samples = json_get<int>(doc, "samples", "an integer");
    } else if (key == "seed") {
      c.seed = json_get<std::uint64_t>(doc, "seed", "a non-negative integer");
    } else if (key == "task") {
      c.task = parse_task(json_get<std::string>(doc, "task", "a string"));
    } else if (key == "steps") {
      c.steps = json_get<int>(doc, "steps", "an integer");
    } else if (key == "initial") {
      c.initial = json_get<std::string>(doc, "initial", "a string");
    } else if (key == "out") {
      c.out = json_get<std::string>(doc, "out", "a path");
    } else if (key == "format") {
      c.format = parse_format(json_get<std::string>(doc, "format", "a string"));
    } else if (key == "tol-spectrum") {
      c.tol_spectrum = json_get<double>(doc, "tol-spectrum", "a number");
    } else if (key == "tol-construct") {
      c.tol_construct = json_get<double>(doc, "tol-construct", "a number");
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json doc = {{"n", c.n},
              {"coin", c.coin},
              {"coin-dim", c.coin_dim},
              {"nu", c.nu},
              {"samples", c.samples},
              {"seed", c.seed},
              {"task", task_name(c.task)},
              {"steps", c.steps},
              {"initial", c.initial},
              {"format", c.format == OutputFormat::json ? "json" : "csv"},
              {"tol-spectrum", c.tol_spectrum},
              {"tol-construct", c.tol_construct}};
  doc["coin-file"] = c.coin_file ? Json(c.coin_file->string()) : Json(nullptr);
  doc["potential-file"] = c.potential_file ? Json(c.potential_file->string()) : Json(nullptr);
  return doc;
}

void validate(const ExperimentConfig& c) {
  if (c.n < 0) throw ConfigError("n", "must be non-negative");
  if (c.n > 24) throw ConfigError("n", "must be at most 24");
  if (!c.coin_file && !is_builtin_coin(c.coin)) {
    throw ConfigError("coin", "unknown coin \"" + c.coin +
                                  "\" (grover, hadamard-partition, fourier, identity, random)");
  }
  if (!c.coin_file) {
    if (c.coin == "grover" && c.n < 1) throw ConfigError("coin", "grover needs n >= 1");
    if (c.coin == "hadamard-partition" && c.n != 1) {
      throw ConfigError("coin", "hadamard-partition is defined for n = 1 only");
    }
  }
  if (c.coin_dim != 0 && c.coin_dim < c.n + 1) {
    throw ConfigError("coin-dim", "must be at least n+1 = " + std::to_string(c.n + 1));
  }
  if (c.coin_dim != 0 && (c.coin_file || c.coin != "random")) {
    throw ConfigError("coin-dim", "only applies to the random coin");
  }
  if (c.potential_file && c.nu != "null") {
    throw ConfigError("potential-file", "give either a potential table or --nu, not both");
  }
  if (c.nu != "null" && c.nu != "random") parse_phase_list(c.nu, c.n);
  if (c.steps < 0) throw ConfigError("steps", "must be non-negative");
  if ((c.task == Task::verify_stability || c.task == Task::verify_all) && c.samples < 2) {
    throw ConfigError("samples", "stability checks need at least 2 random potentials");
  }
  if (c.samples < 1) throw ConfigError("samples", "must be positive");
  if (!(c.tol_spectrum > 0.0) || !std::isfinite(c.tol_spectrum)) {
    throw ConfigError("tol-spectrum", "must be a positive number");
  }
  if (!(c.tol_construct > 0.0) || !std::isfinite(c.tol_construct)) {
    throw ConfigError("tol-construct", "must be a positive number");
  }
  if (c.format == OutputFormat::csv && c.task != Task::simulate && c.task != Task::spectrum) {
    throw ConfigError("format", "csv output is available for simulate and spectrum only");
  }
  if (c.task == Task::simulate) parse_initial(c.initial, c.n);
}

RunResult run(const ExperimentConfig& config) {
  RunResult result;
  try {
    return run_checked(config);
  } catch (const ConfigError& e) {
    result.diagnostic = std::string("invalid configuration: ") + e.what();
  } catch (const CapacityError& e) {
    result.diagnostic = std::string("capacity exceeded: ") + e.what();
  } catch (const ValidationError& e) {
    result.diagnostic = std::string("invalid input: ") + e.what();
  } catch (const ArgumentError& e) {
    result.diagnostic = std::string("invalid argument: ") + e.what();
  }
  result.exit_code = 2;
  result.report.clear();
  return result;
}

int run_and_write(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const RunResult result = run(config);
  if (!result.diagnostic.empty()) err << "mqw: " << result.diagnostic << '\n';
  if (result.exit_code == 2) return 2;
  if (config.out) {
    try {
      io::write_file_atomically(*config.out, result.report);
    } catch (const std::exception& e) {
      err << "mqw: out: " << e.what() << '\n';
      return 2;
    }
  } else {
    out << result.report;
  }
  return result.exit_code;
}

}  // namespace mqw
