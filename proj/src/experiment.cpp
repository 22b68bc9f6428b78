// Copyright 2026 The semiquant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semiquant/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "semiquant/csv.hpp"
#include "semiquant/error.hpp"
#include "semiquant/faq.hpp"
#include "semiquant/lindblad.hpp"
#include "semiquant/models.hpp"

namespace semiquant {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Schema

enum class KeyType { number, integer, string, strings, points };

struct KeySpec {
  const char* name;
  KeyType type;
  bool required;
  json fallback;
};

struct SectionSpec {
  const char* name;
  std::vector<KeySpec> keys;
};

struct ExperimentSpec {
  const char* kind;
  std::vector<SectionSpec> sections;
};

KeySpec req(const char* name, KeyType t) { return {name, t, true, nullptr}; }
KeySpec opt(const char* name, KeyType t, json fallback) { return {name, t, false, std::move(fallback)}; }

SectionSpec validate_section(bool with_faq) {
  SectionSpec s{"validate",
                {opt("pos_tol", KeyType::number, 1e-8), opt("herm_tol", KeyType::number, 1e-10),
                 opt("trace_tol", KeyType::number, 1e-10)}};
  if (with_faq) s.keys.push_back(opt("faq_tol", KeyType::number, 1e-12));
  return s;
}

const std::vector<ExperimentSpec>& schema() {
  static const std::vector<ExperimentSpec> specs = [] {
    using K = KeyType;
    std::vector<ExperimentSpec> v;
    v.push_back({"oscillator",
                 {{"model",
                   {req("omega0", K::number), req("lambda", K::number), opt("u", K::number, 0.0),
                    opt("alpha_re", K::number, 2.0), opt("alpha_im", K::number, 0.0)}},
                  {"numerics", {req("dim", K::integer), opt("samples", K::integer, 100)}},
                  {"evolve",
                   {opt("dt", K::number, 1e-3), req("t_end", K::number), opt("sample_every", K::integer, 100),
                    opt("positivity_abort", K::number, 1e-6)}},
                  validate_section(true)}});
    v.push_back({"limit-cycle",
                 {{"model", {opt("omega", K::number, 1.0), req("lambda", K::number), req("mu", K::number)}},
                  {"numerics",
                   {req("dim", K::integer), opt("n_max", K::integer, 60), opt("samples", K::integer, 100)}},
                  {"stationary", {opt("null_tol", K::number, 1e-9)}},
                  validate_section(true)}});
    v.push_back({"rotators",
                 {{"model",
                   {req("omega1", K::number), req("omega2", K::number), req("lambda", K::number),
                    req("l", K::number)}},
                  {"numerics", {opt("samples", K::integer, 100)}},
                  {"stationary", {opt("null_tol", K::number, 1e-9)}},
                  validate_section(true)}});
    v.push_back({"classical-flow",
                 {{"model",
                   {req("hamiltonian", K::string), opt("channels", K::strings, json::array()),
                    req("initial", K::points)}},
                  {"evolve", {opt("dt", K::number, 1e-2), req("t_end", K::number), opt("sample_every", K::integer, 1)}}}});
    v.push_back({"conformance",
                 {{"model",
                   {req("omega1", K::number), req("omega2", K::number), req("lambda", K::number),
                    req("l", K::number)}},
                  {"numerics", {opt("samples", K::integer, 50)}},
                  {"validate", {opt("agree_tol", K::number, 1e-10)}}}});
    return v;
  }();
  return specs;
}

const ExperimentSpec* find_spec(const std::string& kind) {
  for (const auto& s : schema())
    if (kind == s.kind) return &s;
  return nullptr;
}

std::string kinds_list() {
  std::string out;
  for (const auto& s : schema()) out += (out.empty() ? "" : ", ") + std::string(s.kind);
  return out;
}

bool type_ok(const json& v, KeyType t) {
  switch (t) {
    case KeyType::number:
      return v.is_number();
    case KeyType::integer:
      return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    case KeyType::string:
      return v.is_string();
    case KeyType::strings:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); });
    case KeyType::points:
      if (!v.is_array() || v.empty()) return false;
      for (const auto& p : v) {
        if (!p.is_array() || p.empty()) return false;
        for (const auto& c : p)
          if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) return false;
      }
      return true;
  }
  return false;
}

const char* type_name(KeyType t) {
  switch (t) {
    case KeyType::number:
      return "a number";
    case KeyType::integer:
      return "a non-negative integer";
    case KeyType::string:
      return "a string";
    case KeyType::strings:
      return "an array of strings";
    case KeyType::points:
      return "a non-empty array of points, each an array of [re, im] pairs";
  }
  return "?";
}

const KeySpec* find_key(const ExperimentSpec& spec, const std::string& section, const std::string& key) {
  for (const auto& s : spec.sections)
    if (section == s.name)
      for (const auto& k : s.keys)
        if (key == k.name) return &k;
  return nullptr;
}

/// Fills defaults and collects problems; the returned document is meaningful only when problems is empty.
json resolve(const json& doc, std::vector<std::string>& problems) {
  if (!doc.is_object()) {
    problems.push_back("config: top level must be a JSON object");
    return {};
  }
  json out = json::object();
  const ExperimentSpec* spec = nullptr;
  if (!doc.contains("experiment")) {
    problems.push_back("experiment: missing required key");
  } else if (!doc["experiment"].is_string()) {
    problems.push_back("experiment: must be a string");
  } else {
    spec = find_spec(doc["experiment"].get<std::string>());
    if (!spec)
      problems.push_back("experiment: unknown kind '" + doc["experiment"].get<std::string>() + "' (expected one of " +
                         kinds_list() + ")");
    else
      out["experiment"] = spec->kind;
  }

  if (doc.contains("seed") && !type_ok(doc["seed"], KeyType::integer))
    problems.push_back("seed: must be a non-negative integer");
  out["seed"] = doc.value("seed", json(0));
  if (doc.contains("output_dir") && !doc["output_dir"].is_string()) problems.push_back("output_dir: must be a string");
  out["output_dir"] = doc.value("output_dir", json("runs"));

  if (!spec) return out;

  std::set<std::string> known{"experiment", "seed", "output_dir", "sweep"};
  for (const auto& sec : spec->sections) {
    known.insert(sec.name);
    const json* given = nullptr;
    if (doc.contains(sec.name)) {
      given = &doc[sec.name];
      if (!given->is_object()) {
        problems.push_back(std::string(sec.name) + ": must be an object");
        continue;
      }
      for (auto it = given->begin(); it != given->end(); ++it) {
        const bool listed = std::any_of(sec.keys.begin(), sec.keys.end(),
                                        [&](const KeySpec& k) { return it.key() == k.name; });
        if (!listed) problems.push_back(std::string(sec.name) + "." + it.key() + ": unknown key for " + spec->kind);
      }
    }
    json& dst = out[sec.name] = json::object();
    for (const auto& k : sec.keys) {
      const std::string path = std::string(sec.name) + "." + k.name;
      if (given && given->contains(k.name)) {
        const json& v = (*given)[k.name];
        if (!type_ok(v, k.type))
          problems.push_back(path + ": must be " + type_name(k.type));
        else
          dst[k.name] = v;
      } else if (k.required) {
        problems.push_back(path + ": missing required key");
      } else {
        dst[k.name] = k.fallback;
      }
    }
  }
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known.count(it.key())) problems.push_back(it.key() + ": unknown section for " + spec->kind);

  if (doc.contains("sweep")) {
    const json& sw = doc["sweep"];
    if (!sw.is_object()) {
      problems.push_back("sweep: must be an object");
    } else {
      for (auto it = sw.begin(); it != sw.end(); ++it)
        if (it.key() != "parameter" && it.key() != "values") problems.push_back("sweep." + it.key() + ": unknown key");
      if (!sw.contains("parameter") || !sw["parameter"].is_string()) {
        problems.push_back("sweep.parameter: missing required key (a string like \"model.lambda\")");
      } else {
        const std::string param = sw["parameter"].get<std::string>();
        const auto dot = param.find('.');
        const KeySpec* k =
            dot == std::string::npos ? nullptr : find_key(*spec, param.substr(0, dot), param.substr(dot + 1));
        if (!k || (k->type != KeyType::number && k->type != KeyType::integer))
          problems.push_back("sweep.parameter: '" + param + "' is not a numeric key of " + spec->kind);
        else if (!sw.contains("values") || !sw["values"].is_array() || sw["values"].empty())
          problems.push_back("sweep.values: missing required non-empty array");
        else
          for (const auto& v : sw["values"])
            if (!type_ok(v, k->type)) {
              problems.push_back("sweep.values: every value must be " + std::string(type_name(k->type)));
              break;
            }
      }
      out["sweep"] = sw;
    }
  }
  return out;
}

json parse_document(const std::string& text, std::vector<std::string>& problems) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    problems.push_back(std::string("config: invalid JSON: ") + e.what());
    return nullptr;
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Runners

double num(const json& cfg, const char* sec, const char* key) { return cfg.at(sec).at(key).get<double>(); }
std::size_t count(const json& cfg, const char* sec, const char* key) {
  return cfg.at(sec).at(key).get<std::size_t>();
}
std::uint64_t seed_of(const json& cfg) { return cfg.at("seed").get<std::uint64_t>(); }

DensityTolerances tolerances_of(const json& cfg) {
  DensityTolerances t;
  t.hermiticity = num(cfg, "validate", "herm_tol");
  t.trace = num(cfg, "validate", "trace_tol");
  t.positivity = num(cfg, "validate", "pos_tol");
  return t;
}

StationaryOptions stationary_of(const json& cfg) {
  StationaryOptions o;
  o.null_tol = num(cfg, "stationary", "null_tol");
  o.tolerances = tolerances_of(cfg);
  return o;
}

/// Writes into the run directory; a null directory (sweep points) discards output.
class Sink {
 public:
  explicit Sink(const fs::path* dir) : dir_(dir) {}
  bool active() const { return dir_ != nullptr; }
  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    if (!dir_) return;
    std::ofstream os(*dir_ / name, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorKind::io, "cannot write " + (*dir_ / name).string());
    body(os);
    if (!os) fail(ErrorKind::io, "write failed for " + (*dir_ / name).string());
  }

 private:
  const fs::path* dir_;
};

json faq_headline(const FaqReport& r) { return {{"max_faq_residual", r.max_abs_error}, {"faq_pass", r.pass}}; }

json run_oscillator(const json& cfg, const Sink& sink) {
  const models::OscillatorParams p{num(cfg, "model", "omega0"), num(cfg, "model", "lambda"), num(cfg, "model", "u")};
  const Complex alpha(num(cfg, "model", "alpha_re"), num(cfg, "model", "alpha_im"));
  const std::size_t dim = count(cfg, "numerics", "dim");
  const double t_end = num(cfg, "evolve", "t_end");
  const FaqSystem sys = models::oscillator_faq(p);
  json out = faq_headline(verify_faq(sys, models::oscillator_field(p),
                                     sample_disc(1, count(cfg, "numerics", "samples"), kFaqSampleRadius, seed_of(cfg)),
                                     num(cfg, "validate", "faq_tol")));

  const LindbladModel model = models::oscillator_lindblad(p, dim);
  EvolveOptions eo;
  eo.dt = num(cfg, "evolve", "dt");
  eo.sample_every = count(cfg, "evolve", "sample_every");
  eo.positivity_abort = num(cfg, "evolve", "positivity_abort");
  eo.final_tolerances = tolerances_of(cfg);
  eo.observables = {{"a", annihilation(dim)}, {"n", number(dim)}};
  const EvolveResult ev = evolve(model, models::coherent_state(dim, alpha), t_end, eo);

  const WeightedTrajectory cl = ensemble_weights(sys, {PhasePoint({alpha})}, t_end, eo.dt).front();
  const std::size_t steps = cl.trajectory.times.size() - 1;
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
  WeightedTrajectory sampled;
  double ehrenfest = 0.0;
  for (std::size_t k = 0; k < ev.times.size(); ++k) {
    const auto idx = h == 0.0 ? 0 : static_cast<std::size_t>(std::llround(ev.times[k] / h));
    ehrenfest = std::max(ehrenfest, std::abs(ev.expectations[k][0] - cl.trajectory.points[idx][0]));
    sampled.trajectory.times.push_back(cl.trajectory.times[idx]);
    sampled.trajectory.points.push_back(cl.trajectory.points[idx]);
    sampled.weights.push_back(cl.weights[idx]);
  }
  sink.write("expectations.csv", [&](std::ostream& os) { write_expectation_csv(os, ev); });
  sink.write("classical.csv", [&](std::ostream& os) { write_trajectory_csv(os, sampled); });

  out["max_ehrenfest_error"] = ehrenfest;
  out["final_mean_n"] = ev.expectations.back()[1].real();
  out["max_trace_error"] = ev.max_trace_error;
  out["max_hermiticity_error"] = ev.max_hermiticity_error;
  out["min_eigenvalue"] = ev.min_eigenvalue;
  out["phase_divergence"] = phase_divergence(sys, PhasePoint({alpha}));
  out["final_weight"] = cl.weights.back();
  return out;
}

json run_limit_cycle(const json& cfg, const Sink& sink) {
  const models::LimitCycleParams p{num(cfg, "model", "omega"), num(cfg, "model", "lambda"), num(cfg, "model", "mu")};
  const std::size_t dim = count(cfg, "numerics", "dim");
  const std::size_t n_max = count(cfg, "numerics", "n_max");
  const FaqSystem sys = models::limit_cycle_faq(p);
  json out = faq_headline(verify_faq(sys, models::limit_cycle_field(p),
                                     sample_disc(1, count(cfg, "numerics", "samples"), kFaqSampleRadius, seed_of(cfg)),
                                     num(cfg, "validate", "faq_tol")));

  const LindbladModel model = models::limit_cycle_lindblad(p, dim);
  const DensityMatrix rho = stationary(model, stationary_of(cfg));
  const Eigen::MatrixXcd& m = rho.matrix();
  double mean = 0.0, fact2 = 0.0, offdiag = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double n = static_cast<double>(r), pr = m(r, r).real();
    mean += n * pr;
    fact2 += n * (n - 1.0) * pr;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (c != r) offdiag = std::max(offdiag, std::abs(m(r, c)));
  }
  out["mean_n_liouvillian"] = mean;
  out["mandel_q_liouvillian"] = mean > 0.0 ? fact2 / mean - mean : std::numeric_limits<double>::quiet_NaN();
  out["max_offdiag"] = offdiag;
  out["stationary_residual"] = stationary_residual(model, rho);
  out["purity"] = rho.purity();

  std::vector<double> rec;
  if (p.lambda > 0.0) {
    const double nu = p.nu();
    rec = models::recurrence_stationary(nu, n_max);
    double rec_mean = 0.0, dev = 0.0;
    for (std::size_t n = 0; n < rec.size(); ++n) {
      rec_mean += static_cast<double>(n) * rec[n];
      const double lv = n < dim ? m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real() : 0.0;
      dev = std::max(dev, std::abs(lv - rec[n]));
    }
    out["nu"] = nu;
    out["mean_n"] = models::mean_n(nu);
    out["mandel_q"] = models::mandel_q(nu);
    out["mean_n_recurrence"] = rec_mean;
    out["max_diag_deviation"] = dev;
  }

  sink.write("distribution.csv", [&](std::ostream& os) {
    csv::Writer w(os);
    w.header({"n", "rho_liouvillian", "rho_recurrence"});
    const std::size_t rows = std::max(dim, rec.size());
    for (std::size_t n = 0; n < rows; ++n) {
      const double lv = n < dim ? m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real() : 0.0;
      const double rv = n < rec.size() ? rec[n] : std::numeric_limits<double>::quiet_NaN();
      w.row({static_cast<double>(n), lv, rv});
    }
  });
  return out;
}

models::RotatorParams rotator_params(const json& cfg) {
  const double l = num(cfg, "model", "l");
  const double twice = 2.0 * l;
  if (!(twice >= 0.0) || twice != std::floor(twice) || twice > 1e6)
    fail(ErrorKind::config, "model.l: must be a non-negative multiple of 1/2");
  models::RotatorParams p;
  p.omega1 = num(cfg, "model", "omega1");
  p.omega2 = num(cfg, "model", "omega2");
  p.lambda = num(cfg, "model", "lambda");
  p.spin = SpinRep::from_twice(static_cast<unsigned>(twice));
  return p;
}

json run_rotators(const json& cfg, const Sink& sink) {
  const models::RotatorParams p = rotator_params(cfg);
  json out = faq_headline(verify_faq(models::rotator_faq(p), models::rotator_field(p),
                                     sample_disc(2, count(cfg, "numerics", "samples"), kFaqSampleRadius, seed_of(cfg)),
                                     num(cfg, "validate", "faq_tol")));
  const auto rows = models::closure_vs_exact_report(p, stationary_of(cfg));
  const models::ClosureRow& last = rows.back();
  out["n_excitations"] = last.n_excitations;
  out["x_closure"] = last.x_closure;
  out["x_exact"] = last.x_exact;
  out["relative_deviation"] = last.relative_deviation;
  out["lz_exact"] = last.lz_exact;
  out["ly_exact_re"] = last.ly_exact.real();
  out["ly_exact_im"] = last.ly_exact.imag();
  out["stationary_residual"] = last.stationary_residual;
  out["x_closure_newton"] = models::closure_stationary_newton(last.n_excitations).ly2;

  sink.write("closure.csv", [&](std::ostream& os) {
    csv::Writer w(os);
    w.header({"n_excitations", "x_closure", "x_exact", "relative_deviation", "lz_exact", "ly_exact_re", "ly_exact_im",
              "stationary_residual"});
    for (const auto& r : rows)
      w.row({r.n_excitations, r.x_closure, r.x_exact, r.relative_deviation, r.lz_exact, r.ly_exact.real(),
             r.ly_exact.imag(), r.stationary_residual});
  });
  return out;
}

json run_classical_flow(const json& cfg, const Sink& sink) {
  const json& model = cfg.at("model");
  std::vector<PhasePoint> initial;
  for (const auto& pt : model.at("initial")) {
    std::vector<Complex> coords;
    for (const auto& c : pt) coords.emplace_back(c[0].get<double>(), c[1].get<double>());
    initial.emplace_back(std::move(coords));
  }
  const std::size_t modes = initial.front().size();
  for (std::size_t k = 0; k < initial.size(); ++k)
    if (initial[k].size() != modes)
      fail(ErrorKind::config, "model.initial: point " + std::to_string(k) + " has a different mode count");

  auto parse = [&](const std::string& text, const std::string& key) {
    try {
      return Polynomial::parse(text, modes);
    } catch (const Error& e) {
      fail(ErrorKind::config, key + ": " + e.what());
    }
  };
  Polynomial h = parse(model.at("hamiltonian").get<std::string>(), "model.hamiltonian");
  std::vector<Polynomial> channels;
  for (std::size_t j = 0; j < model.at("channels").size(); ++j)
    channels.push_back(parse(model.at("channels")[j].get<std::string>(), "model.channels[" + std::to_string(j) + "]"));
  const FaqSystem sys(std::move(h), std::move(channels));

  const std::size_t every = std::max<std::size_t>(1, count(cfg, "evolve", "sample_every"));
  const auto runs = ensemble_weights(sys, initial, num(cfg, "evolve", "t_end"), num(cfg, "evolve", "dt"));
  double wmin = std::numeric_limits<double>::infinity(), wmax = -wmin;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    WeightedTrajectory sampled;
    const auto& r = runs[k];
    const std::size_t n = r.trajectory.times.size();
    for (std::size_t i = 0; i < n; ++i) {
      wmin = std::min(wmin, r.weights[i]);
      wmax = std::max(wmax, r.weights[i]);
      if (i % every == 0 || i + 1 == n) {
        sampled.trajectory.times.push_back(r.trajectory.times[i]);
        sampled.trajectory.points.push_back(r.trajectory.points[i]);
        sampled.weights.push_back(r.weights[i]);
      }
    }
    sink.write("trajectory_" + std::to_string(k) + ".csv",
               [&](std::ostream& os) { write_trajectory_csv(os, sampled); });
  }
  return {{"trajectories", runs.size()},
          {"weight_min", wmin},
          {"weight_max", wmax},
          {"final_time", runs.front().trajectory.times.back()}};
}

json run_conformance(const json& cfg, const Sink& sink) {
  const models::RotatorParams p = rotator_params(cfg);
  const auto rows = models::moment_equation_conformance(p, count(cfg, "numerics", "samples"), seed_of(cfg),
                                                        num(cfg, "validate", "agree_tol"));
  json out = json::object();
  const char* tags[] = {"lx", "ly", "lz"};
  bool all = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out[std::string("max_abs_discrepancy_") + tags[k]] = rows[k].max_abs_discrepancy;
    out[std::string("operator_discrepancy_") + tags[k]] = rows[k].operator_discrepancy;
    all = all && rows[k].agrees;
  }
  out["all_agree"] = all;
  sink.write("conformance.csv", [&](std::ostream& os) {
    csv::Writer w(os);
    w.header({"equation", "max_abs_discrepancy", "operator_discrepancy", "agrees"});
    for (const auto& r : rows)
      w.raw_row({r.equation, csv::format_number(r.max_abs_discrepancy), csv::format_number(r.operator_discrepancy),
                 r.agrees ? "true" : "false"});
  });
  return out;
}

json run_single(const json& cfg, const Sink& sink) {
  const std::string kind = cfg.at("experiment").get<std::string>();
  if (kind == "oscillator") return run_oscillator(cfg, sink);
  if (kind == "limit-cycle") return run_limit_cycle(cfg, sink);
  if (kind == "rotators") return run_rotators(cfg, sink);
  if (kind == "classical-flow") return run_classical_flow(cfg, sink);
  if (kind == "conformance") return run_conformance(cfg, sink);
  fail(ErrorKind::config, "experiment: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double as_csv_number(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? 1.0 : 0.0;
  if (v.is_number()) return v.get<double>();
  return std::numeric_limits<double>::quiet_NaN();
}

json run_sweep(const json& cfg, unsigned jobs, const Sink& sink) {
  const json& sw = cfg.at("sweep");
  const std::string param = sw.at("parameter").get<std::string>();
  const auto dot = param.find('.');
  const std::string sec = param.substr(0, dot), key = param.substr(dot + 1);
  const json& values = sw.at("values");
  const std::size_t n = values.size();

  std::vector<json> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        json point = cfg;
        point.erase("sweep");
        point[sec][key] = values[k];
        results[k] = run_single(point, Sink(nullptr));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::set<std::string> columns;
  for (const auto& r : results)
    for (auto it = r.begin(); it != r.end(); ++it) columns.insert(it.key());
  sink.write("sweep.csv", [&](std::ostream& os) {
    csv::Writer w(os);
    std::vector<std::string> header{param};
    header.insert(header.end(), columns.begin(), columns.end());
    w.header(header);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> row{values[k].get<double>()};
      for (const auto& c : columns) row.push_back(results[k].contains(c) ? as_csv_number(results[k][c]) : NAN);
      w.row(row);
    }
  });
  return {{"sweep_parameter", param}, {"sweep_points", n}, {"points", results}};
}

json fixed_settings() {
  return {{"faq_sample_radius", kFaqSampleRadius},
          {"faq_sampler", "mt19937_64, uniform disc per mode"},
          {"integrator", "classical RK4, step t_end / ceil(t_end / dt)"},
          {"stationary_method", "BDCSVD null vector of the vectorized generator"},
          {"recurrence_tail_tol", 1e-12},
          {"kummer_series_rel_tol", 1e-16},
          {"kummer_max_terms", 10000},
          {"hamiltonian_hermiticity_tol", 1e-12},
          {"dissipator_normalization", "2 R rho R^+ - R^+ R rho - rho R^+ R"}};
}

RunResult run_resolved(json cfg, const RunOptions& opts) {
  if (opts.seed) cfg["seed"] = *opts.seed;
  if (opts.output_dir) cfg["output_dir"] = opts.output_dir->string();
  if (opts.jobs < 1) fail(ErrorKind::config, "jobs: must be >= 1");

  json hashed = cfg;
  hashed.erase("output_dir");
  const std::string kind = cfg.at("experiment").get<std::string>();
  const fs::path dir = fs::path(cfg.at("output_dir").get<std::string>()) / (kind + "-" + fnv1a_hex(hashed.dump()));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create run directory " + dir.string() + ": " + ec.message());

  const Sink sink(&dir);
  const json headline = cfg.contains("sweep") ? run_sweep(cfg, opts.jobs, sink) : run_single(cfg, sink);

  json summary = {{"experiment", kind}, {"seed", cfg.at("seed")}, {"headline", headline}};
  json manifest = {{"config", cfg}, {"fixed", fixed_settings()}, {"library_version", "0.1.0"}};
  sink.write("summary.json", [&](std::ostream& os) { os << summary.dump(2) << "\n"; });
  sink.write("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << "\n"; });
  return {dir};
}

json resolve_or_throw(const std::string& text) {
  std::vector<std::string> problems;
  const json doc = parse_document(text, problems);
  json cfg;
  if (problems.empty()) cfg = resolve(doc, problems);
  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += "\n  " + p;
    fail(ErrorKind::config, msg);
  }
  return cfg;
}

}  // namespace

ConfigReport validate_config_text(const std::string& json_text) {
  ConfigReport r;
  const json doc = parse_document(json_text, r.problems);
  if (r.problems.empty()) resolve(doc, r.problems);
  r.ok = r.problems.empty();
  return r;
}

ConfigReport validate_config_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    return {false, {e.what()}};
  }
  return validate_config_text(text);
}

RunResult run_experiment_text(const std::string& json_text, const RunOptions& opts) {
  return run_resolved(resolve_or_throw(json_text), opts);
}

RunResult run_experiment_file(const std::filesystem::path& config_path, const RunOptions& opts) {
  return run_experiment_text(read_file(config_path), opts);
}

std::string experiment_schema_text() {
  std::ostringstream os;
  os << "top level: experiment (required; one of " << kinds_list() << "), seed (default 0), output_dir (default "
     << "\"runs\"), sweep {parameter, values} (optional)\n";
  for (const auto& spec : schema()) {
    os << spec.kind << ":\n";
    for (const auto& sec : spec.sections) {
      os << "  " << sec.name << ":";
      for (const auto& k : sec.keys) {
        os << " " << k.name;
        if (k.required)
          os << " (required)";
        else
          os << " (default " << k.fallback.dump() << ")";
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace semiquant
