// Copyright 2026 The rigidlab Authors
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

#include "rigidlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "rigidlab/cantor.hpp"
#include "rigidlab/error.hpp"
#include "rigidlab/group_action.hpp"
#include "rigidlab/mixing.hpp"
#include "rigidlab/regions.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<ExperimentInfo> build_catalog() {
  std::vector<ExperimentInfo> c;
  c.push_back({"cantor",
               "cantor",
               "odometer on {0,1}^D: modulus formula vs brute force, invariant balls and cylinders",
               {"AC6"},
               {},
               {{"modulus", {"n", "formula", "brute_force"}},
                {"demo", {"m", "first_n", "qualifying_terms", "holds"}}},
               {{"depth", 16},
                {"brute_depth", 10},
                {"brute_max_n", 1024},
                {"ball_depth", 3},
                {"ball_n", 8},
                {"search_p", 2},
                {"search_max_depth", 8},
                {"demo_max_m", 8},
                {"demo_first_exponent", 1},
                {"demo_last_exponent", 16}}});
  c.push_back({"cesaro-fourier",
               "mixing_spectral",
               "Cesaro test functions on the circle and the norm witness sup|e^{in theta} - 1|",
               {"AC5"},
               {},
               {{"fourier", {"k", "coeff_l2_norm", "norm_sq_num", "norm_sq_den", "sup_on_grid", "value_at_zero"}},
                {"norm", {"n", "value", "theta", "grid_used"}}},
               {{"alpha", "golden"},
                {"ks", {1, 4, 16}},
                {"theta_grid", 4096},
                {"norm_ns", {1, 13, 1000000}},
                {"norm_tolerance", 1e-9}}});
  c.push_back({"egorov",
               "rigidity",
               "exceptional set of small measure off which T^{n_k} converges uniformly",
               {"AC7"},
               {},
               {{"schedule",
                 {"m", "n", "budget", "symdiff_mass", "uncovered_mass", "displacement_bound",
                  "max_sampled_displacement"}},
                {"bad_set", {"lo", "hi"}}},
               {{"alpha", "golden"},
                {"eps", 0.1},
                {"levels", 8},
                {"convergents", 40},
                {"grid", 12000},
                {"min_checked", 10000}}});
  c.push_back({"group-action",
               "group_action",
               "hyperbolic automorphism plus twists: mixing and rigidity witnesses in one action",
               {"AC9"},
               {"mixing_seed", "preservation_seed"},
               {{"characters", {"k1", "k2", "horizon", "nonzero_count"}},
                {"mixing", {"n", "automorphism_correlation", "automorphism_stderr", "rotation_correlation"}},
                {"rigidity", {"n", "displacement", "bound"}},
                {"preservation", {"generator", "bins", "samples", "deviation"}}},
               {{"matrix", {2, 1, 1, 1}},
                {"twists", {2, 4, 8, 16, 32, 64}},
                {"character_max_norm", 10},
                {"character_horizon", 50},
                {"mixing_horizon", 500},
                {"mixing_delta", 0.05},
                {"mixing_samples", 100000},
                {"mixing_seed", 7},
                {"displacement_grid", 1000},
                {"bins", 16},
                {"preservation_samples", 1000000},
                {"preservation_seed", 11},
                {"scheme", "stratified"},
                {"mixing_threshold", 0.1},
                {"preservation_threshold", 0.02},
                {"control_threshold", 0.5}}});
  c.push_back({"rotation-rigidity",
               "rigidity",
               "circle rotation along convergent denominators: modulus, Koopman and eigenvalue defects, "
               "symmetric-difference geometry",
               {"AC1", "AC3", "AC4", "AC10"},
               {},
               {{"convergents",
                 {"k", "q", "modulus", "grid_modulus", "inverse_next_q", "koopman_defect", "eigenvalue_defect",
                  "two_pi_over_next_q"}},
                {"components", {"n", "component_count", "max_diameter", "distance_to_integer"}}},
               {{"alpha", "golden"},
                {"convergents", 7},
                {"grid", 1000},
                {"match_tolerance", 1e-9},
                {"arc", {0.0, 0.5}},
                {"component_ns", {5, 8, 13}},
                {"component_tolerance", 1e-12},
                {"final_eigenvalue_threshold", 0.17}}});
  c.push_back({"toral-mixing",
               "mixing_spectral",
               "Cesaro self-correlations of a toral automorphism and exact character correlations",
               {"AC8"},
               {"seed"},
               {{"cesaro", {"n", "term", "stderr", "average"}}, {"characters", {"n", "value"}}},
               {{"matrix", {2, 1, 1, 1}},
                {"region", {0.0, 0.5, 0.0, 1.0}},
                {"horizon", 2000},
                {"samples", 100000},
                {"seed", 2024},
                {"tolerance", 0.02},
                {"character_k", {1, 0}},
                {"character_l", {1, 0}},
                {"character_horizon", 50}}});
  c.push_back({"zero-density",
               "rigidity",
               "counting function k(N)/N of rigidity sequences",
               {"AC2"},
               {},
               {{"density", {"sequence", "checkpoint", "count", "density"}}},
               {{"alpha", "golden"},
                {"convergent_horizon", 1000000},
                {"convergent_threshold", 1e-4},
                {"powers_horizon", 1048576},
                {"powers_threshold", 3e-5},
                {"checkpoints", 13}}});
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.kind < b.kind; });
  return c;
}

const std::set<std::string>& fixed_length_keys() {
  static const std::set<std::string> keys{"matrix", "region", "arc", "character_k", "character_l"};
  return keys;
}

void check_value(const std::string& key, const json& def, const json& v, const std::string& path) {
  if (key == "alpha") {
    parse_alpha(v, path);
    return;
  }
  if (key == "scheme") {
    if (!v.is_string() || (v != "stratified" && v != "iid")) throw ConfigError(path, "expected \"stratified\" or \"iid\"");
    return;
  }
  if (def.is_number_integer()) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    if (key.find("seed") != std::string::npos && v.is_number_integer() && v.get<std::int64_t>() < 0 &&
        !v.is_number_unsigned()) {
      throw ConfigError(path, "seed must be non-negative");
    }
  } else if (def.is_number()) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
  } else if (def.is_string()) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
  } else if (def.is_boolean()) {
    if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  } else if (def.is_array()) {
    if (!v.is_array()) throw ConfigError(path, "expected an array");
    if (fixed_length_keys().count(key) && v.size() != def.size()) {
      throw ConfigError(path, "expected " + std::to_string(def.size()) + " entries");
    }
    if (!def.empty()) {
      for (std::size_t i = 0; i < v.size(); ++i) check_value("", def[0], v[i], path + "[" + std::to_string(i) + "]");
    }
  }
}

template <class T>
T param(const ExperimentConfig& cfg, const char* key) {
  return cfg.params.at(key).get<T>();
}

Matrix2 matrix_param(const ExperimentConfig& cfg) {
  const auto m = param<std::vector<std::int64_t>>(cfg, "matrix");
  return Matrix2{m[0], m[1], m[2], m[3]};
}

std::string dd_text(DoubleDouble v) { return format_real(v.hi) + (v.lo < 0 ? "" : "+") + format_real(v.lo); }

// ---------------------------------------------------------------------------

void run_rotation_rigidity(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec exec) {
  const DoubleDouble alpha = parse_alpha(cfg.params.at("alpha"), "params.alpha");
  const auto count = param<std::size_t>(cfg, "convergents");
  const GridPlan grid{param<int>(cfg, "grid"), std::nullopt};
  const double tol = param<double>(cfg, "match_tolerance");
  const TransformSpec rot = TransformSpec::rotation(alpha);
  rep.results["alpha"] = dd_text(alpha);
  rep.results["rational_alpha"] = rot.rational_alpha();
  const RigiditySequence seq = convergent_denominators(alpha, count + 1);
  if (seq.size() < count + 1) {
    throw DomainError("alpha has only " + std::to_string(seq.size()) + " distinct convergent denominators");
  }
  const auto eig = eigenvalue_defect(alpha, seq);
  const auto circle_mu = PartitionMeasure::reference(SpaceKind::kCircle);
  const Observable chi = Observable::circle_character(1);

  Table t{"convergents",
          {"k", "q", "modulus", "grid_modulus", "inverse_next_q", "koopman_defect", "eigenvalue_defect",
           "two_pi_over_next_q"},
          {}};
  bool below_inverse = true, decreasing = true, eig_below = true;
  double worst_match = 0.0, koopman_excess = -1.0, prev_defect = 0.0, final_eig = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::int64_t q = seq.terms[k];
    const double next = static_cast<double>(seq.terms[k + 1]);
    const double modulus = uniform_rigidity_modulus(rot, q, grid, exec);
    const double swept = grid_sweep_modulus(rot, q, grid, exec);
    const double defect = koopman_l2_defect(rot, q, chi, circle_mu, Method::exact(), exec).value;
    const double bound = kTwoPi / next;
    t.add_row({static_cast<std::int64_t>(k + 1), q, modulus, swept, 1.0 / next, defect, eig[k], bound});
    below_inverse = below_inverse && modulus < 1.0 / next;
    worst_match = std::max(worst_match, std::fabs(modulus - swept));
    if (k > 0 && !(defect < prev_defect)) decreasing = false;
    prev_defect = defect;
    koopman_excess = std::max(koopman_excess, defect - bound);
    eig_below = eig_below && eig[k] <= bound;
    final_eig = eig[k];
  }
  rep.tables.push_back(std::move(t));
  rep.results["convergent_denominators"] = seq.terms;
  rep.verdicts.push_back(make_check("AC1", "||q_k alpha|| < 1/q_{k+1} for every k", below_inverse));
  rep.verdicts.push_back(
      make_verdict("AC1", "max |grid sweep - closed form|", worst_match, Comparator::kLessEqual, tol));
  rep.verdicts.push_back(make_check("AC3", "Koopman L2 defect strictly decreasing along q_k", decreasing));
  rep.verdicts.push_back(make_verdict("AC3", "max (Koopman defect - 2 pi/q_{k+1})", koopman_excess,
                                      Comparator::kLessEqual, 1e-12));
  rep.verdicts.push_back(make_check("AC4", "eigenvalue defect <= 2 pi/q_{k+1} for every k", eig_below));
  rep.verdicts.push_back(make_verdict("AC4", "final eigenvalue defect", final_eig, Comparator::kLess,
                                      param<double>(cfg, "final_eigenvalue_threshold")));

  const auto arc_ends = param<std::vector<double>>(cfg, "arc");
  const Region arc = Region::circle({{arc_ends[0], arc_ends[1]}});
  const double ctol = param<double>(cfg, "component_tolerance");
  Table c{"components", {"n", "component_count", "max_diameter", "distance_to_integer"}, {}};
  bool two = true;
  double worst_diam = 0.0;
  for (std::int64_t n : param<std::vector<std::int64_t>>(cfg, "component_ns")) {
    const ComponentDiagnostic d = symdiff_component_diagnostic(rot, arc, n);
    const double dist = nearest_integer_distance(alpha, n);
    c.add_row({n, static_cast<std::int64_t>(d.component_count), d.max_diameter, dist});
    two = two && d.component_count == 2;
    worst_diam = std::max(worst_diam, std::fabs(d.max_diameter - dist));
  }
  rep.tables.push_back(std::move(c));
  rep.verdicts.push_back(make_check("AC10", "symmetric difference has 2 components", two));
  rep.verdicts.push_back(
      make_verdict("AC10", "max |max diameter - ||n alpha|||", worst_diam, Comparator::kLessEqual, ctol));
}

void run_zero_density(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec) {
  const DoubleDouble alpha = parse_alpha(cfg.params.at("alpha"), "params.alpha");
  const int checkpoints = param<int>(cfg, "checkpoints");
  Table t{"density", {"sequence", "checkpoint", "count", "density"}, {}};
  auto add = [&](const std::string& label, const RigiditySequence& seq, std::int64_t horizon, double threshold) {
    const DensityProfile prof = density_profile(seq, horizon, checkpoints);
    for (std::size_t i = 0; i < prof.checkpoints.size(); ++i) {
      t.add_row({label, prof.checkpoints[i], prof.counts[i], prof.densities[i]});
    }
    rep.results[label] = {{"horizon", horizon},
                          {"count", prof.counts.empty() ? 0 : prof.counts.back()},
                          {"density", prof.final_density()}};
    rep.verdicts.push_back(make_verdict("AC2", label + " density at N = " + std::to_string(horizon),
                                        prof.final_density(), Comparator::kLess, threshold));
  };
  const auto ch = param<std::int64_t>(cfg, "convergent_horizon");
  // Convergent denominators grow at least like Fibonacci numbers, so 100
  // terms cover any horizon that fits double-double precision.
  RigiditySequence conv = convergent_denominators(alpha, 100);
  if (!conv.terms.empty() && conv.terms.back() < ch && !conv.terminated) {
    rep.results["convergent_truncated"] = true;
  }
  add("convergents", conv, ch, param<double>(cfg, "convergent_threshold"));
  const auto ph = param<std::int64_t>(cfg, "powers_horizon");
  if (ph < 2) throw DomainError("powers_horizon must be >= 2");
  int last = 0;
  while (last < 62 && (std::int64_t{1} << (last + 1)) <= ph) ++last;
  add("powers_of_two", powers_of_two(1, last), ph, param<double>(cfg, "powers_threshold"));
  rep.tables.push_back(std::move(t));
}

void run_egorov(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec exec) {
  const DoubleDouble alpha = parse_alpha(cfg.params.at("alpha"), "params.alpha");
  const double eps = param<double>(cfg, "eps");
  const int levels = param<int>(cfg, "levels");
  const TransformSpec rot = TransformSpec::rotation(alpha);
  const RigiditySequence seq = convergent_denominators(alpha, param<std::size_t>(cfg, "convergents"));
  const GridPlan grid{param<int>(cfg, "grid"), std::nullopt};
  const EgorovResult res =
      egorov_bad_set(rot, PartitionMeasure::reference(SpaceKind::kCircle), eps, levels, seq, grid, exec);
  Table t{"schedule",
          {"m", "n", "budget", "symdiff_mass", "uncovered_mass", "displacement_bound", "max_sampled_displacement"},
          {}};
  bool within = true;
  for (const auto& l : res.schedule) {
    t.add_row({static_cast<std::int64_t>(l.m), l.n, l.budget, l.symdiff_mass, l.uncovered_mass,
               l.displacement_bound, l.max_sampled_displacement});
    within = within && l.max_sampled_displacement < l.displacement_bound;
  }
  rep.tables.push_back(std::move(t));
  Table b{"bad_set", {"lo", "hi"}, {}};
  for (const auto& iv : res.bad_set.intervals) b.add_row({iv.lo, iv.hi});
  rep.tables.push_back(std::move(b));
  rep.results["bad_measure"] = res.bad_measure;
  rep.results["checked_points"] = res.checked_points;
  rep.results["bad_set"] = region_to_json(res.bad_set);
  rep.verdicts.push_back(make_verdict("AC7", "mu(B)", res.bad_measure, Comparator::kLess, eps));
  rep.verdicts.push_back(make_verdict("AC7", "complement points checked", static_cast<double>(res.checked_points),
                                      Comparator::kGreaterEqual, param<double>(cfg, "min_checked")));
  rep.verdicts.push_back(make_check("AC7", "d(x, T^{n_m} x) < 2^{-m+1} off B for every m", within && res.verified));
}

void run_cantor(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec exec) {
  const int depth = param<int>(cfg, "depth");
  const TransformSpec odo = TransformSpec::odometer(depth);

  const int bd = param<int>(cfg, "brute_depth");
  const auto bmax = param<std::int64_t>(cfg, "brute_max_n");
  const TransformSpec small = TransformSpec::odometer(bd);
  const GridPlan all_points{2, std::nullopt};  // Cantor grids at depth <= 20 enumerate every point
  Table t{"modulus", {"n", "formula", "brute_force"}, {}};
  std::int64_t mismatches = 0;
  const auto brute = parallel_map<double>(
      static_cast<std::size_t>(bmax), [&](std::size_t i) {
        return grid_sweep_modulus(small, static_cast<std::int64_t>(i + 1), all_points, Exec::kSerial);
      },
      exec);
  for (std::int64_t n = 1; n <= bmax; ++n) {
    const double f = odometer_modulus(n, bd);
    const double b = brute[static_cast<std::size_t>(n - 1)];
    t.add_row({n, f, b});
    if (f != b) ++mismatches;
  }
  rep.tables.push_back(std::move(t));
  rep.verdicts.push_back(make_verdict("AC6", "modulus formula mismatches vs brute force",
                                      static_cast<double>(mismatches), Comparator::kEqual, 0.0));

  const BallInvarianceReport balls =
      ball_invariance_check(odo, param<int>(cfg, "ball_depth"), param<std::int64_t>(cfg, "ball_n"), exec);
  rep.results["ball_invariance"] = {{"invariant", balls.invariant_count}, {"total", balls.total_balls}};
  rep.verdicts.push_back(make_check("AC6", "all depth-m balls invariant under T^n", balls.all_invariant()));

  const auto found =
      invariant_cylinder_search(odo, param<std::int64_t>(cfg, "search_p"), param<int>(cfg, "search_max_depth"));
  const double mu = found ? reference_measure(*found) : 0.0;
  rep.results["invariant_region"] = found ? region_to_json(*found) : json(nullptr);
  rep.results["invariant_measure"] = mu;
  rep.verdicts.push_back(make_verdict("AC6", "measure of T^p-invariant cylinder union", mu, Comparator::kEqual, 0.5));

  const RigiditySequence seq =
      powers_of_two(param<int>(cfg, "demo_first_exponent"), param<int>(cfg, "demo_last_exponent"));
  Table d{"demo", {"m", "first_n", "qualifying_terms", "holds"}, {}};
  bool all = true;
  for (int m = 0; m <= param<int>(cfg, "demo_max_m"); ++m) {
    const InvarianceDemo demo = uniform_rigidity_implies_invariance_demo(odo, seq, m, exec);
    d.add_row({static_cast<std::int64_t>(m), demo.first_n, static_cast<std::int64_t>(demo.checks.size()),
               static_cast<std::int64_t>(demo.implication_holds)});
    all = all && demo.implication_holds;
  }
  rep.tables.push_back(std::move(d));
  rep.verdicts.push_back(make_check("AC6", "small modulus forces invariant balls for every m", all));
}

void run_toral_mixing(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec exec) {
  const Matrix2 m = matrix_param(cfg);
  const TransformSpec spec = TransformSpec::toral(m);
  const auto r = param<std::vector<double>>(cfg, "region");
  const Region a = Region::torus({{r[0], r[1], r[2], r[3]}});
  const auto seed = param<std::uint64_t>(cfg, "seed");
  rep.seeds["seed"] = seed;
  const CesaroSeries series =
      cesaro_self_correlation(spec, a, param<std::int64_t>(cfg, "horizon"),
                              PartitionMeasure::reference(SpaceKind::kTorus),
                              Method::monte_carlo(seed, param<std::uint64_t>(cfg, "samples")), exec);
  Table t{"cesaro", {"n", "term", "stderr", "average"}, {}};
  for (std::size_t i = 0; i < series.terms.size(); ++i) {
    t.add_row({static_cast<std::int64_t>(i + 1), series.terms[i], series.stderrs[i], series.averages[i]});
  }
  rep.tables.push_back(std::move(t));
  const double mu = reference_measure(a);
  const double target = mu * mu;
  const double gap = std::fabs(series.final_average() - target);
  rep.results["final_average"] = series.final_average();
  rep.results["target"] = target;
  rep.verdicts.push_back(make_verdict("AC8", "|final Cesaro average - mu(A)^2|", gap, Comparator::kLess,
                                      param<double>(cfg, "tolerance")));

  const auto k = param<std::array<std::int64_t, 2>>(cfg, "character_k");
  const auto l = param<std::array<std::int64_t, 2>>(cfg, "character_l");
  Table c{"characters", {"n", "value"}, {}};
  std::int64_t nonzero = 0;
  for (std::int64_t n = 1; n <= param<std::int64_t>(cfg, "character_horizon"); ++n) {
    const int v = character_correlation_toral(m, k, l, n);
    c.add_row({n, static_cast<std::int64_t>(v)});
    nonzero += v;
  }
  rep.tables.push_back(std::move(c));
  rep.verdicts.push_back(make_verdict("AC8", "nonzero character correlations for n >= 1",
                                      static_cast<double>(nonzero), Comparator::kEqual, 0.0));
}

void run_group_action(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec exec) {
  const GeneratorSet gens = GeneratorSet::make(matrix_param(cfg), param<std::vector<std::int64_t>>(cfg, "twists"));
  SimultaneityParams p;
  p.character_max_norm = param<int>(cfg, "character_max_norm");
  p.character_horizon = param<std::int64_t>(cfg, "character_horizon");
  p.mixing_horizon = param<std::int64_t>(cfg, "mixing_horizon");
  p.mixing_delta = param<double>(cfg, "mixing_delta");
  p.mixing_samples = param<std::uint64_t>(cfg, "mixing_samples");
  p.mixing_seed = param<std::uint64_t>(cfg, "mixing_seed");
  p.displacement_grid = param<int>(cfg, "displacement_grid");
  p.bins = param<int>(cfg, "bins");
  p.preservation_samples = param<std::uint64_t>(cfg, "preservation_samples");
  p.preservation_seed = param<std::uint64_t>(cfg, "preservation_seed");
  p.scheme = param<std::string>(cfg, "scheme") == "iid" ? SamplingScheme::kIid : SamplingScheme::kStratified;
  p.mixing_threshold = param<double>(cfg, "mixing_threshold");
  p.preservation_threshold = param<double>(cfg, "preservation_threshold");
  p.control_threshold = param<double>(cfg, "control_threshold");
  DiagnosticsReport sub = simultaneity_report(gens, p, exec);
  rep.results = std::move(sub.results);
  rep.seeds = std::move(sub.seeds);
  rep.tables = std::move(sub.tables);
  rep.verdicts = std::move(sub.verdicts);
}

void run_cesaro_fourier(const ExperimentConfig& cfg, DiagnosticsReport& rep, Exec exec) {
  const DoubleDouble alpha = parse_alpha(cfg.params.at("alpha"), "params.alpha");
  const auto ks = param<std::vector<std::size_t>>(cfg, "ks");
  const auto grid = param<std::size_t>(cfg, "theta_grid");
  std::size_t kmax = 1;
  for (auto k : ks) kmax = std::max(kmax, k);
  const RigiditySequence seq = convergent_denominators(alpha, kmax);
  Table f{"fourier", {"k", "coeff_l2_norm", "norm_sq_num", "norm_sq_den", "sup_on_grid", "value_at_zero"}, {}};
  bool exact_norm = true;
  double worst_zero = 0.0;
  for (std::size_t k : ks) {
    const CesaroFourierStats s = cesaro_fourier_stats(seq, k, grid, exec);
    f.add_row({static_cast<std::int64_t>(k), s.coeff_l2_norm, s.norm_sq_num, s.norm_sq_den, s.sup_on_grid,
               s.value_at_zero});
    exact_norm = exact_norm && s.norm_sq_num == 1 && s.norm_sq_den == static_cast<std::int64_t>(k);
    worst_zero = std::max(worst_zero, std::fabs(s.value_at_zero - 1.0));
  }
  rep.tables.push_back(std::move(f));
  rep.results["coefficient_norm"] = {
      {"value", "k^-1/2"},
      {"note", "the l2 norm of k coefficients of size 1/k is k^-1/2; its square is 1/k; both tend to 0"}};
  rep.verdicts.push_back(make_check("AC5", "squared coefficient norm is exactly 1/k", exact_norm));
  rep.verdicts.push_back(make_verdict("AC5", "max |f_k(0) - 1|", worst_zero, Comparator::kLessEqual, 1e-12));

  Table n{"norm", {"n", "value", "theta", "grid_used"}, {}};
  double worst = 0.0;
  for (std::int64_t v : param<std::vector<std::int64_t>>(cfg, "norm_ns")) {
    const NormWitness w = operator_norm_witness(v, grid, exec);
    n.add_row({v, w.value, w.theta, static_cast<std::int64_t>(w.grid_used)});
    worst = std::max(worst, std::fabs(w.value - 2.0));
  }
  rep.tables.push_back(std::move(n));
  rep.verdicts.push_back(make_verdict("AC5", "max |norm witness - 2|", worst, Comparator::kLessEqual,
                                      param<double>(cfg, "norm_tolerance")));
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> catalog = build_catalog();
  return catalog;
}

const ExperimentInfo& experiment_info(const std::string& kind) {
  for (const auto& e : list_experiments()) {
    if (e.kind == kind) return e;
  }
  std::string known;
  for (const auto& e : list_experiments()) known += (known.empty() ? "" : ", ") + e.kind;
  throw ConfigError("experiment", "unknown experiment kind '" + kind + "' (known: " + known + ")");
}

std::string catalog_text() {
  std::ostringstream os;
  for (const auto& e : list_experiments()) {
    os << e.kind << "  [module " << e.module << "]\n  " << e.summary << "\n";
    os << "  criteria:";
    for (const auto& c : e.criteria) os << ' ' << c;
    os << "\n  tables:\n";
    for (const auto& t : e.tables) {
      os << "    " << t.name << ":";
      for (const auto& c : t.columns) os << ' ' << c;
      os << '\n';
    }
    os << "  params:\n";
    for (const auto& [k, v] : e.defaults.items()) {
      const bool required = std::find(e.seeds.begin(), e.seeds.end(), k) != e.seeds.end();
      os << "    " << k << " = " << v.dump() << (required ? "  (required in config files)" : "") << '\n';
    }
  }
  return os.str();
}

ExperimentConfig default_config(const std::string& kind) {
  const ExperimentInfo& info = experiment_info(kind);
  return {info.kind, info.kind, info.defaults, "."};
}

void set_param(ExperimentConfig& cfg, const std::string& key, const json& value) {
  std::string k = key;
  if (k.rfind("params.", 0) == 0) k = k.substr(7);
  const std::string path = "params." + k;
  const ExperimentInfo& info = experiment_info(cfg.kind);
  if (!info.defaults.contains(k)) throw ConfigError(path, "unknown parameter for " + cfg.kind);
  check_value(k, info.defaults.at(k), value, path);
  cfg.params[k] = value;
}

void override_seeds(ExperimentConfig& cfg, std::uint64_t seed) {
  for (const auto& s : experiment_info(cfg.kind).seeds) cfg.params[s] = seed;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  for (const auto& [k, v] : doc.items()) {
    if (k != "experiment" && k != "name" && k != "params" && k != "output") {
      throw ConfigError(k, "unknown top-level field");
    }
  }
  if (!doc.contains("experiment")) throw ConfigError("experiment", "missing required field");
  if (!doc.at("experiment").is_string()) throw ConfigError("experiment", "expected a string");
  ExperimentConfig cfg = default_config(doc.at("experiment").get<std::string>());
  if (doc.contains("name")) {
    const auto& n = doc.at("name");
    if (!n.is_string() || n.get<std::string>().empty()) throw ConfigError("name", "expected a non-empty string");
    const std::string name = n.get<std::string>();
    if (name.find_first_of("/\\") != std::string::npos) throw ConfigError("name", "must not contain path separators");
    cfg.name = name;
  }
  json params = json::object();
  if (doc.contains("params")) {
    params = doc.at("params");
    if (!params.is_object()) throw ConfigError("params", "expected an object");
  }
  for (const auto& [k, v] : params.items()) set_param(cfg, k, v);
  for (const auto& s : experiment_info(cfg.kind).seeds) {
    if (!params.contains(s)) throw ConfigError("params." + s, "missing required seed");
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    if (!o.is_object()) throw ConfigError("output", "expected an object");
    for (const auto& [k, v] : o.items()) {
      if (k != "dir") throw ConfigError("output." + k, "unknown field");
      if (!v.is_string()) throw ConfigError("output.dir", "expected a string");
      cfg.out_dir = v.get<std::string>();
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("$", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(is, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

DiagnosticsReport run_experiment(const ExperimentConfig& cfg, Exec exec) {
  DiagnosticsReport rep;
  rep.experiment = cfg.kind;
  rep.name = cfg.name;
  rep.config = {{"experiment", cfg.kind}, {"name", cfg.name}, {"params", cfg.params}};
  try {
    if (cfg.kind == "rotation-rigidity") {
      run_rotation_rigidity(cfg, rep, exec);
    } else if (cfg.kind == "zero-density") {
      run_zero_density(cfg, rep, exec);
    } else if (cfg.kind == "egorov") {
      run_egorov(cfg, rep, exec);
    } else if (cfg.kind == "cantor") {
      run_cantor(cfg, rep, exec);
    } else if (cfg.kind == "toral-mixing") {
      run_toral_mixing(cfg, rep, exec);
    } else if (cfg.kind == "group-action") {
      run_group_action(cfg, rep, exec);
    } else if (cfg.kind == "cesaro-fourier") {
      run_cesaro_fourier(cfg, rep, exec);
    } else {
      throw ConfigError("experiment", "unknown experiment kind '" + cfg.kind + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    rep.errors.push_back(e.what());
  }
  return rep;
}

DoubleDouble alpha_from_continued_fraction(const std::vector<std::int64_t>& terms) {
  if (terms.empty()) throw DomainError("continued fraction needs at least one term");
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] < 1) throw DomainError("partial quotients after a_0 must be >= 1");
  }
  DoubleDouble x(static_cast<double>(terms.back()));
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    x = DoubleDouble(static_cast<double>(terms[i])) + DoubleDouble(1.0) / x;
  }
  return x;
}

DoubleDouble parse_alpha(const json& v, const std::string& path) {
  if (v.is_number()) return DoubleDouble(v.get<double>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "golden") return golden_conjugate();
    if (s == "silver") return silver_conjugate();
    throw ConfigError(path, "expected a number, \"golden\", \"silver\" or {\"cf\": [...]}");
  }
  if (v.is_object() && v.size() == 1 && v.contains("cf") && v.at("cf").is_array()) {
    std::vector<std::int64_t> terms;
    for (std::size_t i = 0; i < v.at("cf").size(); ++i) {
      const auto& t = v.at("cf")[i];
      if (!t.is_number_integer()) throw ConfigError(path + ".cf[" + std::to_string(i) + "]", "expected an integer");
      terms.push_back(t.get<std::int64_t>());
    }
    try {
      return alpha_from_continued_fraction(terms);
    } catch (const DomainError& e) {
      throw ConfigError(path + ".cf", e.what());
    }
  }
  throw ConfigError(path, "expected a number, \"golden\", \"silver\" or {\"cf\": [...]}");
}

}  // namespace rigidlab
