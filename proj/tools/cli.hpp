#pragma once

// Command-line front end. `run` takes the argument vector and the two output
// streams so the tests can drive it in-process.
//
// Exit status: 0 when every check passes, 1 when any check fails, 2 on errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ambit.hpp"

namespace ambit::cli {

struct CommandConfig {
  std::string semigroup;
  std::vector<std::string> inputs;
  std::string metric;
  std::size_t window = 16;
  std::size_t probe = 2;
  std::size_t count = 0;
  std::size_t grid = 8;
  std::size_t budget = 1000000;
  std::uint64_t seed = props::kDefaultSeed;
  std::string out;
};

inline int exit_code(const Report& r) { return r.passed() ? 0 : 1; }

inline std::string join_elements(const Semigroup& s, const Window& w) {
  std::string out = "{";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + s.format(w[i]);
  return out + "}";
}

inline int check_semigroup(const CommandConfig& cfg, std::ostream& out) {
  const Semigroup s = io::load_semigroup(cfg.semigroup);
  const std::size_t k = s.size() ? std::min(cfg.window, *s.size()) : cfg.window;
  const Window window = s.enumerate(k);
  Report report;

  if (s.kind() == SemigroupKind::CayleyTable) {
    const auto n = *s.size();
    report.add("associativity", true, "exhaustive over " + std::to_string(n * n * n) + " triples");
  } else {
    std::size_t bad = 0;
    for (const auto& x : window)
      for (const auto& y : window)
        for (const auto& z : window)
          if (s.product(s.product(x, y), z) != s.product(x, s.product(y, z))) ++bad;
    report.add("associativity", bad == 0,
               std::to_string(k * k * k) + " window triples, " + std::to_string(bad) + " failures");
  }

  if (k >= 2) {
    const Window f = s.enumerate(2);
    const auto p1 = check_property_1(s, f, window);
    const bool ok1 = p1.closed_form_verdict ? *p1.closed_form_verdict == Verdict::Holds
                                            : p1.count > 0;
    std::string detail = (ok1 ? "property (1) holds on window" : "property (1) fails on window") +
                         std::string(": F=") + join_elements(s, f) + " qualifying " +
                         std::to_string(p1.count) + "/" + std::to_string(k) + " " +
                         join_elements(s, p1.qualifying);
    detail += p1.closed_form_verdict
                  ? std::string(" (closed form ") + to_string(*p1.closed_form_verdict) + ")"
                  : std::string(" (no closed form)");
    report.add("property-1", ok1, detail);
  } else {
    report.add("property-1", true, "vacuous: window has fewer than 2 elements");
  }

  {
    const Element x = window[0];
    const Window p = s.enumerate(std::min<std::size_t>(2, k));
    std::vector<Window> schedule;
    for (std::size_t size : {std::max<std::size_t>(1, k / 4), std::max<std::size_t>(1, k / 2), k})
      if (schedule.empty() || schedule.back().size() < size) schedule.push_back(s.enumerate(size));
    const auto p2 = check_property_2(s, x, p, schedule);
    const bool ok2 = p2.closed_form_verdict ? *p2.closed_form_verdict == Verdict::Holds
                                            : p2.stabilized();
    std::string sizes;
    for (std::size_t i = 0; i < schedule.size(); ++i)
      sizes += (i ? "," : "") + std::to_string(p2.preimage_sizes[i]) + "/" +
               std::to_string(p2.window_sizes[i]);
    std::string detail = (ok2 ? "property (2) holds on window" : "property (2) fails on window") +
                         std::string(": x=") + s.format(x) + " P=" + join_elements(s, p) +
                         " preimage sizes " + sizes;
    detail += p2.closed_form_verdict
                  ? std::string(" (closed form ") + to_string(*p2.closed_form_verdict) + ")"
                  : std::string(" (no closed form)");
    report.add("property-2", ok2, detail);
  }

  out << "SEMIGROUP " << s.describe() << '\n';
  print(out, report);
  return exit_code(report);
}

inline void emit_json(const CommandConfig& cfg, const io::Json& j, std::ostream& out,
                      const std::string& what) {
  if (cfg.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json_file(cfg.out, j);
    out << "RESULT " << what << " written to " << cfg.out << '\n';
  }
}

inline io::MeasureDocument load_measure_reporting(const std::string& path, std::ostream& err) {
  auto doc = io::load_measure(path);
  for (const auto& w : doc.warnings) err << "warning: " << w << '\n';
  return doc;
}

inline int convolve_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  auto a = load_measure_reporting(cfg.inputs.at(0), err);
  auto b = load_measure_reporting(cfg.inputs.at(1), err);
  const auto result = convolve(a.measure, b.measure);
  emit_json(cfg, io::measure_to_json(result, a.semigroup_ref), out, "convolution");
  return 0;
}

inline int norm_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  auto a = load_measure_reporting(cfg.inputs.at(0), err);
  out << "RESULT norm " << format_rational(norm(a.measure)) << '\n';
  return 0;
}

inline int ueb_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  auto a = load_measure_reporting(cfg.inputs.at(0), err);
  auto b = load_measure_reporting(cfg.inputs.at(1), err);
  const Semigroup& s = a.measure.semigroup();
  const Pseudometric d = cfg.metric.empty()
                             ? Pseudometric::discrete()
                             : io::pseudometric_from_json(s, io::read_json_file(cfg.metric),
                                                          cfg.metric);
  Window window = d.window();
  if (d.is_discrete()) {
    std::set<Element> points;
    for (const auto& x : a.measure.support()) points.insert(x);
    for (const auto& x : b.measure.support()) points.insert(x);
    window = Window(std::vector<Element>(points.begin(), points.end()));
  }
  out << "RESULT ueb-distance " << format_rational(ueb_distance(a.measure, b.measure, d, window))
      << '\n';
  return 0;
}

inline int orbit_trace_command(const CommandConfig& cfg, std::ostream& out) {
  const Semigroup s = io::load_semigroup(cfg.semigroup);
  const auto f = io::window_function_from_json(s, io::read_json_file(cfg.inputs.at(0)),
                                               cfg.inputs.at(0));
  const Window probe = s.enumerate(cfg.probe);
  const Window search = s.enumerate(s.size() ? std::min(cfg.window, *s.size()) : cfg.window);
  const auto trace = orbit_trace(s, f, probe, search);
  out << "RESULT orbit-trace " << trace.vectors.size() << " distinct vectors on F="
      << join_elements(s, probe) << " over " << search.size() << " translates\n";
  for (const auto& v : trace.vectors) {
    out << "TRACE";
    for (const auto& r : v) out << ' ' << format_rational(r);
    out << '\n';
  }
  return 0;
}

inline int ambit_build(const CommandConfig& cfg, std::ostream& out) {
  const Semigroup s = io::load_semigroup(cfg.semigroup);
  NeighborhoodSchedule schedule;
  schedule.grid = cfg.grid;
  schedule.max_window = cfg.window;
  auto neighborhoods = enumerate_neighborhoods(s, cfg.count, schedule);
  Report report;
  report.add("enumerate", neighborhoods.size() == cfg.count,
             std::to_string(neighborhoods.size()) + " neighborhoods");
  std::vector<Element> selections;
  try {
    selections = greedy_select(s, neighborhoods, cfg.budget);
  } catch (const BudgetExhausted& e) {
    report.add("greedy-select", false,
               "budget exhausted at neighborhood " + std::to_string(e.neighborhood_index()) +
                   " (|F|=" + std::to_string(neighborhoods[e.neighborhood_index()].window().size()) +
                   ", budget " + std::to_string(cfg.budget) + ")");
    print(out, report);
    return 1;
  }
  report.add("greedy-select", true, std::to_string(selections.size()) + " selections");
  const auto witness = build_ambit_function(s, std::move(neighborhoods), std::move(selections));
  const Report verified = verify_ambit(s, witness);
  report.checks.insert(report.checks.end(), verified.checks.begin(), verified.checks.end());
  if (!cfg.out.empty()) io::write_json_file(cfg.out, io::witness_to_json(s, witness));
  print(out, report);
  if (const auto* m = report.find("exact-match"); m && m->passed) out << m->detail << '\n';
  return exit_code(report);
}

inline int ambit_verify(const CommandConfig& cfg, std::ostream& out) {
  const Semigroup s = io::load_semigroup(cfg.semigroup);
  const auto witness =
      io::witness_from_json(s, io::read_json_file(cfg.inputs.at(0)), cfg.inputs.at(0));
  const Report report = verify_ambit(s, witness);
  print(out, report);
  return exit_code(report);
}

inline int props_test(const CommandConfig& cfg, std::ostream& out) {
  out << "SEED " << cfg.seed << '\n';
  const Report report = props::run_all(cfg.seed, cfg.count ? cfg.count : 1000);
  print(out, report);
  return exit_code(report);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convolution algebras of discrete semigroups and ambit construction", "ambit"};
  app.require_subcommand(1);
  CommandConfig cfg;

  auto positive = CLI::PositiveNumber;
  auto semigroup_opt = [&](CLI::App* sub) {
    sub->add_option("--semigroup", cfg.semigroup, "semigroup file or builtin name")->required();
  };

  auto* check = app.add_subcommand("check-semigroup", "associativity and cancellation evidence");
  semigroup_opt(check);
  check->add_option("--window", cfg.window, "search window size")->check(positive);

  auto* conv = app.add_subcommand("convolve", "convolve two measure files");
  conv->add_option("inputs", cfg.inputs, "two measure files")->required()->expected(2);
  conv->add_option("--out", cfg.out, "output measure file");

  auto* nrm = app.add_subcommand("norm", "total variation norm of a measure file");
  nrm->add_option("inputs", cfg.inputs, "measure file")->required()->expected(1);

  auto* ueb = app.add_subcommand("ueb-distance", "dual Lipschitz distance of two measures");
  ueb->add_option("inputs", cfg.inputs, "two measure files")->required()->expected(2);
  ueb->add_option("--metric", cfg.metric, "pseudometric file (default: discrete)");

  auto* trace = app.add_subcommand("orbit-trace", "restrictions of right translates of f");
  semigroup_opt(trace);
  trace->add_option("inputs", cfg.inputs, "window function file")->required()->expected(1);
  trace->add_option("--probe", cfg.probe, "size of the probe window F")->check(positive);
  trace->add_option("--window", cfg.window, "number of translates")->check(positive);

  auto* amb = app.add_subcommand("ambit", "ambit witness construction");
  amb->require_subcommand(1);
  auto* build = amb->add_subcommand("build", "enumerate, select, construct and verify");
  semigroup_opt(build);
  cfg.count = 100;
  build->add_option("--count", cfg.count, "number of neighborhoods")->check(positive);
  build->add_option("--grid", cfg.grid, "grid denominator for targets")->check(positive);
  build->add_option("--window", cfg.window, "largest neighborhood window |F|")->check(positive);
  build->add_option("--budget", cfg.budget, "candidates per selection step")->check(positive);
  build->add_option("--out", cfg.out, "witness output file");
  auto* verify = amb->add_subcommand("verify", "verify a witness file");
  semigroup_opt(verify);
  verify->add_option("inputs", cfg.inputs, "witness file")->required()->expected(1);

  auto* prop = app.add_subcommand("props", "algebraic property suites");
  prop->require_subcommand(1);
  auto* ptest = prop->add_subcommand("test", "run the seeded property suites");
  ptest->add_option("--seed", cfg.seed, "random seed");
  ptest->add_option("--count", cfg.count, "instances per law and carrier")->check(positive);

  std::vector<const char*> argv{"ambit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  // `build` owns the count default of 100; props uses 1000 when unset.
  if (!build->parsed()) cfg.count = ptest->count("--count") ? cfg.count : 0;
  if (build->parsed() && !build->count("--window")) cfg.window = 8;

  try {
    if (check->parsed()) return check_semigroup(cfg, out);
    if (conv->parsed()) return convolve_command(cfg, out, err);
    if (nrm->parsed()) return norm_command(cfg, out, err);
    if (ueb->parsed()) return ueb_command(cfg, out, err);
    if (trace->parsed()) return orbit_trace_command(cfg, out);
    if (build->parsed()) return ambit_build(cfg, out);
    if (verify->parsed()) return ambit_verify(cfg, out);
    if (ptest->parsed()) return props_test(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ambit::cli
