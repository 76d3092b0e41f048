// Copyright 2026 The qecoh Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Batch front end: one subcommand per module, JSON/CSV emission, exit code 0
// on success, 1 when a checked bound fails, 2 on invalid input.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qec/channel.hpp"
#include "qec/correlated.hpp"
#include "qec/repcode.hpp"
#include "qec/toric.hpp"

using json = nlohmann::ordered_json;
using namespace qec;

namespace {

json complex_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json chi_json(const ChiMatrix& chi) {
  json j;
  j["type"] = "chi";
  j["n"] = chi.n;
  std::vector<double> re, im;
  for (int i = 0; i < chi.m.rows(); ++i)
    for (int k = 0; k < chi.m.cols(); ++k) {
      re.push_back(chi.m(i, k).real());
      im.push_back(chi.m(i, k).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

json metrics_json(const ChannelMetrics& m) {
  json j;
  j["r"] = m.r;
  j["p"] = m.p;
  j["u"] = m.u;
  j["Theta"] = m.theta;
  j["D_lo"] = m.d_lower;
  j["D_hi"] = m.d_upper;
  if (m.eps_delta) {
    j["eps"] = m.eps_delta->first;
    j["delta"] = m.eps_delta->second;
  }
  return j;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + path);
    out << text << "\n";
  }
}

int run_repcode(int n, double theta, const std::vector<double>& angles,
                const std::string& out, int workers) {
  std::vector<double> ang = angles.empty() ? std::vector<double>(n, theta) : angles;
  ChiMatrix chi = repcode::logical_chi_enumerate(ang, workers);
  auto ed = repcode::eps_delta_from_chi(chi);
  json j;
  j["n"] = (int)ang.size();
  if (angles.empty())
    j["theta"] = theta;
  else
    j["angles"] = angles;
  j["eps"] = ed.eps;
  j["delta"] = ed.delta;
  double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  if (angles.empty() && s2 < 0.5) {
    auto hat = repcode::theorem1_asymptotics((int)ang.size(), theta);
    j["eps_hat"] = hat.eps;
    j["delta_hat"] = hat.delta;
  }
  j["logical_chi"] = chi_json(chi);
  emit(j.dump(), out);
  return 0;
}

int run_correlated(int n, double h1, double h2, double h3, const std::string& out) {
  correlated::CorrelatedModel model{n, h1, h2, h3};
  auto rep = correlated::theorem2_check(model);
  json j;
  j["n"] = n;
  j["h1"] = h1;
  j["h2"] = h2;
  if (n == 3) j["h3"] = h3;
  j["chi_xx"] = complex_json(rep.dense.chi_xx);
  j["chi_xi"] = complex_json(rep.dense.chi_xi);
  j["bound_rhs"] = rep.bound_rhs;
  j["slack_factor"] = rep.slack_factor;
  j["bound_satisfied"] = rep.bound_ok;
  j["collisionless_flagged"] = rep.collisionless_flagged;
  json table = json::array();
  long m = (n - 1) / 2;
  for (long q = 0; q <= m; q += 2) {
    json row;
    row["q"] = q;
    row["omega"] = correlated::omega_sum(q, n).magnitude.str();
    row["delta"] = correlated::delta_sum(q, n).magnitude.str();
    auto rc = correlated::omega_delta_ratio(q, n);
    row["ratio"] = rc.ratio.str();
    row["ratio_bound_ok"] = rc.bound_ok;
    table.push_back(row);
  }
  j["table"] = table;
  emit(j.dump(), out);
  return rep.bound_ok ? 0 : 1;
}

int run_toric(int L, double theta, const std::string& mode, char axis, int W, int zeta,
              double gamma, const std::string& out, int workers) {
  toric::TorusLattice lat = toric::make_torus(L);
  json j;
  j["L"] = L;
  j["theta"] = theta;
  j["axis"] = std::string(1, axis);
  j["mode"] = mode;
  int status = 0;
  if (mode == "brute") {
    ChiMatrix chi = toric::brute_force_logical_chi(lat, theta, axis, workers);
    j["logical_chi"] = chi_json(chi);
    auto census = toric::logical_component_census(chi);
    j["census"] = {{"z1i", census.z1i},
                   {"y1i", census.y1i},
                   {"z1z2i", census.z1z2i},
                   {"max_double_nontrivial", census.max_double_nontrivial_offdiag},
                   {"dominance_ok", census.dominance_ok},
                   {"product_ratio", census.product_ratio}};
    if (theta > 0) {
      auto t5 = toric::theorem5_ratio_check(chi, theta, L, zeta, gamma);
      j["theorem5"] = {{"lhs", t5.lhs},
                       {"rhs", t5.rhs},
                       {"holds", t5.holds},
                       {"error_budget", t5.error_budget},
                       {"ratio", t5.coh_incoh_ratio},
                       {"ratio_bound", t5.ratio_bound},
                       {"r", t5.r},
                       {"rm_quad_linear_pred", t5.rm_quad_linear_pred}};
      if (!t5.holds) status = 1;
    }
  } else if (mode == "truncated") {
    toric::AxisWeights ax;
    ax.nx = axis == 'X' ? 1.0 : 0.0;
    ax.nz = axis == 'Z' ? 1.0 : 0.0;
    auto tr = toric::truncated_chi_oracle(lat, theta, ax, W);
    j["W"] = W;
    j["terms"] = tr.terms;
    j["tail_amplitude_bound"] = tr.tail_amplitude_bound;
    j["comparison_bound"] = tr.comparison_bound;
    j["logical_chi"] = chi_json(tr.chi);
  } else if (mode == "estimate") {
    auto coh = toric::coherent_estimator(lat, theta, zeta);
    auto incoh = toric::incoherent_estimator(lat, theta, zeta);
    json per;
    for (auto& [l, v] : coh.per_length) per[std::to_string(l)] = v;
    j["coherent"] = {{"value", complex_json(coh.value)},
                     {"magnitude", coh.magnitude},
                     {"tail_budget", coh.tail_budget},
                     {"per_length", per}};
    json per2;
    for (auto& [l, v] : incoh.per_length) per2[std::to_string(l)] = v;
    j["incoherent"] = {{"magnitude", incoh.magnitude},
                       {"tail_budget", incoh.tail_budget},
                       {"leading_term", incoh.leading_term},
                       {"xi_crude", incoh.xi_crude},
                       {"per_length", per2}};
    j["zeta"] = zeta;
    j["gamma"] = gamma;
  } else {
    throw std::invalid_argument("toric: unknown mode " + mode);
  }
  emit(j.dump(), out);
  return status;
}

int run_identities(const std::string& check, long seed, const std::string& out) {
  json j;
  bool all_ok = true;
  auto want = [&](const char* name) { return check == "all" || check == name; };
  if (want("binomial")) {
    bool ok = true;
    for (int n = 1; n <= 101; n += 2) ok &= repcode::binomial_alternating_identity(n).holds;
    j["binomial_alternating"] = ok;
    all_ok &= ok;
  }
  if (want("dixon")) {
    bool ok = true;
    for (long m = 1; m <= 20; ++m)
      for (long q = 0; q <= m; q += 2) ok &= correlated::dixon_sum(m, q).holds;
    j["dixon_reduction"] = ok;
    all_ok &= ok;
  }
  if (want("ratio")) {
    bool ok = true;
    for (long n = 3; n <= 101; n += 2) {
      long m = (n - 1) / 2;
      for (long q = 0; q <= m; q += 2) {
        auto r = correlated::omega_delta_ratio(q, n);
        ok &= r.equal && r.bound_ok;
      }
    }
    j["omega_delta_ratio"] = ok;
    all_ok &= ok;
  }
  if (want("oddq")) {
    bool ok = true;
    for (long n = 3; n <= 101; n += 2) {
      long m = (n - 1) / 2;
      for (long q = 1; q <= m; q += 2) {
        ok &= correlated::omega_sum(q, n).magnitude == 0;
        ok &= correlated::delta_sum(q, n).magnitude == 0;
      }
    }
    j["odd_q_vanishing"] = ok;
    all_ok &= ok;
  }
  if (want("cancellation")) {
    bool ok = true;
    for (long q : {2L, 4L, 6L}) {
      auto c = correlated::cancellation_census(q);
      ok &= c.high_coeffs_vanish && c.leading_matches;
    }
    j["cancellation_census"] = ok;
    all_ok &= ok;
  }
  if (want("alternating-power")) {
    bool ok = true;
    for (long a = 0; a <= 12; ++a) ok &= correlated::alternating_power_identity(a).holds;
    j["alternating_power"] = ok;
    all_ok &= ok;
  }
  if (want("minimization")) {
    auto w = repcode::minimize_fm_witness(5, 3, 1.0, 10000, (uint64_t)seed);
    j["minimization_witness"] = {{"violations", w.violations},
                                 {"symmetric_value", w.symmetric_value},
                                 {"min_sampled", w.min_sampled},
                                 {"seed", seed}};
    all_ok &= (w.violations == 0);
  }
  j["all_ok"] = all_ok;
  emit(j.dump(), out);
  return all_ok ? 0 : 1;
}

int run_metrics(const std::string& channel, double theta, double p, double eps, double delta,
                const std::string& out) {
  Ptm ptm = Ptm::identity(1);
  if (channel == "rotation")
    ptm = chi_to_ptm(rotation_chi(theta, 'X'));
  else if (channel == "depolarizing")
    ptm = depolarizing_ptm(1, p);
  else if (channel == "rotdephase")
    ptm = rot_dephase_ptm(eps, delta);
  else
    throw std::invalid_argument("metrics: unknown channel " + channel);
  json j;
  j["channel"] = channel;
  j["metrics"] = metrics_json(channel_metrics(ptm));
  j["ptm"] = json::parse(to_json(ptm));
  emit(j.dump(), out);
  return 0;
}

int run_sweep(const std::string& what, int n, int L, double tmin, double tmax, int steps,
              const std::string& out, int workers) {
  std::string text = csv_metrics_header();
  for (int i = 0; i < steps; ++i) {
    double theta = steps == 1 ? tmin : tmin + (tmax - tmin) * i / (steps - 1);
    Ptm ptm;
    if (what == "repcode") {
      ptm = chi_to_ptm(repcode::logical_chi_enumerate(std::vector<double>(n, theta), workers));
    } else if (what == "toric") {
      toric::TorusLattice lat = toric::make_torus(L);
      ptm = chi_to_ptm(toric::brute_force_logical_chi(lat, theta, 'Z', workers));
    } else {
      throw std::invalid_argument("sweep: unknown target " + what);
    }
    text += "\n" + csv_metrics_row(theta, channel_metrics(ptm));
  }
  emit(text, out);
  return 0;
}

// Flat key=value config file. Derived arguments are spliced in right after
// the subcommand token, so explicit command-line values override them.
std::vector<std::string> apply_config(const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands) {
  std::string path;
  std::vector<std::string> stripped;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      stripped.push_back(args[i]);
    }
  }
  if (path.empty()) return stripped;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    extra.push_back("--" + line.substr(0, eq));
    extra.push_back(line.substr(eq + 1));
  }
  std::vector<std::string> out;
  bool spliced = false;
  for (const auto& a : stripped) {
    out.push_back(a);
    if (!spliced &&
        std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end()) {
      out.insert(out.end(), extra.begin(), extra.end());
      spliced = true;
    }
  }
  if (!spliced) out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logical-channel coherence toolkit for stabilizer codes"};
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  int workers = env_worker_count();
  app.add_option("--workers", workers, "worker thread count (QEC_WORKERS)");
  std::string out;
  app.add_option("--out", out, "output file (default stdout)");
  long seed = 1;
  app.add_option("--seed", seed, "seed for sampled checks");

  auto* rep = app.add_subcommand("repcode", "repetition-code logical channel");
  int rep_n = 5;
  double rep_theta = 0.2;
  std::vector<double> rep_angles;
  bool rep_json = true;
  rep->add_option("--n", rep_n);
  rep->add_option("--theta", rep_theta);
  rep->add_option("--angles", rep_angles)->delimiter(',');
  rep->add_flag("--json", rep_json);

  auto* corr = app.add_subcommand("correlated", "two-body correlated noise");
  int corr_n = 7;
  double h1 = 0.05, h2 = 0.0, h3 = 0.0;
  bool corr_json = true;
  corr->add_option("--n", corr_n);
  corr->add_option("--h1", h1);
  corr->add_option("--h2", h2);
  corr->add_option("--h3", h3);
  corr->add_flag("--json", corr_json);

  auto* tor = app.add_subcommand("toric", "toric-code logical channel");
  int L = 3, W = 7, zeta = 2;
  double tor_theta = 0.2, gamma = 0.5;
  std::string mode = "brute", axis = "z";
  bool tor_json = true;
  tor->add_option("--L", L);
  tor->add_option("--theta", tor_theta);
  tor->add_option("--mode", mode)->check(CLI::IsMember({"brute", "truncated", "estimate"}));
  tor->add_option("--axis", axis)->check(CLI::IsMember({"z", "x"}));
  tor->add_option("--W", W);
  tor->add_option("--zeta", zeta);
  tor->add_option("--gamma", gamma);
  tor->add_flag("--json", tor_json);

  auto* idn = app.add_subcommand("identities", "exact combinatorial identity checks");
  std::string check = "all";
  idn->add_option("--check", check);

  auto* met = app.add_subcommand("metrics", "channel metrics for named channels");
  std::string channel = "rotation";
  double met_theta = 0.2, met_p = 0.95, met_eps = 0.01, met_delta = 0.1;
  met->add_option("--channel", channel);
  met->add_option("--theta", met_theta);
  met->add_option("--p", met_p);
  met->add_option("--eps", met_eps);
  met->add_option("--delta", met_delta);

  auto* sw = app.add_subcommand("sweep", "CSV metric sweep over theta");
  std::string what = "repcode";
  int sw_n = 5, sw_L = 3, sw_steps = 10;
  double sw_min = 0.05, sw_max = 0.5;
  sw->add_option("--what", what);
  sw->add_option("--n", sw_n);
  sw->add_option("--L", sw_L);
  sw->add_option("--theta-min", sw_min);
  sw->add_option("--theta-max", sw_max);
  sw->add_option("--steps", sw_steps);

  app.require_subcommand(1);
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config(args, {"repcode", "correlated", "toric", "identities", "metrics",
                               "sweep"});
    // CLI11 consumes arguments back to front.
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (rep->parsed()) return run_repcode(rep_n, rep_theta, rep_angles, out, workers);
    if (corr->parsed()) return run_correlated(corr_n, h1, h2, h3, out);
    if (tor->parsed())
      return run_toric(L, tor_theta, mode, axis == "z" ? 'Z' : 'X', W, zeta, gamma, out,
                       workers);
    if (idn->parsed()) return run_identities(check, seed, out);
    if (met->parsed()) return run_metrics(channel, met_theta, met_p, met_eps, met_delta, out);
    if (sw->parsed()) return run_sweep(what, sw_n, sw_L, sw_min, sw_max, sw_steps, out, workers);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
