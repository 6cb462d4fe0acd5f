// Copyright 2026 The pce Authors. All rights reserved.
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

#include "pce/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pce/appendix_examples.hpp"
#include "pce/belief_system.hpp"
#include "pce/equilibrium.hpp"
#include "pce/game_model.hpp"
#include "pce/info_trade.hpp"
#include "pce/markets.hpp"
#include "pce/oracle.hpp"
#include "pce/report.hpp"

namespace pce {

namespace {

using nlohmann::json;

constexpr int kOk = 0, kInputError = 1, kRejected = 2, kSearchEmpty = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return ss.str();
}

// "lo:hi:step" to points.
std::vector<double> parse_range(const std::string& text, const std::string& name) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InvalidParameters("--" + name + ": '" + text + "' is not lo:hi:step");
    }
  }
  if (v.size() == 1) return v;
  if (v.size() != 3) throw InvalidParameters("--" + name + ": '" + text + "' is not lo:hi:step");
  return GridDim{name, v[0], v[1], v[2]}.points();
}

struct Run {
  std::ostream& out;
  std::ostream& err;
  std::string command;
  std::string out_path;
  bool timing = false;
  std::vector<std::string> inputs;  // file contents, in argument order
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::ostream& sink(std::ofstream& file) {
    if (out_path.empty()) return out;
    file.open(out_path, std::ios::binary);
    if (!file) throw SchemaError(out_path, "cannot write file");
    return file;
  }

  int report(json results, int code) {
    json r;
    r["command"] = command;
    std::string all;
    for (const auto& s : inputs) all += sha256_hex(s);
    r["inputs_digest"] = sha256_hex(all);
    r["results"] = std::move(results);
    r["version"] = kVersion;
    r["exit_code"] = code;
    if (timing)
      r["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    round_numbers(r);
    std::ofstream file;
    sink(file) << r.dump(2) << "\n";
    return code;
  }

  int csv(const std::string& text) {
    std::ofstream file;
    sink(file) << text;
    return kOk;
  }
};

Mode parse_mode(const std::string& s) {
  if (s == "mixed") return Mode::kMixed;
  if (s == "pure") return Mode::kPure;
  throw InvalidParameters("unknown mode '" + s + "'");
}

SearchMethod parse_method(const std::string& s) {
  if (s == "expost") return SearchMethod::kExPost;
  if (s == "iterate") return SearchMethod::kIterate;
  if (s == "enumerate") return SearchMethod::kEnumerate;
  throw InvalidParameters("unknown method '" + s + "'");
}

json oracle_summary(const OracleResult& r) {
  return {{"argmin", r.actions[r.argmin]}, {"value", r.value}, {"worst_state", r.worst_state}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect compromise equilibrium toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Run run{out, err, "", "", false, {}};
  {
    std::string cmd = "pce";
    for (int i = 1; i < argc; ++i) cmd += std::string(" ") + argv[i];
    run.command = cmd;
  }
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", run.out_path, "Write output to FILE instead of stdout");
    sub->add_flag("--timing", run.timing, "Include wall time in the report");
  };

  std::function<int()> action;

  // verify
  std::string game_path, candidate_path, mode = "mixed";
  double tol = 1e-9;
  bool relative_tol = false;
  auto* verify = app.add_subcommand("verify", "Check a candidate profile and beliefs");
  verify->add_option("--game", game_path, "Game file")->required();
  verify->add_option("--candidate", candidate_path, "Candidate file")->required();
  verify->add_option("--mode", mode, "mixed or pure")->check(CLI::IsMember({"mixed", "pure"}));
  verify->add_option("--tol", tol, "Acceptance tolerance");
  verify->add_flag("--relative-tol", relative_tol, "Scale tol by the largest absolute payoff");
  common(verify);
  verify->callback([&] {
    action = [&] {
      std::string g = read_file(game_path), c = read_file(candidate_path);
      run.inputs = {g, c};
      GameTree tree = deserialize(g);
      Candidate cand = parse_candidate(tree, c);
      VerifyOptions opt;
      opt.mode = parse_mode(mode);
      opt.tol = tol;
      opt.relative_tol = relative_tol;
      VerificationReport rep = verify_pce(tree, cand.profile, cand.beliefs, opt);
      json res = to_json(rep, tree);
      res["verdict"] = rep.accepted ? "accepted" : "rejected";
      return run.report(res, rep.accepted ? kOk : kRejected);
    };
  });

  // search
  std::string method = "iterate";
  SearchOptions sopt;
  auto* search = app.add_subcommand("search", "Search for perfect compromise equilibria");
  search->add_option("--game", game_path, "Game file")->required();
  search->add_option("--method", method, "expost, iterate or enumerate")
      ->check(CLI::IsMember({"expost", "iterate", "enumerate"}));
  search->add_option("--eps", sopt.eps, "iterate: convergence threshold");
  search->add_option("--max-iters", sopt.max_iters, "iterate: maximum sweeps");
  search->add_option("--step", sopt.step, "iterate: damping step in (0, 1]");
  search->add_option("--max-profiles", sopt.max_profiles, "expost/enumerate: profile budget");
  search->add_option("--max-results", sopt.max_results, "Stop after this many equilibria");
  search->add_option("--restarts", sopt.random_restarts, "iterate: random restarts");
  search->add_option("--seed", sopt.seed, "iterate: restart seed");
  search->add_option("--tol", sopt.tol, "Verification tolerance");
  common(search);
  search->callback([&] {
    action = [&] {
      std::string g = read_file(game_path);
      run.inputs = {g};
      GameTree tree = deserialize(g);
      SearchResult r = search_pce(tree, parse_method(method), sopt);
      return run.report(to_json(r, tree), r.found.empty() ? kSearchEmpty : kOk);
    };
  });

  // discretize
  std::string disc_id;
  std::vector<std::string> grid_args, param_args;
  std::size_t cap = kDefaultCellCap;
  auto* disc = app.add_subcommand("discretize", "Write a finite game for a continuous example");
  disc->add_option("id", disc_id, "cournot, bertrand, spence, trade_buyer, trade_seller, double_auction, public_good")
      ->required();
  disc->add_option("--grid", grid_args, "name:lo:hi:step (repeatable)");
  disc->add_option("--param", param_args, "key=value (repeatable)");
  disc->add_option("--cap", cap, "Maximum evaluated cells");
  disc->add_option("--out", run.out_path, "Write output to FILE instead of stdout");
  disc->callback([&] {
    action = [&] {
      GridSpec g;
      for (const auto& a : grid_args) {
        auto c1 = a.find(':');
        if (c1 == std::string::npos) throw InvalidParameters("--grid expects name:lo:hi:step, got '" + a + "'");
        std::vector<double> v;
        std::stringstream ss(a.substr(c1 + 1));
        std::string part;
        while (std::getline(ss, part, ':')) v.push_back(std::stod(part));
        if (v.size() != 3) throw InvalidParameters("--grid expects name:lo:hi:step, got '" + a + "'");
        g.dims.push_back({a.substr(0, c1), v[0], v[1], v[2]});
      }
      std::map<std::string, double> prm;
      for (const auto& a : param_args) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw InvalidParameters("--param expects key=value, got '" + a + "'");
        std::string key = a.substr(0, eq), val = a.substr(eq + 1);
        if (key == "rule")
          prm[key] = static_cast<double>(parse_transfer_rule(val));
        else
          prm[key] = std::stod(val);
      }
      return run.csv(serialize(discretize_example(disc_id, g, prm, cap)));
    };
  });

  // example
  auto* example = app.add_subcommand("example", "Closed-form solutions of the worked examples");
  example->require_subcommand(1);
  bool oracle = false;
  double grid_step = 0.0;

  CournotParams cp;
  auto* cournot = example->add_subcommand("cournot", "Duopoly with unknown linear demand");
  cournot->add_option("--a-lo", cp.a_lo);
  cournot->add_option("--a-hi", cp.a_hi);
  cournot->add_option("--b-lo", cp.b_lo);
  cournot->add_option("--b-hi", cp.b_hi);
  cournot->add_flag("--oracle", oracle, "Cross-check by grid search");
  cournot->add_option("--grid-step", grid_step, "Oracle grid step (default 1e-3)");
  common(cournot);
  cournot->callback([&] {
    action = [&] {
      CournotSolution s = cournot_pce(cp);
      json res{{"example", "cournot"},
               {"params", {{"a_lo", cp.a_lo}, {"a_hi", cp.a_hi}, {"b_lo", cp.b_lo}, {"b_hi", cp.b_hi}}},
               {"quantity", s.quantity},
               {"max_loss", s.max_loss},
               {"balancing_residual", cournot_balancing_residual(cp, s.quantity, s.quantity)}};
      int code = kOk;
      if (oracle) {
        double step = grid_step > 0 ? grid_step : 1e-3;
        OracleResult r = cournot_oracle(cp, s.quantity, step);
        bool agree = std::fabs(r.actions[r.argmin] - s.quantity) <= step * (1 + 1e-9) && r.worst_state <= 1;
        res["oracle"] = oracle_summary(r);
        res["oracle"]["grid_step"] = step;
        res["oracle"]["agrees"] = agree;
        if (!agree) code = kRejected;
      }
      return run.report(res, code);
    };
  });

  BertrandParams bp;
  double bc = std::nan("");
  bool printed_loss = false;
  auto* bertrand = example->add_subcommand("bertrand", "Duopoly with private costs");
  bertrand->add_option("--a", bp.a);
  bertrand->add_option("--b", bp.b);
  bertrand->add_option("--c-lo", bp.c_lo);
  bertrand->add_option("--c-hi", bp.c_hi);
  bertrand->add_option("--c", bc, "Own cost (default c_lo)");
  bertrand->add_flag("--printed-loss", printed_loss, "Report the loss without the 1/b demand factor");
  bertrand->add_flag("--oracle", oracle, "Cross-check by grid search");
  bertrand->add_option("--grid-step", grid_step, "Oracle grid step (default 1e-3)");
  common(bertrand);
  bertrand->callback([&] {
    action = [&] {
      double c = std::isnan(bc) ? bp.c_lo : bc;
      BertrandSolution s = bertrand_pce(bp, c);
      json res{{"example", "bertrand"},
               {"params", {{"a", bp.a}, {"b", bp.b}, {"c_lo", bp.c_lo}, {"c_hi", bp.c_hi}, {"c", c}}},
               {"price", s.price},
               {"max_loss", printed_loss ? s.printed_max_loss : s.max_loss},
               {"loss_convention", printed_loss ? "printed" : "derived"},
               {"max_loss_derived", s.max_loss},
               {"max_loss_printed", s.printed_max_loss}};
      int code = kOk;
      if (oracle) {
        double step = grid_step > 0 ? grid_step : 1e-3;
        OracleResult r = bertrand_oracle(bp, c, step);
        bool agree = std::fabs(r.actions[r.argmin] - s.price) <= step * (1 + 1e-9);
        res["oracle"] = oracle_summary(r);
        res["oracle"]["grid_step"] = step;
        res["oracle"]["agrees"] = agree;
        if (!agree) code = kRejected;
      }
      return run.report(res, code);
    };
  });

  SpenceParams spp;
  std::string kind = "separating";
  auto* spence = example->add_subcommand("spence", "Job market signaling with unknown costs");
  spence->add_option("--b", spp.b);
  spence->add_option("--delta", spp.delta);
  spence->add_option("--kind", kind, "pooling or separating")->check(CLI::IsMember({"pooling", "separating"}));
  spence->add_flag("--oracle", oracle, "Cross-check the wages by grid search");
  spence->add_option("--grid-step", grid_step, "Oracle wage grid step (default 1e-3)");
  common(spence);
  spence->callback([&] {
    action = [&] {
      SpenceSolution s = spence_pce(spp, kind == "pooling" ? SpenceKind::kPooling : SpenceKind::kSeparating);
      json res{{"example", "spence"}, {"params", {{"b", spp.b}, {"delta", spp.delta}}}, {"kind", kind}, {"exists", s.exists}};
      int code = kOk;
      if (s.exists) {
        res["wages"] = {{"e_L", s.wage_low}, {"e_H", s.wage_high}};
        res["belief_intervals"] = {{"e_L", {s.after_low.lo, s.after_low.hi}}, {"e_H", {s.after_high.lo, s.after_high.hi}}};
        res["firm_max_losses"] = {{"e_L", s.loss_low}, {"e_H", s.loss_high}};
        res["midpoint_residual"] = s.midpoint_residual;
        if (s.kind == SpenceKind::kSeparating) {
          res["cost_threshold"] = s.cost_threshold;
          res["solved_wages"] = {{"e_L", s.solved_wage_low}, {"e_H", s.solved_wage_high}};
        }
        if (oracle) {
          double step = grid_step > 0 ? grid_step : 1e-3;
          bool agree = true;
          json o;
          for (int e = 0; e < 2; ++e) {
            ProductivityBounds bd = e ? s.after_high : s.after_low;
            double w = e ? s.wage_high : s.wage_low;
            OracleResult r = spence_wage_oracle(bd, w, step);
            bool ok = std::fabs(r.actions[r.argmin] - w) <= step * (1 + 1e-9);
            agree = agree && ok;
            json row = oracle_summary(r);
            row["loss_with_tie_split"] = spence_firm_loss(w, w, bd);
            row["agrees"] = ok;
            o[e ? "e_H" : "e_L"] = row;
          }
          o["grid_step"] = step;
          o["agrees"] = agree;
          res["oracle"] = o;
          if (!agree) code = kRejected;
        }
      } else {
        res["reason"] = "no state would choose high education (delta >= 2b^2 - b)";
      }
      return run.report(res, code);
    };
  });

  std::string proposer = "buyer";
  auto* trade = example->add_subcommand("trade", "Take-it-or-leave-it trade with a common value");
  trade->add_option("--proposer", proposer, "buyer or seller")->check(CLI::IsMember({"buyer", "seller"}));
  trade->add_flag("--oracle", oracle, "Cross-check the proposer's price by grid search");
  trade->add_option("--grid-step", grid_step, "Oracle grid step (default 0.02)");
  common(trade);
  trade->callback([&] {
    action = [&] {
      Side side = proposer == "buyer" ? Side::kBuyer : Side::kSeller;
      TradeSolution t = trade_pce(side);
      json res{{"example", "trade"},
               {"proposer", proposer},
               {"price", t.price},
               {"proposer_max_loss", t.proposer_max_loss},
               {"responder_max_loss", t.responder_max_loss},
               {"on_path_values", {t.on_path.lo, t.on_path.hi}}};
      if (side == Side::kBuyer) {
        res["acceptance"] = "clamp(2p - x, 0, 1)";
        res["trade_probability"] = "max(1/2 - x, 0)";
      } else {
        res["acceptance"] = "1/4 at p = 3/4, max(1 - 2p, 0) otherwise";
        res["off_path_values"] = {t.off_path.lo, t.off_path.hi};
      }
      int code = kOk;
      if (oracle) {
        double step = grid_step > 0 ? grid_step : 0.02;
        std::vector<double> g = GridDim{"g", 0.0, 1.0, step}.points();
        TradeOracleResult r = two_stage_trade_oracle(side, g, g, g);
        bool agree = t.price >= r.minimizer_lo - step * (1 + 1e-9) && t.price <= r.minimizer_hi + step * (1 + 1e-9) &&
                     std::fabs(r.value - t.proposer_max_loss) <= 0.01;
        json o{{"argmin", r.prices[r.argmin]},
               {"value", r.value},
               {"minimizers", {r.minimizer_lo, r.minimizer_hi}},
               {"grid_step", step}};
        if (side == Side::kSeller) {
          double other = INFINITY;
          for (std::size_t k = 0; k < r.prices.size(); ++k)
            if (r.prices[k] != 0.75) other = std::min(other, r.max_loss[k]);
          o["min_loss_other_prices"] = other;
          agree = agree && other >= 3.0 / 32.0 - 0.01;
        }
        o["agrees"] = agree;
        res["oracle"] = o;
        if (!agree) code = kRejected;
      }
      return run.report(res, code);
    };
  });

  auto* auction = example->add_subcommand("double-auction", "Double auction with private values");
  auction->add_flag("--oracle", oracle, "Cross-check the losses by grid search");
  common(auction);
  auction->callback([&] {
    action = [&] {
      DoubleAuctionSolution d = double_auction_pce();
      json res{{"example", "double-auction"},
               {"seller_floor", d.seller_floor},
               {"buyer_ceiling", d.buyer_ceiling},
               {"endpoint_residual", d.endpoint_residual},
               {"seller_bid", "max(v, 1/4 + 2v/3)"},
               {"buyer_bid", "min(v, 1/12 + 2v/3)"},
               {"seller_loss", "max(1/4 - v/(12(1 - v)), 0)"},
               {"buyer_loss", "max(1/4 - (1 - v)/(12v), 0)"}};
      int code = kOk;
      if (oracle) {
        std::vector<double> g = GridDim{"v", 0.0, 1.0, 1e-3}.points();
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
          double v = k / 100.0;
          worst = std::max(worst, std::fabs(double_auction_seller_loss_on_grid(v, double_auction_seller_bid(v), g) -
                                            double_auction_seller_abs_loss(v)));
          double vb = 1.0 - v;
          worst = std::max(worst, std::fabs(double_auction_buyer_loss_on_grid(vb, double_auction_buyer_bid(vb), g) -
                                            double_auction_buyer_abs_loss(vb)));
        }
        bool agree = worst <= 2e-3;
        res["oracle"] = {{"max_abs_loss_gap", worst}, {"agrees", agree}};
        if (!agree) code = kRejected;
      }
      return run.report(res, code);
    };
  });

  PublicGoodParams pg;
  std::string rule = "pay_as_bid";
  auto* pub = example->add_subcommand("public-good", "Public good with committed contributions");
  pub->add_option("--n", pg.n);
  pub->add_option("--c", pg.c);
  pub->add_option("--vbar", pg.v_bar);
  pub->add_option("--rule", rule, "pay_as_bid, proportional or additive");
  common(pub);
  pub->callback([&] {
    action = [&] {
      pg.rule = parse_transfer_rule(rule);
      PublicGoodSolution s = public_good_pce(pg);
      json bids = json::object();
      for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) bids[fmt(v * pg.v_bar)] = public_good_bid(pg, v * pg.v_bar);
      json res{{"example", "public-good"},
               {"params", {{"n", pg.n}, {"c", pg.c}, {"v_bar", pg.v_bar}, {"rule", to_string(pg.rule)}}},
               {"inefficiency", s.inefficiency},
               {"balancing_residual", s.balancing_residual},
               {"individual_loss_sup", s.individual_loss_sup},
               {"bids", bids}};
      return run.report(res, kOk);
    };
  });

  std::string variant = "unknown_prior", prior_file, noise_file;
  double f_eps = 0.5, f_delta = 0.5, theta0 = 0.5, z = 0.5, f_step = 1e-3;
  auto* fc = example->add_subcommand("forecast", "Forecasting under an unknown prior or noise");
  fc->add_option("--variant", variant)->check(CLI::IsMember({"unknown_prior", "unknown_noise"}));
  fc->add_option("--eps", f_eps);
  fc->add_option("--delta", f_delta);
  fc->add_option("--theta0", theta0);
  fc->add_option("--z", z);
  fc->add_option("--prior-file", prior_file, "CSV of (support, density) for the prior");
  fc->add_option("--noise-file", noise_file, "CSV of (support, weight) for the base noise");
  fc->add_option("--step", f_step, "Noise grid step");
  common(fc);
  fc->callback([&] {
    action = [&] {
      json res{{"example", "forecast"}, {"variant", variant}, {"params", {{"eps", f_eps}, {"delta", f_delta}, {"z", z}}}};
      if (variant == "unknown_prior") {
        UnknownPriorForecast f = forecast_unknown_prior(f_eps, f_delta, theta0, z);
        res["params"]["theta0"] = theta0;
        res["action"] = f.action;
        res["lambda"] = f.lambda;
        res["high"] = f.high;
        res["low"] = f.low;
      } else {
        if (prior_file.empty() || noise_file.empty())
          throw InvalidParameters("unknown_noise needs --prior-file and --noise-file");
        run.inputs = {read_file(prior_file), read_file(noise_file)};
        UnknownNoiseForecast f =
            forecast_unknown_noise(f_eps, f_delta, read_grid_csv(prior_file), read_grid_csv(noise_file), z, f_step);
        res["action"] = f.action;
        res["high"] = f.high;
        res["low"] = f.low;
        res["x_high"] = f.x_high;
        res["x_low"] = f.x_low;
        res["base_mean"] = f.base_mean;
      }
      return run.report(res, kOk);
    };
  });

  // sweep
  std::string eps_text = "0.01:0.5:0.01";
  double a0 = 2.0, b0 = 1.0;
  bool renormalize = false;
  int cost_points = 11;
  auto* sweep = app.add_subcommand("sweep", "Tabulate an example across uncertainty levels");
  sweep->require_subcommand(1);
  auto* sc = sweep->add_subcommand("cournot", "Quantity, loss and dq/deps");
  sc->add_option("--eps", eps_text, "lo:hi:step");
  sc->add_option("--a0", a0);
  sc->add_option("--b0", b0);
  sc->add_flag("--renormalize", renormalize, "Set b0 = a0^2/4");
  sc->add_option("--out", run.out_path);
  sc->callback([&] {
    action = [&] {
      auto rows = cournot_sweep(a0, b0, parse_range(eps_text, "eps"), renormalize);
      std::ostringstream s;
      s << "eps,quantity,max_loss,dq_deps,dq_deps_leading\n";
      for (const auto& r : rows)
        s << fmt(r.eps) << "," << fmt(r.quantity) << "," << fmt(r.max_loss) << "," << fmt(r.dq_deps) << ","
          << fmt(2 * r.eps / (3 * a0)) << "\n";
      return run.csv(s.str());
    };
  });
  auto* sb = sweep->add_subcommand("bertrand", "Price curve, dp/deps and the loss bound");
  sb->add_option("--eps", eps_text, "lo:hi:step");
  sb->add_option("--cost-points", cost_points);
  sb->add_option("--out", run.out_path);
  sb->callback([&] {
    action = [&] {
      auto rows = bertrand_sweep(parse_range(eps_text, "eps"), cost_points);
      std::ostringstream s;
      s << "eps,c,price,dp_deps,dp_deps_formula,bound,max_loss,printed_max_loss\n";
      for (const auto& r : rows)
        for (std::size_t k = 0; k < r.costs.size(); ++k)
          s << fmt(r.eps) << "," << fmt(r.costs[k]) << "," << fmt(r.prices[k]) << "," << fmt(r.dp_deps[k]) << ","
            << fmt(r.dp_formula[k]) << "," << fmt(r.bound) << "," << fmt(r.max_loss) << "," << fmt(r.printed_max_loss)
            << "\n";
      return run.csv(s.str());
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return action ? action() : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace pce
