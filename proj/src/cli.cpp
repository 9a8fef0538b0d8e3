#include "zeclab/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeclab/errors.hpp"
#include "zeclab/json_io.hpp"
#include "zeclab/scenarios.hpp"

namespace zeclab::cli {

namespace {

SubspaceBasis factor_subspace(double theta, int p, Eigen::Index cap) {
  return subspace_Lp(GraphParams::make(theta, p),
                     SignMatrix::lower_ones(Eigen::Index(1) << (p - 1)), cap);
}

SubspaceBasis tensor_from_thetas(const std::vector<double>& thetas, int p,
                                 Eigen::Index cap) {
  std::vector<SubspaceBasis> factors;
  for (const double theta : thetas) factors.push_back(factor_subspace(theta, p, cap));
  if (factors.size() == 1) return factors.front();
  return tensor_subspace(factors, cap);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON in ") + path + ": " +
                          e.what());
  }
}

void emit(const Json& j, std::ostream& out, const std::string& path) {
  const std::string text = dump_deterministic(j);
  out << text;
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw ResourceError("cannot write output file: " + path);
    f << text;
  }
}

std::vector<Vector> columns_of_S() {
  const Matrix s = basis_change_S();
  std::vector<Vector> cols;
  for (Eigen::Index c = 0; c < s.cols(); ++c) cols.push_back(s.col(c));
  return cols;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"numerical laboratory for zero-error capacity of deformed "
               "operator subspaces"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double tol = std::numeric_limits<double>::quiet_NaN();
  long long cap = static_cast<long long>(kDefaultDimCap);
  std::string out_path;
  app.add_option("--seed", seed, "random seed for searches");
  app.add_option("--tol", tol, "override the subcommand's default tolerance");
  app.add_option("--cap", cap, "ambient dimension cap");
  app.add_option("--out", out_path, "also write the JSON artifact to this file");

  double theta = 0.0;
  std::vector<double> theta_list;
  int p = 2;
  int n = 0;
  long long env_m = 4;
  int restarts = 200;
  std::string graph_path, code_path, scenario_name;

  CLI::App* graph_cmd = app.add_subcommand("graph", "build a deformed operator "
                                           "subspace and check its graph conditions");
  graph_cmd->fallthrough();
  graph_cmd->add_option("--theta", theta, "deformation angle")->required();
  graph_cmd->add_option("--p", p, "block exponent (ambient dim 2^p)");

  CLI::App* channel_cmd = app.add_subcommand("channel", "construct the channel "
                                             "with the prescribed graph");
  channel_cmd->fallthrough();
  std::string emit_what = "report";
  channel_cmd->add_option("--theta", theta, "deformation angle")->required();
  channel_cmd->add_option("--env", env_m, "environment dimension (2 or 4)");
  channel_cmd->add_option("--emit", emit_what, "isometry, graph or report")
      ->check(CLI::IsMember({"isometry", "graph", "report"}));

  CLI::App* code_cmd = app.add_subcommand("code", "code constructions and checks");
  code_cmd->require_subcommand(1);
  code_cmd->fallthrough();  // lets --tol/--seed/--out reach the top level
  CLI::App* code_verify = code_cmd->add_subcommand("verify", "verify codes "
                                                   "against an operator subspace");
  code_verify->fallthrough();
  code_verify->add_option("--theta-list", theta_list, "per-copy angles")
      ->delimiter(',');
  code_verify->add_option("--p", p, "block exponent");
  code_verify->add_option("--n", n, "number of copies");
  code_verify->add_option("--graph", graph_path, "subspace JSON file");
  code_verify->add_option("--code", code_path, "code JSON file");

  CLI::App* search_cmd = app.add_subcommand("search", "numerical feasibility "
                                            "search for a 2-D code");
  search_cmd->fallthrough();
  search_cmd->add_option("--theta", theta, "single-copy angle");
  search_cmd->add_option("--theta-list", theta_list, "per-copy angles")
      ->delimiter(',');
  search_cmd->add_option("--p", p, "block exponent");
  search_cmd->add_option("--graph", graph_path, "subspace JSON file");
  search_cmd->add_option("--restarts", restarts, "number of restarts");

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "capacity lower bounds "
                                            "and thresholds");
  bounds_cmd->fallthrough();
  bounds_cmd->add_option("--p", p, "block exponent")->required();
  bounds_cmd->add_option("--n", n, "number of copies")->required();

  CLI::App* certify_cmd = app.add_subcommand("certify", "zero-capacity "
                                             "certificate for n copies");
  certify_cmd->fallthrough();
  certify_cmd->add_option("--theta-list", theta_list, "per-copy angles")
      ->delimiter(',')
      ->required();
  certify_cmd->add_option("--p", p, "block exponent");

  CLI::App* scenario_cmd = app.add_subcommand("scenario", "composite experiments");
  scenario_cmd->fallthrough();
  scenario_cmd->add_option("--name", scenario_name,
                           "corollary1 or superactivation")->required();
  scenario_cmd->add_option("--n", n, "copies for corollary1");
  scenario_cmd->add_option("--theta", theta, "angle for superactivation");
  scenario_cmd->add_option("--restarts", restarts, "search restarts");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const Eigen::Index dim_cap = static_cast<Eigen::Index>(cap);

    if (app.got_subcommand(graph_cmd)) {
      const SubspaceBasis s = factor_subspace(theta, p, dim_cap);
      const GraphConditionReport rep = check_graph_conditions(s);
      Json j;
      j["theta"] = theta;
      j["p"] = p;
      j["conditions"] = to_json(rep);
      j["subspace"] = to_json(s);
      emit(j, out, out_path);
      return rep.all_hold() ? 0 : 1;
    }

    if (app.got_subcommand(channel_cmd)) {
      const EnvVectors env = default_env_vectors(static_cast<Eigen::Index>(env_m));
      const StinespringIsometry v = stinespring(theta, env);
      if (emit_what == "isometry") {
        emit(to_json(v), out, out_path);
        return 0;
      }
      const SubspaceBasis graph = noncommutative_graph(v);
      if (emit_what == "graph") {
        emit(to_json(graph), out, out_path);
        return 0;
      }
      const double dist = subspace_distance(graph, subspace_L(theta));
      const CqReport cq = is_classical_quantum(v, columns_of_S());
      Json j;
      j["theta"] = theta;
      j["env"] = to_json(env);
      j["basis"] = to_json(channel_basis(theta));
      j["isometry"] = to_json(v);
      j["graph"] = to_json(graph);
      j["graph_distance"] = dist;
      j["cq"] = to_json(cq);
      emit(j, out, out_path);
      return 0;
    }

    if (app.got_subcommand(code_cmd)) {
      const double kl_tol = std::isnan(tol) ? tol::kl : tol;
      if (!graph_path.empty() || !code_path.empty()) {
        if (graph_path.empty() || code_path.empty())
          throw ValidationError("code verify needs both --graph and --code");
        const SubspaceBasis s = subspace_from_json(read_json_file(graph_path));
        const CodeCandidate c = code_from_json(read_json_file(code_path));
        const KLReport rep = verify_code(s, c, kl_tol);
        emit(to_json(rep), out, out_path);
        return rep.pass ? 0 : 1;
      }
      if (theta_list.empty())
        throw ValidationError("code verify needs --theta-list or --graph/--code");
      if (n == 0) n = static_cast<int>(theta_list.size());
      if (n != static_cast<int>(theta_list.size()))
        throw ValidationError("--n does not match the number of angles");
      std::vector<SubspaceBasis> factors;
      for (const double t : theta_list)
        factors.push_back(factor_subspace(t, p, dim_cap));
      const CodeFamily fam = build_code_family(n, p, dim_cap);
      const FamilyReport rep = verify_family_against_graph(factors, fam, kl_tol);
      emit(to_json(rep), out, out_path);
      return rep.pass ? 0 : 1;
    }

    if (app.got_subcommand(search_cmd)) {
      SubspaceBasis s;
      const bool has_theta = search_cmd->count("--theta") > 0;
      if (!graph_path.empty()) {
        if (has_theta || !theta_list.empty())
          throw ValidationError("--graph excludes --theta/--theta-list");
        s = subspace_from_json(read_json_file(graph_path));
      } else {
        if (has_theta && !theta_list.empty())
          throw ValidationError("give either --theta or --theta-list");
        if (has_theta) theta_list.assign(1, theta);
        if (theta_list.empty())
          throw ValidationError("search needs --theta, --theta-list or --graph");
        s = tensor_from_thetas(theta_list, p, dim_cap);
      }
      SearchConfig cfg;
      cfg.restarts = restarts;
      cfg.seed = seed;
      cfg.dim_cap = dim_cap;
      if (!std::isnan(tol)) cfg.success_tol = tol;
      const SearchOutcome outcome = find_code_pair(s, cfg);
      emit(to_json(outcome), out, out_path);
      return outcome.status == SearchStatus::code_found ? 0 : 3;
    }

    if (app.got_subcommand(bounds_cmd)) {
      Json j;
      j["bounds"] = to_json(capacity_lower_bound(n, p));
      j["amplification"] = to_json(amplification(p));
      emit(j, out, out_path);
      return 0;
    }

    if (app.got_subcommand(certify_cmd)) {
      const Certificate cert = certify(theta_list, p);
      emit(to_json(cert), out, out_path);
      return cert.verdict ? 0 : 1;
    }

    if (app.got_subcommand(scenario_cmd)) {
      if (scenario_name == "corollary1") {
        if (n < 1) throw ValidationError("scenario corollary1 needs --n >= 1");
        const Corollary1Report rep = scenario_corollary1(n, dim_cap);
        emit(to_json(rep), out, out_path);
        return rep.verified ? 0 : 1;
      }
      if (scenario_name == "superactivation") {
        if (scenario_cmd->count("--theta") == 0)
          throw ValidationError("scenario superactivation needs --theta");
        SearchConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.dim_cap = dim_cap;
        const SuperactivationReport rep = scenario_superactivation(theta, cfg);
        emit(to_json(rep), out, out_path);
        return rep.superactivated ? 0 : 1;
      }
      throw ValidationError("unknown scenario: " + scenario_name);
    }

    throw ValidationError("no subcommand given");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace zeclab::cli
