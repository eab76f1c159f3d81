#include "srlab/ccdist.hpp"
#include "srlab/checks.hpp"
#include "srlab/measure.hpp"
#include "srlab/modulus.hpp"
#include "srlab/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace srlab;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitConfig = 2;

struct GlobalOpts {
  std::uint64_t seed = 12345;
  bool deterministic = false;
  std::string out_path;
  std::string config_path;
};

// precedence: flags > config file > defaults
void apply_config_file(const std::string& path, GlobalOpts& g, CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  in >> j;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (app.count("--seed") == 0) g.seed = value.get<std::uint64_t>();
    } else if (key == "deterministic") {
      if (app.count("--deterministic") == 0) g.deterministic = value.get<bool>();
    } else {
      throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    }
  }
}

GroupPoint parse_point(GroupId g, const std::string& csv) {
  std::istringstream in(csv);
  double a, b, c;
  char comma;
  if (!(in >> a >> comma >> b >> comma >> c))
    throw CLI::ValidationError("point", "expected c1,c2,c3 but got '" + csv + "'");
  GroupPoint p{g, a, b, c};
  validate_point(p);
  return p;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

int emit(const Report& rep, const GlobalOpts& g) {
  const std::string body = to_json(rep);
  std::cout << body;
  if (!g.out_path.empty()) {
    std::ofstream out(g.out_path);
    out << body;
    if (!out) {
      std::cerr << "cannot write " << g.out_path << "\n";
      return kExitConfig;
    }
  }
  return rep.failures() == 0 ? kExitOk : kExitNumeric;
}

Check info(std::string name, double measured, std::string note = {},
           RefOrigin origin = RefOrigin::Derived) {
  Check c;
  c.name = std::move(name);
  c.status = CheckStatus::Info;
  c.measured = measured;
  c.origin = origin;
  c.note = std::move(note);
  return c;
}

int run_verify(const std::string& scope, int trials, const GlobalOpts& g) {
  Report rep;
  rep.command = "verify";
  rep.args["scope"] = scope;
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;
  if (scope == "groups" || scope == "all") {
    auto cs = groups_suite(g.seed, trials > 0 ? trials : 200);
    rep.checks.insert(rep.checks.end(), cs.begin(), cs.end());
  }
  if (scope == "frames" || scope == "all") {
    auto cs = frames_suite(g.seed, trials > 0 ? trials : 1000);
    rep.checks.insert(rep.checks.end(), cs.begin(), cs.end());
  }
  if (scope == "maps" || scope == "all") {
    auto cs = maps_suite(g.seed, trials > 0 ? trials : 10000);
    rep.checks.insert(rep.checks.end(), cs.begin(), cs.end());
  }
  return emit(rep, g);
}

int run_modulus_gamma0(int n, const std::string& grid, double q, double floor_offset,
                       const std::string& net_out, const GlobalOpts& g) {
  int na = 32, nl = 64, nt = 32;
  if (!grid.empty()) {
    if (std::sscanf(grid.c_str(), "%dx%dx%d", &na, &nl, &nt) != 3)
      throw CLI::ValidationError("--grid", "expected AxLxT");
  }
  const Gamma0Result res = gamma0_modulus_bound(n, na, nl, nt, q);
  Report rep;
  rep.command = "modulus";
  rep.args["family"] = "gamma0";
  rep.args["n"] = std::to_string(n);
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;

  const double floor = res.chain.published_floor.value() - floor_offset;
  Check primal;
  primal.name = "gamma0-primal-above-floor";
  primal.measured = res.modulus.primal;
  primal.reference = floor;
  primal.tolerance = 0.0;
  primal.origin = RefOrigin::Published;
  primal.status = res.modulus.primal >= floor ? CheckStatus::Pass : CheckStatus::Fail;
  primal.note = "discrete modulus vs published floor minus discretization budget";
  rep.add(primal);

  Check duality;
  duality.name = "weak-duality";
  duality.measured = res.modulus.dual_bound;
  duality.reference = res.modulus.primal;
  duality.tolerance = 1e-9;
  duality.origin = RefOrigin::Exact;
  duality.status = res.modulus.dual_bound <= res.modulus.primal + 1e-9
                       ? CheckStatus::Pass
                       : CheckStatus::Fail;
  rep.add(duality);

  rep.add(info("chain-aggregated", res.chain.aggregated.value(), "exact rational 8",
               RefOrigin::Published));
  rep.add(info("chain-majorant", res.chain.majorant.value(), "exact rational 12",
               RefOrigin::Published));
  rep.add(info("chain-bound", res.chain.chain_bound.value(),
               "8^4/12^3 = 64/27; dominates the published floor 16/27",
               RefOrigin::Derived));
  rep.add(info("modulus-json", res.modulus.primal, to_json(res.modulus)));

  if (!net_out.empty()) {
    GridAxis aa{-1.0, 1.0, na, false}, ll{1.0 / n, 1.0, nl, false},
        tt{-1.0, 1.0, nt, false};
    std::ofstream out(net_out);
    out << to_json(build_grid_network(GroupId::AffineAdditive, aa, ll, tt));
  }
  return emit(rep, g);
}

int run_modulus_ring(GroupId group, const std::vector<double>& radii, double R0,
                     const RingOptions& opt, const GlobalOpts& g) {
  Report rep;
  rep.command = "modulus";
  rep.args["family"] = "ring";
  rep.args["group"] = std::string(group_name(group));
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;
  double prev = 0.0;
  bool decreasing = true;
  for (size_t i = 0; i < radii.size(); ++i) {
    const RingReport rr = ring_modulus(group, identity(group), R0, radii[i], opt);
    rep.add(info("ring-primal-R" + std::to_string(radii[i]), rr.modulus.primal,
                 to_json(rr.modulus)));
    if (i > 0 && rr.modulus.primal >= prev) decreasing = false;
    prev = rr.modulus.primal;
  }
  if (radii.size() > 1) {
    Check c;
    c.name = "ring-sequence-decreasing";
    c.measured = decreasing ? 1.0 : 0.0;
    c.reference = 1.0;
    c.origin = RefOrigin::Derived;
    c.status = decreasing ? CheckStatus::Pass : CheckStatus::Fail;
    c.note = "modulus estimates decrease with the outer radius";
    rep.add(c);
  }
  return emit(rep, g);
}

int run_ccdist(GroupId group, const GroupPoint& from, const GroupPoint& to,
               const CCConfig& cfg, const std::string& curve_out, const GlobalOpts& g) {
  const CCEstimate est = cc_distance(group, from, to, cfg);
  Report rep;
  rep.command = "ccdist";
  rep.args["group"] = std::string(group_name(group));
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;
  rep.add(info("upper", est.upper, "length of the best found horizontal curve"));
  rep.add(info("lower", est.lower, "certified lower bound"));
  rep.add(info("iterations", double(est.iterations)));
  rep.add(info("endpoint-residual", est.endpoint_residual));
  Check sandwich;
  sandwich.name = "lower-below-upper";
  sandwich.measured = est.upper - est.lower;
  sandwich.tolerance = 1e-9;
  sandwich.origin = RefOrigin::Exact;
  sandwich.status =
      est.lower <= est.upper + 1e-9 ? CheckStatus::Pass : CheckStatus::Fail;
  rep.add(sandwich);
  Check conv;
  conv.name = "converged";
  conv.measured = est.converged ? 1.0 : 0.0;
  conv.reference = 1.0;
  conv.origin = RefOrigin::Exact;
  conv.status = est.converged ? CheckStatus::Pass : CheckStatus::Fail;
  conv.note = "endpoint residual within tolerance";
  rep.add(conv);
  if (!curve_out.empty()) {
    std::ofstream out(curve_out);
    write_curve_csv(out, est.curve);
  }
  return emit(rep, g);
}

int run_volume(GroupId group, const std::vector<double>& radii, long samples,
               const std::string& csv_out, const GlobalOpts& g) {
  McConfig mc;
  mc.samples = samples;
  mc.seed = g.seed;
  const VolumeScan scan = growth_scan(group, radii, mc);
  Report rep;
  rep.command = "volume";
  rep.args["group"] = std::string(group_name(group));
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;
  for (size_t i = 0; i < scan.radii.size(); ++i) {
    rep.add(info("vol-inner-r" + std::to_string(scan.radii[i]), scan.vol_inner[i],
                 "membership via the upper-bound distance"));
    rep.add(info("vol-outer-r" + std::to_string(scan.radii[i]), scan.vol_outer[i],
                 "membership via the lower-bound distance"));
  }
  if (!scan.radii.empty()) {
    rep.add(info("fitted-exponent", scan.fitted_exponent,
                 "log-log least squares on geometric means"));
    Check bracket;
    bracket.name = "bracket-order";
    double worst = 0.0;
    for (size_t i = 0; i < scan.radii.size(); ++i)
      worst = std::max(worst, scan.vol_inner[i] - scan.vol_outer[i]);
    bracket.measured = worst;
    bracket.tolerance = 0.0;
    bracket.origin = RefOrigin::Exact;
    bracket.status = worst <= 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
    bracket.note = "inner volume never exceeds outer volume";
    rep.add(bracket);
  }
  if (!csv_out.empty()) {
    std::ofstream out(csv_out);
    write_scan_csv(out, scan);
  }
  return emit(rep, g);
}

int run_lift(const std::string& in_path, double a0, const std::string& out_path,
             const GlobalOpts& g) {
  std::ifstream in(in_path);
  if (!in) throw CLI::ValidationError("--in", "cannot open " + in_path);
  // base curve rows: s,xi,eta (c3 column optional and ignored)
  std::string line;
  if (!std::getline(in, line))
    throw CLI::ValidationError("--in", "empty base curve file");
  std::vector<double> params;
  std::vector<HyperbolicPoint> base;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 3)
      throw CLI::ValidationError("--in", "row needs s,xi,eta: " + line);
    params.push_back(vals[0]);
    base.push_back({vals[1], vals[2]});
  }
  const SampledCurve lifted = horizontal_lift(params, base, a0);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    write_curve_csv(out, lifted);
  }
  Report rep;
  rep.command = "lift";
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;
  rep.add(info("samples", double(lifted.points.size())));
  rep.add(info("a-end", lifted.points.back().c1));
  Check defect;
  defect.name = "lift-horizontality-defect";
  defect.measured = horizontality_defect(lifted);
  defect.tolerance = 1e-2;
  defect.origin = RefOrigin::Exact;
  defect.status =
      defect.measured <= defect.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  defect.note = "O(mesh) for smooth bases";
  rep.add(defect);
  return emit(rep, g);
}

int run_report(const GlobalOpts& g) {
  Report rep;
  rep.command = "report";
  rep.seed = g.seed;
  rep.deterministic = g.deterministic;
  for (auto&& suite :
       {groups_suite(g.seed, 200), frames_suite(g.seed, 500), maps_suite(g.seed, 2000)})
    rep.checks.insert(rep.checks.end(), suite.begin(), suite.end());

  // distance spot checks
  {
    CCConfig cfg;
    cfg.seed = g.seed;
    const GroupPoint pa = identity(GroupId::AffineAdditive);
    const GroupPoint qa{GroupId::AffineAdditive, 0.0, std::exp(1.0), 0.0};
    const CCEstimate ea = cc_distance(GroupId::AffineAdditive, pa, qa, cfg);
    Check c;
    c.name = "ccdist-aa-axis";
    c.measured = ea.upper;
    c.reference = 0.5;
    c.tolerance = 0.01;
    c.origin = RefOrigin::Derived;
    c.status = std::abs(ea.upper - 0.5) <= c.tolerance ? CheckStatus::Pass
                                                       : CheckStatus::Fail;
    c.note = "projection bound met by the lifted axis geodesic";
    rep.add(c);
    const CCEstimate eh = cc_distance(GroupId::Heisenberg, identity(GroupId::Heisenberg),
                                      {GroupId::Heisenberg, 1, 0, 0}, cfg);
    Check ch;
    ch.name = "ccdist-h-unit-x";
    ch.measured = eh.upper;
    ch.reference = 1.0;
    ch.tolerance = 0.01;
    ch.origin = RefOrigin::Exact;
    ch.status = std::abs(eh.upper - 1.0) <= ch.tolerance ? CheckStatus::Pass
                                                         : CheckStatus::Fail;
    rep.add(ch);
  }

  // admissibility chain and a small discrete modulus
  {
    const Gamma0Result res = gamma0_modulus_bound(2, 12, 24, 12);
    Check c;
    c.name = "gamma0-floor-small-grid";
    c.measured = res.modulus.primal;
    c.reference = res.chain.published_floor.value();
    c.tolerance = 0.0;
    c.origin = RefOrigin::Published;
    c.status = res.modulus.primal >= c.reference - 0.05 ? CheckStatus::Pass
                                                        : CheckStatus::Fail;
    rep.add(c);
    rep.add(info("gamma0-chain-bound", res.chain.chain_bound.value(),
                 "8^4/12^3 in exact arithmetic", RefOrigin::Derived));
  }

  // volume growth spot check
  {
    McConfig mc;
    mc.samples = 20000;
    mc.seed = g.seed;
    const VolumeScan scan = growth_scan(GroupId::Heisenberg, {0.5, 1.0}, mc);
    const double ratio = scan.vol_outer[1] / scan.vol_outer[0];
    Check c;
    c.name = "h-volume-doubling";
    c.measured = ratio;
    c.reference = 16.0;
    c.tolerance = 16.0 * 0.08;
    c.origin = RefOrigin::Derived;
    c.status = std::abs(ratio - 16.0) <= c.tolerance ? CheckStatus::Pass
                                                     : CheckStatus::Fail;
    c.note = "fourth-power scaling of ball volumes";
    rep.add(c);
  }
  return emit(rep, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for three sub-Riemannian groups"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("SRLAB_SEED")) g.seed = std::strtoull(env, nullptr, 10);
  app.add_option("--seed", g.seed, "random seed (SRLAB_SEED overrides the default)");
  app.add_flag("--deterministic", g.deterministic, "byte-stable reports");
  app.add_option("--out", g.out_path, "write the JSON report here as well");
  app.add_option("--config", g.config_path, "JSON config file (flags win)");

  auto* verify = app.add_subcommand("verify", "run module invariant suites");
  verify->fallthrough();
  std::string scope = "all";
  int trials = 0;
  verify->add_option("--scope", scope, "groups|frames|maps|all")
      ->check(CLI::IsMember({"groups", "frames", "maps", "all"}));
  verify->add_option("--trials", trials, "random sample count override");

  auto* modulus = app.add_subcommand("modulus", "discrete modulus estimates");
  modulus->fallthrough();
  std::string family = "gamma0";
  int n = 2;
  std::string grid, net_out, mgroup = "aa", radii_csv = "2,4,8";
  double q = 4.0, R0 = 1.0, floor_offset = 0.05, ring_step = 0.0;
  modulus->add_option("--family", family, "gamma0|ring")
      ->check(CLI::IsMember({"gamma0", "ring"}));
  modulus->add_option("--n", n, "lambda ratio for the vertical family");
  modulus->add_option("--grid", grid, "AxLxT cell counts (gamma0)");
  modulus->add_option("--q", q, "modulus exponent, must exceed 1");
  modulus->add_option("--floor-offset", floor_offset, "discretization budget");
  modulus->add_option("--net-out", net_out, "write the grid network JSON here");
  modulus->add_option("--group", mgroup, "ring group: h|rt|aa");
  modulus->add_option("--R", radii_csv, "ring outer radii, comma separated");
  modulus->add_option("--R0", R0, "ring inner radius");
  modulus->add_option("--step", ring_step, "grid step override for rings");

  auto* ccdist = app.add_subcommand("ccdist", "Carnot-Caratheodory distance estimate");
  ccdist->fallthrough();
  std::string cgroup = "aa", from_csv = "0,1,0", to_csv = "0,1,0", curve_out;
  CCConfig ccfg;
  ccdist->add_option("--group", cgroup, "h|rt|aa");
  ccdist->add_option("--from", from_csv, "start point c1,c2,c3");
  ccdist->add_option("--to", to_csv, "end point c1,c2,c3");
  ccdist->add_option("--segments", ccfg.segments, "discretization segments");
  ccdist->add_option("--budget", ccfg.max_evals, "objective evaluation budget");
  ccdist->add_option("--restarts", ccfg.restarts, "optimizer restarts");
  ccdist->add_option("--curve-out", curve_out, "write the best curve CSV here");

  auto* volume = app.add_subcommand("volume", "Monte-Carlo ball volume scan");
  volume->fallthrough();
  std::string vgroup = "h", vradii_csv = "1,2", csv_out;
  long samples = 100000;
  volume->add_option("--group", vgroup, "h|rt|aa");
  volume->add_option("--radii", vradii_csv, "increasing radii, comma separated");
  volume->add_option("--samples", samples, "Monte-Carlo samples per radius");
  volume->add_option("--csv-out", csv_out, "write the scan CSV here");

  auto* lift = app.add_subcommand("lift", "horizontal lift of a half-plane curve");
  lift->fallthrough();
  std::string lift_in, lift_out;
  double a0 = 0.0;
  lift->add_option("--in", lift_in, "base curve CSV with rows s,xi,eta")->required();
  lift->add_option("--a0", a0, "fiber coordinate at the start");
  lift->add_option("--curve-out", lift_out, "write the lifted curve CSV here");

  auto* report = app.add_subcommand("report", "compact full battery");
  report->fallthrough();

  try {
    app.parse(argc, argv);
    if (!g.config_path.empty()) apply_config_file(g.config_path, g, app);

    if (app.got_subcommand(verify)) return run_verify(scope, trials, g);
    if (app.got_subcommand(modulus)) {
      if (!(q > 1.0))
        throw CLI::ValidationError("--q", "modulus exponent must exceed 1");
      if (family == "gamma0") {
        if (n < 2) throw CLI::ValidationError("--n", "need n >= 2");
        return run_modulus_gamma0(n, grid, q, floor_offset, net_out, g);
      }
      RingOptions opt;
      opt.q = q;
      if (ring_step > 0.0) {
        opt.step_xy = opt.step_t = opt.step_a = opt.step_u = ring_step;
        opt.step_taa = ring_step;
      }
      const auto radii = parse_list(radii_csv);
      if (radii.empty()) throw CLI::ValidationError("--R", "need at least one radius");
      return run_modulus_ring(parse_group(mgroup), radii, R0, opt, g);
    }
    if (app.got_subcommand(ccdist)) {
      const GroupId gg = parse_group(cgroup);
      ccfg.seed = g.seed;
      return run_ccdist(gg, parse_point(gg, from_csv), parse_point(gg, to_csv), ccfg,
                        curve_out, g);
    }
    if (app.got_subcommand(volume)) {
      const auto radii = parse_list(vradii_csv);
      return run_volume(parse_group(vgroup), radii, samples, csv_out, g);
    }
    if (app.got_subcommand(lift)) return run_lift(lift_in, a0, lift_out, g);
    if (app.got_subcommand(report)) return run_report(g);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
