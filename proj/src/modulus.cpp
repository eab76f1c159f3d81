#include "srlab/modulus.hpp"

#include "srlab/ccdist.hpp"
#include "srlab/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

namespace srlab {

namespace {

std::vector<std::vector<std::pair<int, double>>> adjacency(const MeasureNetwork& net) {
  std::vector<std::vector<std::pair<int, double>>> adj(net.nodes.size());
  for (const auto& e : net.edges) {
    adj[e.i].push_back({e.j, e.len});
    adj[e.j].push_back({e.i, e.len});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

double edge_length_between(const MeasureNetwork& net, int i, int j) {
  for (const auto& e : net.edges) {
    if ((e.i == i && e.j == j) || (e.i == j && e.j == i)) return e.len;
  }
  throw std::invalid_argument("curve uses a non-existing edge");
}

// Per-curve node weights w_{c,i}: the line integral of a node density along
// the path equals sum_i w_{c,i} rho_i.
std::vector<std::pair<int, double>> curve_weights(const MeasureNetwork& net,
                                                  const std::vector<std::vector<std::pair<int, double>>>& adj,
                                                  const DiscreteCurve& c) {
  if (c.path.size() < 2) throw std::invalid_argument("discrete curve needs >= 1 edge");
  std::vector<std::pair<int, double>> w;
  for (size_t k = 0; k + 1 < c.path.size(); ++k) {
    const int i = c.path[k], j = c.path[k + 1];
    if (i < 0 || j < 0 || i >= int(net.nodes.size()) || j >= int(net.nodes.size()))
      throw std::invalid_argument("curve node out of range");
    double len = -1.0;
    for (const auto& [n, l] : adj[i])
      if (n == j) {
        len = l;
        break;
      }
    if (len < 0.0) throw std::invalid_argument("curve nodes are not adjacent");
    w.push_back({i, 0.5 * len});
    w.push_back({j, 0.5 * len});
  }
  std::sort(w.begin(), w.end());
  std::vector<std::pair<int, double>> merged;
  for (const auto& [n, v] : w) {
    if (!merged.empty() && merged.back().first == n)
      merged.back().second += v;
    else
      merged.push_back({n, v});
  }
  return merged;
}

}  // namespace

void validate_network(const MeasureNetwork& net) {
  const int n = int(net.nodes.size());
  if (n == 0) throw std::invalid_argument("network has no nodes");
  for (const auto& node : net.nodes)
    if (!(node.mu > 0.0) || !std::isfinite(node.mu))
      throw std::invalid_argument("node measures must be positive");
  std::vector<int> comp(n, -1);
  for (const auto& e : net.edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.i == e.j) throw std::invalid_argument("self-loops are not allowed");
    if (!(e.len > 0.0) || !std::isfinite(e.len))
      throw std::invalid_argument("edge lengths must be positive");
  }
  // connected on the support (nodes touched by edges)
  if (!net.edges.empty()) {
    auto adj = adjacency(net);
    int start = net.edges.front().i;
    std::vector<int> stack{start};
    comp[start] = 0;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [v, l] : adj[u]) {
        (void)l;
        if (comp[v] < 0) {
          comp[v] = 0;
          stack.push_back(v);
        }
      }
    }
    for (int u = 0; u < n; ++u)
      if (!adj[u].empty() && comp[u] < 0)
        throw std::invalid_argument("network support is disconnected");
  }
}

double curve_integral(const MeasureNetwork& net, const Density& rho,
                      const DiscreteCurve& c) {
  if (rho.rho.size() != net.nodes.size())
    throw std::invalid_argument("density size mismatch");
  double sum = 0.0;
  for (size_t k = 0; k + 1 < c.path.size(); ++k) {
    const int i = c.path[k], j = c.path[k + 1];
    sum += 0.5 * (rho.rho[i] + rho.rho[j]) * edge_length_between(net, i, j);
  }
  return sum;
}

std::pair<bool, double> is_admissible(const MeasureNetwork& net, const Density& rho,
                                      const std::vector<DiscreteCurve>& family,
                                      double tol) {
  if (family.empty()) throw std::invalid_argument("empty curve family");
  for (double v : rho.rho)
    if (v < 0.0) throw std::invalid_argument("densities must be nonnegative");
  const auto adj = adjacency(net);
  double min_int = std::numeric_limits<double>::infinity();
  for (const auto& c : family) {
    const auto w = curve_weights(net, adj, c);
    double sum = 0.0;
    for (const auto& [n, v] : w) sum += v * rho.rho[n];
    min_int = std::min(min_int, sum);
  }
  return {min_int >= 1.0 - tol, min_int};
}

namespace {

struct AscentProblem {
  const MeasureNetwork* net;
  double q, expo;                       // expo = 1/(q-1)
  std::vector<std::vector<std::pair<int, double>>> curves;  // node weights
  std::vector<double> lambda;           // one multiplier per curve
  std::vector<double> s;                // s_i = sum_c lambda_c w_{c,i}

  double rho_of(int i) const {
    const double v = s[i] / (q * net->nodes[i].mu);
    return v <= 0.0 ? 0.0 : std::pow(v, expo);
  }

  double integral_of(size_t ci) const {
    double sum = 0.0;
    for (const auto& [n, w] : curves[ci]) sum += w * rho_of(n);
    return sum;
  }

  void rebuild_s() {
    std::fill(s.begin(), s.end(), 0.0);
    for (size_t c = 0; c < curves.size(); ++c)
      for (const auto& [n, w] : curves[c]) s[n] += lambda[c] * w;
  }

  // Exact 1-D maximization in lambda_c: raise the multiplier until the
  // curve's integral is 1 (or drop to 0 when slack). Safeguarded Newton on
  // the monotone concave integral.
  void update_curve(size_t ci) {
    const auto& w = curves[ci];
    const double old = lambda[ci];
    auto integral_at = [&](double lam, double* deriv) {
      double sum = 0.0, dsum = 0.0;
      for (const auto& [n, wt] : w) {
        const double si = s[n] + (lam - old) * wt;
        if (si > 0.0) {
          const double r = std::pow(si / (q * net->nodes[n].mu), expo);
          sum += wt * r;
          dsum += wt * wt * expo * r / si;
        }
      }
      if (deriv) *deriv = dsum;
      return sum;
    };
    double next = 0.0;
    if (integral_at(0.0, nullptr) < 1.0) {
      double lo = 0.0, hi = std::max(1.0, 2.0 * old);
      int guard = 0;
      while (integral_at(hi, nullptr) < 1.0 && guard++ < 200) {
        lo = hi;
        hi *= 2.0;
      }
      double lam = std::min(std::max(old, lo + 0.25 * (hi - lo)), hi);
      for (int it = 0; it < 60; ++it) {
        double d;
        const double f = integral_at(lam, &d) - 1.0;
        if (std::abs(f) < 1e-13) break;
        (f < 0.0 ? lo : hi) = lam;
        double step = (d > 0.0) ? lam - f / d : 0.5 * (lo + hi);
        if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);
        if (std::abs(step - lam) < 1e-16 * std::max(1.0, lam)) {
          lam = step;
          break;
        }
        lam = step;
      }
      next = lam;
    }
    if (next != old) {
      for (const auto& [n, wt] : w) s[n] += (next - old) * wt;
      lambda[ci] = next;
    }
  }

  double dual_value() const {
    double d = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (size_t i = 0; i < s.size(); ++i)
      d -= (q - 1.0) * net->nodes[i].mu * std::pow(rho_of(i), q);
    return d;
  }
};

ModulusReport ascend(const MeasureNetwork& net,
                     const std::vector<std::vector<std::pair<int, double>>>& curves,
                     double q, double tol, long max_passes,
                     std::vector<double>* lambda_io) {
  AscentProblem prob;
  prob.net = &net;
  prob.q = q;
  prob.expo = 1.0 / (q - 1.0);
  prob.curves = curves;
  prob.lambda.assign(curves.size(), 0.0);
  if (lambda_io && lambda_io->size() == curves.size()) prob.lambda = *lambda_io;
  prob.s.assign(net.nodes.size(), 0.0);
  prob.rebuild_s();

  ModulusReport rep;
  if (curves.empty()) {
    rep.density.rho.assign(net.nodes.size(), 0.0);
    return rep;
  }

  long pass = 0;
  for (; pass < max_passes; ++pass) {
    for (size_t c = 0; c < prob.curves.size(); ++c) prob.update_curve(c);
    if ((pass & 63) == 63) prob.rebuild_s();
    // stationarity: no violated constraint, and no slack constraint holding a
    // positive multiplier (complementary slackness)
    double stat = 0.0;
    for (size_t c = 0; c < prob.curves.size(); ++c) {
      const double gap = 1.0 - prob.integral_of(c);
      stat = std::max(stat, prob.lambda[c] > 0.0 ? std::abs(gap) : gap);
    }
    if (stat <= tol) {
      ++pass;
      break;
    }
  }

  prob.rebuild_s();
  rep.iterations = pass;
  rep.dual_bound = prob.dual_value();

  double min_int = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < prob.curves.size(); ++c)
    min_int = std::min(min_int, prob.integral_of(c));
  if (!(min_int > 0.0)) throw std::runtime_error("modulus ascent produced a zero density");

  rep.density.rho.resize(net.nodes.size());
  rep.primal = 0.0;
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    rep.density.rho[i] = prob.rho_of(int(i)) / min_int;
    rep.primal += net.nodes[i].mu * std::pow(rep.density.rho[i], q);
  }
  double scaled_min = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < prob.curves.size(); ++c) {
    double sum = 0.0;
    for (const auto& [n, w] : prob.curves[c]) sum += w * rep.density.rho[n];
    scaled_min = std::min(scaled_min, sum);
  }
  rep.max_violation = std::max(0.0, 1.0 - scaled_min);
  if (lambda_io) *lambda_io = prob.lambda;
  return rep;
}

}  // namespace

ModulusReport solve_modulus(const MeasureNetwork& net,
                            const std::vector<DiscreteCurve>& family, double q,
                            double tol, long max_passes) {
  validate_network(net);
  if (!(q > 1.0)) throw std::invalid_argument("modulus exponent q must exceed 1");
  if (family.empty()) throw std::invalid_argument("empty curve family");
  const auto adj = adjacency(net);
  std::vector<std::vector<std::pair<int, double>>> curves;
  curves.reserve(family.size());
  for (const auto& c : family) {
    auto w = curve_weights(net, adj, c);
    double total = 0.0;
    for (const auto& [n, v] : w) total += v;
    if (!(total > 0.0)) throw std::invalid_argument("curve with zero length");
    curves.push_back(std::move(w));
  }
  return ascend(net, curves, q, tol, max_passes, nullptr);
}

namespace {

// Dijkstra under node-averaged density weights. Returns per-node distance and
// parents; ties broken toward the smaller node id by the queue ordering.
struct ShortestPaths {
  std::vector<double> dist;
  std::vector<int> parent;
};

// Dijkstra under node-averaged density weights; ties resolve toward smaller
// node ids through the queue ordering. With a target set it stops at the
// first settled target (the minimizer) and records it in `reached`.
ShortestPaths dijkstra_from(const MeasureNetwork& net,
                            const std::vector<std::vector<std::pair<int, double>>>& adj,
                            const std::vector<int>& sources,
                            const std::vector<double>* rho,
                            const std::vector<char>* blocked,
                            const std::vector<char>* targets = nullptr,
                            int* reached = nullptr) {
  const int n = int(net.nodes.size());
  ShortestPaths sp;
  sp.dist.assign(n, std::numeric_limits<double>::infinity());
  sp.parent.assign(n, -1);
  if (reached) *reached = -1;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int s : sources) {
    if (blocked && (*blocked)[s]) continue;
    sp.dist[s] = 0.0;
    pq.push({0.0, s});
  }
  std::vector<char> done(n, 0);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (targets && (*targets)[u]) {
      if (reached) *reached = u;
      return sp;
    }
    for (const auto& [v, len] : adj[u]) {
      if (blocked && (*blocked)[v]) continue;
      const double w = rho ? 0.5 * ((*rho)[u] + (*rho)[v]) * len : len;
      const double nd = d + w;
      if (nd < sp.dist[v]) {
        sp.dist[v] = nd;
        sp.parent[v] = u;
        pq.push({nd, v});
      }
    }
  }
  return sp;
}

std::vector<int> extract_path(const ShortestPaths& sp, int target) {
  std::vector<int> path;
  for (int u = target; u >= 0; u = sp.parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<double> network_distances(const MeasureNetwork& net, int source) {
  validate_network(net);
  const auto adj = adjacency(net);
  return dijkstra_from(net, adj, {source}, nullptr, nullptr).dist;
}

ModulusReport solve_connecting_modulus(const MeasureNetwork& net,
                                       const std::vector<int>& A,
                                       const std::vector<int>& B, double q,
                                       double tol, int max_rounds, int batch) {
  validate_network(net);
  if (!(q > 1.0)) throw std::invalid_argument("modulus exponent q must exceed 1");
  if (A.empty() || B.empty()) throw std::invalid_argument("empty terminal set");
  std::set<int> aset(A.begin(), A.end());
  for (int b : B)
    if (aset.count(b)) throw std::invalid_argument("terminal sets must be disjoint");

  const auto adj = adjacency(net);
  std::vector<char> in_b(net.nodes.size(), 0);
  for (int b : B) in_b[b] = 1;

  // connectivity probe
  {
    int reached = -1;
    dijkstra_from(net, adj, A, nullptr, nullptr, &in_b, &reached);
    if (reached < 0) {
      ModulusReport rep;
      rep.density.rho.assign(net.nodes.size(), 0.0);
      return rep;  // modulus 0, empty family
    }
  }

  std::vector<std::vector<std::pair<int, double>>> curves;
  std::vector<double> lambda;
  std::vector<double> rho(net.nodes.size(), 0.0);
  ModulusReport rep;
  long total_passes = 0;

  bool polished = false;
  for (int round = 0; round < max_rounds; ++round) {
    // batch of node-disjoint violated paths under the current density
    std::vector<char> blocked(net.nodes.size(), 0);
    int added = 0;
    while (added < batch) {
      int tgt = -1;
      const auto sp = dijkstra_from(net, adj, A, &rho, &blocked, &in_b, &tgt);
      if (tgt < 0 || sp.dist[tgt] >= 1.0 - tol) break;
      const auto path = extract_path(sp, tgt);
      DiscreteCurve c{path};
      curves.push_back(curve_weights(net, adj, c));
      lambda.push_back(0.0);
      for (int u : path) blocked[u] = 1;
      ++added;
    }
    if (added == 0 && polished) break;
    if (added == 0) {
      // no violation against the cheap density: polish to full accuracy and
      // re-scan before declaring the family complete
      if (curves.empty())
        throw std::runtime_error("constraint generation failed to start");
      rep = ascend(net, curves, q, tol, 2000, &lambda);
      total_passes += rep.iterations;
      for (size_t i = 0; i < rho.size(); ++i) rho[i] = rep.density.rho[i];
      polished = true;
      continue;
    }
    polished = false;
    // cheap inner solves while the family is still growing
    rep = ascend(net, curves, q, tol, 30, &lambda);
    total_passes += rep.iterations;
    for (size_t i = 0; i < rho.size(); ++i) rho[i] = rep.density.rho[i];
  }

  if (curves.empty())
    throw std::runtime_error("constraint generation failed to start");
  if (!polished) {
    rep = ascend(net, curves, q, tol, 2000, &lambda);
    total_passes += rep.iterations;
    for (size_t i = 0; i < rho.size(); ++i) rho[i] = rep.density.rho[i];
  }

  // rescale so the whole connecting family is admissible
  int tgt = -1;
  const auto sp = dijkstra_from(net, adj, A, &rho, nullptr, &in_b, &tgt);
  const double dmin = sp.dist[tgt];
  if (!(dmin > 0.0)) throw std::runtime_error("degenerate connecting density");
  rep.iterations = total_passes;
  if (dmin < 1.0) {
    rep.primal = 0.0;
    for (size_t i = 0; i < rho.size(); ++i) {
      rep.density.rho[i] = rho[i] / dmin;
      rep.primal += net.nodes[i].mu * std::pow(rep.density.rho[i], q);
    }
  }
  rep.max_violation = 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// grid networks

MeasureNetwork build_grid_network(GroupId g, const GridAxis& a1, const GridAxis& a2,
                                  const GridAxis& a3) {
  const GridAxis axes[3] = {a1, a2, a3};
  for (const auto& ax : axes) {
    if (ax.cells < 1) throw std::invalid_argument("grid axis needs >= 1 cell");
    if (!(ax.hi > ax.lo)) throw std::invalid_argument("grid axis needs hi > lo");
    if (ax.log_scale && !(ax.lo > 0.0))
      throw std::invalid_argument("log axis needs positive bounds");
  }
  auto cell_bounds = [&](const GridAxis& ax, int k) {
    if (ax.log_scale) {
      const double du = (std::log(ax.hi) - std::log(ax.lo)) / ax.cells;
      return std::pair<double, double>{ax.lo * std::exp(k * du),
                                       ax.lo * std::exp((k + 1) * du)};
    }
    const double d = (ax.hi - ax.lo) / ax.cells;
    return std::pair<double, double>{ax.lo + k * d, ax.lo + (k + 1) * d};
  };
  auto cell_center = [&](const GridAxis& ax, int k) {
    const auto [lo, hi] = cell_bounds(ax, k);
    return ax.log_scale ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
  };

  MeasureNetwork net;
  const int n1 = a1.cells, n2 = a2.cells, n3 = a3.cells;
  net.nodes.resize(size_t(n1) * n2 * n3);
  auto index = [&](int i, int j, int k) { return (i * n2 + j) * n3 + k; };

  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) {
        const auto [l1, h1] = cell_bounds(a1, i);
        const auto [l2, h2] = cell_bounds(a2, j);
        const auto [l3, h3] = cell_bounds(a3, k);
        double mu;
        if (g == GroupId::AffineAdditive) {
          // exact integral of da dl dt / l^2 over the cell (axis 2 is lambda)
          mu = (h1 - l1) * (h3 - l3) * (1.0 / l2 - 1.0 / h2);
        } else {
          mu = (h1 - l1) * (h2 - l2) * (h3 - l3);
        }
        GroupPoint center{g, cell_center(a1, i), cell_center(a2, j), cell_center(a3, k)};
        net.nodes[index(i, j, k)] = {mu, center};
      }

  auto add_edge = [&](int u, int v) {
    const GroupPoint& p = *net.nodes[u].coords;
    const GroupPoint& q = *net.nodes[v].coords;
    GroupPoint mid{g, 0.5 * (p.c1 + q.c1), 0.5 * (p.c2 + q.c2), 0.5 * (p.c3 + q.c3)};
    const TangentVector chord{mid, q.c1 - p.c1, q.c2 - p.c2, q.c3 - p.c3};
    const FrameCoeffs fc = to_frame_coeffs(chord);
    const double len = std::sqrt(fc.alpha * fc.alpha + fc.beta * fc.beta +
                                 fc.rest * fc.rest);
    net.edges.push_back({u, v, len});
  };
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) {
        if (i + 1 < n1) add_edge(index(i, j, k), index(i + 1, j, k));
        if (j + 1 < n2) add_edge(index(i, j, k), index(i, j + 1, k));
        if (k + 1 < n3) add_edge(index(i, j, k), index(i, j, k + 1));
      }
  return net;
}

RingReport ring_modulus(GroupId g, const GroupPoint& center, double R0, double R,
                        const RingOptions& opt) {
  validate_point(center);
  if (!(R0 > 0.0) || !(R > R0)) throw std::invalid_argument("ring needs R > R0 > 0");

  auto axis = [](double lo, double hi, double step, bool log_scale = false) {
    GridAxis ax;
    ax.lo = lo;
    ax.hi = hi;
    ax.log_scale = log_scale;
    const double extent = log_scale ? std::log(hi / lo) : hi - lo;
    ax.cells = std::max(3, int(std::ceil(extent / step)));
    return ax;
  };

  MeasureNetwork net;
  if (g == GroupId::AffineAdditive) {
    const double ext = R + opt.pad;
    const double uext = 2.0 * R + opt.pad;
    const double th = opt.t_halfwidth_aa * center.c2;
    net = build_grid_network(
        g, axis(center.c1 - ext, center.c1 + ext, opt.step_a),
        axis(center.c2 * std::exp(-uext), center.c2 * std::exp(uext), opt.step_u, true),
        axis(center.c3 - th, center.c3 + th, opt.step_taa));
  } else {
    const double ext = R + opt.pad;
    net = build_grid_network(g, axis(center.c1 - ext, center.c1 + ext, opt.step_xy),
                             axis(center.c2 - ext, center.c2 + ext, opt.step_xy),
                             axis(center.c3 - ext, center.c3 + ext, opt.step_t));
  }

  // cell containing the center
  int source = 0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    const GroupPoint& c = *net.nodes[i].coords;
    const double d2 = (c.c1 - center.c1) * (c.c1 - center.c1) +
                      (c.c2 - center.c2) * (c.c2 - center.c2) +
                      (c.c3 - center.c3) * (c.c3 - center.c3);
    if (d2 < best) {
      best = d2;
      source = int(i);
    }
  }

  const auto dist = network_distances(net, source);
  std::vector<int> A, B;
  for (size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= R0) A.push_back(int(i));
    if (dist[i] >= R && std::isfinite(dist[i])) B.push_back(int(i));
  }
  if (A.empty() || B.empty())
    throw std::invalid_argument("ring shells are empty; refine the grid");

  RingReport rep;
  rep.nodes = int(net.nodes.size());
  rep.source = source;
  rep.shell_inner = int(A.size());
  rep.shell_outer = int(B.size());
  rep.modulus = solve_connecting_modulus(net, A, B, opt.q, opt.tol, opt.max_rounds,
                                         opt.batch);
  return rep;
}

// ---------------------------------------------------------------------------
// the vertical family and its admissibility chain

std::vector<SampledCurve> gamma0_family(int n, int a_count, int t_count, int samples) {
  if (n < 2) throw std::invalid_argument("family parameter n must be >= 2");
  if (a_count < 1 || t_count < 1 || samples < 2)
    throw std::invalid_argument("bad sampling counts");
  std::vector<SampledCurve> fam;
  fam.reserve(size_t(a_count) * t_count);
  const double rate = 1.0 - 1.0 / n;
  for (int ia = 0; ia < a_count; ++ia) {
    const double a = (a_count == 1) ? 0.0 : -1.0 + 2.0 * ia / (a_count - 1);
    for (int it = 0; it < t_count; ++it) {
      const double t = (t_count == 1) ? 0.0 : -1.0 + 2.0 * it / (t_count - 1);
      SampledCurve c;
      c.group = GroupId::AffineAdditive;
      c.params.resize(samples);
      c.points.resize(samples);
      for (int k = 0; k < samples; ++k) {
        const double s = double(k) / (samples - 1);
        c.params[k] = s;
        c.points[k] = {GroupId::AffineAdditive, a, 1.0 - rate * s, t};
      }
      fam.push_back(std::move(c));
    }
  }
  return fam;
}

namespace {

long long gcd_ll(long long a, long long b) {
  while (b) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

Fraction fraction_pow(Fraction f, int e) {
  Fraction out(1);
  for (int k = 0; k < e; ++k) out = out * f;
  return out;
}

}  // namespace

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = gcd_ll(num == 0 ? 1 : num, den);
  num /= g;
  den /= g;
}

Fraction Fraction::operator*(const Fraction& o) const {
  return Fraction(num * o.num, den * o.den);
}

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.num == 0) throw std::invalid_argument("division by zero fraction");
  return Fraction(num * o.den, den * o.num);
}

Gamma0Chain gamma0_chain() {
  Gamma0Chain ch;
  // admissibility of each vertical fiber after substitution: integral 1
  ch.per_curve = Fraction(1);
  // doubling the fiber integral and integrating over the (a, t) square of
  // area 4 gives 2 * 4
  ch.aggregated = ch.per_curve * Fraction(2) * Fraction(4);
  // int_0^1 lambda^{-2/3} dlambda = [3 lambda^{1/3}]_0^1 = 3, times the
  // (a, t) area 4
  ch.majorant = Fraction(4) * Fraction(3);
  // Hoelder with exponents 4 and 4/3: energy >= aggregated^4 / majorant^3
  ch.chain_bound = fraction_pow(ch.aggregated, 4) / fraction_pow(ch.majorant, 3);
  ch.published_floor = Fraction(16, 27);
  return ch;
}

Gamma0Result gamma0_modulus_bound(int n, int a_cells, int l_cells, int t_cells,
                                  double q, double tol) {
  if (n < 2) throw std::invalid_argument("family parameter n must be >= 2");
  GridAxis aa{-1.0, 1.0, a_cells, false};
  GridAxis ll{1.0 / n, 1.0, l_cells, false};
  GridAxis tt{-1.0, 1.0, t_cells, false};
  MeasureNetwork net = build_grid_network(GroupId::AffineAdditive, aa, ll, tt);

  std::vector<DiscreteCurve> family;
  family.reserve(size_t(a_cells) * t_cells);
  auto index = [&](int i, int j, int k) { return (i * l_cells + j) * t_cells + k; };
  for (int i = 0; i < a_cells; ++i)
    for (int k = 0; k < t_cells; ++k) {
      DiscreteCurve c;
      c.path.reserve(l_cells);
      for (int j = l_cells - 1; j >= 0; --j) c.path.push_back(index(i, j, k));
      family.push_back(std::move(c));
    }

  Gamma0Result out;
  out.nodes = int(net.nodes.size());
  out.curves = int(family.size());
  out.modulus = solve_modulus(net, family, q, tol);
  out.chain = gamma0_chain();
  return out;
}

// ---------------------------------------------------------------------------
// dyadic density

double RhoN::outer_radius() const { return R0 * std::ldexp(1.0, N); }

double RhoN::operator()(const GroupPoint& x) const {
  const DistanceBounds b = cc_bounds_fast(x0.group, x0, x);
  double d;
  switch (mode) {
    case DistMode::Lower: d = b.lower; break;
    case DistMode::Upper: d = b.upper; break;
    default: d = 0.5 * (b.lower + b.upper); break;
  }
  if (!(d > R0) || !(d < outer_radius())) return 0.0;
  return (3.0 / N) / d;
}

double line_integral(const RhoN& rho, const SampledCurve& c) {
  validate_curve(c);
  double sum = 0.0;
  for (size_t k = 0; k + 1 < c.points.size(); ++k) {
    const GroupPoint& p = c.points[k];
    const GroupPoint& q = c.points[k + 1];
    const GroupPoint mid{c.group, 0.5 * (p.c1 + q.c1), 0.5 * (p.c2 + q.c2),
                         0.5 * (p.c3 + q.c3)};
    // midpoint chord speed, same quadrature as horizontal_length
    double dl;
    switch (c.group) {
      case GroupId::Heisenberg:
        dl = std::hypot(q.c1 - p.c1, q.c2 - p.c2);
        break;
      case GroupId::RotoTranslation: {
        const double drive = (q.c1 - p.c1) * std::cos(mid.c3) +
                             (q.c2 - p.c2) * std::sin(mid.c3);
        dl = std::hypot(drive, q.c3 - p.c3);
        break;
      }
      case GroupId::AffineAdditive:
        dl = std::hypot(q.c2 - p.c2, q.c3 - p.c3) / (2.0 * mid.c2);
        break;
      default:
        throw std::logic_error("unreachable group id");
    }
    sum += rho(mid) * dl;
  }
  return sum;
}

SampledCurve radial_ray(GroupId g, double R0, double R, double phi,
                        int samples_per_shell) {
  if (!(R > R0 && R0 > 0.0)) throw std::invalid_argument("ray needs R > R0 > 0");
  const int shells = std::max(1, int(std::ceil(std::log2(R / R0))));
  const int total = shells * samples_per_shell;
  SampledCurve c;
  c.group = g;
  c.params.resize(total + 1);
  c.points.resize(total + 1);
  for (int k = 0; k <= total; ++k) {
    const double f = double(k) / total;
    const double s = R0 * std::pow(R / R0, f);  // log-uniform radial samples
    c.params[k] = f;
    switch (g) {
      case GroupId::Heisenberg:
      case GroupId::RotoTranslation:
        // straight drive at heading phi; exactly horizontal, d(e, .) = s when
        // |phi| stays below R0 (RotoTranslation) or always (Heisenberg)
        c.points[k] = {g, s * std::cos(phi), s * std::sin(phi),
                       g == GroupId::RotoTranslation ? phi : 0.0};
        break;
      case GroupId::AffineAdditive:
        // vertical ray lambda = exp(+-2s); d(e, .) = s exactly
        c.points[k] = {g, 0.0, std::exp((phi < 0 ? -2.0 : 2.0) * s), 0.0};
        break;
    }
  }
  return c;
}

double rho_n_energy_bound(double K, int N, double Q, double Qp, double R0) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  double geom = 0.0;
  for (int k = 1; k <= N; ++k) geom += std::pow(2.0, k * (Q - Qp));
  return K * std::pow(6.0 / N, Qp) * std::pow(R0, Q - Qp) * geom;
}

}  // namespace srlab
