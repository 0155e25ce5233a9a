#include "fmnet/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fmnet {

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::RGG: return "RGG";
    case Family::RD: return "RD";
    case Family::RG: return "RG";
    case Family::RFMN: return "RFMN";
    case Family::FMN: return "FMN";
  }
  return "RGG";
}

Family family_from_string(std::string_view name) {
  for (auto f : {Family::RGG, Family::RD, Family::RG, Family::RFMN, Family::FMN}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown graph family '" + std::string(name) + "'");
}

namespace {

double hop_efficiency(const SpatialGraph& g) {
  const auto n = g.vertex_count();
  const Adjacency adj(g);
  std::vector<std::uint32_t> dist(n);
  std::vector<std::uint32_t> queue(n);
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<std::uint32_t>(s);
    double sum = 0.0;
    while (head < tail) {
      const auto v = queue[head++];
      if (v != s) sum += 1.0 / dist[v];
      for (auto i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
        const auto w = adj.neighbors[i];
        if (dist[w] == kUnseen) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
      }
    }
    total += sum;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double euclidean_efficiency(const SpatialGraph& g) {
  const auto n = g.vertex_count();
  const Adjacency adj(g);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n);
  std::vector<char> done(n);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    dist[s] = 0.0;
    heap.emplace(0.0, static_cast<std::uint32_t>(s));
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (done[v]) continue;
      done[v] = 1;
      for (auto i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
        const auto w = adj.neighbors[i];
        const double nd = d + adj.lengths[i];
        if (nd < dist[w]) {
          dist[w] = nd;
          heap.emplace(nd, w);
        }
      }
    }
    // Summed in vertex order so the result does not depend on heap ties.
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t != s && done[t] && dist[t] > 0.0) sum += 1.0 / dist[t];
    }
    total += sum;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double efficiency(const SpatialGraph& g, PathMetric metric) {
  if (g.vertex_count() < 2) throw std::invalid_argument("efficiency needs at least 2 vertices");
  return metric == PathMetric::hop ? hop_efficiency(g) : euclidean_efficiency(g);
}

double energy_uni(const SpatialGraph& g) {
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.length * e.length;
  return total;
}

double energy_omni(const SpatialGraph& g) {
  std::vector<double> reach(g.vertex_count(), 0.0);
  for (const auto& e : g.edges()) {
    reach[e.u] = std::max(reach[e.u], e.length);
    reach[e.v] = std::max(reach[e.v], e.length);
  }
  double total = 0.0;
  for (double r : reach) total += r * r;
  return total;
}

std::vector<double> betweenness(const SpatialGraph& g) {
  // Brandes' accumulation over BFS trees.
  const auto n = g.vertex_count();
  const Adjacency adj(g);
  std::vector<double> centrality(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(static_cast<std::uint32_t>(s));
    for (std::size_t head = 0; head < order.size(); ++head) {
      const auto v = order[head];
      for (auto i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
        const auto w = adj.neighbors[i];
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (auto i = adj.offsets[w]; i < adj.offsets[w + 1]; ++i) {
        const auto v = adj.neighbors[i];
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) centrality[w] += delta[w];
    }
  }
  for (auto& c : centrality) c *= 0.5;
  return centrality;
}

std::vector<std::size_t> degree_histogram(const SpatialGraph& g) {
  const auto deg = g.degrees();
  std::vector<std::size_t> hist(deg.empty() ? 1 : *std::max_element(deg.begin(), deg.end()) + 1, 0);
  for (auto d : deg) ++hist[d];
  return hist;
}

MetricsReport make_report(Family family, double r, const SpatialGraph& g) {
  MetricsReport rep;
  rep.family = family;
  rep.r = r;
  rep.edges = g.edge_count();
  if (g.vertex_count() >= 2) {
    rep.eff_hop = efficiency(g, PathMetric::hop);
    rep.eff_euclid = efficiency(g, PathMetric::euclidean);
  }
  rep.eff_per_edge_hop = ratio(rep.eff_hop, static_cast<double>(rep.edges));
  rep.eff_per_edge_euclid = ratio(rep.eff_euclid, static_cast<double>(rep.edges));
  rep.energy_uni = energy_uni(g);
  rep.energy_omni = energy_omni(g);
  rep.eff_per_energy_hop = ratio(rep.eff_hop, rep.energy_uni);
  rep.eff_per_energy_euclid = ratio(rep.eff_euclid, rep.energy_uni);
  rep.eff_per_omni_energy_hop = ratio(rep.eff_hop, rep.energy_omni);
  rep.eff_per_omni_energy_euclid = ratio(rep.eff_euclid, rep.energy_omni);
  rep.connected = is_connected(g);
  rep.patch_edges = g.count_label(EdgeLabel::component_patch);
  rep.degree_histogram = degree_histogram(g);
  return rep;
}

std::string_view csv_header() noexcept {
  return "family,r,eff_hop,eff_euclid,edges,eff_per_edge_hop,eff_per_edge_euclid,energy_uni,"
         "energy_omni,eff_per_energy_hop,eff_per_energy_euclid,connected,patch_edges";
}

std::string to_csv_row(const MetricsReport& rep) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%zu",
                std::string(to_string(rep.family)).c_str(), rep.r, rep.eff_hop, rep.eff_euclid, rep.edges,
                rep.eff_per_edge_hop, rep.eff_per_edge_euclid, rep.energy_uni, rep.energy_omni,
                rep.eff_per_energy_hop, rep.eff_per_energy_euclid, rep.connected ? 1 : 0, rep.patch_edges);
  return buf;
}

}  // namespace fmnet
