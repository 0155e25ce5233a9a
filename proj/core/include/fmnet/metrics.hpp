#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fmnet/spatial_graph.hpp"

namespace fmnet {

enum class Family { RGG, RD, RG, RFMN, FMN };

std::string_view to_string(Family family) noexcept;
Family family_from_string(std::string_view name);

enum class PathMetric { hop, euclidean };

/// Mean inverse shortest-path distance over distinct vertex pairs; pairs with
/// no path contribute zero. Throws std::invalid_argument below 2 vertices.
double efficiency(const SpatialGraph& g, PathMetric metric);

/// Sum of squared edge lengths.
double energy_uni(const SpatialGraph& g);

/// Sum over vertices of the squared longest incident edge; isolated vertices
/// contribute zero.
double energy_omni(const SpatialGraph& g);

/// Unnormalised shortest-path betweenness under the hop metric. Each
/// unordered pair is counted once, and equal-length paths share credit.
std::vector<double> betweenness(const SpatialGraph& g);

/// Entry d is the number of vertices of degree d.
std::vector<std::size_t> degree_histogram(const SpatialGraph& g);

struct MetricsReport {
  Family family = Family::RGG;
  double r = 0.0;
  double eff_hop = 0.0;
  double eff_euclid = 0.0;
  std::size_t edges = 0;
  double eff_per_edge_hop = 0.0;
  double eff_per_edge_euclid = 0.0;
  double energy_uni = 0.0;
  double energy_omni = 0.0;
  // Per unit unidirectional energy (the CSV columns) ...
  double eff_per_energy_hop = 0.0;
  double eff_per_energy_euclid = 0.0;
  // ... and per unit omnidirectional energy.
  double eff_per_omni_energy_hop = 0.0;
  double eff_per_omni_energy_euclid = 0.0;
  bool connected = false;
  std::size_t patch_edges = 0;
  std::vector<std::size_t> degree_histogram;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// All metrics of one graph. Ratios with a zero denominator are reported as 0.
MetricsReport make_report(Family family, double r, const SpatialGraph& g);

/// "family,r,eff_hop,eff_euclid,edges,eff_per_edge_hop,..." (no newline).
std::string_view csv_header() noexcept;
std::string to_csv_row(const MetricsReport& report);

}  // namespace fmnet
