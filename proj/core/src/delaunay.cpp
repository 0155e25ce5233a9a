#include "fmnet/delaunay.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fmnet {

long double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const long double abx = static_cast<long double>(b.x) - a.x;
  const long double aby = static_cast<long double>(b.y) - a.y;
  const long double acx = static_cast<long double>(c.x) - a.x;
  const long double acy = static_cast<long double>(c.y) - a.y;
  return abx * acy - aby * acx;
}

long double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const long double adx = static_cast<long double>(a.x) - d.x;
  const long double ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x;
  const long double bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x;
  const long double cdy = static_cast<long double>(c.y) - d.y;
  const long double alift = adx * adx + ady * ady;
  const long double blift = bdx * bdx + bdy * bdy;
  const long double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
         clift * (adx * bdy - bdx * ady);
}

namespace {

constexpr std::int32_t kNoTri = -1;

struct Tri {
  std::array<std::uint32_t, 3> v;
  std::array<std::int32_t, 3> nb;  // nb[i] is across the edge opposite v[i]
};

class BowyerWatson {
 public:
  explicit BowyerWatson(std::span<const Vec2> input) : n_(input.size()) {
    pts_.assign(input.begin(), input.end());
    double minx = input[0].x, maxx = minx, miny = input[0].y, maxy = miny;
    for (const auto& p : input) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    const Vec2 c{0.5 * (minx + maxx), 0.5 * (miny + maxy)};
    const double k = 1e5 * std::max(maxx - minx, maxy - miny);
    pts_.push_back({c.x - 3 * k, c.y - 3 * k});
    pts_.push_back({c.x + 3 * k, c.y - 3 * k});
    pts_.push_back({c.x, c.y + 3 * k});
    const auto s = static_cast<std::uint32_t>(n_);
    tris_.push_back({{s, s + 1, s + 2}, {kNoTri, kNoTri, kNoTri}});
    stamp_.push_back(0);
  }

  void run() {
    for (std::uint32_t k = 0; k < n_; ++k) insert(k);
  }

  std::span<const Tri> tris() const { return tris_; }
  std::size_t real_count() const { return n_; }

 private:
  bool contains(const Tri& t, Vec2 p) const {
    for (int i = 0; i < 3; ++i) {
      if (orient2d(pts_[t.v[(i + 1) % 3]], pts_[t.v[(i + 2) % 3]], p) < 0) return false;
    }
    return true;
  }

  std::int32_t locate(Vec2 p) {
    std::int32_t t = last_;
    const std::size_t max_steps = 4 * tris_.size() + 16;
    int rot = 0;
    for (std::size_t step = 0; step < max_steps; ++step) {
      const Tri& tri = tris_[static_cast<std::size_t>(t)];
      bool moved = false;
      for (int j = 0; j < 3; ++j) {
        const int i = (j + rot) % 3;
        if (orient2d(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]], p) < 0 && tri.nb[i] != kNoTri) {
          t = tri.nb[i];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
      rot = (rot + 1) % 3;
    }
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (contains(tris_[i], p)) return static_cast<std::int32_t>(i);
    }
    throw std::logic_error("delaunay: point location failed");
  }

  bool in_circle(std::int32_t t, Vec2 p) const {
    const Tri& tri = tris_[static_cast<std::size_t>(t)];
    return incircle(pts_[tri.v[0]], pts_[tri.v[1]], pts_[tri.v[2]], p) > 0;
  }

  struct BoundaryEdge {
    std::uint32_t a, b;
    std::int32_t outer;
  };

  void insert(std::uint32_t k) {
    const Vec2 p = pts_[k];
    ++epoch_;
    const auto t0 = locate(p);
    std::vector<std::int32_t> cavity{t0};
    stamp_[static_cast<std::size_t>(t0)] = epoch_;
    for (std::size_t i = 0; i < cavity.size(); ++i) {
      const Tri& tri = tris_[static_cast<std::size_t>(cavity[i])];
      for (auto nb : tri.nb) {
        if (nb == kNoTri || stamp_[static_cast<std::size_t>(nb)] == epoch_) continue;
        if (in_circle(nb, p)) {
          stamp_[static_cast<std::size_t>(nb)] = epoch_;
          cavity.push_back(nb);
        }
      }
    }

    // The cavity must be star-shaped from p; grow it across any boundary
    // edge that p does not strictly see (only near-degenerate input).
    std::vector<BoundaryEdge> boundary;
    for (;;) {
      boundary.clear();
      std::int32_t grow = kNoTri;
      for (auto c : cavity) {
        const Tri& tri = tris_[static_cast<std::size_t>(c)];
        for (int i = 0; i < 3; ++i) {
          const auto nb = tri.nb[i];
          if (nb != kNoTri && stamp_[static_cast<std::size_t>(nb)] == epoch_) continue;
          const auto a = tri.v[(i + 1) % 3];
          const auto b = tri.v[(i + 2) % 3];
          if (orient2d(pts_[a], pts_[b], p) <= 0 && nb != kNoTri && grow == kNoTri) grow = nb;
          boundary.push_back({a, b, nb});
        }
      }
      if (grow == kNoTri) break;
      stamp_[static_cast<std::size_t>(grow)] = epoch_;
      cavity.push_back(grow);
    }

    // Slots: reuse the cavity's, then append.
    std::vector<std::int32_t> slots(cavity.begin(), cavity.end());
    while (slots.size() < boundary.size()) {
      slots.push_back(static_cast<std::int32_t>(tris_.size()));
      tris_.push_back({});
      stamp_.push_back(0);
    }

    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const auto& be = boundary[i];
      if (be.outer == kNoTri) continue;
      // Matched by vertices: slot reuse means old indices can reappear.
      auto& outer = tris_[static_cast<std::size_t>(be.outer)];
      for (int j = 0; j < 3; ++j) {
        if (outer.v[(j + 1) % 3] == be.b && outer.v[(j + 2) % 3] == be.a) {
          outer.nb[j] = slots[i];
          break;
        }
      }
    }
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const auto& be = boundary[i];
      Tri t{{be.a, be.b, k}, {kNoTri, kNoTri, be.outer}};
      for (std::size_t j = 0; j < boundary.size(); ++j) {
        if (boundary[j].a == be.b) t.nb[0] = slots[j];  // shares edge (b, p)
        if (boundary[j].b == be.a) t.nb[1] = slots[j];  // shares edge (p, a)
      }
      tris_[static_cast<std::size_t>(slots[i])] = t;
      stamp_[static_cast<std::size_t>(slots[i])] = 0;
    }
    last_ = slots.front();
  }

  std::size_t n_;
  std::vector<Vec2> pts_;
  std::vector<Tri> tris_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::int32_t last_ = 0;
};

}  // namespace

DelaunayTriangulation::DelaunayTriangulation(std::span<const Vec2> points) {
  const auto n = points.size();
  if (n < 2) throw std::invalid_argument("delaunay needs at least 2 points");

  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0U);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    return std::tie(points[a].x, points[a].y, a) < std::tie(points[b].x, points[b].y, b);
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (points[idx[i]] == points[idx[i - 1]]) {
      throw std::invalid_argument("delaunay: points " + std::to_string(idx[i - 1]) + " and " +
                                  std::to_string(idx[i]) + " coincide");
    }
  }

  bool collinear = true;
  for (std::size_t i = 2; i < n && collinear; ++i) {
    collinear = orient2d(points[0], points[1], points[i]) == 0;
  }
  if (collinear) {
    // Lexicographic order is order along the line.
    for (std::size_t i = 1; i < n; ++i) {
      edges_.emplace_back(std::min(idx[i - 1], idx[i]), std::max(idx[i - 1], idx[i]));
      opposite_.push_back({-1, -1});
    }
    std::vector<std::size_t> perm(edges_.size());
    std::iota(perm.begin(), perm.end(), 0U);
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return edges_[a] < edges_[b]; });
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sorted;
    for (auto i : perm) sorted.push_back(edges_[i]);
    edges_ = std::move(sorted);
    return;
  }

  BowyerWatson bw(points);
  bw.run();

  struct HalfEdge {
    std::uint32_t u, v;
    std::int64_t opp;
  };
  std::vector<HalfEdge> half;
  for (const auto& t : bw.tris()) {
    const bool real = t.v[0] < n && t.v[1] < n && t.v[2] < n;
    if (real) triangles_.push_back(t.v);
    for (int i = 0; i < 3; ++i) {
      const auto a = t.v[(i + 1) % 3];
      const auto b = t.v[(i + 2) % 3];
      if (a >= n || b >= n) continue;
      half.push_back({std::min(a, b), std::max(a, b), real ? static_cast<std::int64_t>(t.v[i]) : -1});
    }
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
    return std::tie(x.u, x.v, x.opp) < std::tie(y.u, y.v, y.opp);
  });
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    std::array<std::int64_t, 2> opp{-1, -1};
    int slot = 0;
    while (j < half.size() && half[j].u == half[i].u && half[j].v == half[i].v) {
      if (half[j].opp >= 0 && slot < 2) opp[static_cast<std::size_t>(slot++)] = half[j].opp;
      ++j;
    }
    edges_.emplace_back(half[i].u, half[i].v);
    opposite_.push_back(opp);
    i = j;
  }
}

}  // namespace fmnet
