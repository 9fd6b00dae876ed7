/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "laxsynth/net.hpp"

#include "laxsynth/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace laxsynth {

namespace {

VecList cartesian(const std::vector<VecList>& parts) {
  VecList out{Vec(0)};
  for (const auto& part : parts) {
    VecList next;
    next.reserve(out.size() * part.size());
    for (const auto& prefix : out)
      for (const auto& p : part) {
        Vec v(prefix.size() + p.size());
        v << prefix, p;
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

// Grid over U with each continuous coordinate split into intervals of
// length at most `spacing`; `extra` adds intervals to shift the grid.
VecList grid(const ControlSet& U, double spacing, int extra) {
  return std::visit(
      [&](const auto& s) -> VecList {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return s.points;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          std::vector<VecList> axes;
          for (Eigen::Index j = 0; j < s.lo.size(); ++j) {
            const double w = s.hi[j] - s.lo[j];
            VecList axis;
            if (w <= 0.0) {
              axis.push_back(Vec::Constant(1, s.lo[j]));
            } else {
              const int intervals = static_cast<int>(std::ceil(w / spacing - 1e-12)) + extra;
              for (int i = 0; i <= intervals; ++i) {
                const double v = i == intervals ? s.hi[j] : s.lo[j] + w * i / intervals;
                axis.push_back(Vec::Constant(1, v));
              }
            }
            axes.push_back(std::move(axis));
          }
          return cartesian(axes);
        } else {
          std::vector<VecList> parts;
          for (const auto& f : s.factors) parts.push_back(grid(f, spacing, extra));
          return cartesian(parts);
        }
      },
      U.variant());
}

struct CellKeyHash {
  std::size_t operator()(const std::vector<long>& k) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (long v : k) h ^= std::hash<long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Buckets points into cubes of side `cell`, so every point closer than
// `cell` to a query sits in one of the 3^d cubes around it.
class CellIndex {
 public:
  explicit CellIndex(double cell) : cell_(cell) {}
  CellIndex(const VecList& points, double cell) : cell_(cell) {
    for (const auto& p : points) add(p);
  }

  void add(const Vec& p) {
    cells_[key(p)].push_back(points_.size());
    points_.push_back(p);
  }

  const VecList& points() const { return points_; }

  /// Distance to the nearest indexed point.
  double nearest(const Vec& q) const {
    double best = nearest_local(q);
    if (best >= cell_) {
      for (const auto& a : points_) best = std::min(best, (a - q).norm());
    }
    return best;
  }

  /// Nearest distance if it is below `cell`, otherwise a value >= cell.
  double nearest_local(const Vec& q) const {
    double best = std::numeric_limits<double>::infinity();
    const std::vector<long> base = key(q);
    const std::size_t d = base.size();
    std::vector<long> k(d);
    std::size_t combos = 1;
    for (std::size_t j = 0; j < d; ++j) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t r = c;
      for (std::size_t j = 0; j < d; ++j) {
        k[j] = base[j] + static_cast<long>(r % 3) - 1;
        r /= 3;
      }
      const auto it = cells_.find(k);
      if (it == cells_.end()) continue;
      for (std::size_t i : it->second) best = std::min(best, (points_[i] - q).norm());
    }
    return best;
  }

 private:
  std::vector<long> key(const Vec& x) const {
    std::vector<long> k(static_cast<std::size_t>(x.size()));
    for (Eigen::Index j = 0; j < x.size(); ++j)
      k[static_cast<std::size_t>(j)] = static_cast<long>(std::floor(x[j] / cell_));
    return k;
  }

  VecList points_;
  double cell_;
  std::unordered_map<std::vector<long>, std::vector<std::size_t>, CellKeyHash> cells_;
};

// Maximal delta-packing: candidates are visited in `order` and kept when
// strictly farther than delta from everything kept so far.
CellIndex greedy_packing(const VecList& candidates, const std::vector<std::size_t>& order, double delta) {
  CellIndex index(delta);
  for (std::size_t i : order)
    if (index.nearest_local(candidates[i]) > delta) index.add(candidates[i]);
  return index;
}

}  // namespace

DeltaNet build_net(const ControlSet& U, double delta) {
  if (!(delta > 0.0)) throw DegenerateDelta("delta must be positive");
  if (U.empty()) throw EmptyControlSet("cannot build a net of an empty control set");
  // The packing leaves every candidate within delta of the net. Probe points
  // of the verification grid that fall in the gaps between candidates are
  // then added directly. Visiting orders are the grid order followed by
  // seeded shuffles; the candidate grid is offset so that its spacing does
  // not divide delta.
  const double probe_spacing = delta / 20.0;
  std::mt19937_64 rng(0x5eed);
  for (int shift = 1; shift <= 4; ++shift) {
    const VecList candidates = grid(U, delta / 4.0, shift);
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
      CellIndex index = greedy_packing(candidates, order, delta);
      for (const auto& probe : grid(U, probe_spacing, 0))
        if (index.nearest(probe) > delta) index.add(probe);
      DeltaNet net{delta, index.points()};
      if (verify(U, net, probe_spacing)) return net;
    }
  }
  std::ostringstream os;
  os << "no verified delta-net found for delta = " << delta;
  throw DegenerateDelta(os.str());
}

DeltaNet uniform_net(const ControlSet& U, double delta, int points_per_interval) {
  return DeltaNet{delta, U.sample(points_per_interval)};
}

int first_covering_ball(const DeltaNet& net, const Vec& a) {
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    if ((net.points[i] - a).norm() < net.delta) return static_cast<int>(i);
  }
  return -1;
}

NetCheck check_net(const ControlSet& U, const DeltaNet& net, double probe_spacing) {
  NetCheck check;
  if (net.points.empty()) {
    check.covering = false;
    return check;
  }
  for (const auto& a : net.points) {
    if (!U.contains(a, 1e-12)) check.members = false;
  }
  check.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i)
    for (std::size_t j = i + 1; j < net.points.size(); ++j)
      check.min_separation = std::min(check.min_separation, (net.points[i] - net.points[j]).norm());
  check.packing = check.min_separation > net.delta;

  const double spacing = probe_spacing > 0.0 ? probe_spacing : net.delta / 20.0;
  const CellIndex index(net.points, net.delta);
  for (const auto& probe : grid(U, spacing, 0))
    check.covering_radius = std::max(check.covering_radius, index.nearest(probe));
  check.covering = check.covering_radius < net.delta;
  return check;
}

bool verify(const ControlSet& U, const DeltaNet& net, double probe_spacing) {
  return check_net(U, net, probe_spacing).ok();
}

void write_net_csv(const DeltaNet& net, std::ostream& os) {
  const int m = net.points.empty() ? 0 : static_cast<int>(net.points.front().size());
  std::vector<std::string> header;
  for (int j = 0; j < m; ++j) header.push_back("u" + std::to_string(j + 1));
  csv::write_row(os, header);
  for (const auto& a : net.points) {
    std::vector<std::string> row;
    for (int j = 0; j < m; ++j) row.push_back(csv::format_double(a[j]));
    csv::write_row(os, row);
  }
}

void write_net_csv(const DeltaNet& net, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_net_csv(net, os);
}

DeltaNet read_net_csv(const std::string& path, double delta) {
  const csv::Table table = csv::read_file(path);
  DeltaNet net{delta, {}};
  for (const auto& row : table.rows) {
    Vec a(static_cast<Eigen::Index>(row.size()));
    for (std::size_t j = 0; j < row.size(); ++j) a[j] = csv::parse_double(row[j]);
    net.points.push_back(std::move(a));
  }
  return net;
}

}  // namespace laxsynth
