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
#pragma once

#include "laxsynth/model.hpp"

#include <iosfwd>
#include <string>

namespace laxsynth {

/// Finite subset of U whose points are pairwise more than `delta` apart and
/// whose open delta-balls cover U.
struct DeltaNet {
  double delta = 0.0;
  VecList points;

  std::size_t size() const { return points.size(); }
};

/// Greedy maximal packing over a candidate grid of U (spacing about
/// delta / 4 on continuous coordinates, finite factors verbatim), topped up
/// with any probe point left uncovered. Deterministic: visiting orders come
/// from a fixed seed. Throws DegenerateDelta if no attempt passes verify().
DeltaNet build_net(const ControlSet& U, double delta);

/// Product grid with `points_per_interval` uniform samples on each
/// continuous coordinate (finite factors verbatim). Not necessarily a
/// delta-net; check with verify().
DeltaNet uniform_net(const ControlSet& U, double delta, int points_per_interval);

struct NetCheck {
  bool members = true;   ///< every point lies in U
  bool packing = true;   ///< pairwise distances > delta
  bool covering = true;  ///< every probe point within < delta of the net
  double min_separation = 0.0;
  double covering_radius = 0.0;

  bool ok() const { return members && packing && covering; }
};

/// Probe spacing defaults to delta / 20 on every continuous coordinate.
NetCheck check_net(const ControlSet& U, const DeltaNet& net, double probe_spacing = 0.0);
bool verify(const ControlSet& U, const DeltaNet& net, double probe_spacing = 0.0);

/// Index of the first net point whose open delta-ball contains `a`, or -1.
int first_covering_ball(const DeltaNet& net, const Vec& a);

void write_net_csv(const DeltaNet& net, std::ostream& os);
void write_net_csv(const DeltaNet& net, const std::string& path);
/// Reads points written by write_net_csv; delta is supplied by the caller.
DeltaNet read_net_csv(const std::string& path, double delta);

}  // namespace laxsynth
