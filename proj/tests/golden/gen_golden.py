#!/usr/bin/env python3
# Copyright 2026 The MASE Solver Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the golden random games from a standalone SplitMix64."""

import itertools
import json
import os

MASK = (1 << 64) - 1


class SplitMix64:

  def __init__(self, seed):
    self.state = seed & MASK

  def next(self):
    self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
    z = self.state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)

  def next_double(self):
    return (self.next() >> 11) * 2.0**-53


def random_normal_form(players, actions, seed):
  rng = SplitMix64(seed)
  size = actions**players
  tensors = [[rng.next_double() for _ in range(size)] for _ in range(players)]
  lo = min(min(t) for t in tensors)
  hi = max(max(t) for t in tensors)
  span = hi - lo
  return {
      "type": "normal_form",
      "actions": [[str(a) for a in range(actions)] for _ in range(players)],
      "utilities": [[(u - lo) / span for u in t] for t in tensors],
  }


def random_polymatrix(players, degree, actions, seed):
  rng = SplitMix64(seed)
  p = degree / (players - 1)
  pairs = [(i, j) for i in range(players) for j in range(i + 1, players)
           if rng.next_double() < p]
  cells = actions * actions
  tables = []
  for _ in pairs:
    u_ij = [rng.next_double() for _ in range(cells)]
    u_ji = [rng.next_double() for _ in range(cells)]
    tables.append((u_ij, u_ji))
  # Raw total of each player over every assignment of itself and neighbors.
  totals = []
  deg = [0] * players
  for i in range(players):
    incident = []
    for (a, b), (u_ab, u_ba) in zip(pairs, tables):
      if a == i:
        incident.append(u_ab)
      elif b == i:
        incident.append(u_ba)
    deg[i] = len(incident)
    for own in range(actions):
      for others in itertools.product(range(actions), repeat=len(incident)):
        totals.append(sum(t[own * actions + o]
                          for t, o in zip(incident, others)))
  lo, hi = min(totals), max(totals)
  span = hi - lo
  edges = []
  for (i, j), (u_ij, u_ji) in zip(pairs, tables):
    if span > 0:
      u_ij = [(u - lo / deg[i]) / span for u in u_ij]
      u_ji = [(u - lo / deg[j]) / span for u in u_ji]
    edges.append({
        "i": i, "j": j,
        "u_ij": [u_ij[r * actions:(r + 1) * actions] for r in range(actions)],
        "u_ji": [u_ji[r * actions:(r + 1) * actions] for r in range(actions)],
    })
  return {
      "type": "polymatrix",
      "num_players": players,
      "actions": [[str(a) for a in range(actions)] for _ in range(players)],
      "edges": edges,
  }


def main():
  here = os.path.dirname(os.path.abspath(__file__))
  with open(os.path.join(here, "normal_form_3p_2a_seed7.json"), "w") as f:
    json.dump(random_normal_form(3, 2, 7), f, indent=1)
    f.write("\n")
  with open(os.path.join(here, "polymatrix_5p_c1_2a_seed3.json"), "w") as f:
    json.dump(random_polymatrix(5, 1.0, 2, 3), f, indent=1)
    f.write("\n")


if __name__ == "__main__":
  main()
