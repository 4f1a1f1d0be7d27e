// Copyright 2026 The stabwit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>

#include "stabwit/stabilizer.hpp"

namespace stabwit {

/// True iff every single-site factor pair of a and b commutes, i.e. the
/// per-site commutation exponent vanishes everywhere. Operators that
/// commute locally can be measured within one local measurement setting.
inline bool locally_commute(const PauliWord& a, const PauliWord& b) {
  check_same_space(a, b, "locally_commute");
  for (int s = 1; s <= a.n_sites(); ++s) {
    if (site_commutation_exponent(a, b, s) != 0) return false;
  }
  return true;
}

/// Site-resolved commutation data for a generator list:
///  - per_site[s](i,j): commutation exponent of the site-s factors of
///    G_i and G_j, as a representative in [0, d);
///  - total(i,j): the plain integer sum of per-site entries (not mod d);
///  - conflict(i,j) = 1 iff total(i,j) != 0.
/// A zero total certifies local commutation site by site; per-site values
/// cannot cancel because representatives are nonnegative.
struct CommutationProfile {
  std::vector<Eigen::MatrixXi> per_site;
  Eigen::MatrixXi total;
  Eigen::MatrixXi conflict;
};

inline CommutationProfile commutation_profile(const GeneratorSet& gens) {
  const int k = gens.num_generators();
  const int n = gens.n_sites;
  CommutationProfile p;
  p.per_site.assign(n, Eigen::MatrixXi::Zero(k, k));
  p.total = Eigen::MatrixXi::Zero(k, k);
  for (int s = 1; s <= n; ++s) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        p.per_site[s - 1](i, j) =
            site_commutation_exponent(gens.generators[i], gens.generators[j], s);
      }
    }
    p.total += p.per_site[s - 1];
  }
  p.conflict = (p.total.array() != 0).cast<int>();
  return p;
}

/// A proper coloring: a partition of vertex indices into color classes with
/// no conflict edge inside a class.
struct Coloring {
  int num_colors = 0;
  std::vector<int> color_of;                // per vertex, in [0, num_colors)
  std::vector<std::vector<int>> classes;    // vertex indices per color

  static Coloring from_assignment(std::vector<int> colors) {
    Coloring c;
    c.color_of = std::move(colors);
    c.num_colors = c.color_of.empty()
                       ? 0
                       : 1 + *std::max_element(c.color_of.begin(), c.color_of.end());
    c.classes.assign(c.num_colors, {});
    for (size_t v = 0; v < c.color_of.size(); ++v) {
      c.classes[c.color_of[v]].push_back(static_cast<int>(v));
    }
    return c;
  }

  std::vector<int> class_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(classes.size());
    for (const auto& cls : classes) sizes.push_back(static_cast<int>(cls.size()));
    return sizes;
  }
};

inline bool is_proper_coloring(const Eigen::MatrixXi& conflict, const std::vector<int>& colors) {
  const int k = static_cast<int>(colors.size());
  if (conflict.rows() != k) return false;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (conflict(i, j) != 0 && colors[i] == colors[j]) return false;
    }
  }
  return true;
}

namespace detail {

// Greedy coloring in vertex order; an upper bound on the chromatic number.
inline int greedy_color_count(const std::vector<uint32_t>& adj) {
  const int k = static_cast<int>(adj.size());
  std::vector<int> color(k, -1);
  int used = 0;
  for (int v = 0; v < k; ++v) {
    uint32_t taken = 0;
    for (int u = 0; u < v; ++u) {
      if (adj[v] >> u & 1u) taken |= 1u << color[u];
    }
    int c = 0;
    while (taken >> c & 1u) ++c;
    color[v] = c;
    used = std::max(used, c + 1);
  }
  return used;
}

// Greedy clique (a valid lower bound on the chromatic number).
inline int greedy_clique_size(const std::vector<uint32_t>& adj) {
  const int k = static_cast<int>(adj.size());
  int best = k == 0 ? 0 : 1;
  for (int start = 0; start < k; ++start) {
    uint32_t clique = 1u << start;
    int size = 1;
    for (int v = 0; v < k; ++v) {
      if (v == start || (clique >> v & 1u)) continue;
      if ((adj[v] & clique) == clique) {
        clique |= 1u << v;
        ++size;
      }
    }
    best = std::max(best, size);
  }
  return best;
}

// First proper coloring with at most max_colors colors in lexicographic
// order of the assignment vector, or empty if none exists. Restricting a
// vertex's color to at most one more than the largest color used so far
// loses no assignment that is lexicographically minimal.
inline std::vector<int> lex_first_coloring(const std::vector<uint32_t>& adj, int max_colors) {
  const int k = static_cast<int>(adj.size());
  std::vector<int> color(k, -1);
  int v = 0;
  while (v >= 0 && v < k) {
    int highest = -1;
    for (int u = 0; u < v; ++u) highest = std::max(highest, color[u]);
    const int limit = std::min(max_colors - 1, highest + 1);
    int c = color[v] + 1;  // -1 on first visit, so we start at 0
    for (; c <= limit; ++c) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        if ((adj[v] >> u & 1u) && color[u] == c) ok = false;
      }
      if (ok) break;
    }
    if (c > limit) {
      color[v] = -1;
      --v;  // backtrack
    } else {
      color[v] = c;
      ++v;
    }
  }
  if (v < 0) return {};
  return color;
}

}  // namespace detail

/// Exact chromatic number of a conflict graph (<= 32 vertices) with one
/// optimal proper coloring, the lexicographically smallest assignment among
/// the optima. Backtracking between a greedy clique lower bound and a
/// greedy coloring upper bound.
inline Coloring chromatic_number(const Eigen::MatrixXi& conflict) {
  const int k = static_cast<int>(conflict.rows());
  if (conflict.cols() != k) throw std::invalid_argument("chromatic_number: matrix not square");
  if (k > 32) throw std::invalid_argument("chromatic_number: more than 32 vertices");
  if (k == 0) return Coloring{};
  std::vector<uint32_t> adj(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && (conflict(i, j) != 0 || conflict(j, i) != 0)) adj[i] |= 1u << j;
    }
  }
  const int lower = detail::greedy_clique_size(adj);
  const int upper = detail::greedy_color_count(adj);
  for (int colors = lower; colors <= upper; ++colors) {
    std::vector<int> assignment = detail::lex_first_coloring(adj, colors);
    if (!assignment.empty()) return Coloring::from_assignment(std::move(assignment));
  }
  throw std::logic_error("chromatic_number: greedy upper bound was not attainable");
}

/// Minimal number of local measurement settings needed to measure all
/// generators of the given presentation, with one optimal grouping. This is
/// the chromatic number of the conflict graph of this particular generator
/// list; other presentations of the same subspace may need fewer settings.
inline std::pair<CommutationProfile, Coloring> lms_count(const GeneratorSet& gens) {
  CommutationProfile profile = commutation_profile(gens);
  Coloring coloring = chromatic_number(profile.conflict);
  return {std::move(profile), std::move(coloring)};
}

}  // namespace stabwit
