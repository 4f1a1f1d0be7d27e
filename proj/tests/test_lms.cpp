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

#include <gtest/gtest.h>

#include "stabwit/graph.hpp"
#include "stabwit/lms.hpp"
#include "test_util.hpp"

using namespace stabwit;

namespace {

Eigen::MatrixXi matrix3(std::initializer_list<int> values) {
  Eigen::MatrixXi m(3, 3);
  int i = 0;
  for (int v : values) {
    m(i / 3, i % 3) = v;
    ++i;
  }
  return m;
}

// Exhaustive chromatic number for tiny graphs, as an independent oracle.
int brute_force_chromatic(const Eigen::MatrixXi& conflict) {
  const int k = static_cast<int>(conflict.rows());
  for (int colors = 1; colors <= k; ++colors) {
    std::vector<int> assign(k, 0);
    const long long total = pow_ll(colors, k);
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int v = 0; v < k; ++v) {
        assign[v] = static_cast<int>(c % colors);
        c /= colors;
      }
      if (is_proper_coloring(conflict, assign)) return colors;
    }
  }
  return k;
}

}  // namespace

TEST(Lms, GhzThreeQubitCommutationMatrices) {
  const auto profile = commutation_profile(ghz_generators(3, 2));
  EXPECT_EQ(profile.per_site[0], matrix3({0, 1, 0, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(profile.per_site[1], matrix3({0, 1, 1, 1, 0, 0, 1, 0, 0}));
  EXPECT_EQ(profile.per_site[2], matrix3({0, 0, 1, 0, 0, 0, 1, 0, 0}));
  EXPECT_EQ(profile.total, matrix3({0, 2, 2, 2, 0, 0, 2, 0, 0}));
  // Equals twice the star-graph adjacency.
  EXPECT_EQ(profile.total, 2 * Multigraph::star(3).adjacency);
}

TEST(Lms, FiveQubitCodeTotalMatrix) {
  const auto profile = commutation_profile(five_qubit_code_generators());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(profile.total(i, j), i == j ? 0 : 2);
    }
  }
}

TEST(Lms, SingleGeneratorProfileIsZero) {
  const GeneratorSet gens(2, 2, {PauliWord::x_op(2, 2, 1)});
  const auto profile = commutation_profile(gens);
  EXPECT_EQ(profile.total.cwiseAbs().sum(), 0);
  EXPECT_EQ(profile.conflict.cwiseAbs().sum(), 0);
}

TEST(Lms, PerSiteMatricesAreAntisymmetricModD) {
  for (int d : {2, 3, 5}) {
    const auto profile = commutation_profile(ghz_generators(3, d));
    for (const auto& c : profile.per_site) {
      for (int i = 0; i < c.rows(); ++i) {
        for (int j = 0; j < c.cols(); ++j) {
          EXPECT_EQ((c(i, j) + c(j, i)) % d, 0);
          EXPECT_GE(c(i, j), 0);
          EXPECT_LT(c(i, j), d);
        }
      }
    }
  }
}

TEST(Lms, LocallyCommuteExamples) {
  const auto ghz = ghz_generators(4, 2);
  EXPECT_TRUE(locally_commute(ghz.generators[1], ghz.generators[2]));   // all-Z words
  EXPECT_FALSE(locally_commute(ghz.generators[0], ghz.generators[1]));  // X vs Z on site 1
  EXPECT_TRUE(locally_commute(PauliWord::identity(2, 4), ghz.generators[0]));
}

TEST(Lms, StarConflictGraphIsTwoColorable) {
  for (int n : {3, 5, 8}) {
    const auto [profile, coloring] = lms_count(ghz_generators(n, 3));
    EXPECT_EQ(coloring.num_colors, 2);
    auto sizes = coloring.class_sizes();
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes.front(), 1);
    EXPECT_EQ(sizes.back(), n - 1);
  }
}

TEST(Lms, TriangleNeedsThreeColors) {
  Eigen::MatrixXi triangle(3, 3);
  triangle << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  EXPECT_EQ(chromatic_number(triangle).num_colors, 3);
}

TEST(Lms, TriangleWithPendantNeedsThreeSettings) {
  // A four-vertex graph with chromatic number 3; its graph state needs
  // three measurement settings.
  Multigraph g = Multigraph::from_edges(4, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {3, 4, 1}});
  const auto [profile, coloring] = lms_count(graph_generators(g, 2));
  EXPECT_EQ(coloring.num_colors, 3);
  EXPECT_EQ(profile.total, 2 * g.adjacency);
}

TEST(Lms, FiveQubitCodeNeedsFourSettings) {
  const auto [profile, coloring] = lms_count(five_qubit_code_generators());
  EXPECT_EQ(coloring.num_colors, 4);  // complete conflict graph on 4 vertices
}

TEST(Lms, ClusterColoringAlternates) {
  const auto [profile, coloring] = lms_count(cluster_generators(5, 2));
  EXPECT_EQ(coloring.num_colors, 2);
  // Lexicographically smallest optimal coloring on a path alternates 0101...
  EXPECT_EQ(coloring.color_of, (std::vector<int>{0, 1, 0, 1, 0}));
}

TEST(Lms, ColorClassesLocallyCommute) {
  std::vector<GeneratorSet> fixtures = {ghz_generators(4, 2), cluster_generators(5, 3),
                                        five_qubit_code_generators(),
                                        opt_subspace_generators(5, 3)};
  for (const auto& gens : fixtures) {
    const auto [profile, coloring] = lms_count(gens);
    for (const auto& cls : coloring.classes) {
      for (size_t a = 0; a < cls.size(); ++a) {
        for (size_t b = a + 1; b < cls.size(); ++b) {
          EXPECT_TRUE(locally_commute(gens.generators[cls[a]], gens.generators[cls[b]]));
        }
      }
    }
  }
}

TEST(Lms, QubitGraphStatesHaveTotalTwiceAdjacency) {
  std::mt19937_64 rng(53);
  std::vector<Multigraph> graphs = {Multigraph::star(4), Multigraph::path(5),
                                    Multigraph::cycle(5)};
  for (int rep = 0; rep < 5; ++rep) {
    // Simple graphs only: multiplicity 1 keeps every edge visible at d=2.
    Multigraph g(4);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j) g.add_edge(i, j, coin(rng));
    }
    graphs.push_back(g);
  }
  for (const auto& g : graphs) {
    const auto profile = commutation_profile(graph_generators(g, 2));
    EXPECT_EQ(profile.total, 2 * g.adjacency);
  }
}

TEST(Lms, ExactSearchMatchesBruteForce) {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 2; k <= 7; ++k) {
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::MatrixXi conflict = Eigen::MatrixXi::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) conflict(i, j) = conflict(j, i) = coin(rng);
      }
      const Coloring coloring = chromatic_number(conflict);
      EXPECT_EQ(coloring.num_colors, brute_force_chromatic(conflict));
      EXPECT_TRUE(is_proper_coloring(conflict, coloring.color_of));
      EXPECT_LE(coloring.num_colors, detail::greedy_color_count([&] {
        std::vector<uint32_t> adj(k, 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            if (i != j && conflict(i, j)) adj[i] |= 1u << j;
        return adj;
      }()));
    }
  }
}
