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

#include "stabwit/io.hpp"

using namespace stabwit;

TEST(Io, GeneratorSetRoundTrip) {
  const GeneratorSet gens = ghz_generators(3, 3);
  const Json j = generator_set_to_json(gens);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["n"], 3);
  const GeneratorSet back = generator_set_from_json(j);
  ASSERT_EQ(back.num_generators(), gens.num_generators());
  for (int i = 0; i < gens.num_generators(); ++i) {
    EXPECT_EQ(back.generators[i], gens.generators[i]);
  }
}

TEST(Io, GeneratorSetJsonValidation) {
  Json j = {{"d", 4}, {"n", 2}, {"generators", {"X1", "Z1"}}};
  EXPECT_THROW(generator_set_from_json(j), std::invalid_argument);
  Json missing = {{"d", 2}};
  EXPECT_THROW(generator_set_from_json(missing), std::invalid_argument);
}

TEST(Io, MultigraphRoundTrip) {
  Multigraph g(4);
  g.add_edge(1, 2, 2);
  g.add_edge(3, 4, 1);
  const Json j = multigraph_to_json(g);
  const Multigraph back = multigraph_from_json(j);
  EXPECT_EQ(back.adjacency, g.adjacency);
}

TEST(Io, MultigraphNegativeMultiplicityReportsFieldPath) {
  Json j = {{"n", 3}, {"edges", {{1, 2, 1}, {2, 3, -2}}}};
  try {
    multigraph_from_json(j);
    FAIL() << "negative multiplicity accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("edges[1]"), std::string::npos);
  }
}

TEST(Io, WitnessDumpFields) {
  const Witness w = colored_witness(ghz_generators(3, 2));
  const Json j = witness_to_json(w);
  EXPECT_EQ(j["kind"], "colored");
  EXPECT_EQ(j["num_settings"], 2);
  EXPECT_EQ(j["constant"], 3.0);
  ASSERT_TRUE(j.contains("color_classes"));
  EXPECT_EQ(j["color_classes"].size(), 2u);

  const Witness g = generator_witness(ghz_generators(3, 2));
  const Json jg = witness_to_json(g);
  ASSERT_TRUE(jg.contains("terms"));
  EXPECT_EQ(jg["terms"].size(), 6u);  // G_k and its adjoint per generator
  EXPECT_EQ(jg["terms"][0]["weight_re"], -0.5);
}

TEST(Io, WitnessRoundTrip) {
  for (const Witness& w :
       {colored_witness(five_qubit_code_generators()), projector_witness(ghz_generators(3, 3)),
        generator_witness(cluster_generators(4, 2))}) {
    const Witness back = witness_from_json(witness_to_json(w));
    EXPECT_EQ(back.kind, w.kind);
    EXPECT_NEAR(back.constant, w.constant, 1e-12);
    ASSERT_EQ(back.generators.size(), w.generators.size());
    for (size_t i = 0; i < w.generators.size(); ++i) {
      EXPECT_EQ(back.generators[i], w.generators[i]);
    }
    EXPECT_EQ(back.color_classes, w.color_classes);
  }
  Json bad = witness_to_json(colored_witness(ghz_generators(3, 2)));
  bad["color_classes"] = {{1}, {2}};  // generator 3 uncovered
  EXPECT_THROW(witness_from_json(bad), std::invalid_argument);
}

TEST(Io, RobustnessJson) {
  const RobustnessReport r = p_limit_generic(colored_witness(ghz_generators(3, 2)));
  const Json j = robustness_to_json(r);
  EXPECT_TRUE(j["detects"].get<bool>());
  EXPECT_NEAR(j["p_limit"].get<double>(), 0.4, 1e-12);

  RobustnessReport none;
  const Json jn = robustness_to_json(none);
  EXPECT_TRUE(jn["p_limit"].is_null());
}

TEST(Io, CurveCsvFormat) {
  const auto rows = emit_curves("ghz", 2, 3, 4);
  const std::string csv = curves_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,d,N,K,p_limit");
  EXPECT_NE(csv.find("ghz,2,3,2,0.4\n"), std::string::npos);
}

TEST(Io, TwelveSignificantDigits) {
  EXPECT_EQ(format12(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format12(0.4), "0.4");
  EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
}
