#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "ktgraph/errors.hpp"
#include "ktgraph/model_io.hpp"

using namespace ktg;
using nlohmann::json;

TEST(ModelIo, RoundTripsEveryKind) {
  const std::vector<std::string> docs = {
      R"({"kind":"sbm","B":[[0.6,0.3],[0.3,0.6]],"block_sizes":[500,500]})",
      R"({"kind":"er","n":40,"p":0.25})",
      R"({"kind":"rdpg","X":[[0.5,0.1],[0.2,0.6],[0.3,0.3]]})",
      R"({"kind":"spike","m":298,"n":2,"p":300,"kappa":400,"tau":400})",
  };
  for (const std::string& text : docs) {
    const ModelSpec spec = load_model_spec(text);
    const json again = to_json(spec);
    EXPECT_EQ(again, json::parse(text)) << text;
    EXPECT_EQ(to_json(parse_model_spec(again)), again);
  }
}

TEST(ModelIo, SpikeFieldsMapToMultiplicities) {
  const auto spec = std::get<SpikeModelSpec>(load_model_spec(R"({"kind":"spike","m":3,"n":2,"p":1,"kappa":5,"tau":7})"));
  EXPECT_EQ(spec.low_multiplicity, 3u);
  EXPECT_EQ(spec.mid_multiplicity, 2u);
  EXPECT_EQ(spec.top_multiplicity, 1u);
  EXPECT_EQ(spec.levels(), (std::vector<double>{1.0, 6.0, 13.0}));
}

TEST(ModelIo, Diagnostics) {
  EXPECT_THROW(load_model_spec("{\"kind\":\"sbm\",\"B\":[[0.5]]"), InvalidInput);
  EXPECT_THROW(load_model_spec(R"({"kind":"bogus"})"), InvalidInput);
  EXPECT_THROW(load_model_spec(R"({"kind":"er","n":10})"), InvalidInput);
  EXPECT_THROW(load_model_spec(R"({"kind":"er","n":-3,"p":0.1})"), InvalidInput);
  EXPECT_THROW(load_model_spec(R"({"kind":"sbm","B":[[0.5,0.1],[0.2,0.5]],"block_sizes":[2,2]})"), InvalidInput);
  EXPECT_THROW(load_model_spec(R"({"kind":"sbm","B":[[0.5,0.1],[0.1]],"block_sizes":[2,2]})"), InvalidInput);
  EXPECT_THROW(load_model_spec(R"({"kind":"rdpg","X":[[1.2]]})"), InvalidInput);
  EXPECT_THROW(load_model_spec("/nonexistent/spec.json"), InvalidInput);
  try {
    load_model_spec("{not json");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("malformed"), std::string::npos);
  }
}

TEST(ModelIo, ReadsFiles) {
  const std::string path = ::testing::TempDir() + "ktgraph_model_io.json";
  {
    std::ofstream out(path);
    out << R"({"kind":"er","n":5,"p":0.5})";
  }
  const ModelSpec spec = load_model_spec(path);
  EXPECT_EQ(model_kind(spec), "er");
  EXPECT_EQ(probability_matrix(spec).n(), 5u);
  std::remove(path.c_str());
}

TEST(ModelIo, SpikeHasNoProbabilityMatrix) {
  EXPECT_THROW(probability_matrix(SpikeModelSpec{}), InvalidInput);
}
