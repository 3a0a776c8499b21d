#include <gtest/gtest.h>

#include "rholatin/io.hpp"

namespace rholatin {
namespace {

using io::json;

TEST(InstanceJson, AcceptsFullAndBlockGrids) {
  const auto full = io::instance_from_json(io::parse(
      R"({"n":4,"k":4,"r":2,"rho":[4,4,4,4],"grid":[[1,2,0,0],[2,1,0,0],[0,0,0,0],[0,0,0,0]]})"));
  const auto block = io::instance_from_json(io::parse(R"({"n":4,"k":4,"r":2,"rho":[4,4,4,4],"grid":[[1,2],[2,1]]})"));
  EXPECT_EQ(full.square, block.square);
  EXPECT_FALSE(full.tail.has_value());
}

TEST(InstanceJson, ReadsTail) {
  const auto x = io::instance_from_json(io::parse(
      R"({"n":4,"k":4,"r":2,"rho":[4,4,4,4],"grid":[[1,2],[2,1]],"diagonal_tail":[2,0,0,0]})"));
  ASSERT_TRUE(x.tail.has_value());
  EXPECT_EQ(*x.tail, DiagonalTail(4, 2, {2, 0, 0, 0}));
}

TEST(InstanceJson, RoundTripIsCanonical) {
  const std::string text =
      R"({"diagonal_tail":[2,0,0,0],"grid":[[1,2,0,0],[2,1,0,0],[0,0,0,0],[0,0,0,0]],"k":4,"n":4,"r":2,"rho":[4,4,4,4]})";
  const auto x = io::instance_from_json(io::parse(text));
  EXPECT_EQ(io::to_json(x).dump(), text);
}

TEST(InstanceJson, FieldErrorsAreStructural) {
  EXPECT_THROW(io::parse("{\"n\": 2,"), StructuralError);
  EXPECT_THROW(io::instance_from_json(io::parse(R"({"k":3,"r":0,"rho":[2,1,1],"grid":[]})")), StructuralError);
  EXPECT_THROW(io::instance_from_json(io::parse(R"({"n":2,"k":3,"r":0,"rho":[2,1],"grid":[]})")), StructuralError);
  EXPECT_THROW(io::instance_from_json(io::parse(R"({"n":2,"k":3,"r":0,"rho":[2,1,"x"],"grid":[]})")),
               StructuralError);
  EXPECT_THROW(io::instance_from_json(io::parse(R"({"n":2,"k":3,"r":1,"rho":[2,1,1],"grid":[[0]]})")),
               StructuralError);
  EXPECT_THROW(io::instance_from_json(io::parse(R"([1,2])")), StructuralError);
}

TEST(InstanceJson, MissingFieldIsNamed) {
  try {
    io::instance_from_json(io::parse(R"({"n":2,"k":3,"r":0,"grid":[]})"));
    FAIL();
  } catch (const StructuralError& err) {
    EXPECT_NE(std::string(err.what()).find("rho"), std::string::npos);
  }
}

TEST(VerdictJson, CarriesConditionAndWitness) {
  const auto v = ConditionVerdict::at_subsets(Condition::kReallylongineqnodial, {{0}, {3, 4}});
  const auto j = io::to_json(v);
  EXPECT_EQ(j.at("condition"), "reallylongineqnodial");
  EXPECT_EQ(j.at("witness").at("I"), json::array({1}));
  EXPECT_EQ(j.at("witness").at("K"), json::array({3, 4}));
  EXPECT_EQ(io::to_json(ConditionVerdict::ok()).dump(), R"({"satisfied":true})");
}

TEST(GridJson, AcceptsBareArrayOrObject) {
  EXPECT_EQ(io::grid_from_json(io::parse("[[2,1],[1,3]]")), (Grid{{2, 1}, {1, 3}}));
  EXPECT_EQ(io::grid_from_json(io::parse(R"({"grid":[[2,1],[1,3]]})")), (Grid{{2, 1}, {1, 3}}));
}

}  // namespace
}  // namespace rholatin
