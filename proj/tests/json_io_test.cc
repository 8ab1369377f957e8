//
// Copyright 2026 The PrivInfer Authors
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
//

#include <cstdio>
#include <fstream>

#include "generators.h"
#include "gtest/gtest.h"
#include "privinfer/error.h"
#include "privinfer/json_io.h"

namespace privinfer {
namespace {

using nlohmann::json;

TEST(JsonIoTest, ValueEncodings) {
  EXPECT_EQ(ValueToJson(Value::Unit()), json(nullptr));
  EXPECT_EQ(ValueToJson(Value::Bool(true)), json(true));
  EXPECT_EQ(ValueToJson(Value::Enum(2)), json::parse(R"({"enum":2})"));
  EXPECT_EQ(ValueToJson(Value::Tuple({Value::Real(1), Value::Bool(false)})),
            json::parse(R"({"tuple":[1.0,false]})"));
  EXPECT_EQ(ValueToJson(Value::Symbolic(SymDist::Beta(2, 3))),
            json::parse(R"({"family":"beta","params":[2.0,3.0]})"));
}

TEST(JsonIoTest, ValueRoundTrip) {
  std::vector<Value> vs{
      Value::Unit(), Value::Bool(false), Value::Real(-0.125), Value::Enum(0),
      Value::List({Value::Real(1), Value::Real(2)}),
      Value::Tuple({Value::List({}), Value::Enum(1)}),
      Value::Symbolic(SymDist::Dirichlet({1, 2, 3})),
      Value::Symbolic(SymDist::Normal(0.5, 0.25))};
  for (const Value& v : vs) {
    EXPECT_EQ(ValueFromJson(ValueToJson(v)), v) << v.ToString();
  }
  EXPECT_THROW(ValueFromJson(json::parse(R"({"nope":1})")), DomainError);
  EXPECT_THROW(ValueFromJson(json("text")), DomainError);
}

TEST(JsonIoTest, DistRoundTripIsExact) {
  testing::Gen gen(3);
  for (int i = 0; i < 200; ++i) {
    Dist d = gen.RandomDist(gen.Int(1, 6), gen.Coin());
    Dist back = DistFromJson(json::parse(DistToJsonString(d)));
    EXPECT_EQ(Compare(d, back), 0) << d.ToString() << " vs " << back.ToString();
  }
}

TEST(JsonIoTest, DistValidation) {
  EXPECT_THROW(DistFromJson(json::parse(R"({"support":[true],"mass":["0.5"]})")),
               DomainError);
  EXPECT_THROW(DistFromJson(json::parse(
                   R"({"support":[true,false],"mass":["1.5","-0.5"]})")),
               DomainError);
  EXPECT_THROW(DistFromJson(json::parse(R"({"support":[true],"mass":[1.0]})")),
               DomainError);
  EXPECT_THROW(DistFromJson(json::parse(R"({"support":[true]})")), DomainError);
  Dist ok = DistFromJson(json::parse(
      R"({"support":[true,false],"mass":["0.25","0.75"]})"));
  EXPECT_EQ(ok.Mass(Value::Bool(true)), 0.25);
}

TEST(JsonIoTest, ReadDistFile) {
  std::string path = ::testing::TempDir() + "/privinfer_dist.json";
  {
    std::ofstream out(path);
    out << DistToJsonString(Dist::Bernoulli(0.5));
  }
  EXPECT_EQ(Compare(ReadDistFile(path), Dist::Bernoulli(0.5)), 0);
  std::remove(path.c_str());
  EXPECT_THROW(ReadDistFile(path), Error);
}

}  // namespace
}  // namespace privinfer
