/*
Copyright 2026 The BLADE Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <blade/serialize.hpp>

namespace blade {
namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(BLADE_FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The example table lists p^k q^(n-k) at p = 1/10: block 0000 is the likeliest.
CodeTable table1() { return build_code(weight_distribution(DensityKind::bernoulli(Rational(1, 10)), 4)); }

TEST(Serialize, TableDocument) {
  auto text = serialize(table1());
  EXPECT_EQ(text.substr(0, text.find('\n')), "blade-table v1");
  EXPECT_NE(text.find("\nS=8\n"), std::string::npos);
  EXPECT_NE(text.find("kind=bernoulli"), std::string::npos);
  EXPECT_EQ(serialize(deserialize_table(text)), text);
}

TEST(Serialize, SetsRoundTripByteForByte) {
  for (int n : {4, 8, 12, 16, 20}) {
    auto set = build_context_set(n);
    auto text = serialize(set);
    auto back = deserialize_set(text);
    EXPECT_EQ(serialize(back), text);
    EXPECT_EQ(back.tables, set.tables);
    EXPECT_EQ(back.decoders, set.decoders);
  }
}

TEST(Serialize, ReferenceTablesPassValidation) {
  auto set = deserialize_set(slurp("reference_n12.txt"));
  ASSERT_EQ(set.tables.size(), 21u);
  for (const auto& t : set.tables) EXPECT_EQ(kraft_sum(t), 1);
  const auto& u = set.tables[0];
  EXPECT_EQ(u.nk[3], 92u);
  EXPECT_EQ(u.nk[9], 122u);
  EXPECT_EQ(set.decoders[0].entries.front().lj_base, 0xE000000000000000ull);
  EXPECT_EQ(serialize(set), slurp("reference_n12.txt"));
}

TEST(Serialize, CorruptedBaseIsAValidationError) {
  EXPECT_THROW(deserialize_table(slurp("corrupt_base_n12.txt")), ValidationError);
}

TEST(Serialize, ParseErrorsCarryLineNumbers) {
  auto text = serialize(table1());
  auto broken = text;
  broken.replace(broken.find("len="), 4, "lem=");
  try {
    deserialize_table(broken);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
  EXPECT_THROW(deserialize_table("blade-table v2\n"), ParseError);
  EXPECT_THROW(deserialize_table(""), ParseError);
  auto upper = text;
  upper.replace(upper.rfind("base=") + 5, 1, "F");
  EXPECT_THROW(deserialize_table(upper), Error);
  EXPECT_THROW(deserialize_table(text + "extra\n"), ParseError);
}

TEST(Serialize, SetLayoutIsChecked) {
  auto set = build_context_set(4);
  auto text = serialize(set);
  auto swapped = text;
  swapped.replace(swapped.find("count=9"), 7, "count=8");
  EXPECT_THROW(deserialize_set(swapped), Error);
  auto wrong = text;
  wrong.replace(wrong.find("kind=cond t=4 s=0"), 17, "kind=cond t=4 s=1");
  EXPECT_THROW(deserialize_set(wrong), Error);
}

}  // namespace
}  // namespace blade
