#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace hallie;

TEST(Quiver, ParsesA2AndKronecker) {
  auto Q = fixtures::a2();
  EXPECT_EQ(Q->num_vertices(), 2);
  EXPECT_EQ(Q->num_arrows(), 1);
  auto K = fixtures::kronecker();
  EXPECT_EQ(K->num_vertices(), 2);
  EXPECT_EQ(K->num_arrows(), 2);
}

TEST(Quiver, RejectsLoopNamingCycle) {
  try {
    parse_quiver(R"({"name":"L","vertices":["1"],"arrows":[{"id":"a","src":"1","tgt":"1"}]})");
    FAIL() << "loop accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("1 -> 1"), std::string::npos);
  }
}

TEST(Quiver, RejectsLongerCycle) {
  try {
    parse_quiver(R"({"vertices":["x","y","z"],"arrows":[{"id":"a","src":"x","tgt":"y"},
      {"id":"b","src":"y","tgt":"z"},{"id":"c","src":"z","tgt":"x"}]})");
    FAIL() << "cycle accepted";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("cycle"), std::string::npos);
    EXPECT_NE(msg.find("x"), std::string::npos);
  }
}

TEST(Quiver, RejectsDuplicatesAndUnknownEndpoints) {
  EXPECT_THROW(parse_quiver(R"({"vertices":["1","1"],"arrows":[]})"), InputError);
  EXPECT_THROW(parse_quiver(R"({"vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"a","src":"1","tgt":"2"}]})"),
               InputError);
  EXPECT_THROW(parse_quiver(R"({"vertices":["1"],"arrows":[{"id":"a","src":"1","tgt":"9"}]})"), InputError);
  EXPECT_THROW(parse_quiver("{not json"), InputError);
}

TEST(Quiver, DigestIgnoresOrderingAndWhitespace) {
  auto a = parse_quiver(R"({"name":"K","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"1","tgt":"2"}]})");
  auto b = parse_quiver(R"({ "arrows":[{"tgt":"2","id":"b","src":"1"},{"id":"a","src":"1","tgt":"2"}],
                             "vertices":["2","1"], "name":"K"})");
  EXPECT_EQ(a.digest(), b.digest());
  auto c = parse_quiver(R"({"name":"K","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"}]})");
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(a.digest().size(), 64u);
}

TEST(Quiver, TopologicalOrderRespectsArrows) {
  auto Q = fixtures::a3();
  std::vector<int> pos(3);
  for (int i = 0; i < 3; ++i) pos[Q->topological_order()[i]] = i;
  for (const auto& a : Q->arrows()) EXPECT_LT(pos[a.source], pos[a.target]);
}

TEST(Quiver, EulerFormAndDynkin) {
  auto Q = fixtures::a2();
  EXPECT_EQ(Q->euler_form({1, 0}, {0, 1}), -1);
  EXPECT_EQ(Q->euler_form({0, 1}, {1, 0}), 0);
  EXPECT_TRUE(Q->is_dynkin());
  EXPECT_FALSE(fixtures::kronecker()->is_dynkin());
  EXPECT_EQ(Q->positive_roots().size(), 3u);
  EXPECT_EQ(fixtures::a3()->positive_roots().size(), 6u);
  EXPECT_EQ(fixtures::a1()->positive_roots().size(), 1u);
  for (const auto& r : fixtures::a3()->positive_roots()) EXPECT_EQ(fixtures::a3()->tits_form(r), 1);
}

TEST(Quiver, SupportConnected) {
  auto Q = fixtures::a3();
  EXPECT_TRUE(Q->support_connected({1, 1, 0}));
  EXPECT_FALSE(Q->support_connected({1, 0, 1}));
  EXPECT_FALSE(Q->support_connected({0, 0, 0}));
}
