#include <set>
#include <sstream>

#include "conclude/kpath.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace conclude;
using namespace conclude::testing;

// Expected values below were worked out by hand from the walk rules:
//   path a-b-c, kappa 2: start a covers ab, bc; start b covers one of them
//     (1/2 each); start c covers both  -> (1 + 1/2 + 1) / 3 = 5/6.
//   triangle, kappa 2: a start covers the opposite edge surely and each
//     incident edge w.p. 1/2 -> (1 + 1/2 + 1/2) / 3 = 2/3.
//   star (center + 3 leaves), kappa 2: a leaf start covers its own edge and
//     each other edge w.p. 1/2; a center start covers each edge w.p. 1/3
//     -> (1 + 1/2 + 1/2 + 1/3) / 4 = 7/12.

TEST_CASE("WalkRng::below stays in range and hits every value") {
  WalkRng rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    auto x = rng.below(7);
    CHECK(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("simulate_walk examples") {
  WalkRng rng(1);
  SUBCASE("K2 walks one edge then gets stuck") {
    auto g = k2();
    for (int i = 0; i < 20; ++i) CHECK(simulate_walk(g, 0, 3, rng).edges.size() == 1);
  }
  SUBCASE("path is forced") {
    auto g = path3();
    for (int i = 0; i < 20; ++i) {
      auto t = simulate_walk(g, 0, 2, rng);
      CHECK(t.edges == std::vector<EdgeId>{g.find_edge(0, 1), g.find_edge(1, 2)});
    }
  }
  SUBCASE("triangle closes back on itself") {
    auto g = triangle();
    std::set<std::vector<EdgeId>> traces;
    for (int i = 0; i < 200; ++i) {
      auto t = simulate_walk(g, 0, 3, rng);
      CHECK(t.edges.size() == 3);
      traces.insert(t.edges);
    }
    CHECK(traces.size() == 2);
  }
  SUBCASE("isolated start") {
    auto g = make_graph(3, {{0, 1}});
    CHECK(simulate_walk(g, 2, 5, rng).edges.empty());
  }
}

TEST_CASE("exact_kpath_centrality hand-computed values") {
  SUBCASE("K2") {
    auto c = exact_kpath_centrality(k2(), 1);
    CHECK(c.values[0] == doctest::Approx(1.0));
  }
  SUBCASE("path") {
    auto c = exact_kpath_centrality(path3(), 2);
    CHECK(c.values[0] == doctest::Approx(5.0 / 6.0));
    CHECK(c.values[1] == doctest::Approx(5.0 / 6.0));
  }
  SUBCASE("triangle") {
    for (double v : exact_kpath_centrality(triangle(), 2).values)
      CHECK(v == doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("star") {
    for (double v : exact_kpath_centrality(star4(), 2).values)
      CHECK(v == doctest::Approx(7.0 / 12.0));
  }
  SUBCASE("cap") { CHECK_THROWS_AS(exact_kpath_centrality(triangle(), 3, 2), Error); }
}

TEST_CASE("erw_kpath") {
  SUBCASE("K2 every walk takes the only edge") {
    auto c = erw_kpath(k2(), {4, 1000, 3});
    CHECK(c.values[0] == 1.0);
  }
  SUBCASE("path converges to 5/6") {
    auto c = erw_kpath(path3(), {2, 200000, 9});
    CHECK(c.values[0] == doctest::Approx(5.0 / 6.0).epsilon(0.01));
    CHECK(c.values[1] == doctest::Approx(5.0 / 6.0).epsilon(0.01));
  }
  SUBCASE("triangle converges to 2/3") {
    auto c = erw_kpath(triangle(), {2, 200000, 9});
    for (double v : c.values) CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(0.01));
  }
  SUBCASE("no edges") {
    CHECK_THROWS_AS(erw_kpath(make_graph(2, {}), {2, 10, 0}), Error);
  }
  SUBCASE("zero rho or kappa") {
    CHECK_THROWS_AS(erw_kpath(k2(), {0, 10, 0}), Error);
    CHECK_THROWS_AS(erw_kpath(k2(), {1, 0, 0}), Error);
  }
}

TEST_CASE("erw_kpath normalization: traversals bounded by kappa * rho") {
  auto g = two_triangles_bridge();
  auto c = erw_kpath(g, {3, 5000, 2});
  CHECK(c.total_traversals() <= 3u * 5000u);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    CHECK(c.values[e] >= 0.0);
    CHECK(c.values[e] <= 1.0);
    CHECK(c.values[e] * 5000.0 == doctest::Approx(static_cast<double>(c.traversals[e])));
  }
  // On a triangle with kappa 3 every walk reaches full length.
  auto t = erw_kpath(triangle(), {3, 1000, 2});
  CHECK(t.total_traversals() == 3u * 1000u);
}

TEST_CASE("serial and parallel estimators agree bit for bit") {
  std::mt19937_64 rng(3);
  auto g = random_graph(60, 0.1, rng);
  KpathParams p{6, 20000, 77};
  auto serial = erw_kpath_serial(g, p);
  for (int workers : {1, 2, 3, 8}) CHECK(erw_kpath(g, p, workers).traversals == serial.traversals);
}

TEST_CASE("write_edge_values uses labels, sorted pairs and 12 digits") {
  std::istringstream in("5 2\n2 9\n");
  auto g = parse_edge_list(in).graph;
  std::vector<double> values(g.edge_count());
  values[g.find_edge(0, 1)] = 1.0 / 3.0;
  values[g.find_edge(1, 2)] = 1.0;
  std::ostringstream out;
  write_edge_values(out, g, values);
  CHECK(out.str() == "2\t5\t0.333333333333\n2\t9\t1\n");
}
