#include <doctest.h>

#include <sstream>

#include "coinvest/network_io.hpp"
#include "support/toys.hpp"

using namespace coinvest;

TEST_CASE("network file round trip is exact") {
  const MobilityGraph sioux = build_sioux_falls();
  const std::string text = network_to_string(sioux);
  std::istringstream in(text);
  const MobilityGraph parsed = parse_network(in);
  CHECK(network_to_string(parsed) == text);
  CHECK(parsed.num_alt_nodes() == sioux.num_alt_nodes());
  CHECK(parsed.num_rail_edges() == sioux.num_rail_edges());
  for (const Edge& e : sioux.edges()) {
    const Edge& other = parsed.edge(e.id);
    CHECK(other.tail == e.tail);
    CHECK(other.head == e.head);
    CHECK(other.layer == e.layer);
    CHECK(other.region_class == e.region_class);
    CHECK(other.label.length_km == e.label.length_km);
  }

  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto toy = testing::make_toy(seed);
    const std::string toy_text = network_to_string(toy.graph);
    std::istringstream tin(toy_text);
    CHECK(network_to_string(parse_network(tin)) == toy_text);
  }
}

TEST_CASE("parser reports structural faults with context") {
  SUBCASE("dangling edge endpoint") {
    std::istringstream in(
        "NODES\n1 1 1 0 0\n2 1 1 1 0\nEDGES\n1 1 9 1.0 0\n");
    try {
      parse_network(in);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParseError);
      CHECK(std::string(e.what()).find("1") != std::string::npos);  // names the edge
    }
  }
  SUBCASE("duplicate node id") {
    std::istringstream in("NODES\n1 1 0 0 0\n1 2 0 1 0\nEDGES\n");
    CHECK_THROWS_AS(parse_network(in), Error);
  }
  SUBCASE("non-positive length") {
    std::istringstream in("NODES\n1 1 0 0 0\n2 1 0 1 0\nEDGES\n1 1 2 0 0\n");
    CHECK_THROWS_AS(parse_network(in), Error);
  }
  SUBCASE("content before any section") {
    std::istringstream in("1 1 0 0 0\n");
    CHECK_THROWS_AS(parse_network(in), Error);
  }
  SUBCASE("rail candidate without stations") {
    std::istringstream in("NODES\n1 1 0 0 0\n2 1 1 1 0\nEDGES\n1 1 2 1.0 1\n");
    CHECK_THROWS_AS(parse_network(in), Error);
  }
}

TEST_CASE("validation flags invariant violations without failing the parse") {
  SUBCASE("out-of-partition region") {
    std::istringstream in(
        "NODES\n1 1 1 0 0\n2 3 1 1 0\nEDGES\n1 1 2 1.0 1\n2 2 1 1.0 1\n");
    const MobilityGraph g = parse_network(in);
    const auto violations = validate_graph(g);
    REQUIRE_FALSE(violations.empty());
    bool mentions_region = false;
    for (const auto& v : violations) {
      mentions_region = mentions_region || v.find("region") != std::string::npos;
    }
    CHECK(mentions_region);
  }
  SUBCASE("weakly connected alt layer") {
    std::istringstream in(
        "NODES\n1 1 0 0 0\n2 1 0 1 0\nEDGES\n1 1 2 1.0 0\n");
    const MobilityGraph g = parse_network(in);
    const auto violations = validate_graph(g);
    bool mentions = false;
    for (const auto& v : violations) {
      mentions = mentions || v.find("strongly connected") != std::string::npos;
    }
    CHECK(mentions);
  }
}
