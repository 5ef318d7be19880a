#include "coinvest/net_model.hpp"

namespace coinvest {

// Standard 24-node / 76-link Sioux Falls benchmark. Coordinates are the
// published planar positions scaled to km; lengths are the published
// free-flow link distances in km. Dataset nodes 1-11 form Region 1,
// nodes 12-24 form Region 2.
const std::vector<SiouxFallsNodeRow>& sioux_falls_nodes() {
  static const std::vector<SiouxFallsNodeRow> rows = {
      {1, 5, 51},   {2, 32, 51},  {3, 5, 44},   {4, 13, 44},  {5, 22, 44},
      {6, 32, 44},  {7, 42, 38},  {8, 32, 38},  {9, 22, 38},  {10, 22, 32},
      {11, 13, 32}, {12, 5, 32},  {13, 5, 5},   {14, 13, 19}, {15, 22, 19},
      {16, 32, 32}, {17, 32, 26}, {18, 42, 32}, {19, 32, 19}, {20, 32, 5},
      {21, 22, 5},  {22, 22, 12}, {23, 13, 12}, {24, 13, 5},
  };
  return rows;
}

const std::vector<SiouxFallsEdgeRow>& sioux_falls_edges() {
  static const std::vector<SiouxFallsEdgeRow> rows = {
      {1, 1, 2, 6},    {2, 1, 3, 4},    {3, 2, 1, 6},    {4, 2, 6, 5},
      {5, 3, 1, 4},    {6, 3, 4, 4},    {7, 3, 12, 4},   {8, 4, 3, 4},
      {9, 4, 5, 2},    {10, 4, 11, 6},  {11, 5, 4, 2},   {12, 5, 6, 4},
      {13, 5, 9, 5},   {14, 6, 2, 5},   {15, 6, 5, 4},   {16, 6, 8, 2},
      {17, 7, 8, 3},   {18, 7, 18, 2},  {19, 8, 6, 2},   {20, 8, 7, 3},
      {21, 8, 9, 10},  {22, 8, 16, 5},  {23, 9, 5, 5},   {24, 9, 8, 10},
      {25, 9, 10, 3},  {26, 10, 9, 3},  {27, 10, 11, 5}, {28, 10, 15, 6},
      {29, 10, 16, 4}, {30, 10, 17, 8}, {31, 11, 4, 6},  {32, 11, 10, 5},
      {33, 11, 12, 6}, {34, 11, 14, 4}, {35, 12, 3, 4},  {36, 12, 11, 6},
      {37, 12, 13, 3}, {38, 13, 12, 3}, {39, 13, 24, 4}, {40, 14, 11, 4},
      {41, 14, 15, 5}, {42, 14, 23, 4}, {43, 15, 10, 6}, {44, 15, 14, 5},
      {45, 15, 19, 3}, {46, 15, 22, 3}, {47, 16, 8, 5},  {48, 16, 10, 4},
      {49, 16, 17, 2}, {50, 16, 18, 3}, {51, 17, 10, 8}, {52, 17, 16, 2},
      {53, 17, 19, 2}, {54, 18, 7, 2},  {55, 18, 16, 3}, {56, 18, 20, 4},
      {57, 19, 15, 3}, {58, 19, 17, 2}, {59, 19, 20, 4}, {60, 20, 18, 4},
      {61, 20, 19, 4}, {62, 20, 21, 6}, {63, 20, 22, 5}, {64, 21, 20, 6},
      {65, 21, 22, 2}, {66, 21, 24, 3}, {67, 22, 15, 3}, {68, 22, 20, 5},
      {69, 22, 21, 2}, {70, 22, 23, 4}, {71, 23, 14, 4}, {72, 23, 22, 4},
      {73, 23, 24, 2}, {74, 24, 13, 4}, {75, 24, 21, 3}, {76, 24, 23, 2},
  };
  return rows;
}

MobilityGraph build_sioux_falls(const ServiceParams& params) {
  GraphBuilder b;
  for (const auto& n : sioux_falls_nodes()) {
    b.add_node(n.id, n.id <= 11 ? 1 : 2, true, n.x, n.y);
  }
  for (const auto& e : sioux_falls_edges()) {
    b.add_edge(e.id, e.tail, e.head, e.length_km, true);
  }
  return b.build(params);
}

}  // namespace coinvest
