#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "amplikit/combi.hpp"
#include "amplikit/grassmann.hpp"
#include "amplikit/plabic.hpp"
#include "amplikit/rng.hpp"

using namespace amplikit;

namespace {

constexpr std::uint64_t kSeed = 20260815;

// Graph and matrix built by the same construction sequence, so the cell of
// the graph and the row span of the matrix should agree.
struct BuiltPair {
  PlabicGraph graph = PlabicGraph::disk(0);
  LabeledMat matrix;
};

// Lollipop colors per label, then shear ops applied left to right.
BuiltPair build_cell(const std::vector<VertexColor>& lollipops,
                     const std::vector<std::pair<char, int>>& shears,
                     RngStream& rng) {
  BuiltPair out;
  out.matrix.labels = {};
  out.matrix.entries = Mat(0, 0);
  for (std::size_t i = 0; i < lollipops.size(); ++i) {
    int label = static_cast<int>(i) + 1;
    out.graph.add_lollipop(label, lollipops[i]);
    out.matrix = apply_matrix_op(out.matrix, "pre", label, Rat(0));
    if (lollipops[i] == VertexColor::white) {
      out.matrix = apply_matrix_op(out.matrix, "inc", label, Rat(0));
    }
  }
  for (auto [kind, label] : shears) {
    Rat t = rng.next_positive_rational();
    if (kind == 'x') {
      out.graph.add_bridge_x(label);
      out.matrix = apply_matrix_op(out.matrix, "x", label, t);
    } else {
      out.graph.add_bridge_y(label);
      out.matrix = apply_matrix_op(out.matrix, "y", label, t);
    }
  }
  return out;
}

std::set<std::vector<int>> nonzero_minor_sets(const Mat& m) {
  std::set<std::vector<int>> bases;
  for (const auto& [mask, value] : plucker_coordinates(m)) {
    if (value != 0) bases.insert(mask_to_indices(mask));
  }
  return bases;
}

BuiltPair random_cell(RngStream& rng, int n_boundary, int max_shears,
                      const std::set<int>& force_black = {}) {
  std::vector<VertexColor> colors;
  for (int i = 0; i < n_boundary; ++i) {
    bool white = (rng.next_u64() & 1) && !force_black.count(i + 1);
    colors.push_back(white ? VertexColor::white : VertexColor::black);
  }
  int count = static_cast<int>(rng.next_int(0, max_shears));
  std::vector<std::pair<char, int>> shears;
  for (int s = 0; s < count; ++s) {
    char kind = rng.next_u64() & 1 ? 'x' : 'y';
    int label = static_cast<int>(rng.next_int(1, n_boundary));
    shears.push_back({kind, label});
  }
  return build_cell(colors, shears, rng);
}

// Relabels a positroid on local boundary labels 1..m into ambient markers.
std::set<std::vector<int>> relabel_positroid(
    const std::set<std::vector<int>>& bases, const std::vector<int>& markers) {
  std::set<std::vector<int>> out;
  for (const auto& base : bases) {
    std::vector<int> mapped;
    for (int l : base) mapped.push_back(markers[l - 1]);
    out.insert(mapped);
  }
  return out;
}

// Hand-built quadrilateral graph: one internal square, legs to 4 boundary
// vertices, colors alternating.
PlabicGraph square_graph() {
  PlabicGraph g = PlabicGraph::disk(4);
  int u1 = g.add_internal_vertex(VertexColor::white);
  int u2 = g.add_internal_vertex(VertexColor::black);
  int u3 = g.add_internal_vertex(VertexColor::white);
  int u4 = g.add_internal_vertex(VertexColor::black);
  int l1 = g.add_edge(g.boundary_vertex(1), u1);
  int l2 = g.add_edge(g.boundary_vertex(2), u2);
  int l3 = g.add_edge(g.boundary_vertex(3), u3);
  int l4 = g.add_edge(g.boundary_vertex(4), u4);
  int e12 = g.add_edge(u1, u2);
  int e23 = g.add_edge(u2, u3);
  int e34 = g.add_edge(u3, u4);
  int e41 = g.add_edge(u4, u1);
  // Clockwise rotations with boundary labels clockwise and the square in the
  // middle: each corner sees its leg, then the next corner clockwise, then
  // the previous one.
  g.set_rotation(u1, {l1, e12, e41});
  g.set_rotation(u2, {l2, e23, e12});
  g.set_rotation(u3, {l3, e34, e23});
  g.set_rotation(u4, {l4, e41, e34});
  return g;
}

}  // namespace

TEST_CASE("lollipop-only graphs give zero-dimensional cells") {
  RngStream rng(kSeed, 7001);
  BuiltPair built = build_cell(
      {VertexColor::white, VertexColor::black, VertexColor::white,
       VertexColor::black, VertexColor::black},
      {}, rng);
  CHECK(built.graph.validate().ok);
  DecoratedPermutation trip = built.graph.trip_permutation();
  CHECK(trip.targets == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(trip.fixed.at(1) == VertexColor::white);
  CHECK(trip.fixed.at(2) == VertexColor::black);
  CHECK(trip.fixed.at(3) == VertexColor::white);
  CHECK(trip.anti_excedances() == 2);
  CHECK(built.graph.dimension() == 0);
  CHECK(built.graph.positroid() ==
        std::set<std::vector<int>>{std::vector<int>{1, 3}});
  CHECK(built.graph.positroid() == nonzero_minor_sets(built.matrix.entries));
  CHECK(trip.to_string() == "(1w,2b,3w,4b,5b)");
}

TEST_CASE("bridge-built top cell has the expected trip permutation") {
  RngStream rng(kSeed, 7002);
  BuiltPair built = build_cell(
      {VertexColor::white, VertexColor::white, VertexColor::black,
       VertexColor::black, VertexColor::black},
      {{'x', 2}, {'x', 3}, {'x', 4}, {'x', 1}, {'x', 2}, {'x', 3}}, rng);
  CHECK(built.graph.validate().ok);

  DecoratedPermutation trip = built.graph.trip_permutation();
  CHECK(trip.targets == std::vector<int>{3, 4, 5, 1, 2});
  CHECK(trip.fixed.empty());
  CHECK(trip.anti_excedances() == 2);
  CHECK(trip.to_string() == "(3,4,5,1,2)");

  CHECK(built.graph.dimension() == 6);

  // Full positroid: every 2-subset of 5 markers.
  std::set<std::vector<int>> expect;
  for (const auto& s : subsets(5, 2)) expect.insert(s);
  CHECK(built.graph.positroid() == expect);
  CHECK(built.graph.positroid_from_path_matrix() == expect);
  CHECK(nonzero_minor_sets(built.matrix.entries) == expect);
  CHECK(positivity_class(built.matrix.entries) ==
        PositivityClass::totally_positive);
}

TEST_CASE("path matrices of acyclic orientations have nonnegative minors") {
  RngStream rng(kSeed, 7003);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(rng.next_int(3, 6));
    BuiltPair built = random_cell(rng, n, 5);
    CAPTURE(trial);
    REQUIRE(built.graph.validate().ok);

    auto orientation = built.graph.acyclic_orientation();
    REQUIRE(orientation.has_value());
    Mat pm = built.graph.path_matrix(*orientation);
    int k = static_cast<int>(pm.rows());
    CHECK(k == static_cast<int>(orientation->sources.size()));
    for (const auto& [mask, value] : plucker_coordinates(pm)) {
      CHECK(value >= 0);
    }

    // Dual routes to the positroid agree, and match the matrix built from
    // the same construction sequence.
    std::set<std::vector<int>> via_orientations = built.graph.positroid();
    CHECK(via_orientations == built.graph.positroid_from_path_matrix());
    CHECK(via_orientations == nonzero_minor_sets(built.matrix.entries));

    // Every perfect orientation of the same graph uses the same number of
    // sources (the rank of the associated cell).
    for (const auto& o : built.graph.perfect_orientations()) {
      CHECK(static_cast<int>(o.sources.size()) == k);
    }
  }
}

TEST_CASE("square graph supports the square move") {
  PlabicGraph g = square_graph();
  REQUIRE(g.validate().ok);
  DecoratedPermutation before = g.trip_permutation();
  CHECK(before.targets == std::vector<int>{3, 4, 1, 2});
  CHECK(g.dimension() == 4);

  auto sites = g.square_move_sites();
  REQUIRE(sites.size() == 1);
  std::set<std::vector<int>> positroid_before = g.positroid();
  REQUIRE(g.move_square(sites[0]));
  CHECK(g.validate().ok);
  CHECK(g.trip_permutation() == before);
  CHECK(g.positroid() == positroid_before);

  // The move is an involution on the colors.
  REQUIRE(g.move_square(sites[0]));
  CHECK(g.trip_permutation() == before);
}

TEST_CASE("local moves preserve trips, dimension, and the positroid") {
  RngStream rng(kSeed, 7004);
  int applied = 0;
  for (int trial = 0; trial < 25; ++trial) {
    int n = static_cast<int>(rng.next_int(3, 6));
    BuiltPair built = random_cell(rng, n, 4);
    PlabicGraph g = built.graph;
    DecoratedPermutation trip = g.trip_permutation();
    std::set<std::vector<int>> bases = g.positroid();
    int dim = g.dimension();
    for (int step = 0; step < 5; ++step) {
      std::string name = g.apply_random_move(rng);
      if (name == "none") break;
      ++applied;
      CAPTURE(trial);
      CAPTURE(step);
      CAPTURE(name);
      REQUIRE(g.validate().ok);
      CHECK(g.trip_permutation() == trip);
      CHECK(g.dimension() == dim);
      CHECK(g.positroid() == bases);
    }
  }
  CHECK(applied >= 100);
}

TEST_CASE("graphs serialize to json and back") {
  RngStream rng(kSeed, 7005);
  BuiltPair built = random_cell(rng, 5, 4);
  Json j = built.graph.to_json();
  PlabicGraph loaded = PlabicGraph::from_json(j);
  CHECK(loaded.trip_permutation() == built.graph.trip_permutation());
  CHECK(loaded.positroid() == built.graph.positroid());
  std::string dot = built.graph.to_dot();
  CHECK(dot.find("graph plabic") != std::string::npos);
}

TEST_CASE("butterfly products match the case table for the positroid") {
  RngStream rng(kSeed, 7006);
  int tested = 0;
  int attempts = 0;
  while (tested < 20 && attempts < 400) {
    ++attempts;
    int n = static_cast<int>(rng.next_int(8, 9));
    int a = static_cast<int>(rng.next_int(1, n - 6));
    int b = a + 1, c = n - 2, d = n - 1;
    int nl = a + 2;
    int nr = n - a;

    // Local labels of the special markers: the left factor needs its last
    // three boundary labels coindependent; the right factor its first and
    // last three.  Coloops at those labels would rule that out immediately.
    BuiltPair left = random_cell(rng, nl, 3, {nl - 2, nl - 1, nl});
    BuiltPair right = random_cell(rng, nr, 3, {1, nr - 2, nr - 1, nr});
    if (!left.graph.has_orientation_with_sinks({nl - 2, nl - 1, nl})) continue;
    if (!right.graph.has_orientation_with_sinks({1, nr - 2, nr - 1, nr})) {
      continue;
    }

    std::vector<int> left_markers, right_markers;
    for (int i = 1; i <= a; ++i) left_markers.push_back(i);
    left_markers.push_back(b);
    left_markers.push_back(n);
    for (int i = b; i <= d; ++i) right_markers.push_back(i);
    right_markers.push_back(n);

    PlabicGraph prod =
        butterfly_product(left.graph, right.graph, left_markers, right_markers, n);
    REQUIRE(prod.validate().ok);

    std::set<std::vector<int>> expected = butterfly_positroid_table(
        relabel_positroid(left.graph.positroid(), left_markers),
        relabel_positroid(right.graph.positroid(), right_markers),
        left_markers, right_markers, n);
    CAPTURE(n);
    CAPTURE(a);
    CAPTURE(tested);
    CHECK(prod.positroid() == expected);
    CHECK(prod.dimension() ==
          left.graph.dimension() + right.graph.dimension() + 4);

    if (tested < 5) {
      // All five special markers stay collectively coindependent in fours.
      std::vector<int> special = {a, b, c, d, n};
      for (const auto& quad : subsets(5, 4)) {
        std::set<int> sinks;
        for (int q : quad) sinks.insert(special[q - 1]);
        CHECK(prod.has_orientation_with_sinks(sinks));
      }
    }
    ++tested;
  }
  CHECK(tested == 20);
}
