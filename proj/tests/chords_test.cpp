#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "amplikit/chords.hpp"
#include "amplikit/combi.hpp"

using namespace amplikit;

namespace {

// Six-chord running example on 15 markers, indexed here by sorted start:
//   0:(1,2,8,9)  1:(3,4,5,6)  2:(5,6,8,9)  3:(8,9,13,14)  4:(9,10,12,13)
//   5:(10,11,12,13)
ChordDiagram running_example() {
  ChordDiagram d;
  d.n = 15;
  d.chords = {{3, 5}, {5, 8}, {1, 8}, {10, 12}, {9, 12}, {8, 13}};
  return normalize(d);
}

}  // namespace

TEST_CASE("validation reports each violation kind") {
  ChordDiagram crossing{7, {{1, 4}, {2, 5}}};
  auto v1 = validate_diagram(crossing);
  CHECK(std::count(v1.begin(), v1.end(), "crossing") == 1);

  ChordDiagram shared{7, {{1, 3}, {1, 4}}};
  auto v2 = validate_diagram(shared);
  CHECK(std::count(v2.begin(), v2.end(), "shared-start") == 1);

  ChordDiagram adjacent{7, {{2, 3}}};
  auto v3 = validate_diagram(adjacent);
  CHECK(std::count(v3.begin(), v3.end(), "start-end-adjacent") == 1);

  ChordDiagram late{6, {{1, 5}}};
  auto v4 = validate_diagram(late);
  CHECK(std::count(v4.begin(), v4.end(), "end-after-n-1") == 1);

  CHECK(validate_diagram(running_example()).empty());
  CHECK(validate_diagram(ChordDiagram{5, {{1, 3}}}).empty());
}

TEST_CASE("enumeration matches the closed counting formula") {
  for (int n = 5; n <= 10; ++n) {
    for (int k = 0; k <= n - 4; ++k) {
      auto diagrams = enumerate_diagrams(n, k);
      CHECK(diagrams.size() == narayana(n - 3, k + 1));
      for (const auto& d : diagrams) CHECK(validate_diagram(d).empty());
    }
  }
  // Spot check the three single-chord diagrams on six markers.
  auto six = enumerate_diagrams(6, 1);
  REQUIRE(six.size() == 3);
  CHECK(six[0].chords[0] == Chord{1, 3});
  CHECK(six[1].chords[0] == Chord{1, 4});
  CHECK(six[2].chords[0] == Chord{2, 4});
}

TEST_CASE("relations of the running example") {
  ChordRelations rel(running_example());

  // chord indices by sorted start marker
  const int d3 = 0, d1 = 1, d2 = 2, d6 = 3, d5 = 4, d4 = 5;

  CHECK(rel.parent(d4) == d5);
  CHECK(rel.ancestors(d4) == std::vector<int>{d5, d6});
  CHECK(rel.parent(d1) == d3);
  CHECK(rel.parent(d2) == d3);
  CHECK_FALSE(rel.parent(d6).has_value());
  CHECK_FALSE(rel.parent(d3).has_value());

  CHECK(rel.head_to_tail(d1, d2));
  CHECK_FALSE(rel.head_to_tail(d2, d1));
  CHECK(rel.right_head_to_tail_sibling(d1) == d2);
  CHECK_FALSE(rel.right_head_to_tail_sibling(d2).has_value());

  CHECK(rel.sticky(d4));
  CHECK(rel.sticky(d5));
  CHECK_FALSE(rel.sticky(d6));
  CHECK_FALSE(rel.sticky(d1));

  CHECK(rel.sticky_same_end_parent(d4) == d5);
  CHECK_FALSE(rel.sticky_same_end_parent(d5).has_value());  // ends differ

  CHECK(rel.same_end(d2, d3));
  CHECK(rel.same_end(d4, d5));
  CHECK_FALSE(rel.same_end(d5, d6));

  CHECK(rel.siblings(d3, d6));  // both top-level
  CHECK(rel.siblings(d1, d2));
  CHECK_FALSE(rel.siblings(d1, d6));

  CHECK(rel.after(d5) == 2);
  CHECK(rel.after(d6) == 3);
  CHECK(rel.after(d3) == 6);
  CHECK(rel.below_count(d6) == 2);
  CHECK(rel.below_count(d3) == 2);
  CHECK(rel.below_count(d4) == 0);

  // Ancestor towers driving the arrow notation.
  CHECK(rel.arrow_chain(d5, 12, 13) == std::vector<int>{d6});
  CHECK(rel.arrow_chain(d2, 8, 9).empty());      // parent shares the end pair
  CHECK(rel.arrow_chain(d2, 6, 8) == std::vector<int>{d3});
  CHECK(rel.arrow_chain(d1, 3, 4) == std::vector<int>{d3});
  CHECK(rel.arrow_chain(d6, 13, 14).empty());    // no ancestors at all
}

TEST_CASE("standard split of the running example") {
  auto split = split_subdiagrams(running_example());
  REQUIRE(split.is_product);
  CHECK(split.top == 3);  // chord (8,9,13,14)

  CHECK(split.left_markers ==
        std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 15});
  CHECK(split.right_markers == std::vector<int>{9, 10, 11, 12, 13, 14, 15});

  CHECK(split.left.n == 10);
  CHECK(split.left.chords ==
        std::vector<Chord>{{1, 8}, {3, 5}, {5, 8}});
  CHECK(split.right.n == 7);
  CHECK(split.right.chords == std::vector<Chord>{{1, 4}, {2, 4}});

  CHECK(validate_diagram(split.left).empty());
  CHECK(validate_diagram(split.right).empty());
}

TEST_CASE("penultimate-marker case when no chord ends at (n-2, n-1)") {
  ChordDiagram d{8, {{1, 3}, {2, 4}}};  // ends at (3,4) and (4,5), n-2 = 6
  auto split = split_subdiagrams(d);
  CHECK_FALSE(split.is_product);

  ChordDiagram base{7, {{1, 5}}};  // ends at (5,6) = (n-2, n-1)
  CHECK(split_subdiagrams(base).is_product);
}

TEST_CASE("every enumerated diagram splits or drops a marker recursively") {
  for (auto [n, k] : {std::pair{8, 2}, {9, 3}, {7, 3}}) {
    for (const auto& d : enumerate_diagrams(n, k)) {
      // walk the recursion down to the empty diagram
      ChordDiagram current = d;
      int guard = 0;
      while (current.k() > 0) {
        REQUIRE(guard++ < 64);
        auto split = split_subdiagrams(current);
        if (split.is_product) {
          REQUIRE(validate_diagram(split.left).empty());
          REQUIRE(validate_diagram(split.right).empty());
          CHECK(split.left.k() + split.right.k() + 1 == current.k());
          // recurse into the bigger side, iterate on the other
          current = split.left.k() > split.right.k() ? split.left : split.right;
        } else {
          // no chord touches n-1: delete that marker and relabel n -> n-1
          for (const auto& ch : current.chords) {
            REQUIRE(ch.d() < current.n - 1);
          }
          current.n -= 1;
        }
      }
    }
  }
}
