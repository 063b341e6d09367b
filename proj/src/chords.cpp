#include "amplikit/chords.hpp"

#include <algorithm>
#include <stdexcept>

namespace amplikit {

bool ChordDiagram::operator<(const ChordDiagram& other) const {
  if (n != other.n) return n < other.n;
  auto key = [](const ChordDiagram& d) {
    std::vector<std::pair<int, int>> v;
    for (const Chord& ch : d.chords) v.emplace_back(ch.a, ch.c);
    return v;
  };
  return key(*this) < key(other);
}

ChordDiagram normalize(ChordDiagram d) {
  std::sort(d.chords.begin(), d.chords.end(),
            [](const Chord& x, const Chord& y) {
              return x.a != y.a ? x.a < y.a : x.c < y.c;
            });
  return d;
}

std::vector<std::string> validate_diagram(const ChordDiagram& d) {
  std::vector<std::string> violations;
  const auto& chords = d.chords;
  for (const Chord& ch : chords) {
    if (ch.a < 1 || ch.c < ch.a + 2) violations.push_back("start-end-adjacent");
    if (ch.d() > d.n - 1) violations.push_back("end-after-n-1");
  }
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = 0; j < chords.size(); ++j) {
      if (i == j) continue;
      if (i < j && chords[i].a == chords[j].a) {
        violations.push_back("shared-start");
      }
      if (chords[i].a < chords[j].a && chords[j].a < chords[i].c &&
          chords[i].c < chords[j].c) {
        violations.push_back("crossing");
      }
    }
  }
  return violations;
}

std::vector<ChordDiagram> enumerate_diagrams(int n, int k) {
  std::vector<ChordDiagram> out;
  if (k < 0) return out;
  // Candidate chords in lexicographic (a, c) order; diagrams are built as
  // lex-increasing chord lists, so each valid diagram appears exactly once.
  std::vector<Chord> candidates;
  for (int a = 1; a + 2 <= n - 2; ++a) {
    for (int c = a + 2; c <= n - 2; ++c) candidates.push_back({a, c});
  }
  ChordDiagram current;
  current.n = n;
  auto compatible = [&](const Chord& next) {
    for (const Chord& prev : current.chords) {
      if (prev.a == next.a) return false;
      if (prev.a < next.a && next.a < prev.c && prev.c < next.c) return false;
      if (next.a < prev.a && prev.a < next.c && next.c < prev.c) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t first_candidate) -> void {
    if (current.k() == k) {
      out.push_back(current);
      return;
    }
    for (std::size_t idx = first_candidate; idx < candidates.size(); ++idx) {
      if (!compatible(candidates[idx])) continue;
      current.chords.push_back(candidates[idx]);
      self(self, idx + 1);
      current.chords.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

ChordRelations::ChordRelations(const ChordDiagram& d) : d_(normalize(d)) {
  const int k = d_.k();
  ancestors_.resize(static_cast<std::size_t>(k));
  sticky_.resize(static_cast<std::size_t>(k));
  after_.resize(static_cast<std::size_t>(k));
  below_count_.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::vector<int> anc;
    for (int j = 0; j < k; ++j) {
      if (below(j, i)) anc.push_back(j);
    }
    std::sort(anc.begin(), anc.end(), [&](int x, int y) {
      return d_.chords[static_cast<std::size_t>(x)].a >
             d_.chords[static_cast<std::size_t>(y)].a;
    });
    ancestors_[static_cast<std::size_t>(i)] = anc;

    sticky_[static_cast<std::size_t>(i)] = false;
    int count_after = 0, count_below = 0;
    for (int j = 0; j < k; ++j) {
      const Chord& ci = d_.chords[static_cast<std::size_t>(i)];
      const Chord& cj = d_.chords[static_cast<std::size_t>(j)];
      if (cj.a == ci.a - 1) sticky_[static_cast<std::size_t>(i)] = true;
      if (cj.a >= ci.a) ++count_after;
      if (below(i, j)) ++count_below;
    }
    after_[static_cast<std::size_t>(i)] = count_after;
    below_count_[static_cast<std::size_t>(i)] = count_below;
  }
}

bool ChordRelations::below(int i, int j) const {
  if (i == j) return false;
  const Chord& ci = d_.chords[static_cast<std::size_t>(i)];
  const Chord& cj = d_.chords[static_cast<std::size_t>(j)];
  return ci.a < cj.a && cj.c <= ci.c;
}

std::optional<int> ChordRelations::parent(int i) const {
  const auto& anc = ancestors_[static_cast<std::size_t>(i)];
  if (anc.empty()) return std::nullopt;
  return anc.front();
}

bool ChordRelations::same_end(int i, int j) const {
  return d_.chords[static_cast<std::size_t>(i)].c ==
         d_.chords[static_cast<std::size_t>(j)].c;
}

std::optional<int> ChordRelations::sticky_same_end_parent(int i) const {
  auto p = parent(i);
  if (!p) return std::nullopt;
  const Chord& ci = d_.chords[static_cast<std::size_t>(i)];
  const Chord& cp = d_.chords[static_cast<std::size_t>(*p)];
  if (cp.a == ci.a - 1 && cp.c == ci.c) return p;
  return std::nullopt;
}

bool ChordRelations::head_to_tail(int i, int j) const {
  if (i == j) return false;
  return d_.chords[static_cast<std::size_t>(j)].a ==
         d_.chords[static_cast<std::size_t>(i)].c;
}

bool ChordRelations::siblings(int i, int j) const {
  if (i == j) return false;
  auto pi = parent(i);
  auto pj = parent(j);
  return pi == pj;
}

std::optional<int> ChordRelations::right_head_to_tail_sibling(int i) const {
  for (int j = 0; j < d_.k(); ++j) {
    if (j != i && siblings(i, j) && head_to_tail(i, j)) return j;
  }
  return std::nullopt;
}

std::vector<int> ChordRelations::arrow_chain(int i, int x, int y) const {
  const int lo = std::min(x, y);
  const int hi = std::max(x, y);
  std::vector<int> tower;
  // Lowest ancestor whose end pair differs from {x, y}.
  std::optional<int> current;
  for (int j : ancestors_[static_cast<std::size_t>(i)]) {
    const Chord& cj = d_.chords[static_cast<std::size_t>(j)];
    if (!(cj.c == lo && cj.d() == hi)) {
      current = j;
      break;
    }
  }
  while (current) {
    tower.push_back(*current);
    std::optional<int> next;
    for (int j : ancestors_[static_cast<std::size_t>(*current)]) {
      if (!same_end(*current, j)) {
        next = j;
        break;
      }
    }
    current = next;
  }
  return tower;
}

DiagramSplit split_subdiagrams(const ChordDiagram& input) {
  const ChordDiagram d = normalize(input);
  DiagramSplit split;
  if (d.k() == 0) return split;

  // Outermost chord ending across (n-2, n-1): smallest start wins.
  int top = -1;
  for (int i = 0; i < d.k(); ++i) {
    if (d.chords[static_cast<std::size_t>(i)].c == d.n - 2) {
      if (top < 0 || d.chords[static_cast<std::size_t>(i)].a <
                         d.chords[static_cast<std::size_t>(top)].a) {
        top = i;
      }
    }
  }
  if (top < 0) return split;  // no product chord: penultimate-marker case

  split.is_product = true;
  split.top = top;
  const Chord top_chord = d.chords[static_cast<std::size_t>(top)];
  const int b = top_chord.b();

  for (int m = 1; m <= b; ++m) split.left_markers.push_back(m);
  split.left_markers.push_back(d.n);
  for (int m = b; m <= d.n; ++m) split.right_markers.push_back(m);

  split.left.n = b + 1;
  split.right.n = d.n - b + 1;
  for (int i = 0; i < d.k(); ++i) {
    if (i == top) continue;
    const Chord& ch = d.chords[static_cast<std::size_t>(i)];
    if (ch.d() <= b) {
      split.left.chords.push_back(ch);
    } else if (ch.a >= b) {
      split.right.chords.push_back({ch.a - b + 1, ch.c - b + 1});
    } else {
      throw std::invalid_argument("chord straddles the split chord");
    }
  }
  split.left = normalize(split.left);
  split.right = normalize(split.right);
  return split;
}

}  // namespace amplikit
