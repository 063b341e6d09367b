#ifndef AMPLIKIT_CHORDS_HPP
#define AMPLIKIT_CHORDS_HPP

// Chord diagrams on a marker circle and their combinatorial relations.
//
// A diagram on markers 1..n consists of k chords (a, a+1, c, c+1): each chord
// starts across the adjacent pair (a, a+1) and ends across (c, c+1), with
//   - the end pair strictly right of the start pair (c >= a+2),
//   - ends before the last marker (c+1 <= n-1),
//   - no two chords sharing a start marker a,
//   - no crossings (a_i < a_j < c_i < c_j is forbidden).
// Nesting and shared end pairs are allowed; diagrams with k chords are
// counted by the Narayana number N(n-3, k+1).
//
// The relations computed here (parent/ancestors, same-end, sticky, head-to-
// tail, the "after"/"below" statistics, and the ancestor towers used by the
// arrow notation) drive both the matrix recursion and the chain-polynomial
// closed forms, so they are centralized in this one module.

#include <optional>
#include <string>
#include <vector>

namespace amplikit {

struct Chord {
  int a = 0;  // start pair is (a, a+1)
  int c = 0;  // end pair is (c, c+1)
  int b() const { return a + 1; }
  int d() const { return c + 1; }
  bool operator==(const Chord&) const = default;
};

struct ChordDiagram {
  int n = 0;                  // markers 1..n
  std::vector<Chord> chords;  // sorted by start marker

  int k() const { return static_cast<int>(chords.size()); }
  bool operator==(const ChordDiagram&) const = default;
  bool operator<(const ChordDiagram& other) const;
};

// Violation names, one entry per offending chord or pair:
//   "start-end-adjacent", "end-after-n-1", "shared-start", "crossing".
// An empty result means the diagram is valid.  Chords need not be sorted on
// input; `normalize` sorts them by start marker.
std::vector<std::string> validate_diagram(const ChordDiagram& d);
ChordDiagram normalize(ChordDiagram d);

// All valid diagrams with k chords on markers 1..n, lexicographic in the
// sorted chord lists.  |result| = narayana(n-3, k+1).
std::vector<ChordDiagram> enumerate_diagrams(int n, int k);

// Pairwise and per-chord relations; chord indices are 0-based positions in
// the sorted chord list.
class ChordRelations {
 public:
  explicit ChordRelations(const ChordDiagram& d);

  const ChordDiagram& diagram() const { return d_; }

  // D_j lies strictly below D_i (inside it): a_i < a_j and c_j <= c_i.
  bool below(int i, int j) const;
  // Ancestors of D_i ordered from lowest (innermost) to highest.
  const std::vector<int>& ancestors(int i) const { return ancestors_[i]; }
  std::optional<int> parent(int i) const;
  bool same_end(int i, int j) const;
  // Some chord starts at a_i - 1.
  bool sticky(int i) const { return sticky_[i]; }
  // The parent starts at a_i - 1 and shares the end pair of D_i.
  std::optional<int> sticky_same_end_parent(int i) const;
  // Chords D_i -> D_j are head-to-tail when D_j starts across D_i's end pair:
  // (a_j, b_j) = (c_i, d_i).
  bool head_to_tail(int i, int j) const;
  // Sibling = same parent (both top-level chords count as siblings).
  bool siblings(int i, int j) const;
  std::optional<int> right_head_to_tail_sibling(int i) const;

  // Number of chords starting at or after a_i (counts D_i itself).
  int after(int i) const { return after_[i]; }
  // Number of chords strictly below D_i.
  int below_count(int i) const { return below_count_[i]; }

  // Ancestor tower anchored on the end pair (x, y): the first entry is the
  // lowest ancestor of D_i whose end pair differs from {x, y}; each next
  // entry is the lowest ancestor of the previous one with a different end
  // pair.  This is the spine the chain-arrow notation traverses.
  std::vector<int> arrow_chain(int i, int x, int y) const;

 private:
  ChordDiagram d_;
  std::vector<std::vector<int>> ancestors_;
  std::vector<bool> sticky_;
  std::vector<int> after_;
  std::vector<int> below_count_;
};

// Standard-recursion split data.  A diagram with k > 0 chords either has no
// chord ending at (n-2, n-1) — the "drop the penultimate marker" case — or
// splits at the outermost chord ending there into a left diagram on
// {1..b, n} and a right diagram on {b..n}, both relabeled to consecutive
// markers.
struct DiagramSplit {
  bool is_product = false;
  int top = -1;                    // index of the splitting chord (if product)
  ChordDiagram left, right;        // relabeled sub-diagrams (if product)
  std::vector<int> left_markers;   // ambient markers of the left factor
  std::vector<int> right_markers;  // ambient markers of the right factor
};

DiagramSplit split_subdiagrams(const ChordDiagram& d);

}  // namespace amplikit

#endif  // AMPLIKIT_CHORDS_HPP
