#include "amplikit/bcfw.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "amplikit/grassmann.hpp"

namespace amplikit {

namespace {

bool strictly_increasing(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] >= v[i]) return false;
  }
  return true;
}

bool contains_marker(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<int> remove_markers(const std::vector<int>& sorted,
                                const std::vector<int>& drop) {
  std::vector<int> out;
  std::set_difference(sorted.begin(), sorted.end(), drop.begin(), drop.end(),
                      std::back_inserter(out));
  return out;
}

// Successor within a sorted marker list; no wraparound.
int successor_in(const std::vector<int>& sorted, int x) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  if (it == sorted.end()) {
    throw std::invalid_argument("marker has no successor in the index set");
  }
  return *it;
}

std::vector<int> left_markers_of(const std::vector<int>& active,
                                 const std::array<int, 5>& prod) {
  std::vector<int> out;
  for (int x : active) {
    if (x <= prod[1] || x == prod[4]) out.push_back(x);
  }
  return out;
}

std::vector<int> right_markers_of(const std::vector<int>& active,
                                  const std::array<int, 5>& prod) {
  std::vector<int> out;
  for (int x : active) {
    if (x >= prod[1]) out.push_back(x);
  }
  return out;
}

}  // namespace

Json StepTuple::to_json() const {
  Json j;
  j["prod"] = prod;
  j["pre"] = pre;
  j["cyc"] = cyc;
  j["refl"] = refl;
  return j;
}

StepTuple StepTuple::from_json(const Json& j) {
  StepTuple s;
  if (!j.contains("prod") || j.at("prod").is_null()) {
    throw std::invalid_argument(
        "step without product indices describes no cell construction");
  }
  auto p = j.at("prod").get<std::vector<int>>();
  if (p.size() != 5) throw std::invalid_argument("prod must have 5 markers");
  std::copy(p.begin(), p.end(), s.prod.begin());
  if (j.contains("pre")) s.pre = j.at("pre").get<std::vector<int>>();
  if (j.contains("cyc")) s.cyc = j.at("cyc").get<int>();
  if (j.contains("refl")) s.refl = j.at("refl").get<int>();
  return s;
}

Recipe Recipe::trivial(std::vector<int> markers) {
  if (!strictly_increasing(markers)) {
    throw std::invalid_argument("markers must be strictly increasing");
  }
  Recipe r;
  r.markers_ = std::move(markers);
  return r;
}

Recipe Recipe::product(Recipe left, Recipe right, StepTuple step,
                       std::vector<int> markers) {
  if (!strictly_increasing(markers)) {
    throw std::invalid_argument("markers must be strictly increasing");
  }
  if (step.refl != 0 && step.refl != 1) {
    throw std::invalid_argument("refl count must be 0 or 1");
  }
  if (step.cyc < 0 || step.cyc >= static_cast<int>(markers.size())) {
    throw std::invalid_argument("cyc count out of range");
  }
  if (!strictly_increasing(step.pre)) {
    throw std::invalid_argument("insertion markers must be strictly increasing");
  }
  for (int x : step.pre) {
    if (!contains_marker(markers, x)) {
      throw std::invalid_argument("insertion marker outside the index set");
    }
  }
  std::vector<int> active = remove_markers(markers, step.pre);
  if (active.empty()) throw std::invalid_argument("no active markers");
  const auto& prod = step.prod;
  if (!(prod[0] < prod[1] && prod[1] < prod[2] && prod[2] < prod[3] &&
        prod[3] < prod[4])) {
    throw std::invalid_argument("product markers must increase");
  }
  for (int x : prod) {
    if (!contains_marker(active, x)) {
      throw std::invalid_argument("product marker not active");
    }
  }
  if (prod[4] != active.back()) {
    throw std::invalid_argument("last product marker must be the largest active one");
  }
  if (successor_in(active, prod[0]) != prod[1] ||
      successor_in(active, prod[2]) != prod[3] ||
      successor_in(active, prod[3]) != prod[4]) {
    throw std::invalid_argument("product marker pairs must be consecutive");
  }
  std::vector<int> nl = left_markers_of(active, prod);
  std::vector<int> nr = right_markers_of(active, prod);
  if (left.markers() != nl) {
    throw std::invalid_argument("left factor markers do not match the step");
  }
  if (right.markers() != nr) {
    throw std::invalid_argument("right factor markers do not match the step");
  }
  int kl = left.k();
  int kr = right.k();
  if (kl > 0 && kl + 4 > static_cast<int>(nl.size())) {
    throw std::invalid_argument("left factor rank too large for its markers");
  }
  if (kr > 0 && kr + 4 > static_cast<int>(nr.size())) {
    throw std::invalid_argument("right factor rank too large for its markers");
  }
  Recipe r;
  r.markers_ = std::move(markers);
  r.node_ = std::make_shared<const Node>(
      Node{std::move(left), std::move(right), std::move(step)});
  return r;
}

int Recipe::k() const {
  if (!node_) return 0;
  return node_->left.k() + node_->right.k() + 1;
}

const StepTuple& Recipe::step() const {
  if (!node_) throw std::logic_error("trivial recipe has no step");
  return node_->step;
}

const Recipe& Recipe::left() const {
  if (!node_) throw std::logic_error("trivial recipe has no factors");
  return node_->left;
}

const Recipe& Recipe::right() const {
  if (!node_) throw std::logic_error("trivial recipe has no factors");
  return node_->right;
}

std::vector<int> Recipe::left_factor_markers() const {
  return left_markers_of(remove_markers(markers_, step().pre), step().prod);
}

std::vector<int> Recipe::right_factor_markers() const {
  return right_markers_of(remove_markers(markers_, step().pre), step().prod);
}

std::vector<StepTuple> Recipe::flat_steps() const {
  std::vector<StepTuple> out;
  if (!node_) return out;
  for (const auto& s : node_->left.flat_steps()) out.push_back(s);
  for (const auto& s : node_->right.flat_steps()) out.push_back(s);
  out.push_back(node_->step);
  return out;
}

Recipe Recipe::relabel(const std::vector<int>& image) const {
  if (image.size() != markers_.size() || !strictly_increasing(image)) {
    throw std::invalid_argument("relabel image must be an increasing list of matching size");
  }
  std::map<int, int> phi;
  for (std::size_t i = 0; i < markers_.size(); ++i) phi[markers_[i]] = image[i];
  auto apply = [&phi](int x) { return phi.at(x); };
  if (!node_) return trivial(image);
  auto sub_image = [&](const Recipe& sub) {
    std::vector<int> im;
    for (int x : sub.markers()) im.push_back(apply(x));
    return im;
  };
  StepTuple s = node_->step;
  for (auto& x : s.prod) x = apply(x);
  for (auto& x : s.pre) x = apply(x);
  return product(node_->left.relabel(sub_image(node_->left)),
                 node_->right.relabel(sub_image(node_->right)), std::move(s),
                 image);
}

bool Recipe::operator==(const Recipe& other) const {
  if (markers_ != other.markers_) return false;
  if (is_trivial() != other.is_trivial()) return false;
  if (is_trivial()) return true;
  return node_->step == other.node_->step && node_->left == other.node_->left &&
         node_->right == other.node_->right;
}

Json Recipe::to_json() const {
  Json j;
  j["markers"] = markers_;
  Json steps = Json::array();
  for (const auto& s : flat_steps()) steps.push_back(s.to_json());
  j["steps"] = std::move(steps);
  return j;
}

namespace {

// Rebuild the recipe tree from steps in generation order.  The final step is
// the root; the preceding steps split into a prefix for the left factor and
// a suffix for the right one.  Exactly one split may parse.
std::optional<Recipe> parse_steps(const std::vector<StepTuple>& steps,
                                  std::size_t begin, std::size_t end,
                                  const std::vector<int>& markers) {
  if (begin == end) return Recipe::trivial(markers);
  const StepTuple& root = steps[end - 1];
  std::optional<Recipe> found;
  for (std::size_t split = begin; split < end; ++split) {
    std::optional<Recipe> left, right;
    try {
      std::vector<int> active = remove_markers(markers, root.pre);
      left = parse_steps(steps, begin, split, left_markers_of(active, root.prod));
      if (!left) continue;
      right = parse_steps(steps, split, end - 1,
                          right_markers_of(active, root.prod));
      if (!right) continue;
      Recipe candidate = Recipe::product(std::move(*left), std::move(*right),
                                         root, markers);
      if (found) {
        throw std::invalid_argument("step list admits more than one recipe tree");
      }
      found = std::move(candidate);
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).find("more than one") != std::string::npos) {
        throw;
      }
      continue;
    }
  }
  return found;
}

}  // namespace

Recipe Recipe::from_json(const Json& j) {
  auto markers = j.at("markers").get<std::vector<int>>();
  std::vector<StepTuple> steps;
  for (const auto& js : j.at("steps")) steps.push_back(StepTuple::from_json(js));
  auto parsed = parse_steps(steps, 0, steps.size(), markers);
  if (!parsed) {
    throw std::invalid_argument("step list does not describe a recipe on the markers");
  }
  return *parsed;
}

std::string Recipe::to_string() const {
  std::ostringstream os;
  os << "recipe on {";
  for (std::size_t i = 0; i < markers_.size(); ++i) {
    if (i) os << ",";
    os << markers_[i];
  }
  os << "}:";
  for (const auto& s : flat_steps()) {
    os << " (" << s.prod[0] << "," << s.prod[1] << "," << s.prod[2] << ","
       << s.prod[3] << "," << s.prod[4];
    if (!s.pre.empty()) {
      os << ";pre";
      for (int x : s.pre) os << " " << x;
    }
    if (s.cyc) os << ";cyc^" << s.cyc;
    if (s.refl) os << ";refl";
    os << ")";
  }
  if (is_trivial()) os << " trivial";
  return os.str();
}

Recipe recipe_from_diagram(const ChordDiagram& d) {
  auto violations = validate_diagram(d);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid chord diagram: " + violations.front());
  }
  // Recurse on (diagram over positions 1..m, absolute labels of positions).
  struct Builder {
    static Recipe build(const ChordDiagram& dia, std::vector<int> labels) {
      if (dia.k() == 0) return Recipe::trivial(labels);
      ChordDiagram cur = dia;
      std::vector<int> cur_labels = labels;
      std::vector<int> dropped;
      DiagramSplit split = split_subdiagrams(cur);
      while (!split.is_product) {
        int m = cur.n;
        dropped.push_back(cur_labels[static_cast<std::size_t>(m - 2)]);
        cur_labels.erase(cur_labels.begin() + (m - 2));
        cur.n = m - 1;  // chords end at <= m - 3, so they keep their positions
        split = split_subdiagrams(cur);
      }
      std::sort(dropped.begin(), dropped.end());
      auto compose = [&cur_labels](const std::vector<int>& positions) {
        std::vector<int> out;
        for (int p : positions) {
          out.push_back(cur_labels[static_cast<std::size_t>(p - 1)]);
        }
        return out;
      };
      const Chord& top = cur.chords[static_cast<std::size_t>(split.top)];
      StepTuple step;
      step.prod = {cur_labels[static_cast<std::size_t>(top.a - 1)],
                   cur_labels[static_cast<std::size_t>(top.b() - 1)],
                   cur_labels[static_cast<std::size_t>(top.c - 1)],
                   cur_labels[static_cast<std::size_t>(top.d() - 1)],
                   cur_labels.back()};
      step.pre = dropped;
      Recipe left = build(split.left, compose(split.left_markers));
      Recipe right = build(split.right, compose(split.right_markers));
      return Recipe::product(std::move(left), std::move(right), std::move(step),
                             std::move(labels));
    }
  };
  std::vector<int> labels(static_cast<std::size_t>(d.n));
  for (int i = 0; i < d.n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
  return Builder::build(normalize(d), std::move(labels));
}

BcfwParameters random_bcfw_parameters(int k, RngStream& rng) {
  BcfwParameters out;
  for (int i = 0; i < k; ++i) {
    StepParams p;
    p.alpha = rng.next_positive_rational();
    p.beta = rng.next_positive_rational();
    p.gamma = rng.next_positive_rational();
    p.delta = rng.next_positive_rational();
    p.eps = rng.next_positive_rational();
    out.push_back(std::move(p));
  }
  return out;
}

LabeledMat bcfw_product_matrix(const LabeledMat& left, const StepParams& p,
                               const LabeledMat& right,
                               const std::array<int, 5>& prod) {
  if (!(p.alpha > 0 && p.beta > 0 && p.gamma > 0 && p.delta > 0 && p.eps > 0)) {
    throw std::invalid_argument("product parameters must be positive");
  }
  const int a = prod[0], b = prod[1], c = prod[2], d = prod[3], n = prod[4];
  std::vector<int> labels;
  std::merge(left.labels.begin(), left.labels.end(), right.labels.begin(),
             right.labels.end(), std::back_inserter(labels));
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (left.labels != left_markers_of(labels, prod) ||
      right.labels != right_markers_of(labels, prod)) {
    throw std::invalid_argument("factor labels do not match the product markers");
  }
  if (successor_in(labels, a) != b || successor_in(labels, c) != d ||
      successor_in(labels, d) != n || labels.back() != n) {
    throw std::invalid_argument("product markers must be consecutive with n last");
  }
  const std::size_t kl = left.entries.rows();
  const std::size_t kr = right.entries.rows();
  const std::size_t k = kl + kr + 1;
  Mat out(k, labels.size());
  LabeledMat result{labels, std::move(out)};
  auto pos = [&result](int x) {
    int q = result.position_of(x);
    if (q < 0) throw std::logic_error("missing product label");
    return static_cast<std::size_t>(q);
  };
  const Rat top_sign = (kr % 2 == 0) ? Rat(-1) : Rat(1);   // on column n
  const Rat mid_sign = (kr % 2 == 0) ? Rat(1) : Rat(-1);   // on columns c,d,n
  for (std::size_t i = 0; i < kl; ++i) {
    for (std::size_t q = 0; q < left.labels.size(); ++q) {
      int x = left.labels[q];
      Rat value = left.entries.at(i, q);
      if (x == a) {
        value += (p.alpha / p.beta) *
                 left.entries.at(i, static_cast<std::size_t>(left.position_of(b)));
      } else if (x == n) {
        value *= top_sign;
      }
      result.entries.at(i, pos(x)) = value;
    }
  }
  result.entries.at(kl, pos(a)) = p.alpha;
  result.entries.at(kl, pos(b)) = p.beta;
  result.entries.at(kl, pos(c)) = mid_sign * p.gamma;
  result.entries.at(kl, pos(d)) = mid_sign * p.delta;
  result.entries.at(kl, pos(n)) = mid_sign * p.eps;
  for (std::size_t i = 0; i < kr; ++i) {
    const Rat bd = right.entries.at(i, static_cast<std::size_t>(right.position_of(d)));
    const Rat bn = right.entries.at(i, static_cast<std::size_t>(right.position_of(n)));
    const Rat dprime = bd + (p.delta / p.eps) * bn;
    for (std::size_t q = 0; q < right.labels.size(); ++q) {
      int x = right.labels[q];
      Rat value = right.entries.at(i, q);
      if (x == d) {
        value = dprime;
      } else if (x == c) {
        value += (p.gamma / p.delta) * dprime;
      }
      result.entries.at(kl + 1 + i, pos(x)) = value;
    }
  }
  return result;
}

LabeledMat bcfw_matrix(const Recipe& r, const BcfwParameters& params) {
  if (static_cast<int>(params.size()) != r.k()) {
    throw std::invalid_argument("need one parameter tuple per step");
  }
  if (r.is_trivial()) {
    return LabeledMat{r.markers(), Mat(0, r.markers().size())};
  }
  const int kl = r.left().k();
  const int kr = r.right().k();
  BcfwParameters pl(params.begin(), params.begin() + kl);
  BcfwParameters pr(params.begin() + kl, params.begin() + kl + kr);
  LabeledMat m = bcfw_product_matrix(bcfw_matrix(r.left(), pl), params.back(),
                                     bcfw_matrix(r.right(), pr), r.step().prod);
  for (int x : r.step().pre) m = apply_matrix_op(m, "pre", x, Rat(0));
  for (int i = 0; i < r.step().cyc; ++i) m = apply_matrix_op(m, "cyc", 0, Rat(0));
  for (int i = 0; i < r.step().refl; ++i) m = apply_matrix_op(m, "refl", 0, Rat(0));
  return m;
}

LabeledMat cell_point(const Recipe& r, RngStream& rng) {
  return bcfw_matrix(r, random_bcfw_parameters(r.k(), rng));
}

namespace {

std::set<std::vector<int>> map_bases(const std::set<std::vector<int>>& bases,
                                     const std::function<int(int)>& f) {
  std::set<std::vector<int>> out;
  for (const auto& basis : bases) {
    std::vector<int> image;
    for (int x : basis) image.push_back(f(x));
    std::sort(image.begin(), image.end());
    out.insert(std::move(image));
  }
  return out;
}

}  // namespace

std::set<std::vector<int>> recipe_positroid(const Recipe& r) {
  if (r.is_trivial()) return {std::vector<int>{}};
  std::set<std::vector<int>> bases = butterfly_positroid_table(
      recipe_positroid(r.left()), recipe_positroid(r.right()),
      r.left_factor_markers(), r.right_factor_markers(), r.step().prod[4]);
  // Zero-column insertions never enter a basis, so `pre` leaves bases alone.
  const std::vector<int>& markers = r.markers();
  const std::size_t m = markers.size();
  std::map<int, int> cyc_map, refl_map;
  for (std::size_t i = 0; i < m; ++i) {
    cyc_map[markers[i]] = markers[(i + 1) % m];
    refl_map[markers[i]] = markers[m - 1 - i];
  }
  for (int i = 0; i < r.step().cyc; ++i) {
    bases = map_bases(bases, [&cyc_map](int x) { return cyc_map.at(x); });
  }
  for (int i = 0; i < r.step().refl; ++i) {
    bases = map_bases(bases, [&refl_map](int x) { return refl_map.at(x); });
  }
  return bases;
}

bool is_coindependent(const std::vector<int>& j,
                      const std::set<std::vector<int>>& positroid) {
  std::vector<int> sorted = j;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& basis : positroid) {
    bool disjoint = true;
    for (int x : basis) {
      if (std::binary_search(sorted.begin(), sorted.end(), x)) {
        disjoint = false;
        break;
      }
    }
    if (disjoint) return true;
  }
  return false;
}

bool is_four_coindependent(const std::set<std::vector<int>>& positroid,
                           const std::vector<int>& markers) {
  const std::size_t m = markers.size();
  std::size_t size = std::min<std::size_t>(4, m);
  std::vector<std::size_t> combo(size);
  for (std::size_t i = 0; i < size; ++i) combo[i] = i;
  while (true) {
    std::vector<int> j;
    for (std::size_t q : combo) j.push_back(markers[q]);
    if (!is_coindependent(j, positroid)) return false;
    std::size_t i = size;
    while (i > 0 && combo[i - 1] == m - size + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t t = i; t < size; ++t) combo[t] = combo[t - 1] + 1;
  }
  return true;
}

std::string cell_key_string(const CellKey& key) {
  std::ostringstream os;
  bool first_basis = true;
  for (const auto& basis : key) {
    if (!first_basis) os << ";";
    first_basis = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i) os << ",";
      os << basis[i];
    }
  }
  return os.str();
}

namespace {

// Construction witnesses for enumerated cells, in position space: every cell
// at the (m, k) level lives on markers 1..m.
struct Witness {
  enum class Kind { trivial, product, insert, cyc, refl };
  Kind kind = Kind::trivial;
  int m = 0;       // ambient marker count of the result
  int arg = 0;     // product: a; insert: position
  std::shared_ptr<const Witness> first, second;
};

using WitnessPtr = std::shared_ptr<const Witness>;

WitnessPtr make_witness(Witness w) {
  return std::make_shared<const Witness>(std::move(w));
}

std::vector<int> iota_markers(int m) {
  std::vector<int> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = i + 1;
  return out;
}

Recipe witness_recipe(const Witness& w);

Recipe witness_recipe_ptr(const WitnessPtr& w) { return witness_recipe(*w); }

Recipe witness_recipe(const Witness& w) {
  switch (w.kind) {
    case Witness::Kind::trivial:
      return Recipe::trivial(iota_markers(w.m));
    case Witness::Kind::product: {
      const int m = w.m;
      const int a = w.arg;
      std::array<int, 5> prod{a, a + 1, m - 2, m - 1, m};
      std::vector<int> nl, nr;
      for (int x = 1; x <= a + 1; ++x) nl.push_back(x);
      nl.push_back(m);
      for (int x = a + 1; x <= m; ++x) nr.push_back(x);
      Recipe left = witness_recipe_ptr(w.first).relabel(nl);
      Recipe right = witness_recipe_ptr(w.second).relabel(nr);
      return Recipe::product(std::move(left), std::move(right),
                             StepTuple{prod, {}, 0, 0}, iota_markers(m));
    }
    case Witness::Kind::insert: {
      const int m = w.m;
      Recipe inner = witness_recipe_ptr(w.first);  // on 1..m-1
      if (inner.is_trivial()) return Recipe::trivial(iota_markers(m));
      StepTuple step = inner.step();
      // Push the insertion through the root's reflections and shifts:
      //   insert at p then reflect       == reflect then insert at m+1-p,
      //   insert at q then one shift     == one shift then insert at q-1,
      //   insert at 1 then one shift     == two shifts then insert at m-1.
      int q = w.arg;
      int extra = 0;
      if (step.refl == 1) q = m + 1 - q;
      for (int i = 0; i < step.cyc; ++i) {
        if (q >= 2) {
          q -= 1;
          extra += 1;
        } else {
          q = m - 1;
          extra += 2;
        }
      }
      std::vector<int> image;
      for (int x = 1; x <= m; ++x) {
        if (x != q) image.push_back(x);
      }
      Recipe shifted = inner.relabel(image);
      StepTuple root = shifted.step();
      root.pre.push_back(q);
      std::sort(root.pre.begin(), root.pre.end());
      root.cyc = extra % m;  // the peeled shifts replace the inner ones
      return Recipe::product(shifted.left(), shifted.right(), std::move(root),
                             iota_markers(m));
    }
    case Witness::Kind::cyc: {
      const int m = w.m;
      Recipe inner = witness_recipe_ptr(w.first);
      if (inner.is_trivial()) return inner;
      StepTuple root = inner.step();
      root.cyc = (root.cyc + (root.refl == 1 ? m - 1 : 1)) % m;
      return Recipe::product(inner.left(), inner.right(), std::move(root),
                             inner.markers());
    }
    case Witness::Kind::refl: {
      Recipe inner = witness_recipe_ptr(w.first);
      if (inner.is_trivial()) return inner;
      StepTuple root = inner.step();
      root.refl = 1 - root.refl;
      return Recipe::product(inner.left(), inner.right(), std::move(root),
                             inner.markers());
    }
  }
  throw std::logic_error("unreachable");
}

CellKey relabel_key(const CellKey& key, const std::vector<int>& image) {
  CellKey out;
  for (const auto& basis : key) {
    std::vector<int> mapped;
    for (int x : basis) mapped.push_back(image[static_cast<std::size_t>(x - 1)]);
    std::sort(mapped.begin(), mapped.end());
    out.insert(std::move(mapped));
  }
  return out;
}

class CellEnumerator {
 public:
  const std::map<CellKey, WitnessPtr>& cells(int m, int k) {
    auto it = memo_.find({m, k});
    if (it != memo_.end()) return it->second;
    std::map<CellKey, WitnessPtr> out;
    if (k == 0) {
      out.emplace(CellKey{std::vector<int>{}},
                  make_witness({Witness::Kind::trivial, m, 0, nullptr, nullptr}));
    } else if (m >= k + 4) {
      collect_inserts(m, k, out);
      collect_products(m, k, out);
      close_dihedral(m, out);
    }
    return memo_.emplace(std::make_pair(m, k), std::move(out)).first->second;
  }

 private:
  void collect_inserts(int m, int k, std::map<CellKey, WitnessPtr>& out) {
    for (const auto& [key, wit] : cells(m - 1, k)) {
      for (int p = 1; p <= m; ++p) {
        std::vector<int> image;
        for (int x = 1; x <= m; ++x) {
          if (x != p) image.push_back(x);
        }
        out.emplace(relabel_key(key, image),
                    make_witness({Witness::Kind::insert, m, p, wit, nullptr}));
      }
    }
  }

  void collect_products(int m, int k, std::map<CellKey, WitnessPtr>& out) {
    for (int a = 1; a + 4 <= m; ++a) {
      std::vector<int> nl, nr;
      for (int x = 1; x <= a + 1; ++x) nl.push_back(x);
      nl.push_back(m);
      for (int x = a + 1; x <= m; ++x) nr.push_back(x);
      for (int kl = 0; kl <= k - 1; ++kl) {
        const int kr = k - 1 - kl;
        if (kl > 0 && kl + 4 > static_cast<int>(nl.size())) continue;
        if (kr > 0 && kr + 4 > static_cast<int>(nr.size())) continue;
        for (const auto& [key_l, wit_l] : cells(a + 2, kl)) {
          CellKey pl = relabel_key(key_l, nl);
          for (const auto& [key_r, wit_r] : cells(m - a, kr)) {
            CellKey pr = relabel_key(key_r, nr);
            CellKey key = butterfly_positroid_table(pl, pr, nl, nr, m);
            out.emplace(std::move(key), make_witness({Witness::Kind::product, m,
                                                      a, wit_l, wit_r}));
          }
        }
      }
    }
  }

  void close_dihedral(int m, std::map<CellKey, WitnessPtr>& out) {
    std::vector<std::pair<CellKey, WitnessPtr>> queue(out.begin(), out.end());
    auto shift = [m](int x) { return x == m ? 1 : x + 1; };
    auto mirror = [m](int x) { return m + 1 - x; };
    while (!queue.empty()) {
      auto [key, wit] = std::move(queue.back());
      queue.pop_back();
      std::pair<CellKey, WitnessPtr> images[2] = {
          {map_bases(key, shift),
           make_witness({Witness::Kind::cyc, m, 0, wit, nullptr})},
          {map_bases(key, mirror),
           make_witness({Witness::Kind::refl, m, 0, wit, nullptr})}};
      for (auto& im : images) {
        if (out.emplace(im.first, im.second).second) {
          queue.push_back(std::move(im));
        }
      }
    }
  }

  std::map<std::pair<int, int>, std::map<CellKey, WitnessPtr>> memo_;
};

}  // namespace

std::vector<EnumeratedCell> enumerate_general_cells(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("need n >= 1 and k >= 0");
  CellEnumerator enumerator;
  std::vector<EnumeratedCell> out;
  for (const auto& [key, wit] : enumerator.cells(n, k)) {
    out.push_back(EnumeratedCell{key, witness_recipe(*wit)});
  }
  return out;
}

}  // namespace amplikit
