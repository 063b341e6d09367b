#include "amplikit/plabic.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace amplikit {

namespace {

char color_letter(VertexColor c) {
  switch (c) {
    case VertexColor::black:
      return 'b';
    case VertexColor::white:
      return 'w';
    default:
      return 'o';
  }
}

VertexColor color_from_letter(char c) {
  if (c == 'b') return VertexColor::black;
  if (c == 'w') return VertexColor::white;
  return VertexColor::boundary;
}

}  // namespace

int DecoratedPermutation::anti_excedances() const {
  int n = static_cast<int>(targets.size());
  int count = 0;
  for (int i = 1; i <= n; ++i) {
    int t = targets[i - 1];
    if (t < i) ++count;
    if (t == i && fixed.at(i) == VertexColor::white) ++count;
  }
  return count;
}

std::string DecoratedPermutation::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) out << ',';
    out << targets[i];
    int label = static_cast<int>(i) + 1;
    if (targets[i] == label) {
      out << (fixed.at(label) == VertexColor::white ? 'w' : 'b');
    }
  }
  out << ')';
  return out.str();
}

// --- basic structure ---------------------------------------------------------

PlabicGraph PlabicGraph::disk(int n_boundary) {
  PlabicGraph g;
  for (int i = 0; i < n_boundary; ++i) {
    int id = g.next_vertex_id_++;
    g.vertices_[id] = PlabicVertex{VertexColor::boundary, {}};
    g.boundary_.push_back(id);
  }
  return g;
}

int PlabicGraph::boundary_vertex(int label) const {
  if (label < 1 || label > n()) throw std::out_of_range("boundary label");
  return boundary_[label - 1];
}

const PlabicVertex& PlabicGraph::vertex(int id) const {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) throw std::out_of_range("vertex id");
  return it->second;
}

std::vector<int> PlabicGraph::live_edges() const {
  std::vector<int> ids;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive) ids.push_back(static_cast<int>(e));
  }
  return ids;
}

int PlabicGraph::edge_other_end(int edge_id, int vertex_id) const {
  const PlabicEdge& e = edges_.at(edge_id);
  if (e.u == vertex_id) return e.v;
  if (e.v == vertex_id) return e.u;
  throw std::invalid_argument("vertex not on edge");
}

int PlabicGraph::degree(int vertex_id) const {
  return static_cast<int>(vertex(vertex_id).rotation.size());
}

bool PlabicGraph::is_internal(int id) const {
  return vertex(id).color != VertexColor::boundary;
}

int PlabicGraph::add_internal_vertex(VertexColor color) {
  if (color == VertexColor::boundary) {
    throw std::invalid_argument("internal vertex must be black or white");
  }
  int id = next_vertex_id_++;
  vertices_[id] = PlabicVertex{color, {}};
  return id;
}

int PlabicGraph::add_edge(int u, int v, int pos_u, int pos_v) {
  if (u == v) throw std::invalid_argument("self-loops are not supported");
  vertex(u);
  vertex(v);
  int id = static_cast<int>(edges_.size());
  edges_.push_back(PlabicEdge{u, v, true});
  auto insert_at = [id](std::vector<int>& rot, int pos) {
    if (pos < 0 || pos >= static_cast<int>(rot.size()) + 1) {
      rot.push_back(id);
    } else {
      rot.insert(rot.begin() + pos, id);
    }
  };
  insert_at(vertices_[u].rotation, pos_u);
  insert_at(vertices_[v].rotation, pos_v);
  return id;
}

void PlabicGraph::set_rotation(int vertex_id, std::vector<int> rotation) {
  std::vector<int> current = vertex(vertex_id).rotation;
  std::vector<int> proposed = rotation;
  std::sort(current.begin(), current.end());
  std::sort(proposed.begin(), proposed.end());
  if (current != proposed) {
    throw std::invalid_argument("rotation must reorder the incident edges");
  }
  vertices_[vertex_id].rotation = std::move(rotation);
}

void PlabicGraph::add_lollipop(int label, VertexColor color) {
  if (label < 1 || label > n() + 1) throw std::out_of_range("lollipop label");
  int bv = next_vertex_id_++;
  vertices_[bv] = PlabicVertex{VertexColor::boundary, {}};
  boundary_.insert(boundary_.begin() + (label - 1), bv);
  int leaf = add_internal_vertex(color);
  add_edge(bv, leaf);
}

int PlabicGraph::subdivide_leg(int label, VertexColor color) {
  int bv = boundary_vertex(label);
  if (vertices_[bv].rotation.size() != 1) {
    throw std::logic_error("boundary vertex must carry exactly one edge");
  }
  int e = vertices_[bv].rotation[0];
  int u = edge_other_end(e, bv);
  int w = add_internal_vertex(color);
  // Re-target the leg edge to the new vertex, then connect upward with a
  // fresh edge occupying the old edge's slot in u's rotation.
  PlabicEdge& edge = edges_[e];
  if (edge.u == u) {
    edge.u = w;
  } else {
    edge.v = w;
  }
  vertices_[w].rotation.push_back(e);
  int e2 = static_cast<int>(edges_.size());
  edges_.push_back(PlabicEdge{w, u, true});
  vertices_[w].rotation.push_back(e2);
  std::vector<int>& rot_u = vertices_[u].rotation;
  *std::find(rot_u.begin(), rot_u.end(), e) = e2;
  return w;
}

void PlabicGraph::add_bridge_x(int label) {
  int succ = (label % n()) + 1;
  int w = subdivide_leg(label, VertexColor::white);
  int b = subdivide_leg(succ, VertexColor::black);
  // Clockwise around the new vertices: the vertex on `label`'s leg sees
  // [boundary, bridge, interior]; the successor's vertex sees
  // [boundary, interior, bridge].
  add_edge(w, b, 1, 2);
}

void PlabicGraph::add_bridge_y(int label) {
  int succ = (label % n()) + 1;
  int b = subdivide_leg(label, VertexColor::black);
  int w = subdivide_leg(succ, VertexColor::white);
  add_edge(b, w, 1, 2);
}

void PlabicGraph::delete_edge(int edge_id) {
  PlabicEdge& e = edges_.at(edge_id);
  if (!e.alive) throw std::invalid_argument("edge already deleted");
  if (vertex(e.u).color == VertexColor::boundary ||
      vertex(e.v).color == VertexColor::boundary) {
    throw std::invalid_argument("cannot delete a boundary leg");
  }
  e.alive = false;
  auto drop = [edge_id](std::vector<int>& rot) {
    rot.erase(std::remove(rot.begin(), rot.end(), edge_id), rot.end());
  };
  drop(vertices_[e.u].rotation);
  drop(vertices_[e.v].rotation);
}

PlabicGraph::Validation PlabicGraph::validate() const {
  Validation v;
  auto complain = [&v](const std::string& msg) {
    v.ok = false;
    v.problems.push_back(msg);
  };
  for (const auto& [id, vx] : vertices_) {
    for (int e : vx.rotation) {
      if (e < 0 || e >= static_cast<int>(edges_.size()) || !edges_[e].alive) {
        complain("vertex rotation references a dead edge");
        continue;
      }
      if (edges_[e].u != id && edges_[e].v != id) {
        complain("vertex rotation references a non-incident edge");
      }
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edges_[e].alive) continue;
    for (int end : {edges_[e].u, edges_[e].v}) {
      const auto& rot = vertex(end).rotation;
      if (std::count(rot.begin(), rot.end(), static_cast<int>(e)) != 1) {
        complain("edge missing from an endpoint rotation");
      }
    }
  }
  for (int label = 1; label <= n(); ++label) {
    if (vertex(boundary_vertex(label)).rotation.size() != 1) {
      complain("boundary vertex degree != 1");
    }
  }
  for (const auto& [id, vx] : vertices_) {
    if (vx.color != VertexColor::boundary && vx.rotation.empty()) {
      complain("isolated internal vertex");
    }
  }
  return v;
}

// --- trips --------------------------------------------------------------------

DecoratedPermutation PlabicGraph::trip_permutation() const {
  DecoratedPermutation out;
  out.targets.resize(n());
  std::size_t step_cap = 4 * edges_.size() + 8;
  for (int label = 1; label <= n(); ++label) {
    int bv = boundary_vertex(label);
    const auto& rot = vertex(bv).rotation;
    if (rot.size() != 1) {
      throw std::logic_error("trip from boundary vertex without a leg");
    }
    int edge = rot[0];
    int current = edge_other_end(edge, bv);
    VertexColor fixed_color = vertex(current).color;
    bool bounced = false;
    std::size_t steps = 0;
    while (vertex(current).color != VertexColor::boundary) {
      if (++steps > step_cap) {
        throw std::logic_error("trip does not return to the boundary");
      }
      const auto& crot = vertex(current).rotation;
      int deg = static_cast<int>(crot.size());
      // The color of a fixed label is decided where its trip reverses:
      // pass-through vertices on a dangling path do not affect it.
      if (deg == 1 && !bounced) {
        bounced = true;
        fixed_color = vertex(current).color;
      }
      int pos = static_cast<int>(
          std::find(crot.begin(), crot.end(), edge) - crot.begin());
      int next_pos;
      if (vertex(current).color == VertexColor::black) {
        next_pos = (pos + deg - 1) % deg;  // maximal right turn
      } else {
        next_pos = (pos + 1) % deg;  // maximal left turn
      }
      edge = crot[next_pos];
      current = edge_other_end(edge, current);
    }
    int target = 0;
    for (int j = 1; j <= n(); ++j) {
      if (boundary_vertex(j) == current) {
        target = j;
        break;
      }
    }
    out.targets[label - 1] = target;
    if (target == label) out.fixed[label] = fixed_color;
  }
  return out;
}

// --- regions and faces ----------------------------------------------------------

int PlabicGraph::region_count() const {
  // Euler count for the graph drawn in the disk, with the boundary circle
  // cut into n arcs: regions = E + n - V + components(graph + boundary arcs).
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (const auto& [id, vx] : vertices_) parent[id] = id;
  int live = 0;
  for (const auto& e : edges_) {
    if (!e.alive) continue;
    ++live;
    unite(e.u, e.v);
  }
  for (int i = 0; i + 1 < n(); ++i) unite(boundary_[i], boundary_[i + 1]);
  if (n() >= 2) unite(boundary_.back(), boundary_.front());
  std::set<int> roots;
  for (const auto& [id, vx] : vertices_) roots.insert(find(id));
  int components = static_cast<int>(roots.size());
  return live + n() - static_cast<int>(vertices_.size()) + components;
}

std::vector<std::vector<int>> PlabicGraph::faces() const {
  // Faces of the rotation system of the graph alone (no boundary arcs):
  // walk half-edges, turning onto the clockwise predecessor at each head.
  std::set<std::pair<int, int>> seen;  // (edge, tail vertex)
  std::vector<std::vector<int>> result;
  for (std::size_t e0 = 0; e0 < edges_.size(); ++e0) {
    if (!edges_[e0].alive) continue;
    for (int tail0 : {edges_[e0].u, edges_[e0].v}) {
      if (seen.count({static_cast<int>(e0), tail0})) continue;
      std::vector<int> face;
      int edge = static_cast<int>(e0);
      int tail = tail0;
      do {
        seen.insert({edge, tail});
        face.push_back(edge);
        int head = edge_other_end(edge, tail);
        const auto& rot = vertex(head).rotation;
        int deg = static_cast<int>(rot.size());
        int pos = static_cast<int>(
            std::find(rot.begin(), rot.end(), edge) - rot.begin());
        edge = rot[(pos + deg - 1) % deg];
        tail = head;
      } while (!seen.count({edge, tail}));
      result.push_back(std::move(face));
    }
  }
  return result;
}

// --- moves ----------------------------------------------------------------------

std::vector<std::vector<int>> PlabicGraph::square_move_sites() const {
  std::vector<std::vector<int>> sites;
  for (const auto& face : faces()) {
    if (face.size() != 4) continue;
    // Recover the vertex cycle of the face from its edge cycle.
    std::vector<int> cyc;
    int shared01 = -1;
    const PlabicEdge& a = edges_[face[0]];
    const PlabicEdge& b = edges_[face[1]];
    if (a.u == b.u || a.u == b.v) {
      shared01 = a.u;
    } else if (a.v == b.u || a.v == b.v) {
      shared01 = a.v;
    } else {
      continue;
    }
    int prev = edge_other_end(face[0], shared01);
    cyc.push_back(prev);
    int cur = shared01;
    for (std::size_t i = 1; i < face.size(); ++i) {
      cyc.push_back(cur);
      cur = edge_other_end(face[i], cur);
    }
    if (cur != cyc[0]) continue;
    bool good = true;
    std::set<int> distinct(cyc.begin(), cyc.end());
    if (distinct.size() != 4) good = false;
    for (std::size_t i = 0; good && i < 4; ++i) {
      const PlabicVertex& vx = vertex(cyc[i]);
      if (vx.color == VertexColor::boundary || vx.rotation.size() != 3) {
        good = false;
      }
      if (good && vx.color == vertex(cyc[(i + 1) % 4]).color) good = false;
    }
    if (!good) continue;
    // Canonical form: start at the smallest id, orient toward the smaller
    // neighbor so each square is reported once.
    int start = static_cast<int>(
        std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
    std::vector<int> canon;
    int nb_fwd = cyc[(start + 1) % 4];
    int nb_bwd = cyc[(start + 3) % 4];
    bool forward = nb_fwd < nb_bwd;
    for (int i = 0; i < 4; ++i) {
      int idx = forward ? (start + i) % 4 : (start + 4 - i) % 4;
      canon.push_back(cyc[idx]);
    }
    if (std::find(sites.begin(), sites.end(), canon) == sites.end()) {
      sites.push_back(std::move(canon));
    }
  }
  std::sort(sites.begin(), sites.end());
  return sites;
}

bool PlabicGraph::move_square(const std::vector<int>& four_cycle_vertices) {
  if (four_cycle_vertices.size() != 4) return false;
  bool found = false;
  for (const auto& site : square_move_sites()) {
    std::set<int> a(site.begin(), site.end());
    std::set<int> b(four_cycle_vertices.begin(), four_cycle_vertices.end());
    if (a == b) {
      found = true;
      break;
    }
  }
  if (!found) return false;
  for (int id : four_cycle_vertices) {
    PlabicVertex& vx = vertices_[id];
    vx.color = (vx.color == VertexColor::black) ? VertexColor::white
                                                : VertexColor::black;
  }
  return true;
}

bool PlabicGraph::move_contract(int edge_id) {
  if (edge_id < 0 || edge_id >= static_cast<int>(edges_.size())) return false;
  const PlabicEdge e = edges_[edge_id];
  if (!e.alive) return false;
  if (!is_internal(e.u) || !is_internal(e.v)) return false;
  if (vertex(e.u).color != vertex(e.v).color) return false;
  int multiplicity = 0;
  for (const auto& other : edges_) {
    if (other.alive && ((other.u == e.u && other.v == e.v) ||
                        (other.u == e.v && other.v == e.u))) {
      ++multiplicity;
    }
  }
  if (multiplicity != 1) return false;  // contraction would make a loop

  auto arc_after = [this, edge_id](int vertex_id) {
    const auto& rot = vertex(vertex_id).rotation;
    int deg = static_cast<int>(rot.size());
    int pos = static_cast<int>(
        std::find(rot.begin(), rot.end(), edge_id) - rot.begin());
    std::vector<int> arc;
    for (int i = 1; i < deg; ++i) arc.push_back(rot[(pos + i) % deg]);
    return arc;
  };
  std::vector<int> merged = arc_after(e.u);
  std::vector<int> tail = arc_after(e.v);
  merged.insert(merged.end(), tail.begin(), tail.end());

  for (int ed : tail) {
    PlabicEdge& re = edges_[ed];
    if (re.u == e.v) re.u = e.u;
    if (re.v == e.v) re.v = e.u;
  }
  edges_[edge_id].alive = false;
  vertices_[e.u].rotation = merged;
  vertices_.erase(e.v);
  return true;
}

bool PlabicGraph::move_split(int vertex_id, int arc_start, int arc_len) {
  if (!vertices_.count(vertex_id) || !is_internal(vertex_id)) return false;
  PlabicVertex& vx = vertices_[vertex_id];
  int deg = static_cast<int>(vx.rotation.size());
  if (deg < 2 || arc_len < 1 || arc_len > deg - 1) return false;
  arc_start = ((arc_start % deg) + deg) % deg;

  std::vector<int> arc, rest;
  for (int i = 0; i < deg; ++i) {
    int pos = (arc_start + i) % deg;
    (i < arc_len ? arc : rest).push_back(vx.rotation[pos]);
  }
  int v2 = add_internal_vertex(vx.color);
  for (int ed : arc) {
    PlabicEdge& re = edges_[ed];
    if (re.u == vertex_id) re.u = v2;
    if (re.v == vertex_id) re.v = v2;
  }
  int bridge = static_cast<int>(edges_.size());
  edges_.push_back(PlabicEdge{vertex_id, v2, true});
  // New vertex sits in the middle of the removed fan: clockwise it sees the
  // arc edges in their old order, then the connecting edge back.
  std::vector<int> rot2 = arc;
  rot2.push_back(bridge);
  vertices_[v2].rotation = rot2;
  // The old vertex keeps the rest, with the connector in the arc's slot.
  std::vector<int> rot1;
  rot1.push_back(bridge);
  rot1.insert(rot1.end(), rest.begin(), rest.end());
  vertices_[vertex_id].rotation = rot1;
  return true;
}

bool PlabicGraph::move_insert_degree2(int edge_id, VertexColor color) {
  if (edge_id < 0 || edge_id >= static_cast<int>(edges_.size())) return false;
  if (!edges_[edge_id].alive) return false;
  if (color == VertexColor::boundary) return false;
  int u = edges_[edge_id].u;
  int v = edges_[edge_id].v;
  int m = add_internal_vertex(color);
  edges_[edge_id].v = m;  // edge_id now joins u -- m
  vertices_[m].rotation.push_back(edge_id);
  int e2 = static_cast<int>(edges_.size());
  edges_.push_back(PlabicEdge{m, v, true});
  vertices_[m].rotation.push_back(e2);
  std::vector<int>& rot_v = vertices_[v].rotation;
  *std::find(rot_v.begin(), rot_v.end(), edge_id) = e2;
  return true;
}

bool PlabicGraph::move_remove_degree2(int vertex_id) {
  if (!vertices_.count(vertex_id) || !is_internal(vertex_id)) return false;
  const PlabicVertex vx = vertices_[vertex_id];
  if (vx.rotation.size() != 2) return false;
  int e1 = vx.rotation[0];
  int e2 = vx.rotation[1];
  int a = edge_other_end(e1, vertex_id);
  int b = edge_other_end(e2, vertex_id);
  if (a == b) return false;  // would create a two-edge loop collapse
  int f = static_cast<int>(edges_.size());
  edges_.push_back(PlabicEdge{a, b, true});
  auto swap_in = [this, f](int vertex, int old_edge) {
    std::vector<int>& rot = vertices_[vertex].rotation;
    *std::find(rot.begin(), rot.end(), old_edge) = f;
  };
  swap_in(a, e1);
  swap_in(b, e2);
  edges_[e1].alive = false;
  edges_[e2].alive = false;
  vertices_.erase(vertex_id);
  return true;
}

std::string PlabicGraph::apply_random_move(RngStream& rng) {
  struct Candidate {
    std::string name;
    std::function<bool()> apply;
  };
  std::vector<Candidate> candidates;

  for (const auto& site : square_move_sites()) {
    candidates.push_back(
        {"square", [this, site]() { return move_square(site); }});
  }
  for (int e : live_edges()) {
    const PlabicEdge& ed = edges_[e];
    if (is_internal(ed.u) && is_internal(ed.v) &&
        vertex(ed.u).color == vertex(ed.v).color) {
      candidates.push_back(
          {"contract", [this, e]() { return move_contract(e); }});
    }
    candidates.push_back({"insert-black", [this, e]() {
                            return move_insert_degree2(e, VertexColor::black);
                          }});
    candidates.push_back({"insert-white", [this, e]() {
                            return move_insert_degree2(e, VertexColor::white);
                          }});
  }
  for (const auto& [id, vx] : vertices_) {
    if (vx.color == VertexColor::boundary) continue;
    int deg = static_cast<int>(vx.rotation.size());
    if (deg == 2) {
      int v = id;
      candidates.push_back(
          {"remove", [this, v]() { return move_remove_degree2(v); }});
    }
    if (deg >= 2) {
      int v = id;
      int start = static_cast<int>(rng.next_below(deg));
      int len = static_cast<int>(rng.next_int(1, deg - 1));
      candidates.push_back({"split", [this, v, start, len]() {
                              return move_split(v, start, len);
                            }});
    }
  }
  // Shuffle-free uniform pick with rejection: some candidates may have been
  // invalidated by rotation specifics; try until one applies.
  while (!candidates.empty()) {
    std::size_t pick = rng.next_below(candidates.size());
    if (candidates[pick].apply()) return candidates[pick].name;
    candidates.erase(candidates.begin() + pick);
  }
  return "none";
}

// --- perfect orientations --------------------------------------------------------

std::vector<PlabicGraph::Orientation> PlabicGraph::perfect_orientations(
    const std::set<int>& forced_sinks) const {
  std::vector<int> edge_ids = live_edges();
  std::map<int, int> edge_pos;
  for (std::size_t i = 0; i < edge_ids.size(); ++i) edge_pos[edge_ids[i]] = i;

  // state[i]: 0 undecided, else the head vertex id of edge_ids[i].
  std::vector<int> head(edge_ids.size(), 0);
  struct Counts {
    int in = 0, out = 0, undecided = 0;
  };
  std::map<int, Counts> counts;
  for (const auto& [id, vx] : vertices_) {
    if (vx.color != VertexColor::boundary) {
      counts[id].undecided = static_cast<int>(vx.rotation.size());
    }
  }

  std::vector<Orientation> found;

  // Returns false on contradiction.  Setting an edge updates endpoint
  // counters and pushes forced consequences onto the queue.
  auto ok_after = [&](int vid) {
    auto it = counts.find(vid);
    if (it == counts.end()) return true;  // boundary vertex: unconstrained
    const Counts& c = it->second;
    VertexColor col = vertex(vid).color;
    if (col == VertexColor::black) {
      if (c.out > 1) return false;
      if (c.out == 0 && c.undecided == 0) return false;
    } else {
      if (c.in > 1) return false;
      if (c.in == 0 && c.undecided == 0) return false;
    }
    return true;
  };

  std::vector<std::pair<int, int>> trail;

  auto set_edge = [&](int pos, int head_vertex) -> bool {
    if (head[pos] != 0) return head[pos] == head_vertex;
    int tail_vertex = edge_other_end(edge_ids[pos], head_vertex);
    head[pos] = head_vertex;
    trail.push_back({pos, head_vertex});
    for (int vid : {head_vertex, tail_vertex}) {
      auto it = counts.find(vid);
      if (it != counts.end()) {
        it->second.undecided -= 1;
        if (vid == head_vertex) {
          it->second.in += 1;
        } else {
          it->second.out += 1;
        }
      }
    }
    return ok_after(head_vertex) && ok_after(tail_vertex);
  };

  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      auto [pos, head_vertex] = trail.back();
      trail.pop_back();
      int tail_vertex = edge_other_end(edge_ids[pos], head_vertex);
      for (int vid : {head_vertex, tail_vertex}) {
        auto it = counts.find(vid);
        if (it != counts.end()) {
          it->second.undecided += 1;
          if (vid == head_vertex) {
            it->second.in -= 1;
          } else {
            it->second.out -= 1;
          }
        }
      }
      head[pos] = 0;
    }
  };

  // Propagation: if a vertex's remaining slots are forced, fix them.
  auto propagate = [&]() -> bool {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [vid, c] : counts) {
        if (c.undecided == 0) continue;
        VertexColor col = vertex(vid).color;
        int need_out = (col == VertexColor::black) ? 1 - c.out : -1;
        int need_in = (col == VertexColor::white) ? 1 - c.in : -1;
        bool force_all_in = (col == VertexColor::black && c.out == 1);
        bool force_all_out = (col == VertexColor::white && c.in == 1);
        bool force_last_out =
            (col == VertexColor::black && need_out == 1 && c.undecided == 1);
        bool force_last_in =
            (col == VertexColor::white && need_in == 1 && c.undecided == 1);
        if (!(force_all_in || force_all_out || force_last_out ||
              force_last_in)) {
          continue;
        }
        for (int e : vertex(vid).rotation) {
          int pos = edge_pos[e];
          if (head[pos] != 0) continue;
          int target_head;
          if (force_all_in || force_last_in) {
            target_head = vid;
          } else {
            target_head = edge_other_end(e, vid);
          }
          if (!set_edge(pos, target_head)) return false;
          changed = true;
        }
      }
    }
    return true;
  };

  std::function<void()> search = [&]() {
    std::size_t mark = trail.size();
    if (!propagate()) {
      undo_to(mark);
      return;
    }
    int branch = -1;
    for (std::size_t i = 0; i < head.size(); ++i) {
      if (head[i] == 0) {
        branch = static_cast<int>(i);
        break;
      }
    }
    if (branch < 0) {
      Orientation o;
      for (std::size_t i = 0; i < edge_ids.size(); ++i) {
        o.head[edge_ids[i]] = head[i];
      }
      for (int label = 1; label <= n(); ++label) {
        int bv = boundary_vertex(label);
        int e = vertex(bv).rotation[0];
        if (o.head.at(e) != bv) o.sources.insert(label);
      }
      found.push_back(std::move(o));
      undo_to(mark);
      return;
    }
    for (int side = 0; side < 2; ++side) {
      std::size_t inner = trail.size();
      int head_vertex = side == 0 ? edges_[edge_ids[branch]].u
                                  : edges_[edge_ids[branch]].v;
      if (set_edge(branch, head_vertex)) {
        search();
      }
      undo_to(inner);
    }
    undo_to(mark);
  };

  // Seed forced boundary sinks, then search.
  bool feasible = true;
  for (int label : forced_sinks) {
    int bv = boundary_vertex(label);
    if (vertex(bv).rotation.empty()) {
      feasible = false;
      break;
    }
    if (!set_edge(edge_pos[vertex(bv).rotation[0]], bv)) {
      feasible = false;
      break;
    }
  }
  if (feasible) search();
  undo_to(0);
  return found;
}

std::set<std::vector<int>> PlabicGraph::positroid() const {
  std::set<std::vector<int>> bases;
  for (const auto& o : perfect_orientations()) {
    bases.insert(std::vector<int>(o.sources.begin(), o.sources.end()));
  }
  return bases;
}

bool PlabicGraph::has_orientation_with_sinks(const std::set<int>& sinks) const {
  return !perfect_orientations(sinks).empty();
}

namespace {

// Kahn topological order of the directed graph; empty when cyclic.
std::vector<int> topological_order(
    const std::map<int, std::vector<int>>& out_neighbors) {
  std::map<int, int> indeg;
  for (const auto& [v, outs] : out_neighbors) {
    indeg.try_emplace(v, 0);
    for (int u : outs) indeg[u] += 1;
  }
  std::deque<int> ready;
  for (const auto& [v, d] : indeg) {
    if (d == 0) ready.push_back(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    auto it = out_neighbors.find(v);
    if (it == out_neighbors.end()) continue;
    for (int u : it->second) {
      if (--indeg[u] == 0) ready.push_back(u);
    }
  }
  if (order.size() != indeg.size()) order.clear();
  return order;
}

std::map<int, std::vector<int>> orientation_adjacency(
    const PlabicGraph& g, const PlabicGraph::Orientation& o) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [id, vx] : g.vertices()) adj.try_emplace(id, std::vector<int>{});
  for (const auto& [e, head] : o.head) {
    int tail = g.edge_other_end(e, head);
    adj[tail].push_back(head);
  }
  return adj;
}

}  // namespace

std::optional<PlabicGraph::Orientation> PlabicGraph::acyclic_orientation(
    const std::set<int>& forced_sinks) const {
  for (const auto& o : perfect_orientations(forced_sinks)) {
    if (!topological_order(orientation_adjacency(*this, o)).empty()) {
      return o;
    }
  }
  return std::nullopt;
}

Mat PlabicGraph::path_matrix(const Orientation& orientation,
                             const std::map<int, Rat>& edge_weights) const {
  std::map<int, std::vector<int>> adj = orientation_adjacency(*this, orientation);
  std::vector<int> topo = topological_order(adj);
  if (topo.empty() && !vertices_.empty()) {
    throw std::invalid_argument("path matrix needs an acyclic orientation");
  }
  std::vector<int> sources(orientation.sources.begin(),
                           orientation.sources.end());
  Mat m(sources.size(), n());
  auto weight = [&edge_weights](int e) {
    auto it = edge_weights.find(e);
    return it == edge_weights.end() ? Rat(1) : it->second;
  };
  for (std::size_t r = 0; r < sources.size(); ++r) {
    int i = sources[r];
    std::map<int, Rat> reach;  // vertex -> sum of path weights from source i
    reach[boundary_vertex(i)] = Rat(1);
    for (int v : topo) {
      auto rv = reach.find(v);
      if (rv == reach.end() || rv->second == 0) continue;
      for (int e : vertex(v).rotation) {
        if (orientation.head.at(e) == v) continue;  // incoming
        int u = orientation.head.at(e);
        reach[u] += rv->second * weight(e);
      }
    }
    for (int j = 1; j <= n(); ++j) {
      if (j == i) {
        m.at(r, j - 1) = Rat(1);
        continue;
      }
      if (orientation.sources.count(j)) continue;  // zero
      auto rj = reach.find(boundary_vertex(j));
      if (rj == reach.end()) continue;
      int lo = std::min(i, j), hi = std::max(i, j);
      int between = 0;
      for (int s : sources) {
        if (s > lo && s < hi) ++between;
      }
      m.at(r, j - 1) = (between % 2 == 0) ? rj->second : Rat(-rj->second);
    }
  }
  return m;
}

std::set<std::vector<int>> PlabicGraph::positroid_from_path_matrix() const {
  auto o = acyclic_orientation();
  if (!o) throw std::logic_error("graph has no acyclic perfect orientation");
  Mat m = path_matrix(*o);
  int k = static_cast<int>(m.rows());
  std::set<std::vector<int>> bases;
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  if (k == 0) {
    bases.insert(std::vector<int>{});
    return bases;
  }
  while (true) {
    std::vector<std::size_t> cols(combo.begin(), combo.end());
    if (m.maximal_minor(cols) != 0) {
      std::vector<int> labels;
      for (int c : combo) labels.push_back(c + 1);
      bases.insert(labels);
    }
    int i = k - 1;
    while (i >= 0 && combo[i] == n() - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return bases;
}

// --- serialization -----------------------------------------------------------------

Json PlabicGraph::to_json() const {
  // Export with dense edge ids (dead edges dropped).
  std::map<int, int> edge_remap;
  Json edges = Json::array();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edges_[e].alive) continue;
    int id = static_cast<int>(edge_remap.size());
    edge_remap[static_cast<int>(e)] = id;
    edges.push_back(Json{{"id", id}, {"ends", {edges_[e].u, edges_[e].v}}});
  }
  Json vertices = Json::array();
  for (const auto& [id, vx] : vertices_) {
    Json rot = Json::array();
    for (int e : vx.rotation) rot.push_back(edge_remap.at(e));
    vertices.push_back(Json{{"id", id},
                            {"color", std::string(1, color_letter(vx.color))},
                            {"rotation", std::move(rot)}});
  }
  return Json{{"n", n()},
              {"boundary", boundary_},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

PlabicGraph PlabicGraph::from_json(const Json& j) {
  PlabicGraph g;
  g.boundary_ = j.at("boundary").get<std::vector<int>>();
  int max_id = 0;
  for (const auto& vj : j.at("vertices")) {
    int id = vj.at("id").get<int>();
    PlabicVertex vx;
    vx.color = color_from_letter(vj.at("color").get<std::string>().at(0));
    vx.rotation = vj.at("rotation").get<std::vector<int>>();
    g.vertices_[id] = std::move(vx);
    max_id = std::max(max_id, id);
  }
  g.next_vertex_id_ = max_id + 1;
  std::size_t edge_count = j.at("edges").size();
  g.edges_.resize(edge_count);
  for (const auto& ej : j.at("edges")) {
    int id = ej.at("id").get<int>();
    auto ends = ej.at("ends").get<std::vector<int>>();
    if (id < 0 || id >= static_cast<int>(edge_count) || ends.size() != 2) {
      throw std::invalid_argument("malformed edge record");
    }
    g.edges_[id] = PlabicEdge{ends[0], ends[1], true};
  }
  Validation v = g.validate();
  if (!v.ok) {
    throw std::invalid_argument("invalid graph: " + v.problems.front());
  }
  return g;
}

std::string PlabicGraph::to_dot() const {
  std::ostringstream out;
  out << "graph plabic {\n  layout=neato;\n";
  for (int label = 1; label <= n(); ++label) {
    out << "  v" << boundary_vertex(label) << " [shape=none,label=\"" << label
        << "\"];\n";
  }
  for (const auto& [id, vx] : vertices_) {
    if (vx.color == VertexColor::boundary) continue;
    out << "  v" << id << " [shape=circle,label=\"\",width=0.15,style=filled,"
        << "fillcolor=" << (vx.color == VertexColor::black ? "black" : "white")
        << "];\n";
  }
  for (const auto& e : edges_) {
    if (!e.alive) continue;
    out << "  v" << e.u << " -- v" << e.v << ";\n";
  }
  out << "}\n";
  return out.str();
}

// --- BCFW product --------------------------------------------------------------------

PlabicGraph butterfly_product(const PlabicGraph& left, const PlabicGraph& right,
                              const std::vector<int>& left_markers,
                              const std::vector<int>& right_markers, int n) {
  std::size_t nl = left_markers.size();
  std::size_t nr = right_markers.size();
  if (static_cast<int>(left.n()) != static_cast<int>(nl) ||
      static_cast<int>(right.n()) != static_cast<int>(nr)) {
    throw std::invalid_argument("marker count != boundary size");
  }
  if (nl < 3 || nr < 4) throw std::invalid_argument("marker sets too small");
  int a = left_markers[nl - 3];
  int b = left_markers[nl - 2];
  int c = right_markers[nr - 3];
  int d = right_markers[nr - 2];
  if (left_markers.back() != n || right_markers.back() != n ||
      right_markers.front() != b) {
    throw std::invalid_argument("marker sets do not overlap correctly");
  }

  PlabicGraph prod = PlabicGraph::disk(n);

  // Skeleton joining the wings: a tree of 7 black merge vertices and 3 white
  // branch vertices.  In the drawing the two top merges sit under boundary
  // a and b; the spine descends through the branches to the c, d, n legs.
  auto B = VertexColor::black;
  auto W = VertexColor::white;
  int m1 = prod.add_internal_vertex(B);  // joins the a leg and the left a-stub
  int b1 = prod.add_internal_vertex(W);  // splits toward b / the spine
  int m2 = prod.add_internal_vertex(B);  // joins toward boundary b
  int m3 = prod.add_internal_vertex(B);  // absorbs the left b-stub
  int m4 = prod.add_internal_vertex(B);  // absorbs the right n-stub
  int b2 = prod.add_internal_vertex(W);  // splits toward n / the c,d side
  int m5 = prod.add_internal_vertex(B);  // absorbs the right d-stub
  int b3 = prod.add_internal_vertex(W);  // splits toward d / c
  int m6 = prod.add_internal_vertex(B);  // joins toward boundary n
  int m7 = prod.add_internal_vertex(B);  // joins toward boundary c

  // Stubs: boundary legs of the factors ending on {a,b,n} / {b,c,d,n} rewire
  // into the skeleton at these vertices.
  std::map<int, int> left_stub = {{a, m1}, {b, m3}, {n, m6}};
  std::map<int, int> right_stub = {{b, m2}, {c, m7}, {d, m5}, {n, m4}};

  struct StubRecord {
    std::map<int, int> edge_of_marker;  // marker -> new edge id
  };

  auto copy_factor = [&prod, n](const PlabicGraph& src,
                                const std::vector<int>& markers,
                                const std::map<int, int>& stubs) {
    StubRecord rec;
    std::map<int, int> vmap;
    for (const auto& [id, vx] : src.vertices()) {
      if (vx.color != VertexColor::boundary) {
        vmap[id] = prod.add_internal_vertex(vx.color);
      }
    }
    std::map<int, int> boundary_target;  // src boundary vertex -> prod vertex
    std::map<int, int> marker_of_bv;
    for (int label = 1; label <= src.n(); ++label) {
      int marker = markers[label - 1];
      int bv = src.boundary_vertex(label);
      marker_of_bv[bv] = marker;
      auto st = stubs.find(marker);
      boundary_target[bv] =
          st != stubs.end() ? st->second : prod.boundary_vertex(marker);
    }
    std::map<int, int> emap;
    for (int e : src.live_edges()) {
      const PlabicEdge& ed = src.edges()[e];
      auto resolve = [&](int v) {
        auto im = vmap.find(v);
        if (im != vmap.end()) return im->second;
        return boundary_target.at(v);
      };
      // Rotation slots are fixed up afterwards; append for now.
      int ne = prod.add_edge(resolve(ed.u), resolve(ed.v));
      emap[e] = ne;
      for (int v : {ed.u, ed.v}) {
        auto mk = marker_of_bv.find(v);
        if (mk != marker_of_bv.end() && stubs.count(mk->second)) {
          rec.edge_of_marker[mk->second] = ne;
        }
      }
    }
    // Internal rotations copy over with remapped ids (order preserved).
    for (const auto& [id, vx] : src.vertices()) {
      if (vx.color == VertexColor::boundary) continue;
      std::vector<int> rot;
      for (int e : vx.rotation) rot.push_back(emap.at(e));
      prod.vertices_[vmap.at(id)].rotation = rot;
    }
    (void)n;
    return rec;
  };

  StubRecord lrec = copy_factor(left, left_markers, left_stub);
  StubRecord rrec = copy_factor(right, right_markers, right_stub);

  // Skeleton edges (rotations fixed below).
  int e_m1_a = prod.add_edge(m1, prod.boundary_vertex(a));
  int e_m1_b1 = prod.add_edge(m1, b1);
  int e_b1_m2 = prod.add_edge(b1, m2);
  int e_b1_m3 = prod.add_edge(b1, m3);
  int e_m2_b = prod.add_edge(m2, prod.boundary_vertex(b));
  int e_m3_m4 = prod.add_edge(m3, m4);
  int e_m4_b2 = prod.add_edge(m4, b2);
  int e_b2_m5 = prod.add_edge(b2, m5);
  int e_b2_m6 = prod.add_edge(b2, m6);
  int e_m5_b3 = prod.add_edge(m5, b3);
  int e_b3_m7 = prod.add_edge(b3, m7);
  int e_b3_d = prod.add_edge(b3, prod.boundary_vertex(d));
  int e_m6_n = prod.add_edge(m6, prod.boundary_vertex(n));
  int e_m7_c = prod.add_edge(m7, prod.boundary_vertex(c));

  int s_al = lrec.edge_of_marker.at(a);
  int s_bl = lrec.edge_of_marker.at(b);
  int s_nl = lrec.edge_of_marker.at(n);
  int s_br = rrec.edge_of_marker.at(b);
  int s_cr = rrec.edge_of_marker.at(c);
  int s_dr = rrec.edge_of_marker.at(d);
  int s_nr = rrec.edge_of_marker.at(n);

  // Clockwise rotations of the skeleton.  Boundary clockwise reads a, b,
  // right-wing markers, c, d, n, left-wing markers; the left wing hangs on
  // the far side of the spine, so its stubs occupy the trailing slots.
  prod.vertices_[m1].rotation = {e_m1_a, e_m1_b1, s_al};
  prod.vertices_[b1].rotation = {e_b1_m2, e_b1_m3, e_m1_b1};
  prod.vertices_[m2].rotation = {e_m2_b, s_br, e_b1_m2};
  prod.vertices_[m3].rotation = {e_b1_m3, e_m3_m4, s_bl};
  prod.vertices_[m4].rotation = {e_m3_m4, s_nr, e_m4_b2};
  prod.vertices_[b2].rotation = {e_m4_b2, e_b2_m5, e_b2_m6};
  prod.vertices_[m5].rotation = {s_dr, e_m5_b3, e_b2_m5};
  prod.vertices_[b3].rotation = {e_m5_b3, e_b3_m7, e_b3_d};
  prod.vertices_[m6].rotation = {e_b2_m6, e_m6_n, s_nl};
  prod.vertices_[m7].rotation = {s_cr, e_m7_c, e_b3_m7};

  PlabicGraph::Validation val = prod.validate();
  if (!val.ok) {
    throw std::logic_error("product graph invalid: " + val.problems.front());
  }
  return prod;
}

std::set<std::vector<int>> bridge_closure(
    const std::set<std::vector<int>>& bases, int i, int j) {
  std::set<std::vector<int>> out = bases;
  for (const auto& base : bases) {
    bool has_j = std::binary_search(base.begin(), base.end(), j);
    bool has_i = std::binary_search(base.begin(), base.end(), i);
    if (!has_j || has_i) continue;
    std::vector<int> moved;
    for (int x : base) {
      if (x != j) moved.push_back(x);
    }
    moved.push_back(i);
    std::sort(moved.begin(), moved.end());
    out.insert(std::move(moved));
  }
  return out;
}

std::set<std::vector<int>> butterfly_positroid_table(
    const std::set<std::vector<int>>& left_positroid,
    const std::set<std::vector<int>>& right_positroid,
    const std::vector<int>& left_markers, const std::vector<int>& right_markers,
    int n) {
  std::size_t nl = left_markers.size();
  std::size_t nr = right_markers.size();
  int a = left_markers[nl - 3];
  int b = left_markers[nl - 2];
  int c = right_markers[nr - 3];
  int d = right_markers[nr - 2];

  // Primed positroids: the left factor closed under the shear at a toward b;
  // the right factor closed under the shear at d toward n, then at c toward
  // the (new) d.
  std::set<std::vector<int>> left_primed = bridge_closure(left_positroid, a, b);
  std::set<std::vector<int>> right_primed =
      bridge_closure(bridge_closure(right_positroid, d, n), c, d);

  auto contains = [](const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
  };
  auto disjoint = [](const std::vector<int>& x, const std::vector<int>& y) {
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return false;
      if (x[i] < y[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return true;
  };

  std::set<std::vector<int>> bases;
  auto emit = [&](const std::vector<int>& il, int f, const std::vector<int>& ir) {
    if (contains(il, f) || contains(ir, f)) return;
    if (!disjoint(il, ir)) return;
    std::vector<int> base = il;
    base.push_back(f);
    base.insert(base.end(), ir.begin(), ir.end());
    std::sort(base.begin(), base.end());
    bases.insert(std::move(base));
  };

  for (const auto& il : left_positroid) {
    if (!contains(il, b)) {
      for (const auto& ir : right_primed) emit(il, a, ir);
    }
    for (const auto& ir : right_primed) emit(il, b, ir);
  }
  for (const auto& il : left_primed) {
    for (const auto& ir : right_positroid) {
      // The orientations contributing c or d keep both d and n as sinks of
      // the right factor, so its source set must avoid them.
      if (!contains(ir, n)) {
        if (!contains(ir, d)) emit(il, c, ir);
        emit(il, d, ir);
      }
      emit(il, n, ir);
      if (contains(ir, d) && !contains(ir, c)) {
        std::vector<int> swapped;
        for (int x : ir) {
          if (x != d) swapped.push_back(x);
        }
        swapped.push_back(c);
        std::sort(swapped.begin(), swapped.end());
        emit(il, n, swapped);
      }
    }
  }
  return bases;
}

DecoratedPermutation positroid_decorated_permutation(
    const std::set<std::vector<int>>& bases, int n) {
  if (bases.empty()) {
    throw std::invalid_argument("a positroid has at least one basis");
  }
  // Matroid rank over the basis list: rank(S) = max |B cap S|.
  auto rank = [&bases](const std::set<int>& s) {
    std::size_t best = 0;
    for (const auto& basis : bases) {
      std::size_t hits = 0;
      for (int x : basis) {
        if (s.count(x)) ++hits;
      }
      best = std::max(best, hits);
    }
    return best;
  };
  DecoratedPermutation out;
  out.targets.assign(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    bool used = false;
    for (const auto& basis : bases) {
      if (std::binary_search(basis.begin(), basis.end(), i)) {
        used = true;
        break;
      }
    }
    if (!used) {
      out.targets[static_cast<std::size_t>(i - 1)] = i;
      out.fixed[i] = VertexColor::black;
      continue;
    }
    std::set<int> interval;  // columns i+1 .. j, cyclically
    int j = i;
    int target = i;
    bool coloop = true;
    for (int step = 0; step + 1 < n; ++step) {
      j = j % n + 1;
      interval.insert(j);
      std::set<int> with_i = interval;
      with_i.insert(i);
      if (rank(with_i) == rank(interval)) {
        target = j;
        coloop = false;
        break;
      }
    }
    out.targets[static_cast<std::size_t>(i - 1)] = target;
    if (coloop) out.fixed[i] = VertexColor::white;
  }
  return out;
}

}  // namespace amplikit
