// Orbit-closure gluing diagrams and the diagram matcher.
//
// A toric variety is represented by its fan only; a gluing diagram is a
// poset of objects (fans with lattice data) with an arrow of quotient data on
// every strict comparable pair. The boundary diagram of a fan presents the
// colimit of nontrivial orbit closures; the diagram of a fanifold presents
// the colimit of its normal toric varieties over the exit order. The matcher
// decides diagram isomorphism with the canonical identification tried first.

#pragma once

#include "fanifold/fanifold.hpp"
#include "fanifold/fltz.hpp"
#include "fanifold/poset.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fanifold {

/// Closure of the torus orbit of a nonzero cone: the toric variety of Σ/σ,
/// with its reduced structure implicit.
struct OrbitClosure {
  Cone cone;
  Fan fan;              // Σ/σ
  QuotientMap quotient; // M ↠ M/⟨σ⟩
};

inline OrbitClosure orbit_closure(const Fan& f, const Cone& sigma) {
  if (sigma.empty())
    throw std::invalid_argument("orbit_closure: the zero cone gives the dense orbit");
  QuotientFanResult q = quotient_fan(f, sigma);
  return OrbitClosure{sigma, std::move(q.fan), std::move(q.map)};
}

struct DiagramObject {
  std::string id;
  Fan fan;
  std::optional<Cone> base_cone;          // attached cone when the diagram has a base fan
  std::optional<QuotientMap> base_quotient;  // presentation from the base lattice
};

/// Quotient data carried by a strict comparable pair i < j: the cone of the
/// morphism in object i's fan and the surjection of lattices. Geometrically
/// the arrow is the closed immersion of the j-object into the i-object.
struct DiagramArrow {
  Cone cone;
  QuotientMap map;
};

struct GluingDiagram {
  std::vector<DiagramObject> objects;  // sorted by id
  Poset index_poset;                   // order on objects (σ ⊆ τ / exit order)
  std::map<std::pair<int, int>, DiagramArrow> arrows;  // keyed by (i, j), i < j strictly
  std::optional<Fan> base;             // base fan, for boundary diagrams

  int index_of(const std::string& id) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i].id == id) return int(i);
    return -1;
  }
};

inline std::string orbit_object_id(const Cone& c) {
  std::string s = "c";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += "_";
    s += std::to_string(c[i]);
  }
  return s;
}

/// Diagram of nontrivial orbit closures of a fan: objects are the nonzero
/// cones with fans Σ/σ, ordered by cone containment; σ ⊆ τ carries the
/// quotient Σ/σ → Σ/τ presenting the closed immersion of the τ-closure into
/// the σ-closure.
inline GluingDiagram boundary_diagram(const Fan& f) {
  std::vector<Cone> nonzero;
  for (const Cone& c : f.cones_sorted())
    if (!c.empty()) nonzero.push_back(c);
  if (nonzero.empty())
    throw std::invalid_argument("boundary_diagram: fan has no nonzero cone, boundary is empty");

  GluingDiagram d;
  d.base = f;
  std::map<Cone, QuotientFanResult> quotients;
  for (const Cone& c : nonzero) quotients.emplace(c, quotient_fan(f, c));
  for (const Cone& c : nonzero) {
    const QuotientFanResult& q = quotients.at(c);
    DiagramObject obj;
    obj.id = orbit_object_id(c);
    obj.fan = q.fan;
    obj.base_cone = c;
    obj.base_quotient = q.map;
    d.objects.push_back(std::move(obj));
  }
  const int n = int(nonzero.size());
  d.index_poset.labels.reserve(n);
  for (const Cone& c : nonzero) d.index_poset.labels.push_back(cone_token(c));
  d.index_poset.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.index_poset.leq[i][j] = is_face_of(nonzero[i], nonzero[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !d.index_poset.leq[i][j]) continue;
      const QuotientFanResult& qs = quotients.at(nonzero[i]);
      const QuotientFanResult& qt = quotients.at(nonzero[j]);
      DiagramArrow a;
      a.cone = qs.cone_map.at(nonzero[j]);
      auto proj = factor_through(qs.map.projection, qt.map.projection);
      if (!proj) throw std::logic_error("boundary_diagram: quotients fail to factor");
      a.map.source_rank = qs.map.target_rank;
      a.map.target_rank = qt.map.target_rank;
      a.map.projection = *proj;
      a.map.kernel_basis = right_kernel(*proj);
      d.arrows[{i, j}] = std::move(a);
    }
  return d;
}

/// O(σ)̄ ∩ O(σ′)̄ = O(σ∧σ′)̄: the index of the smallest cone containing both,
/// or nullopt for disjoint closures. Diagrams with a base fan answer through
/// the fan's wedge; abstract diagrams take the minimum common upper bound.
inline std::optional<int> orbit_intersection(const GluingDiagram& d, int s1, int s2) {
  if (s1 < 0 || s2 < 0 || s1 >= int(d.objects.size()) || s2 >= int(d.objects.size()))
    throw std::invalid_argument("orbit_intersection: index out of range");
  if (d.base && d.objects[s1].base_cone && d.objects[s2].base_cone) {
    auto w = wedge(*d.base, *d.objects[s1].base_cone, *d.objects[s2].base_cone);
    if (!w) return std::nullopt;
    for (std::size_t i = 0; i < d.objects.size(); ++i)
      if (d.objects[i].base_cone == *w) return int(i);
    return std::nullopt;
  }
  std::vector<int> upper;
  for (int k = 0; k < int(d.objects.size()); ++k)
    if (d.index_poset.leq[s1][k] && d.index_poset.leq[s2][k]) upper.push_back(k);
  if (upper.empty()) return std::nullopt;
  for (int candidate : upper) {
    bool minimum = true;
    for (int other : upper)
      if (!d.index_poset.leq[candidate][other]) { minimum = false; break; }
    if (minimum) return candidate;
  }
  return std::nullopt;  // no unique minimum
}

/// Diagram of the normal toric varieties of a fanifold over its exit order.
/// Requires at most one arrow per stratum pair (the exit order is a poset).
inline GluingDiagram fanifold_bside(const Fanifold& ff) {
  GluingDiagram d;
  for (const Stratum& s : ff.strata) {
    DiagramObject obj;
    obj.id = s.id;
    obj.fan = s.normal_fan;
    d.objects.push_back(std::move(obj));
  }
  const int n = int(d.objects.size());
  d.index_poset.labels.reserve(n);
  for (const Stratum& s : ff.strata) d.index_poset.labels.push_back(s.id);
  d.index_poset.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) d.index_poset.leq[i][i] = true;
  for (const ExitArrow& a : ff.arrows) {
    int i = d.index_of(a.source), j = d.index_of(a.target);
    if (i < 0 || j < 0) continue;
    d.index_poset.leq[i][j] = true;
    auto key = std::make_pair(i, j);
    if (d.arrows.count(key))
      throw std::invalid_argument("fanifold_bside: multiple arrows between " + a.source +
                                  " and " + a.target);
    d.arrows[key] = DiagramArrow{a.cone, a.lattice_map};
  }
  return d;
}

/// Diagram indexed by the nerve of the barycentric cover: one object per
/// simplex, labeled with the fan of the intersection piece's skeleton, with
/// quotient data taken from the fanifold's arrows between the minimal strata.
inline GluingDiagram nerve_diagram(const Nerve& nv, const Fanifold& ff) {
  GluingDiagram d;
  std::vector<std::string> labels;
  for (const NerveSimplex& s : nv.simplices) {
    if (s.minimal_strata.size() != 1)
      throw std::invalid_argument("nerve_diagram: intersection stratum not unique for a simplex");
    DiagramObject obj;
    obj.id = s.minimal_strata[0];
    obj.fan = *s.piece_fan;
    d.objects.push_back(std::move(obj));
    labels.push_back(s.minimal_strata[0]);
  }
  const int n = int(d.objects.size());
  d.index_poset.labels = labels;
  d.index_poset.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& a = nv.simplices[i].vertices;
      const auto& b = nv.simplices[j].vertices;
      d.index_poset.leq[i][j] = std::includes(b.begin(), b.end(), a.begin(), a.end());
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !d.index_poset.leq[i][j]) continue;
      const ExitArrow* arrow = ff.find_arrow(d.objects[i].id, d.objects[j].id);
      if (!arrow)
        throw std::invalid_argument("nerve_diagram: no exit arrow between strata " +
                                    d.objects[i].id + " and " + d.objects[j].id);
      d.arrows[{i, j}] = DiagramArrow{arrow->cone, arrow->lattice_map};
    }
  return d;
}

struct MatchReport {
  bool pass = false;
  std::optional<std::vector<int>> poset_iso;  // a-index -> b-index
  std::vector<std::string> object_matches;    // per-object outcome, a-order
  std::vector<std::string> witnesses;         // failures
};

namespace detail {

inline std::string digit_suffix(const std::string& id) {
  std::size_t i = 0;
  while (i < id.size() && !(id[i] >= '0' && id[i] <= '9')) ++i;
  return id.substr(i);
}

// Verifies one candidate poset iso by choosing object isomorphisms coherently
// along a linear extension: objects with an already-matched predecessor are
// forced by naturality U_tgt · P_a = P_b · U_src, minimal objects are free and
// searched with backtracking.
inline bool try_poset_iso(const GluingDiagram& a, const GluingDiagram& b,
                          const std::vector<int>& map, MatchReport& out) {
  const int n = int(a.objects.size());
  if (int(b.objects.size()) != n) return false;
  std::vector<int> order = a.index_poset.linear_extension();
  std::vector<std::optional<Mat>> u(n);

  auto final_check = [&]() -> bool {
    std::vector<FanIso> isos(n);
    for (int i = 0; i < n; ++i) {
      auto iso = fan_iso_from_matrix(a.objects[i].fan, b.objects[map[i]].fan, *u[i]);
      if (!iso) return false;
      isos[i] = *iso;
    }
    if (a.arrows.size() != b.arrows.size()) return false;
    for (const auto& [key, arrow] : a.arrows) {
      auto [src, tgt] = key;
      auto it = b.arrows.find({map[src], map[tgt]});
      if (it == b.arrows.end()) return false;
      if (*u[tgt] * arrow.map.projection != it->second.map.projection * *u[src]) return false;
      Cone image;
      for (int r : arrow.cone) image.push_back(isos[src].ray_bijection[r]);
      std::sort(image.begin(), image.end());
      if (image != it->second.cone) return false;
    }
    return true;
  };

  constexpr std::size_t kIsoLimit = 48;
  auto assign = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == order.size()) return final_check();
    int i = order[pos];
    // forced by any arrow from an already assigned object
    for (const auto& [key, arrow] : a.arrows) {
      auto [src, tgt] = key;
      if (tgt != i || !u[src]) continue;
      auto it = b.arrows.find({map[src], map[tgt]});
      if (it == b.arrows.end()) { u[i].reset(); return false; }
      auto forced = factor_through(arrow.map.projection, it->second.map.projection * *u[src]);
      if (!forced || !is_unimodular(*forced) || (u[i] && *u[i] != *forced)) {
        u[i].reset();
        return false;
      }
      u[i] = *forced;
    }
    if (u[i]) {
      bool ok = self(self, pos + 1);
      if (!ok) u[i].reset();
      return ok;
    }
    for (const FanIso& iso :
         fan_isomorphisms(a.objects[i].fan, b.objects[map[i]].fan, kIsoLimit)) {
      u[i] = iso.lattice_iso;
      if (self(self, pos + 1)) return true;
      u[i].reset();
    }
    return false;
  };

  if (!assign(assign, 0)) {
    out.witnesses.push_back("no coherent system of object isomorphisms for this index matching");
    return false;
  }
  out.poset_iso = map;
  out.object_matches.clear();
  for (int i = 0; i < n; ++i)
    out.object_matches.push_back(a.objects[i].id + " == " + b.objects[map[i]].id);
  return true;
}

// backtracking search for order isomorphisms, pruned by object invariants
inline void search_poset_isos(const GluingDiagram& a, const GluingDiagram& b,
                              std::vector<int>& map, std::vector<bool>& used, std::size_t pos,
                              MatchReport& out, int& budget, bool& done) {
  if (done || budget <= 0) return;
  const int n = int(a.objects.size());
  if (pos == std::size_t(n)) {
    --budget;
    MatchReport scratch;
    if (try_poset_iso(a, b, map, scratch)) {
      out = scratch;
      out.pass = true;
      done = true;
    }
    return;
  }
  int i = int(pos);
  for (int cand = 0; cand < n && !done; ++cand) {
    if (used[cand]) continue;
    const Fan& fa = a.objects[i].fan;
    const Fan& fb = b.objects[cand].fan;
    if (fa.rank != fb.rank || fa.rays.size() != fb.rays.size() ||
        fa.cones.size() != fb.cones.size())
      continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) {
      if (a.index_poset.leq[i][j] != b.index_poset.leq[cand][map[j]]) ok = false;
      if (a.index_poset.leq[j][i] != b.index_poset.leq[map[j]][cand]) ok = false;
    }
    if (!ok) continue;
    map[i] = cand;
    used[cand] = true;
    search_poset_isos(a, b, map, used, pos + 1, out, budget, done);
    used[cand] = false;
    map[i] = -1;
  }
}

}  // namespace detail

/// Decides whether two gluing diagrams are isomorphic: an order isomorphism
/// of index posets carrying object fans to object fans and intertwining the
/// arrow data. The canonical identification by shared index tokens is tried
/// first, then a pruned search over order isomorphisms.
inline MatchReport match_bside(const GluingDiagram& a, const GluingDiagram& b) {
  MatchReport out;
  if (a.objects.size() != b.objects.size()) {
    out.witnesses.push_back("object counts differ: " + std::to_string(a.objects.size()) +
                            " vs " + std::to_string(b.objects.size()));
    return out;
  }
  const int n = int(a.objects.size());
  // canonical candidate: objects with the same digit suffix correspond
  {
    std::map<std::string, int> b_by_suffix;
    bool usable = true;
    for (int j = 0; j < n; ++j)
      if (!b_by_suffix.emplace(detail::digit_suffix(b.objects[j].id), j).second) usable = false;
    std::vector<int> map(n, -1);
    std::vector<bool> hit(n, false);
    for (int i = 0; usable && i < n; ++i) {
      auto it = b_by_suffix.find(detail::digit_suffix(a.objects[i].id));
      if (it == b_by_suffix.end() || hit[it->second]) usable = false;
      else {
        map[i] = it->second;
        hit[it->second] = true;
      }
    }
    if (usable && a.index_poset.is_order_iso(b.index_poset, map)) {
      MatchReport scratch;
      if (detail::try_poset_iso(a, b, map, scratch)) {
        scratch.pass = true;
        return scratch;
      }
    }
  }
  // fallback: search
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  int budget = 5000;
  bool done = false;
  detail::search_poset_isos(a, b, map, used, 0, out, budget, done);
  if (!done && out.witnesses.empty())
    out.witnesses.push_back("no order isomorphism matches the diagrams");
  return out;
}

/// The descent shadow: the nerve-of-cover diagram of a sphere fanifold must
/// coincide with the orbit-closure diagram of the underlying fan.
inline MatchReport match_hms(const Nerve& nv, const Fanifold& ff, const GluingDiagram& b) {
  return match_bside(nerve_diagram(nv, ff), b);
}

}  // namespace fanifold
