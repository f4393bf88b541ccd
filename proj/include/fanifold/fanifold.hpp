// Fanifolds: stratified spaces carrying a functor to the category of lattice
// quotients of fans. Only the combinatorial data is stored — the stratum
// poset, a normal fan per stratum, and exit arrows labeled by a cone and an
// explicit lattice quotient — which is exactly what validation, filtration,
// the barycentric cover and the descent nerve consume.

#pragma once

#include "fanifold/fan.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fanifold {

struct Stratum {
  std::string id;
  int dim = 0;
  int lattice_rank = 0;  // rank of M_S = codimension in the fanifold
  Fan normal_fan;        // Σ_S
  bool is_closed = false;
};

/// Exit arrow S → S′: the normal fan of S′ is Σ_S/cone, presented by an
/// explicit surjection M_S ↠ M_{S′} whose kernel saturates the cone.
struct ExitArrow {
  std::string source;
  std::string target;
  Cone cone;                // in the source's normal fan
  QuotientMap lattice_map;  // M_S ↠ M_{S'}
};

struct Fanifold {
  int dim = 0;
  bool closed = false;
  std::vector<Stratum> strata;    // sorted by id
  std::vector<ExitArrow> arrows;  // sorted by (source, target, cone)

  const Stratum* find(const std::string& id) const {
    for (const Stratum& s : strata)
      if (s.id == id) return &s;
    return nullptr;
  }

  std::vector<const ExitArrow*> arrows_from(const std::string& id) const {
    std::vector<const ExitArrow*> out;
    for (const ExitArrow& a : arrows)
      if (a.source == id) out.push_back(&a);
    return out;
  }

  std::vector<const ExitArrow*> arrows_into(const std::string& id) const {
    std::vector<const ExitArrow*> out;
    for (const ExitArrow& a : arrows)
      if (a.target == id) out.push_back(&a);
    return out;
  }

  const ExitArrow* find_arrow(const std::string& source, const std::string& target) const {
    for (const ExitArrow& a : arrows)
      if (a.source == source && a.target == target) return &a;
    return nullptr;
  }

  void sort_data() {
    std::sort(strata.begin(), strata.end(),
              [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
    std::sort(arrows.begin(), arrows.end(), [](const ExitArrow& a, const ExitArrow& b) {
      if (a.source != b.source) return a.source < b.source;
      if (a.target != b.target) return a.target < b.target;
      return a.cone < b.cone;
    });
  }
};

/// Definition checks, report style, with witnesses:
///   arrow-quotient      Σ_{S′} ≅ Σ_S/cone via the supplied lattice map, whose
///                       kernel must saturate the cone's span;
///   composition-square  for composable arrows the direct arrow exists, its
///                       projection is the literal matrix product, and its
///                       cone is the wedge of the intermediate data;
///   exit-poset          arrows out of S biject with the nonzero cones of Σ_S,
///                       compatibly with the face order;
///   dimension           dim S + rank M_S = dim Φ and arrows increase dim.
inline Report validate_fanifold(const Fanifold& ff) {
  Report rep;

  Clause& wellformed = rep.add("well-formed");
  {
    std::set<std::string> ids;
    for (const Stratum& s : ff.strata)
      if (!ids.insert(s.id).second) rep.fail(wellformed, "duplicate stratum id " + s.id);
    for (const ExitArrow& a : ff.arrows) {
      if (!ff.find(a.source)) rep.fail(wellformed, "arrow from unknown stratum " + a.source);
      if (!ff.find(a.target)) rep.fail(wellformed, "arrow into unknown stratum " + a.target);
    }
  }
  if (!wellformed.pass) return rep;

  Clause& dims = rep.add("dimension");
  for (const Stratum& s : ff.strata) {
    if (s.lattice_rank != s.normal_fan.rank)
      rep.fail(dims, "stratum " + s.id + ": lattice rank != normal fan rank");
    if (s.dim + s.lattice_rank != ff.dim)
      rep.fail(dims, "stratum " + s.id + ": dim + rank != dim of the fanifold");
  }
  for (const ExitArrow& a : ff.arrows)
    if (ff.find(a.target)->dim <= ff.find(a.source)->dim)
      rep.fail(dims, "arrow " + a.source + " -> " + a.target + " does not increase dimension");

  Clause& quot = rep.add("arrow-quotient");
  for (const ExitArrow& a : ff.arrows) {
    const Stratum* src = ff.find(a.source);
    const Stratum* tgt = ff.find(a.target);
    std::string name = a.source + " -> " + a.target;
    if (!src->normal_fan.has_cone(a.cone)) {
      rep.fail(quot, "arrow " + name + ": cone " + cone_token(a.cone) + " not in source fan");
      continue;
    }
    const QuotientMap& q = a.lattice_map;
    if (q.source_rank != src->lattice_rank || q.target_rank != tgt->lattice_rank) {
      rep.fail(quot, "arrow " + name + ": lattice map ranks disagree with strata");
      continue;
    }
    Mat sat = saturate(src->normal_fan.cone_matrix(a.cone), src->lattice_rank);
    if (hermite_normal_form(q.kernel_basis).hnf != sat) {
      rep.fail(quot, "arrow " + name + ": kernel basis does not saturate the cone");
      continue;
    }
    if (!(q.projection * q.kernel_basis.transposed()).is_zero()) {
      rep.fail(quot, "arrow " + name + ": projection does not annihilate its kernel");
      continue;
    }
    QuotientFanResult canonical = quotient_fan(src->normal_fan, a.cone);
    auto v = factor_through(canonical.map.projection, q.projection);
    if (!v || !is_unimodular(*v)) {
      rep.fail(quot, "arrow " + name + ": lattice map does not factor the canonical quotient");
      continue;
    }
    if (!fan_iso_from_matrix(canonical.fan, tgt->normal_fan, *v))
      rep.fail(quot, "arrow " + name + ": induced map is not an isomorphism onto the target fan");
  }

  Clause& square = rep.add("composition-square");
  for (const ExitArrow& a : ff.arrows)
    for (const ExitArrow& b : ff.arrows) {
      if (b.source != a.target) continue;
      std::string name = a.source + " -> " + a.target + " -> " + b.target;
      // the composed morphism: direct arrow must exist with matching data
      const ExitArrow* direct = nullptr;
      Mat composed = b.lattice_map.projection * a.lattice_map.projection;
      for (const ExitArrow& c : ff.arrows) {
        if (c.source != a.source || c.target != b.target) continue;
        if (c.lattice_map.projection == composed) { direct = &c; break; }
      }
      if (!direct) {
        rep.fail(square, "no direct arrow with the composed lattice map for " + name);
        continue;
      }
      // cone of the direct arrow = wedge of a.cone with the lift of b.cone
      QuotientFanResult qa = quotient_fan(ff.find(a.source)->normal_fan, a.cone);
      auto v = factor_through(qa.map.projection, a.lattice_map.projection);
      if (!v) continue;  // already reported by arrow-quotient
      std::optional<Cone> lifted;
      // pull b.cone back through the ray bijection induced by v
      if (auto iso = fan_iso_from_matrix(qa.fan, ff.find(a.target)->normal_fan, *v)) {
        Cone preimage;
        for (int i : b.cone) {
          for (std::size_t j = 0; j < iso->ray_bijection.size(); ++j)
            if (iso->ray_bijection[j] == i) preimage.push_back(int(j));
        }
        std::sort(preimage.begin(), preimage.end());
        for (const auto& [tau, image] : qa.cone_map)
          if (image == preimage) { lifted = tau; break; }
      }
      if (!lifted) {
        rep.fail(square, "cannot lift the second cone for " + name);
        continue;
      }
      if (direct->cone != *lifted)
        rep.fail(square, "direct arrow cone " + cone_token(direct->cone) + " differs from wedge " +
                             cone_token(*lifted) + " for " + name);
    }

  Clause& exitp = rep.add("exit-poset");
  for (const Stratum& s : ff.strata) {
    std::vector<const ExitArrow*> out = ff.arrows_from(s.id);
    std::set<Cone> seen;
    for (const ExitArrow* a : out) {
      if (a->cone.empty()) rep.fail(exitp, "arrow out of " + s.id + " labeled by the zero cone");
      if (!seen.insert(a->cone).second)
        rep.fail(exitp, "two arrows out of " + s.id + " share cone " + cone_token(a->cone));
    }
    std::set<Cone> nonzero;
    for (const Cone& c : s.normal_fan.cones)
      if (!c.empty()) nonzero.insert(c);
    if (seen != nonzero) {
      rep.fail(exitp, "arrows out of " + s.id + " do not biject with nonzero cones (" +
                          std::to_string(seen.size()) + " vs " + std::to_string(nonzero.size()) +
                          ")");
      continue;
    }
    // order compatibility: cone inclusion ⇔ factorizing arrow
    for (const ExitArrow* a : out)
      for (const ExitArrow* b : out) {
        bool face = is_face_of(a->cone, b->cone);
        bool factors = false;
        for (const ExitArrow& mid : ff.arrows) {
          if (mid.source != a->target || mid.target != b->target) continue;
          if (mid.lattice_map.projection * a->lattice_map.projection ==
              b->lattice_map.projection) {
            factors = true;
            break;
          }
        }
        if (a->cone == b->cone) factors = true;
        if (face != factors)
          rep.fail(exitp, "order mismatch out of " + s.id + " between cones " +
                              cone_token(a->cone) + " and " + cone_token(b->cone));
      }
  }

  return rep;
}

inline std::string sphere_stratum_id(const Cone& c) {
  std::string s = "s";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += "_";
    s += std::to_string(c[i]);
  }
  return s;
}

/// The canonical fanifold structure on the intersection of a complete fan
/// with the unit sphere: one stratum per nonzero cone σ, of dimension
/// dim σ − 1, with normal data (Σ/σ, M/⟨σ⟩); one arrow per proper face pair.
/// Lattice maps are chosen over the canonical quotients of the ambient
/// lattice, so all compositions hold as literal matrix identities.
inline Fanifold sphere_fanifold(const Fan& f) {
  if (f.rank < 1) throw std::invalid_argument("sphere_fanifold: rank must be at least 1");
  if (!is_complete(f))
    throw std::invalid_argument("sphere_fanifold: fan is not complete");

  Fanifold ff;
  ff.dim = f.rank - 1;
  ff.closed = true;

  std::map<Cone, QuotientFanResult> quotients;
  for (const Cone& c : f.cones) {
    if (c.empty()) continue;
    quotients.emplace(c, quotient_fan(f, c));
  }
  for (const auto& [c, q] : quotients) {
    Stratum s;
    s.id = sphere_stratum_id(c);
    s.dim = int(c.size()) - 1;
    s.lattice_rank = q.map.target_rank;
    s.normal_fan = q.fan;
    s.is_closed = c.size() == 1;  // vertices are the closed strata
    ff.strata.push_back(std::move(s));
  }
  for (const auto& [sigma, qs] : quotients) {
    for (const Cone& tau : star(f, sigma)) {
      if (tau == sigma) continue;
      const QuotientFanResult& qt = quotients.at(tau);
      ExitArrow a;
      a.source = sphere_stratum_id(sigma);
      a.target = sphere_stratum_id(tau);
      a.cone = qs.cone_map.at(tau);
      auto proj = factor_through(qs.map.projection, qt.map.projection);
      if (!proj) throw std::logic_error("sphere_fanifold: quotients fail to factor");
      a.lattice_map.source_rank = qs.map.target_rank;
      a.lattice_map.target_rank = qt.map.target_rank;
      a.lattice_map.projection = *proj;
      a.lattice_map.kernel_basis = right_kernel(*proj);
      ff.arrows.push_back(std::move(a));
    }
  }
  ff.sort_data();
  return ff;
}

/// One record per stratum, ordered by dimension then id: the combinatorial
/// shadow of attaching the handle T*M̂_S × T*S∘ along the arrows arriving
/// from the previous filtration level.
struct HandleRecord {
  int level = 0;  // dimension at which the stratum is attached
  std::string stratum;
  int lattice_rank = 0;
  Fan fan;
  std::vector<ExitArrow> gluing;  // arrows into the stratum from lower strata
};

struct Filtration {
  std::vector<Fanifold> levels;       // levels[k] = sub-fanifold on strata of dim ≤ k
  std::vector<HandleRecord> schedule;
};

inline Filtration filtration(const Fanifold& ff) {
  Filtration out;
  for (int k = 0; k <= ff.dim; ++k) {
    Fanifold level;
    level.dim = ff.dim;
    std::set<std::string> kept;
    for (const Stratum& s : ff.strata)
      if (s.dim <= k) {
        level.strata.push_back(s);
        kept.insert(s.id);
      }
    for (const ExitArrow& a : ff.arrows)
      if (kept.count(a.source) && kept.count(a.target)) level.arrows.push_back(a);
    level.closed = ff.closed && level.strata.size() == ff.strata.size();
    level.sort_data();
    out.levels.push_back(std::move(level));
  }
  for (const Stratum& s : ff.strata) {
    HandleRecord rec;
    rec.level = s.dim;
    rec.stratum = s.id;
    rec.lattice_rank = s.lattice_rank;
    rec.fan = s.normal_fan;
    for (const ExitArrow& a : ff.arrows)
      if (a.target == s.id) rec.gluing.push_back(a);
    out.schedule.push_back(std::move(rec));
  }
  std::sort(out.schedule.begin(), out.schedule.end(),
            [](const HandleRecord& a, const HandleRecord& b) {
              if (a.level != b.level) return a.level < b.level;
              return a.stratum < b.stratum;
            });
  return out;
}

/// Replays a handle schedule: the strata and arrows it reconstructs must be
/// exactly those of the fanifold it was computed from.
inline bool filtration_replays(const Fanifold& ff, const Filtration& fil) {
  std::set<std::string> strata;
  std::vector<ExitArrow> arrows;
  for (const HandleRecord& rec : fil.schedule) {
    if (!strata.insert(rec.stratum).second) return false;
    for (const ExitArrow& a : rec.gluing) arrows.push_back(a);
  }
  std::set<std::string> want;
  for (const Stratum& s : ff.strata) want.insert(s.id);
  if (strata != want) return false;
  if (arrows.size() != ff.arrows.size()) return false;
  auto key = [](const ExitArrow& a) { return std::make_tuple(a.source, a.target, a.cone); };
  std::set<std::tuple<std::string, std::string, Cone>> got, expected;
  for (const ExitArrow& a : arrows) got.insert(key(a));
  for (const ExitArrow& a : ff.arrows) expected.insert(key(a));
  return got == expected;
}

/// Closed star of a vertex in the barycentric subdivision, recorded as the
/// set of exit chains starting at the vertex, together with the skeleton fan
/// of the region (the vertex's normal fan).
struct CoverRegion {
  std::string vertex;                          // a 0-stratum
  std::set<std::vector<std::string>> flags;    // chains P = S_0 → S_1 → ... → S_m
  Fan skeleton_fan;
};

/// One region per 0-stratum of a closed fanifold. Requires every stratum to
/// be reachable from some 0-stratum; lower-dimensional closed strata not
/// adjacent to higher strata would start extra partitions, which this model
/// does not represent.
inline std::vector<CoverRegion> barycentric_cover(const Fanifold& ff) {
  if (!ff.closed)
    throw std::invalid_argument("barycentric_cover: fanifold is not closed");
  std::set<std::string> reachable;
  for (const Stratum& s : ff.strata)
    if (s.dim == 0) reachable.insert(s.id);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const ExitArrow& a : ff.arrows)
      if (reachable.count(a.source) && !reachable.count(a.target)) {
        reachable.insert(a.target);
        grew = true;
      }
  }
  for (const Stratum& s : ff.strata)
    if (!reachable.count(s.id))
      throw std::invalid_argument("barycentric_cover: stratum " + s.id +
                                  " is not adjacent to any 0-stratum");

  std::vector<CoverRegion> out;
  for (const Stratum& s : ff.strata) {
    if (s.dim != 0) continue;
    CoverRegion region;
    region.vertex = s.id;
    region.skeleton_fan = s.normal_fan;
    std::vector<std::string> chain = {s.id};
    auto walk = [&](auto&& self, const std::string& at) -> void {
      region.flags.insert(chain);
      for (const ExitArrow* a : ff.arrows_from(at)) {
        if (std::find(chain.begin(), chain.end(), a->target) != chain.end()) continue;
        chain.push_back(a->target);
        self(self, a->target);
        chain.pop_back();
      }
    };
    walk(walk, s.id);
    out.push_back(std::move(region));
  }
  std::sort(out.begin(), out.end(),
            [](const CoverRegion& a, const CoverRegion& b) { return a.vertex < b.vertex; });
  return out;
}

/// A simplex of the cover nerve: the vertices whose regions meet, the minimal
/// strata realizing the intersection, and (when the minimal stratum is
/// unique) the fan of the intersection piece's skeleton.
struct NerveSimplex {
  std::vector<std::string> vertices;        // sorted 0-stratum ids
  std::vector<std::string> minimal_strata;  // minimal common upper bounds
  std::optional<Fan> piece_fan;

  bool operator<(const NerveSimplex& o) const {
    if (vertices.size() != o.vertices.size()) return vertices.size() < o.vertices.size();
    return vertices < o.vertices;
  }
};

struct Nerve {
  std::vector<std::string> vertex_ids;
  std::vector<NerveSimplex> simplices;  // sorted by (dim, vertices)

  const NerveSimplex* find(const std::vector<std::string>& vertices) const {
    for (const NerveSimplex& s : simplices)
      if (s.vertices == vertices) return &s;
    return nullptr;
  }
};

/// Vertices span a simplex iff some stratum has all of them in its closure;
/// the simplex is labeled with the minimal such strata.
inline Nerve nerve(const std::vector<CoverRegion>& regions, const Fanifold& ff) {
  // reachability order: S ≤ T iff T appears in a chain through S
  std::map<std::string, std::set<std::string>> above;  // stratum -> strata reachable from it
  for (const Stratum& s : ff.strata) above[s.id].insert(s.id);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const ExitArrow& a : ff.arrows)
      for (auto& [id, ups] : above)
        if (ups.count(a.source) && !ups.count(a.target)) {
          ups.insert(a.target);
          grew = true;
        }
  }
  Nerve out;
  for (const CoverRegion& r : regions) out.vertex_ids.push_back(r.vertex);
  std::sort(out.vertex_ids.begin(), out.vertex_ids.end());

  // candidate simplices: subsets of { vertices below S } over all strata S
  std::set<std::vector<std::string>> simplices;
  for (const Stratum& s : ff.strata) {
    std::vector<std::string> below;
    for (const std::string& v : out.vertex_ids)
      if (above.at(v).count(s.id)) below.push_back(v);
    const std::size_t k = below.size();
    if (k == 0) continue;
    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t(1) << i)) sub.push_back(below[i]);
      simplices.insert(std::move(sub));
    }
  }
  for (const std::vector<std::string>& verts : simplices) {
    NerveSimplex simplex;
    simplex.vertices = verts;
    // common upper bounds of all vertices
    std::vector<std::string> common;
    for (const Stratum& s : ff.strata) {
      bool all = true;
      for (const std::string& v : verts)
        if (!above.at(v).count(s.id)) { all = false; break; }
      if (all) common.push_back(s.id);
    }
    for (const std::string& c : common) {
      bool minimal = true;
      for (const std::string& d : common)
        if (d != c && above.at(d).count(c)) { minimal = false; break; }
      if (minimal) simplex.minimal_strata.push_back(c);
    }
    std::sort(simplex.minimal_strata.begin(), simplex.minimal_strata.end());
    if (simplex.minimal_strata.size() == 1)
      simplex.piece_fan = ff.find(simplex.minimal_strata[0])->normal_fan;
    out.simplices.push_back(std::move(simplex));
  }
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

}  // namespace fanifold
