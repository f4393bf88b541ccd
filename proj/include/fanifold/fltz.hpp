// Combinatorics of the FLTZ skeleton L(Σ) = ⋃_σ σ^⊥ × σ inside T*(torus):
// its half-dimensional strata, the strata of its boundary at infinity, and
// the cover of that boundary by the pieces L(Σ/σ) × ∂∞σ, anti-indexed by the
// nonzero cones.
//
// A boundary point is recorded purely combinatorially as a pair (σ, τ) with
// 0 ≠ σ ⊆ τ: direction at infinity in the relative interior of σ, torus
// coordinate in the subtorus τ^⊥.

#pragma once

#include "fanifold/fan.hpp"

#include <vector>

namespace fanifold {

struct FltzStratum {
  Cone cone;
  PerpLattice perp;  // the subtorus σ^⊥
  int dim = 0;       // (rank − dim σ) + dim σ, always the rank
};

struct BoundaryStratum {
  Cone direction_cone;  // σ, nonzero
  Cone ambient_cone;    // τ ⊇ σ
  int dim = 0;          // (rank − dim τ) + (dim σ − 1)

  bool operator==(const BoundaryStratum& o) const {
    return direction_cone == o.direction_cone && ambient_cone == o.ambient_cone;
  }
  bool operator<(const BoundaryStratum& o) const {
    if (direction_cone != o.direction_cone) return direction_cone < o.direction_cone;
    return ambient_cone < o.ambient_cone;
  }
};

inline std::string boundary_token(const BoundaryStratum& s) {
  return "(" + cone_token(s.direction_cone) + "," + cone_token(s.ambient_cone) + ")";
}

struct CoverPiece {
  Cone index_cone;                      // nonzero σ
  QuotientMap quotient;                 // M ↠ M/⟨σ⟩
  Fan fiber_fan;                        // Σ/σ
  std::vector<BoundaryStratum> members; // (σ′, τ) with σ ⊆ σ′
};

/// One stratum σ^⊥ × σ per cone, each of dimension rank.
inline std::vector<FltzStratum> fltz_strata(const Fan& f) {
  std::vector<FltzStratum> out;
  for (const Cone& c : f.cones_sorted()) {
    FltzStratum s;
    s.cone = c;
    s.perp = perp_lattice(f.rank, f.cone_matrix(c));
    s.dim = s.perp.basis.rows() + int(c.size());
    out.push_back(std::move(s));
  }
  return out;
}

/// Exactly the pairs (σ, τ) with 0 ≠ σ ⊆ τ; empty when the fan has only the
/// zero cone (the compact-torus case, whose skeleton has empty boundary).
inline std::vector<BoundaryStratum> boundary_strata(const Fan& f) {
  std::vector<BoundaryStratum> out;
  for (const Cone& sigma : f.cones_sorted()) {
    if (sigma.empty()) continue;
    for (const Cone& tau : star(f, sigma)) {
      BoundaryStratum s;
      s.direction_cone = sigma;
      s.ambient_cone = tau;
      s.dim = (f.rank - int(tau.size())) + (int(sigma.size()) - 1);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// One piece per nonzero σ, carrying the fiber fan Σ/σ and the strata it
/// covers under the membership law (σ′, τ) ∈ piece(σ) ⇔ σ ⊆ σ′.
inline std::vector<CoverPiece> cover_pieces(const Fan& f) {
  std::vector<BoundaryStratum> strata = boundary_strata(f);
  std::vector<CoverPiece> out;
  for (const Cone& sigma : f.cones_sorted()) {
    if (sigma.empty()) continue;
    CoverPiece piece;
    piece.index_cone = sigma;
    QuotientFanResult q = quotient_fan(f, sigma);
    piece.quotient = q.map;
    piece.fiber_fan = q.fan;
    for (const BoundaryStratum& s : strata)
      if (is_face_of(sigma, s.direction_cone)) piece.members.push_back(s);
    out.push_back(std::move(piece));
  }
  return out;
}

/// The four cover laws, report style:
///   coverage        every boundary stratum lies in a piece, with multiplicity
///                   equal to the number of nonzero faces of its direction
///                   cone (checked against brute-force enumeration);
///   anti-indexing   members(σ′) ⊆ members(σ) ⇔ σ ⊆ σ′, both directions;
///   perp-stability  (τ/⟨σ⟩)^⊥ pulled back along the dual of the quotient
///                   equals τ^⊥, for every σ ⊆ τ;
///   quotient-inclusion  (Σ/σ′) ≅ (Σ/σ)/(σ′/⟨σ⟩) via the induced map.
inline Report check_cover(const Fan& f) {
  Report rep;
  std::vector<BoundaryStratum> strata = boundary_strata(f);
  std::vector<CoverPiece> pieces = cover_pieces(f);

  Clause& coverage = rep.add("coverage");
  for (const BoundaryStratum& s : strata) {
    int multiplicity = 0;
    for (const CoverPiece& p : pieces)
      for (const BoundaryStratum& m : p.members)
        if (m == s) ++multiplicity;
    if (multiplicity == 0) rep.fail(coverage, "uncovered stratum " + boundary_token(s));
    // brute force: pieces containing (σ′, τ) are indexed by nonzero faces of σ′
    int faces = (1 << s.direction_cone.size()) - 1;
    if (multiplicity != faces)
      rep.fail(coverage, "stratum " + boundary_token(s) + " covered " +
                             std::to_string(multiplicity) + " times, expected " +
                             std::to_string(faces));
  }

  Clause& anti = rep.add("anti-indexing");
  for (const CoverPiece& a : pieces)
    for (const CoverPiece& b : pieces) {
      bool face = is_face_of(a.index_cone, b.index_cone);
      bool contained = true;
      for (const BoundaryStratum& m : b.members) {
        bool found = false;
        for (const BoundaryStratum& n : a.members)
          if (n == m) { found = true; break; }
        if (!found) { contained = false; break; }
      }
      if (face != contained)
        rep.fail(anti, "pieces " + cone_token(a.index_cone) + ", " + cone_token(b.index_cone) +
                           (face ? ": face relation without member containment"
                                 : ": member containment without face relation"));
    }

  Clause& perp = rep.add("perp-stability");
  for (const Cone& sigma : f.cones) {
    QuotientFanResult q = quotient_fan(f, sigma);
    for (const Cone& tau : star(f, sigma)) {
      // generators of τ/⟨σ⟩ inside the quotient lattice
      const Cone& image = q.cone_map.at(tau);
      Mat image_gens = q.fan.cone_matrix(image);
      PerpLattice quotient_perp = perp_lattice(q.map.target_rank, image_gens);
      Mat pulled_back = quotient_perp.basis * q.map.projection;
      PerpLattice direct = perp_lattice(f.rank, f.cone_matrix(tau));
      if (!same_lattice(pulled_back, direct.basis))
        rep.fail(perp, "perp of " + cone_token(tau) + "/" + cone_token(sigma) +
                           " does not pull back to perp of " + cone_token(tau));
    }
  }

  Report funct = check_quotient_functoriality(f);
  Clause& incl = rep.add("quotient-inclusion");
  for (const Clause& c : funct.clauses)
    for (const std::string& w : c.witnesses) rep.fail(incl, w);

  return rep;
}

}  // namespace fanifold
