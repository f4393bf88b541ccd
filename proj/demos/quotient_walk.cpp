// Walks the whole pipeline on the projective-plane fan and prints what each
// stage produces: quotient fans, the skeleton's boundary cover, the sphere
// fanifold with its filtration, the cover nerve, and the diagram match.

#include "fanifold/io.hpp"

#include <iostream>

using namespace fanifold;

int main() {
  Fan p2 = make_fan(2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}},
                    {{0, 1}, {1, 2}, {0, 2}});
  std::cout << "fan: rank " << p2.rank << ", " << p2.rays.size() << " rays, " << p2.cones.size()
            << " cones, complete = " << (is_complete(p2) ? "yes" : "no") << "\n\n";

  std::cout << "quotients by each ray:\n";
  for (int r = 0; r < 3; ++r) {
    QuotientFanResult q = quotient_fan(p2, {r});
    std::cout << "  " << cone_token({r}) << " -> rank " << q.fan.rank << " fan with "
              << q.fan.rays.size() << " rays (projection " << q.map.projection.to_string()
              << ")\n";
  }

  std::cout << "\nboundary strata of the skeleton (direction, ambient):\n  ";
  for (const BoundaryStratum& s : boundary_strata(p2)) std::cout << boundary_token(s) << " ";
  std::cout << "\n\ncover pieces:\n";
  for (const CoverPiece& p : cover_pieces(p2))
    std::cout << "  piece " << cone_token(p.index_cone) << ": " << p.members.size()
              << " members, fiber rank " << p.fiber_fan.rank << "\n";

  Fanifold ff = sphere_fanifold(p2);
  std::cout << "\nsphere fanifold: dim " << ff.dim << ", " << ff.strata.size() << " strata, "
            << ff.arrows.size() << " arrows, valid = "
            << (validate_fanifold(ff).pass() ? "yes" : "no") << "\n";

  Filtration fil = filtration(ff);
  for (std::size_t k = 0; k < fil.levels.size(); ++k)
    std::cout << "  level " << k << ": " << fil.levels[k].strata.size() << " strata\n";

  Nerve nv = nerve(barycentric_cover(ff), ff);
  std::cout << "\nnerve of the barycentric cover:\n" << emit_dot(nv);

  GluingDiagram bd = boundary_diagram(p2);
  MatchReport mb = match_bside(fanifold_bside(ff), bd);
  MatchReport mh = match_hms(nv, ff, bd);
  std::cout << "\ndiagram of orbit closures: " << bd.objects.size() << " objects, "
            << bd.arrows.size() << " arrows\n";
  std::cout << "fanifold diagram matches:   " << (mb.pass ? "yes" : "no") << "\n";
  std::cout << "nerve diagram matches:      " << (mh.pass ? "yes" : "no") << "\n";
  return mb.pass && mh.pass ? 0 : 1;
}
