// Acceptance suite: one numbered criterion per check, each printed as a
// single PASS/FAIL line with its runtime. All checks are exact (integer
// arithmetic); the stated time budgets are enforced. The fan set is the
// complete simplicial corpus plus 25 seeded random complete simplicial fans
// of rank 2 and 3.

#include "fanifold/io.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace fanifold;

namespace {

struct Criterion {
  int number = 0;
  std::string title;
  double budget_seconds = 0.0;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

Criterion make_criterion(int number, std::string title, double budget_seconds) {
  Criterion c;
  c.number = number;
  c.title = std::move(title);
  c.budget_seconds = budget_seconds;
  return c;
}

// the complete simplicial fans shipped in corpus/, parsed from disk
std::vector<Fan> complete_corpus_fans() {
  std::vector<Fan> fans;
  for (const char* name : {"p1.fan", "p2.fan", "p1xp1.fan", "hirzebruch1.fan", "octahedron.fan"}) {
    std::ifstream in(std::string(CORPUS_DIR) + "/" + name);
    std::ostringstream text;
    text << in.rdbuf();
    Fan f = parse_fan(text.str()).fan;
    if (!validate_fan(f).pass() || !is_complete(f))
      throw std::runtime_error(std::string("corpus fan is not valid and complete: ") + name);
    fans.push_back(std::move(f));
  }
  return fans;
}

std::vector<Fan> random_fan_set() {
  std::mt19937_64 rng(20240501);
  std::vector<Fan> fans;
  for (int i = 0; i < 13; ++i) fans.push_back(oracle::random_complete_fan(2, rng, i % 6));
  for (int i = 0; i < 12; ++i) fans.push_back(oracle::random_complete_fan(3, rng, i % 5));
  return fans;
}

std::vector<Fan> full_fan_set() {
  std::vector<Fan> fans = complete_corpus_fans();
  for (Fan& f : random_fan_set()) fans.push_back(std::move(f));
  return fans;
}

// brute-force minimal-upper-bound oracle in the cone poset
std::optional<Cone> min_upper_bound(const Fan& f, const Cone& a, const Cone& b) {
  std::vector<Cone> upper;
  for (const Cone& c : f.cones)
    if (is_face_of(a, c) && is_face_of(b, c)) upper.push_back(c);
  if (upper.empty()) return std::nullopt;
  for (const Cone& candidate : upper) {
    bool minimum = true;
    for (const Cone& other : upper)
      if (!is_face_of(candidate, other)) { minimum = false; break; }
    if (minimum) return candidate;
  }
  return std::nullopt;
}

int run_cli(const std::string& args) {
  std::string command = std::string(CLI_BIN_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_cli_capture(const std::string& args) {
  std::string command = std::string(CLI_BIN_PATH) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  pclose(pipe);
  return out;
}

bool criterion_quotient_functoriality(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    Report rep = check_quotient_functoriality(f);
    if (!rep.pass()) {
      detail = rep.clauses.front().witnesses.front();
      return false;
    }
  }
  return true;
}

bool criterion_half_dimensionality(std::string& detail) {
  for (const Fan& f : full_fan_set())
    for (const FltzStratum& s : fltz_strata(f))
      if (s.dim != f.rank) {
        detail = "stratum " + cone_token(s.cone) + " has dim " + std::to_string(s.dim);
        return false;
      }
  return true;
}

bool criterion_cover_law(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    Report rep = check_cover(f);
    if (!rep.pass()) {
      for (const Clause& c : rep.clauses)
        if (!c.pass) detail = c.name + ": " + c.witnesses.front();
      return false;
    }
    // independent multiplicity check: enumerate the nonzero subsets of the
    // direction cone and confirm each is a fan cone indexing a covering piece
    std::vector<CoverPiece> pieces = cover_pieces(f);
    for (const BoundaryStratum& s : boundary_strata(f)) {
      int by_enumeration = 0;
      const Cone& d = s.direction_cone;
      for (std::size_t mask = 1; mask < (std::size_t(1) << d.size()); ++mask) {
        Cone face;
        for (std::size_t i = 0; i < d.size(); ++i)
          if (mask & (std::size_t(1) << i)) face.push_back(d[i]);
        if (f.has_cone(face)) ++by_enumeration;
      }
      int by_pieces = 0;
      for (const CoverPiece& p : pieces)
        for (const BoundaryStratum& m : p.members)
          if (m == s) ++by_pieces;
      if (by_pieces != by_enumeration) {
        detail = "multiplicity of " + boundary_token(s) + ": " + std::to_string(by_pieces) +
                 " pieces vs " + std::to_string(by_enumeration) + " faces";
        return false;
      }
    }
  }
  return true;
}

bool criterion_fanifold_validity(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    Report rep = validate_fanifold(sphere_fanifold(f));
    if (!rep.pass()) {
      for (const Clause& c : rep.clauses)
        if (!c.pass) detail = c.name + ": " + c.witnesses.front();
      return false;
    }
  }
  return true;
}

bool criterion_nerve_theorem(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    Fanifold ff = sphere_fanifold(f);
    Nerve nv = nerve(barycentric_cover(ff), ff);
    std::set<Cone> simplices;
    for (const NerveSimplex& s : nv.simplices) {
      Cone c;
      for (const std::string& v : s.vertices) c.push_back(std::atoi(v.c_str() + 1));
      std::sort(c.begin(), c.end());
      simplices.insert(c);
    }
    std::set<Cone> cones;
    for (const Cone& c : f.cones)
      if (!c.empty()) cones.insert(c);
    if (simplices != cones) {
      detail = "nerve has " + std::to_string(simplices.size()) + " simplices, fan has " +
               std::to_string(cones.size()) + " nonzero cones";
      return false;
    }
  }
  // the projective plane in particular: 3 vertices, 3 edges, no 2-simplex
  Fanifold p2 = sphere_fanifold(oracle::p2_fan());
  Nerve nv = nerve(barycentric_cover(p2), p2);
  int v = 0, e = 0, t = 0;
  for (const NerveSimplex& s : nv.simplices) {
    if (s.vertices.size() == 1) ++v;
    if (s.vertices.size() == 2) ++e;
    if (s.vertices.size() >= 3) ++t;
  }
  if (v != 3 || e != 3 || t != 0) {
    detail = "projective-plane nerve is " + std::to_string(v) + "+" + std::to_string(e) + "+" +
             std::to_string(t);
    return false;
  }
  return true;
}

bool criterion_orbit_intersection(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    GluingDiagram d = boundary_diagram(f);
    for (int i = 0; i < int(d.objects.size()); ++i)
      for (int j = 0; j < int(d.objects.size()); ++j) {
        auto got = orbit_intersection(d, i, j);
        auto want = min_upper_bound(f, *d.objects[i].base_cone, *d.objects[j].base_cone);
        bool same = got.has_value() == want.has_value() &&
                    (!got || *d.objects[*got].base_cone == *want);
        if (!same) {
          detail = "objects " + d.objects[i].id + ", " + d.objects[j].id + " disagree with oracle";
          return false;
        }
      }
  }
  // opposite rays of the product fan have disjoint orbit closures
  GluingDiagram q = boundary_diagram(oracle::p1xp1_fan());
  if (orbit_intersection(q, q.index_of("c0"), q.index_of("c2")).has_value()) {
    detail = "opposite rays of the product fan intersect";
    return false;
  }
  return true;
}

bool criterion_b_matching(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    MatchReport m = match_bside(fanifold_bside(sphere_fanifold(f)), boundary_diagram(f));
    if (!m.pass) {
      detail = m.witnesses.empty() ? "mismatch" : m.witnesses.front();
      return false;
    }
  }
  return true;
}

bool criterion_hms_cli(std::string& detail) {
  for (const char* name : {"p1.fan", "p2.fan", "p1xp1.fan", "hirzebruch1.fan"}) {
    int rc = run_cli("mirror verify " + (std::string(CORPUS_DIR) + "/" + name));
    if (rc != 0) {
      detail = std::string(name) + " exited with code " + std::to_string(rc);
      return false;
    }
  }
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "fanifold-acceptance";
  std::filesystem::create_directories(dir);
  std::vector<Fan> fans = random_fan_set();
  for (std::size_t i = 0; i < fans.size(); ++i) {
    std::filesystem::path path = dir / ("random_" + std::to_string(i) + ".fan");
    std::ofstream out(path);
    out << emit_fan(FanDocument{std::nullopt, fans[i]});
    out.close();
    int rc = run_cli("mirror verify " + path.string());
    if (rc != 0) {
      detail = path.string() + " exited with code " + std::to_string(rc);
      return false;
    }
  }
  return true;
}

bool criterion_filtration_replay(std::string& detail) {
  for (const Fan& f : full_fan_set()) {
    Fanifold ff = sphere_fanifold(f);
    if (!filtration_replays(ff, filtration(ff))) {
      detail = "schedule does not reconstruct the fanifold";
      return false;
    }
  }
  Filtration fil = filtration(sphere_fanifold(oracle::p2_fan()));
  if (fil.levels.empty() || fil.levels[0].strata.size() != 3) {
    detail = "level 0 of the projective-plane sphere has " +
             std::to_string(fil.levels.empty() ? 0 : fil.levels[0].strata.size()) + " strata";
    return false;
  }
  return true;
}

bool criterion_negative_controls(std::string& detail) {
  struct Control {
    std::string command;
    std::string witness;  // substring that must appear in the report
  };
  std::string corpus = CORPUS_DIR;
  std::vector<Control> controls = {
      {"fan check " + corpus + "/broken_duplicate_ray.fan", "duplicate ray"},
      {"fan check " + corpus + "/broken_intersection.fan", "{0,1}"},
      {"fanifold check " + corpus + "/broken_arrow.fanifold", "arrow s0 -> s0_2"},
  };
  for (const Control& c : controls) {
    int rc = run_cli(c.command);
    if (rc != 1) {
      detail = c.command + " exited with code " + std::to_string(rc) + ", expected 1";
      return false;
    }
    std::string output = run_cli_capture(c.command);
    if (output.find(c.witness) == std::string::npos) {
      detail = c.command + " did not name the witness '" + c.witness + "'";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      make_criterion(1, "quotient functoriality (Sigma/sigma)/(tau/sigma) = Sigma/tau", 10.0),
      make_criterion(2, "FLTZ strata are half-dimensional", 1.0),
      make_criterion(3, "boundary cover laws with brute-force multiplicities", 10.0),
      make_criterion(4, "sphere fanifolds satisfy the fanifold definition", 10.0),
      make_criterion(5, "cover nerve recovers the fan's cone complex", 5.0),
      make_criterion(6, "orbit intersections match the minimal-upper-bound oracle", 5.0),
      make_criterion(7, "fanifold diagram matches the orbit-closure diagram", 10.0),
      make_criterion(8, "mirror verify passes end-to-end from fan input", 10.0),
      make_criterion(9, "handle schedule replays the fanifold exactly", 1.0),
      make_criterion(10, "broken corpus files fail with named witnesses", 1.0),
  };
  using CheckFn = bool (*)(std::string&);
  CheckFn checks[] = {
      criterion_quotient_functoriality, criterion_half_dimensionality, criterion_cover_law,
      criterion_fanifold_validity,      criterion_nerve_theorem,       criterion_orbit_intersection,
      criterion_b_matching,             criterion_hms_cli,             criterion_filtration_replay,
      criterion_negative_controls,
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    c.pass = checks[i](c.detail);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.pass && c.seconds > c.budget_seconds) {
      c.pass = false;
      c.detail = "exceeded time budget";
    }
    std::ostringstream line;
    line << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " ["
         << std::fixed << std::setprecision(2) << c.seconds << "s"
         << "/" << std::setprecision(0) << c.budget_seconds << "s]";
    if (!c.pass && !c.detail.empty()) line << " -- " << c.detail;
    std::cout << line.str() << std::endl;
    if (!c.pass) ++failures;
  }
  std::cout << (failures == 0 ? std::string("all criteria passed")
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
