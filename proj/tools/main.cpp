// Command-line surface over the fan/fanifold library.
//
// Exit codes: 0 = pass/success, 1 = a check failed (report emitted),
// 2 = parse or usage error.

#include "fanifold/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace fanifold;

constexpr int kSchemaVersion = 1;

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_failure({0, "cannot open " + path});
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json report_json(const std::string& command, const Report& rep) {
  json out = json_of(rep);
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  return out;
}

void print_report_text(const std::string& command, const Report& rep) {
  std::cout << "command: " << command << "\n";
  std::cout << "verdict: " << (rep.pass() ? "pass" : "fail") << "\n";
  for (const Clause& c : rep.clauses) {
    std::cout << "clause " << c.name << ": " << (c.pass ? "pass" : "fail") << "\n";
    for (const std::string& w : c.witnesses) std::cout << "  witness: " << w << "\n";
  }
}

int finish_report(const Options& opt, const std::string& command, const Report& rep,
                  json extra = json::object()) {
  if (opt.json()) {
    json out = report_json(command, rep);
    for (auto& [k, v] : extra.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    print_report_text(command, rep);
    for (auto& [k, v] : extra.items())
      std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return rep.pass() ? 0 : 1;
}

// parse + validate; on validation failure prints the report and returns 1
int load_fan(const Options& opt, const std::string& command, const std::string& path, Fan& out) {
  FanDocument doc = parse_fan(read_file(path));
  out = doc.fan;
  Report rep = validate_fan(out);
  if (!rep.pass()) return finish_report(opt, command, rep);
  return -1;  // keep going
}

int cmd_fan_check(const Options& opt, const std::string& path) {
  FanDocument doc = parse_fan(read_file(path));
  Report rep = validate_fan(doc.fan);
  json extra{{"fan", json_of(doc.fan)}};
  return finish_report(opt, "fan check", rep, opt.json() ? extra : json::object());
}

int cmd_fan_quotient(const Options& opt, const std::string& path, const std::string& cone_arg) {
  Fan f;
  if (int rc = load_fan(opt, "fan quotient", path, f); rc >= 0) return rc;
  Cone sigma;
  {
    std::string list = cone_arg;
    for (char& ch : list)
      if (ch == ',') ch = ' ';
    std::istringstream is(list);
    int idx;
    while (is >> idx) sigma.push_back(idx);
    std::sort(sigma.begin(), sigma.end());
  }
  if (!f.has_cone(sigma))
    throw parse_failure({0, "cone " + cone_token(sigma) + " is not a cone of the fan"});
  QuotientFanResult q = quotient_fan(f, sigma);
  if (opt.json()) {
    json out{{"schema_version", kSchemaVersion},
             {"command", "fan quotient"},
             {"verdict", "pass"},
             {"cone", sigma},
             {"fan", json_of(q.fan)},
             {"projection", json_of(q.map.projection)},
             {"kernel_basis", json_of(q.map.kernel_basis)}};
    std::cout << out.dump(2) << "\n";
  } else {
    FanDocument doc{std::nullopt, q.fan};
    std::cout << emit_fan(doc);
  }
  return 0;
}

int cmd_fan_complete(const Options& opt, const std::string& path) {
  Fan f;
  if (int rc = load_fan(opt, "fan complete", path, f); rc >= 0) return rc;
  Report rep;
  Clause& c = rep.add("complete");
  if (!is_complete(f)) rep.fail(c, "support is not the whole space");
  return finish_report(opt, "fan complete", rep);
}

int cmd_fltz_strata(const Options& opt, const std::string& path) {
  Fan f;
  if (int rc = load_fan(opt, "fltz strata", path, f); rc >= 0) return rc;
  std::vector<FltzStratum> strata = fltz_strata(f);
  if (opt.json()) {
    json list = json::array();
    for (const FltzStratum& s : strata)
      list.push_back(json{{"cone", s.cone},
                          {"dim", s.dim},
                          {"perp_rank", s.perp.basis.rows()},
                          {"perp_basis", json_of(s.perp.basis)}});
    json out{{"schema_version", kSchemaVersion},
             {"command", "fltz strata"},
             {"verdict", "pass"},
             {"strata", std::move(list)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: fltz strata\n";
    std::cout << "strata: " << strata.size() << "\n";
    for (const FltzStratum& s : strata)
      std::cout << "stratum " << cone_token(s.cone) << ": dim " << s.dim << ", perp rank "
                << s.perp.basis.rows() << "\n";
  }
  return 0;
}

int cmd_fltz_boundary(const Options& opt, const std::string& path) {
  Fan f;
  if (int rc = load_fan(opt, "fltz boundary", path, f); rc >= 0) return rc;
  std::vector<BoundaryStratum> strata = boundary_strata(f);
  if (opt.json()) {
    json list = json::array();
    for (const BoundaryStratum& s : strata)
      list.push_back(json{{"direction_cone", s.direction_cone},
                          {"ambient_cone", s.ambient_cone},
                          {"dim", s.dim}});
    json out{{"schema_version", kSchemaVersion},
             {"command", "fltz boundary"},
             {"verdict", "pass"},
             {"strata", std::move(list)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: fltz boundary\n";
    std::cout << "strata: " << strata.size() << "\n";
    for (const BoundaryStratum& s : strata)
      std::cout << "stratum " << boundary_token(s) << ": dim " << s.dim << "\n";
  }
  return 0;
}

int cmd_fltz_cover_check(const Options& opt, const std::string& path) {
  Fan f;
  if (int rc = load_fan(opt, "fltz cover-check", path, f); rc >= 0) return rc;
  Report rep = check_cover(f);
  std::vector<CoverPiece> pieces = cover_pieces(f);
  json extra = json::object();
  if (opt.json()) {
    json list = json::array();
    for (const CoverPiece& p : pieces) {
      json members = json::array();
      for (const BoundaryStratum& m : p.members)
        members.push_back(json{{"direction_cone", m.direction_cone},
                               {"ambient_cone", m.ambient_cone}});
      list.push_back(json{{"index_cone", p.index_cone},
                          {"fiber_rank", p.fiber_fan.rank},
                          {"members", std::move(members)}});
    }
    extra["pieces"] = std::move(list);
  } else {
    extra["pieces"] = std::to_string(pieces.size());
  }
  return finish_report(opt, "fltz cover-check", rep, extra);
}

int cmd_fanifold_check(const Options& opt, const std::string& path) {
  FanifoldDocument doc = parse_fanifold(read_file(path));
  Report rep = validate_fanifold(doc.fanifold);
  return finish_report(opt, "fanifold check", rep);
}

int cmd_fanifold_sphere(const Options& opt, const std::string& path) {
  Fan f;
  if (int rc = load_fan(opt, "fanifold sphere", path, f); rc >= 0) return rc;
  Fanifold ff = sphere_fanifold(f);
  if (opt.json()) {
    json strata = json::array();
    for (const Stratum& s : ff.strata)
      strata.push_back(json{{"id", s.id},
                            {"dim", s.dim},
                            {"lattice_rank", s.lattice_rank},
                            {"closed", s.is_closed},
                            {"fan", json_of(s.normal_fan)}});
    json arrows = json::array();
    for (const ExitArrow& a : ff.arrows)
      arrows.push_back(json{{"source", a.source},
                            {"target", a.target},
                            {"cone", a.cone},
                            {"projection", json_of(a.lattice_map.projection)}});
    json out{{"schema_version", kSchemaVersion},
             {"command", "fanifold sphere"},
             {"verdict", "pass"},
             {"dim", ff.dim},
             {"closed", ff.closed},
             {"strata", std::move(strata)},
             {"arrows", std::move(arrows)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << emit_fanifold(ff);
  }
  return 0;
}

int cmd_fanifold_filtration(const Options& opt, const std::string& path) {
  FanifoldDocument doc = parse_fanifold(read_file(path));
  Filtration fil = filtration(doc.fanifold);
  if (opt.json()) {
    json levels = json::array();
    for (std::size_t k = 0; k < fil.levels.size(); ++k) {
      json ids = json::array();
      for (const Stratum& s : fil.levels[k].strata) ids.push_back(s.id);
      levels.push_back(json{{"level", k},
                            {"strata", std::move(ids)},
                            {"arrows", fil.levels[k].arrows.size()}});
    }
    json schedule = json::array();
    for (const HandleRecord& rec : fil.schedule) {
      json gluing = json::array();
      for (const ExitArrow& a : rec.gluing) gluing.push_back(a.source);
      schedule.push_back(json{{"level", rec.level},
                              {"stratum", rec.stratum},
                              {"lattice_rank", rec.lattice_rank},
                              {"gluing", std::move(gluing)}});
    }
    json out{{"schema_version", kSchemaVersion},
             {"command", "fanifold filtration"},
             {"verdict", "pass"},
             {"levels", std::move(levels)},
             {"schedule", std::move(schedule)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: fanifold filtration\n";
    for (std::size_t k = 0; k < fil.levels.size(); ++k) {
      std::cout << "level " << k << ":";
      for (const Stratum& s : fil.levels[k].strata) std::cout << " " << s.id;
      std::cout << "\n";
    }
    for (const HandleRecord& rec : fil.schedule) {
      std::cout << "handle " << rec.stratum << " at level " << rec.level << ": rank "
                << rec.lattice_rank << ", gluing:";
      if (rec.gluing.empty()) std::cout << " (none)";
      for (const ExitArrow& a : rec.gluing) std::cout << " " << a.source;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_cover_nerve(const Options& opt, const std::string& path) {
  FanifoldDocument doc = parse_fanifold(read_file(path));
  std::vector<CoverRegion> regions = barycentric_cover(doc.fanifold);
  Nerve nv = nerve(regions, doc.fanifold);
  if (opt.json()) {
    json region_list = json::array();
    for (const CoverRegion& r : regions) {
      json flags = json::array();
      for (const auto& chain : r.flags) flags.push_back(chain);
      region_list.push_back(json{{"vertex", r.vertex},
                                 {"skeleton_fan", json_of(r.skeleton_fan)},
                                 {"flags", std::move(flags)}});
    }
    json simplices = json::array();
    for (const NerveSimplex& s : nv.simplices) {
      json entry{{"vertices", s.vertices}, {"minimal_strata", s.minimal_strata}};
      if (s.piece_fan) entry["piece_fan"] = json_of(*s.piece_fan);
      simplices.push_back(std::move(entry));
    }
    json out{{"schema_version", kSchemaVersion},
             {"command", "cover nerve"},
             {"verdict", "pass"},
             {"regions", std::move(region_list)},
             {"simplices", std::move(simplices)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: cover nerve\n";
    for (const CoverRegion& r : regions)
      std::cout << "region " << r.vertex << ": " << r.flags.size() << " flags, skeleton rank "
                << r.skeleton_fan.rank << "\n";
    for (const NerveSimplex& s : nv.simplices) {
      std::cout << "simplex {";
      for (std::size_t i = 0; i < s.vertices.size(); ++i)
        std::cout << (i ? "," : "") << s.vertices[i];
      std::cout << "}: stratum";
      for (const std::string& m : s.minimal_strata) std::cout << " " << m;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_mirror_boundary(const Options& opt, const std::string& path) {
  Fan f;
  if (int rc = load_fan(opt, "mirror boundary", path, f); rc >= 0) return rc;
  GluingDiagram d = boundary_diagram(f);
  if (opt.json()) {
    json objects = json::array();
    for (const DiagramObject& o : d.objects)
      objects.push_back(json{{"id", o.id},
                             {"cone", *o.base_cone},
                             {"fan", json_of(o.fan)},
                             {"quotient", json_of(o.base_quotient->projection)}});
    json arrows = json::array();
    for (const auto& [key, a] : d.arrows)
      arrows.push_back(json{{"from", d.objects[key.first].id},
                            {"to", d.objects[key.second].id},
                            {"cone", a.cone},
                            {"projection", json_of(a.map.projection)}});
    json out{{"schema_version", kSchemaVersion},
             {"command", "mirror boundary"},
             {"verdict", "pass"},
             {"objects", std::move(objects)},
             {"arrows", std::move(arrows)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: mirror boundary\n";
    std::cout << "objects: " << d.objects.size() << "\n";
    for (const DiagramObject& o : d.objects)
      std::cout << "object " << o.id << ": rank " << o.fan.rank << ", " << o.fan.rays.size()
                << " rays, " << o.fan.cones.size() << " cones\n";
    for (const auto& [key, a] : d.arrows)
      std::cout << "arrow " << d.objects[key.first].id << " -> " << d.objects[key.second].id
                << ": cone " << cone_token(a.cone) << "\n";
  }
  return 0;
}

int cmd_mirror_verify(const Options& opt, const std::string& path) {
  FanDocument doc = parse_fan(read_file(path));
  const Fan& f = doc.fan;
  Report rep;

  Clause& valid = rep.add("fan-valid");
  Report fv = validate_fan(f);
  for (const Clause& c : fv.clauses)
    for (const std::string& w : c.witnesses) rep.fail(valid, c.name + ": " + w);

  Clause& complete = rep.add("fan-complete");
  if (valid.pass && !is_complete(f)) rep.fail(complete, "support is not the whole space");

  json extra = json::object();
  if (valid.pass && complete.pass) {
    Fanifold ff = sphere_fanifold(f);
    Clause& ffv = rep.add("fanifold-valid");
    Report fr = validate_fanifold(ff);
    for (const Clause& c : fr.clauses)
      for (const std::string& w : c.witnesses) rep.fail(ffv, c.name + ": " + w);

    GluingDiagram bd = boundary_diagram(f);
    Clause& bmatch = rep.add("b-matching");
    MatchReport mb = match_bside(fanifold_bside(ff), bd);
    if (!mb.pass)
      for (const std::string& w : mb.witnesses) rep.fail(bmatch, w);

    Clause& hms = rep.add("descent-matching");
    std::vector<CoverRegion> regions = barycentric_cover(ff);
    Nerve nv = nerve(regions, ff);
    MatchReport mh = match_hms(nv, ff, bd);
    if (!mh.pass)
      for (const std::string& w : mh.witnesses) rep.fail(hms, w);

    std::size_t edges = 0, higher = 0;
    for (const NerveSimplex& s : nv.simplices) {
      if (s.vertices.size() == 2) ++edges;
      if (s.vertices.size() > 2) ++higher;
    }
    std::ostringstream nerve_note;
    nerve_note << nv.vertex_ids.size() << " vertices, " << edges << " edges";
    if (higher) nerve_note << ", " << higher << " higher simplices";
    extra["nerve"] = nerve_note.str();
    extra["diagram"] = std::to_string(bd.objects.size()) + " objects";
    extra["matched"] = mb.pass && mh.pass ? "all matched" : "mismatch";
  }
  return finish_report(opt, "mirror verify", rep, extra);
}

int cmd_emit_dot(const std::string& path, bool want_nerve, bool want_diagram) {
  Fan f;
  Options text_only;
  if (int rc = load_fan(text_only, "emit dot", path, f); rc >= 0) return rc;
  if (want_nerve) {
    Fanifold ff = sphere_fanifold(f);
    std::cout << emit_dot(nerve(barycentric_cover(ff), ff));
  } else if (want_diagram) {
    std::cout << emit_dot(boundary_diagram(f));
  } else {
    auto [poset, cones] = face_poset(f);
    std::cout << emit_dot(poset, "face_poset");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fan, skeleton and mirror-diagram toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file, cone_arg;
  bool dot_nerve = false, dot_diagram = false;

  auto* fan = app.add_subcommand("fan", "fan-level operations");
  fan->require_subcommand(1);
  auto* fan_check = fan->add_subcommand("check", "validate a fan document");
  fan_check->add_option("file", file)->required();
  auto* fan_quotient = fan->add_subcommand("quotient", "quotient fan by a cone");
  fan_quotient->add_option("--cone", cone_arg, "ray indices of the cone, e.g. 0,1")->required();
  fan_quotient->add_option("file", file)->required();
  auto* fan_complete = fan->add_subcommand("complete", "test completeness");
  fan_complete->add_option("file", file)->required();

  auto* fltz = app.add_subcommand("fltz", "skeleton operations");
  fltz->require_subcommand(1);
  auto* fltz_strata_cmd = fltz->add_subcommand("strata", "list skeleton strata");
  fltz_strata_cmd->add_option("file", file)->required();
  auto* fltz_boundary_cmd = fltz->add_subcommand("boundary", "list boundary strata");
  fltz_boundary_cmd->add_option("file", file)->required();
  auto* fltz_cover = fltz->add_subcommand("cover-check", "verify the boundary cover laws");
  fltz_cover->add_option("file", file)->required();

  auto* ffd = app.add_subcommand("fanifold", "fanifold operations");
  ffd->require_subcommand(1);
  auto* ffd_check = ffd->add_subcommand("check", "validate a fanifold document");
  ffd_check->add_option("file", file)->required();
  auto* ffd_sphere = ffd->add_subcommand("sphere", "sphere fanifold of a complete fan");
  ffd_sphere->add_option("file", file)->required();
  auto* ffd_filtration = ffd->add_subcommand("filtration", "filtration and handle schedule");
  ffd_filtration->add_option("file", file)->required();

  auto* cover = app.add_subcommand("cover", "sectorial cover operations");
  cover->require_subcommand(1);
  auto* cover_nerve = cover->add_subcommand("nerve", "barycentric cover and its nerve");
  cover_nerve->add_option("file", file)->required();

  auto* mirror = app.add_subcommand("mirror", "gluing diagrams and matching");
  mirror->require_subcommand(1);
  auto* mirror_boundary = mirror->add_subcommand("boundary", "orbit-closure diagram");
  mirror_boundary->add_option("file", file)->required();
  auto* mirror_verify = mirror->add_subcommand("verify", "full diagram matching from one fan");
  mirror_verify->add_option("file", file)->required();

  auto* emit = app.add_subcommand("emit", "exports");
  emit->require_subcommand(1);
  auto* emit_dot_cmd = emit->add_subcommand("dot", "dot export of a poset, nerve or diagram");
  emit_dot_cmd->add_option("file", file)->required();
  emit_dot_cmd->add_flag("--nerve", dot_nerve, "emit the cover nerve");
  emit_dot_cmd->add_flag("--diagram", dot_diagram, "emit the orbit-closure diagram");

  for (CLI::App* sub : {fan, fltz, ffd, cover, mirror, emit}) {
    sub->fallthrough();
    for (CLI::App* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*fan_check) return cmd_fan_check(opt, file);
    if (*fan_quotient) return cmd_fan_quotient(opt, file, cone_arg);
    if (*fan_complete) return cmd_fan_complete(opt, file);
    if (*fltz_strata_cmd) return cmd_fltz_strata(opt, file);
    if (*fltz_boundary_cmd) return cmd_fltz_boundary(opt, file);
    if (*fltz_cover) return cmd_fltz_cover_check(opt, file);
    if (*ffd_check) return cmd_fanifold_check(opt, file);
    if (*ffd_sphere) return cmd_fanifold_sphere(opt, file);
    if (*ffd_filtration) return cmd_fanifold_filtration(opt, file);
    if (*cover_nerve) return cmd_cover_nerve(opt, file);
    if (*mirror_boundary) return cmd_mirror_boundary(opt, file);
    if (*mirror_verify) return cmd_mirror_verify(opt, file);
    if (*emit_dot_cmd) return cmd_emit_dot(file, dot_nerve, dot_diagram);
  } catch (const parse_failure& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
