// File formats and emitters: the line-oriented fan and fanifold documents,
// canonical re-emission, structured (JSON) reports, and dot export of posets,
// nerves and gluing diagrams.
//
// Fan document:                        Fanifold document:
//   # comment                            dim: 1
//   name: p2                             closed: true
//   rank: 2                              fan f_s0:
//   ray 0: 1 0                             rank: 1
//   ray 1: 0 1                             ray 0: 1
//   ray 2: -1 -1                           ray 1: -1
//   cone: 0 1                              cone: 0
//   cone: 1 2                              cone: 1
//   cone: 0 2                            endfan
//                                        stratum s0: dim 0 fan f_s0
// Maximal cones suffice; faces are      arrow s0 -> s0_1: cone 0 proj 0 1:
// closed on parse.

#pragma once

#include "fanifold/fanifold.hpp"
#include "fanifold/fltz.hpp"
#include "fanifold/mirror.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fanifold {

using json = nlohmann::json;

struct ParseError {
  int line = 0;
  std::string message;
};

class parse_failure : public std::runtime_error {
 public:
  explicit parse_failure(const ParseError& e)
      : std::runtime_error("line " + std::to_string(e.line) + ": " + e.message), error(e) {}
  ParseError error;
};

struct FanDocument {
  std::optional<std::string> name;
  Fan fan;  // face-closed

  bool operator==(const FanDocument& o) const { return name == o.name && fan == o.fan; }
};

namespace detail_io {

inline std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

inline bool consume_prefix(std::string& s, const std::string& prefix) {
  if (s.rfind(prefix, 0) != 0) return false;
  s = strip(s.substr(prefix.size()));
  return true;
}

inline std::vector<Int> parse_ints(const std::string& s, int line, const std::string& what) {
  std::vector<Int> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    try {
      out.push_back(Int(tok));
    } catch (const std::exception&) {
      throw parse_failure({line, "bad integer '" + tok + "' in " + what});
    }
  }
  return out;
}

inline std::vector<int> parse_indices(const std::string& s, int line, const std::string& what) {
  std::vector<int> out;
  for (const Int& v : parse_ints(s, line, what)) {
    if (v < 0 || v > 1000000) throw parse_failure({line, "index out of range in " + what});
    out.push_back(int(v));
  }
  return out;
}

// parses the body of a fan block (rank/ray/cone lines); returns one past the
// last consumed line
inline std::size_t parse_fan_lines(const std::vector<std::string>& raw, std::size_t start,
                                   bool stop_at_endfan, FanDocument& doc) {
  std::optional<int> rank;
  std::vector<Vec> rays;
  std::vector<Cone> cones;
  std::size_t i = start;
  for (; i < raw.size(); ++i) {
    std::string s = strip(raw[i]);
    int line = int(i) + 1;
    if (s.empty()) continue;
    if (stop_at_endfan && s == "endfan") break;
    std::string rest = s;
    if (consume_prefix(rest, "name:")) {
      if (rest.empty()) throw parse_failure({line, "empty name"});
      doc.name = rest;
    } else if (consume_prefix(rest, "rank:")) {
      std::vector<Int> v = parse_ints(rest, line, "rank");
      if (v.size() != 1 || v[0] < 0) throw parse_failure({line, "rank wants one nonnegative integer"});
      if (rank) throw parse_failure({line, "rank given twice"});
      rank = int(v[0]);
    } else if (rest.rfind("ray", 0) == 0) {
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos) throw parse_failure({line, "ray line missing ':'"});
      std::vector<int> idx = parse_indices(strip(rest.substr(3, colon - 3)), line, "ray index");
      if (idx.size() != 1 || idx[0] != int(rays.size()))
        throw parse_failure({line, "ray index must be " + std::to_string(rays.size())});
      if (!rank) throw parse_failure({line, "ray before rank"});
      Vec entries = parse_ints(strip(rest.substr(colon + 1)), line, "ray entries");
      if (int(entries.size()) != *rank)
        throw parse_failure({line, "ray wants " + std::to_string(*rank) + " entries"});
      rays.push_back(std::move(entries));
    } else if (consume_prefix(rest, "cone:")) {
      cones.push_back(parse_indices(rest, line, "cone"));
    } else {
      if (stop_at_endfan) throw parse_failure({line, "unexpected line in fan block: " + s});
      throw parse_failure({line, "unexpected line: " + s});
    }
  }
  if (!rank) throw parse_failure({int(i), "missing rank"});
  if (stop_at_endfan && i == raw.size()) throw parse_failure({int(i), "missing endfan"});
  for (const Cone& c : cones)
    for (int r : c)
      if (r >= int(rays.size()))
        throw parse_failure({int(i), "cone uses undefined ray " + std::to_string(r)});
  doc.fan = make_fan(*rank, rays, cones);
  return i;
}

}  // namespace detail_io

/// Parses a fan document; faces are closed automatically. Throws
/// parse_failure with a line number on malformed input.
inline FanDocument parse_fan(const std::string& text) {
  FanDocument doc;
  detail_io::parse_fan_lines(detail_io::lines_of(text), 0, false, doc);
  return doc;
}

/// Canonical emission: rays in table order, maximal cones sorted. Emitting
/// and re-parsing reproduces the document.
inline std::string emit_fan(const FanDocument& doc) {
  std::ostringstream os;
  if (doc.name) os << "name: " << *doc.name << "\n";
  os << "rank: " << doc.fan.rank << "\n";
  for (std::size_t i = 0; i < doc.fan.rays.size(); ++i) {
    os << "ray " << i << ":";
    for (const Int& e : doc.fan.rays[i]) os << " " << e;
    os << "\n";
  }
  for (const Cone& c : doc.fan.maximal_cones()) {
    if (c.empty() && doc.fan.cones.size() > 1) continue;
    os << "cone:";
    for (int r : c) os << " " << r;
    os << "\n";
  }
  return os.str();
}

struct FanifoldDocument {
  Fanifold fanifold;
  std::map<std::string, FanDocument> fan_blocks;  // preserved for re-emission
};

/// Parses a fanifold document: dim/closed headers, named fan blocks, strata
/// referencing fans by name, arrows with optional explicit projections
/// (omitted projections are computed canonically from the cone).
inline FanifoldDocument parse_fanifold(const std::string& text) {
  std::vector<std::string> raw = detail_io::lines_of(text);
  FanifoldDocument doc;
  std::optional<int> dim;
  std::optional<bool> closed;
  struct ArrowLine {
    std::string source, target;
    Cone cone;
    std::optional<Mat> projection;
    int line;
  };
  std::vector<ArrowLine> arrow_lines;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string s = detail_io::strip(raw[i]);
    int line = int(i) + 1;
    if (s.empty()) continue;
    std::string rest = s;
    if (detail_io::consume_prefix(rest, "dim:")) {
      std::vector<Int> v = detail_io::parse_ints(rest, line, "dim");
      if (v.size() != 1 || v[0] < 0) throw parse_failure({line, "dim wants one nonnegative integer"});
      dim = int(v[0]);
    } else if (detail_io::consume_prefix(rest, "closed:")) {
      if (rest == "true") closed = true;
      else if (rest == "false") closed = false;
      else throw parse_failure({line, "closed wants true or false"});
    } else if (rest.rfind("fan ", 0) == 0) {
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos) throw parse_failure({line, "fan block missing ':'"});
      std::string name = detail_io::strip(rest.substr(4, colon - 4));
      if (name.empty()) throw parse_failure({line, "fan block wants a name"});
      if (doc.fan_blocks.count(name)) throw parse_failure({line, "fan " + name + " defined twice"});
      FanDocument block;
      i = detail_io::parse_fan_lines(raw, i + 1, true, block);
      doc.fan_blocks[name] = std::move(block);
    } else if (rest.rfind("stratum ", 0) == 0) {
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos) throw parse_failure({line, "stratum line missing ':'"});
      std::string id = detail_io::strip(rest.substr(8, colon - 8));
      std::istringstream is(detail_io::strip(rest.substr(colon + 1)));
      std::string kw_dim, kw_fan, fan_name;
      int sdim = -1;
      if (!(is >> kw_dim >> sdim >> kw_fan >> fan_name) || kw_dim != "dim" || kw_fan != "fan")
        throw parse_failure({line, "stratum wants: stratum <id>: dim <d> fan <name>"});
      auto it = doc.fan_blocks.find(fan_name);
      if (it == doc.fan_blocks.end())
        throw parse_failure({line, "stratum references undefined fan " + fan_name});
      Stratum st;
      st.id = id;
      st.dim = sdim;
      st.normal_fan = it->second.fan;
      st.lattice_rank = st.normal_fan.rank;
      doc.fanifold.strata.push_back(std::move(st));
    } else if (rest.rfind("arrow ", 0) == 0) {
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos) throw parse_failure({line, "arrow line missing ':'"});
      std::istringstream head(detail_io::strip(rest.substr(6, colon - 6)));
      std::string src, sep, tgt;
      if (!(head >> src >> sep >> tgt) || sep != "->")
        throw parse_failure({line, "arrow wants: arrow <src> -> <tgt>: cone <i...>"});
      std::string body = detail_io::strip(rest.substr(colon + 1));
      std::size_t proj_at = body.find("proj");
      ArrowLine a;
      a.source = src;
      a.target = tgt;
      a.line = line;
      std::string cone_part = proj_at == std::string::npos ? body : body.substr(0, proj_at);
      if (!detail_io::consume_prefix(cone_part, "cone"))
        throw parse_failure({line, "arrow wants a cone"});
      a.cone = detail_io::parse_indices(cone_part, line, "arrow cone");
      std::sort(a.cone.begin(), a.cone.end());
      if (proj_at != std::string::npos) {
        std::string proj_part = detail_io::strip(body.substr(proj_at + 4));
        std::size_t pc = proj_part.find(':');
        if (pc == std::string::npos) throw parse_failure({line, "proj wants: proj <rows> <cols>: entries"});
        std::vector<int> shape = detail_io::parse_indices(proj_part.substr(0, pc), line, "proj shape");
        if (shape.size() != 2) throw parse_failure({line, "proj wants two shape numbers"});
        std::vector<Int> entries =
            detail_io::parse_ints(detail_io::strip(proj_part.substr(pc + 1)), line, "proj entries");
        if (int(entries.size()) != shape[0] * shape[1])
          throw parse_failure({line, "proj wants " + std::to_string(shape[0] * shape[1]) + " entries"});
        Mat m(shape[0], shape[1]);
        for (int r = 0; r < shape[0]; ++r)
          for (int c = 0; c < shape[1]; ++c) m.at(r, c) = entries[std::size_t(r) * shape[1] + c];
        a.projection = std::move(m);
      }
      arrow_lines.push_back(std::move(a));
    } else {
      throw parse_failure({line, "unexpected line: " + s});
    }
  }
  if (!dim) throw parse_failure({int(raw.size()), "missing dim"});
  doc.fanifold.dim = *dim;
  doc.fanifold.closed = closed.value_or(false);
  for (const ArrowLine& al : arrow_lines) {
    const Stratum* src = doc.fanifold.find(al.source);
    const Stratum* tgt = doc.fanifold.find(al.target);
    if (!src) throw parse_failure({al.line, "arrow from undefined stratum " + al.source});
    if (!tgt) throw parse_failure({al.line, "arrow into undefined stratum " + al.target});
    ExitArrow a;
    a.source = al.source;
    a.target = al.target;
    a.cone = al.cone;
    if (al.projection) {
      a.lattice_map.source_rank = src->lattice_rank;
      a.lattice_map.target_rank = al.projection->rows();
      a.lattice_map.projection = *al.projection;
      a.lattice_map.kernel_basis = right_kernel(*al.projection);
    } else {
      if (!src->normal_fan.has_cone(a.cone))
        throw parse_failure({al.line, "arrow cone is not a cone of the source fan"});
      a.lattice_map = quotient_map(src->lattice_rank, src->normal_fan.cone_matrix(a.cone));
    }
    doc.fanifold.arrows.push_back(std::move(a));
  }
  doc.fanifold.sort_data();
  return doc;
}

inline std::string emit_fanifold(const Fanifold& ff) {
  std::ostringstream os;
  os << "dim: " << ff.dim << "\n";
  os << "closed: " << (ff.closed ? "true" : "false") << "\n";
  for (const Stratum& s : ff.strata) {
    os << "fan f_" << s.id << ":\n";
    FanDocument fd{std::nullopt, s.normal_fan};
    std::istringstream body(emit_fan(fd));
    std::string line;
    while (std::getline(body, line)) os << "  " << line << "\n";
    os << "endfan\n";
  }
  for (const Stratum& s : ff.strata)
    os << "stratum " << s.id << ": dim " << s.dim << " fan f_" << s.id << "\n";
  for (const ExitArrow& a : ff.arrows) {
    os << "arrow " << a.source << " -> " << a.target << ": cone";
    for (int r : a.cone) os << " " << r;
    const Mat& p = a.lattice_map.projection;
    os << " proj " << p.rows() << " " << p.cols() << ":";
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j) os << " " << p.at(i, j);
    os << "\n";
  }
  return os.str();
}

// ---- structured output ----------------------------------------------------

namespace detail_io {

// entries within the safe integer range are emitted as numbers, anything
// larger as a decimal string
inline json json_int(const Int& x) {
  static const Int bound = (Int(1) << 53);
  if (x >= -bound && x <= bound) return json(x.convert_to<long long>());
  return json(x.str());
}

}  // namespace detail_io

inline json json_of(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(detail_io::json_int(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline json json_of(const Vec& v) {
  json out = json::array();
  for (const Int& e : v) out.push_back(detail_io::json_int(e));
  return out;
}

inline json json_of(const Fan& f) {
  json rays = json::array();
  for (const Vec& r : f.rays) rays.push_back(json_of(r));
  json cones = json::array();
  for (const Cone& c : f.maximal_cones()) {
    if (c.empty() && f.cones.size() > 1) continue;
    cones.push_back(c);
  }
  return json{{"rank", f.rank}, {"rays", std::move(rays)}, {"maximal_cones", std::move(cones)}};
}

inline json json_of(const Report& rep) {
  json clauses = json::array();
  for (const Clause& c : rep.clauses)
    clauses.push_back(json{{"name", c.name},
                           {"verdict", c.pass ? "pass" : "fail"},
                           {"witnesses", c.witnesses}});
  return json{{"verdict", rep.pass() ? "pass" : "fail"}, {"clauses", std::move(clauses)}};
}

inline json json_of(const MatchReport& m) {
  json out{{"verdict", m.pass ? "pass" : "fail"},
           {"object_matches", m.object_matches},
           {"witnesses", m.witnesses}};
  if (m.poset_iso) out["poset_iso"] = *m.poset_iso;
  return out;
}

// ---- dot export -----------------------------------------------------------

/// Hasse diagram of a poset, deterministic node and edge order.
inline std::string emit_dot(const Poset& p, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  for (const std::string& label : p.labels) os << "  \"" << label << "\";\n";
  for (auto [i, j] : p.cover_edges())
    os << "  \"" << p.labels[i] << "\" -> \"" << p.labels[j] << "\";\n";
  os << "}\n";
  return os.str();
}

/// One-skeleton of a nerve, vertices sorted.
inline std::string emit_dot(const Nerve& nv) {
  std::ostringstream os;
  os << "graph nerve {\n";
  for (const std::string& v : nv.vertex_ids) os << "  \"" << v << "\";\n";
  for (const NerveSimplex& s : nv.simplices)
    if (s.vertices.size() == 2)
      os << "  \"" << s.vertices[0] << "\" -- \"" << s.vertices[1] << "\";\n";
  os << "}\n";
  return os.str();
}

/// Objects and Hasse arrows of a gluing diagram.
inline std::string emit_dot(const GluingDiagram& d) {
  std::ostringstream os;
  os << "digraph diagram {\n";
  std::vector<std::string> ids;
  for (const DiagramObject& o : d.objects) ids.push_back(o.id);
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  for (std::size_t i : order) os << "  \"" << ids[i] << "\";\n";
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [i, j] : d.index_poset.cover_edges())
    if (i != j) edges.emplace_back(d.objects[i].id, d.objects[j].id);
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) os << "  \"" << a << "\" -> \"" << b << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace fanifold
