// Simplicial rational fans: validation, face posets, stars, quotient fans,
// the smallest-containing-cone operation, completeness, and fan isomorphism.
//
// A cone is identified with its sorted set of ray indices into the parent
// fan's ray table; the zero cone is the empty set. Fans are face-closed and
// always contain the zero cone.

#pragma once

#include "fanifold/lattice.hpp"
#include "fanifold/poset.hpp"
#include "fanifold/report.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fanifold {

using Cone = std::vector<int>;  // sorted, duplicate-free ray indices

inline std::string cone_token(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

inline bool is_face_of(const Cone& face, const Cone& cone) {
  return std::includes(cone.begin(), cone.end(), face.begin(), face.end());
}

struct Fan {
  int rank = 0;
  std::vector<Vec> rays;   // primitive, no duplicates
  std::set<Cone> cones;    // face-closed, contains the zero cone

  bool has_cone(const Cone& c) const { return cones.count(c) > 0; }

  int dim(const Cone& c) const { return int(c.size()); }

  /// Generator matrix of a cone: one row per ray.
  Mat cone_matrix(const Cone& c) const {
    Mat m(int(c.size()), rank);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int j = 0; j < rank; ++j) m.at(int(i), j) = rays[c[i]][j];
    return m;
  }

  std::vector<Cone> cones_sorted() const {
    std::vector<Cone> out(cones.begin(), cones.end());
    std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  }

  std::vector<Cone> maximal_cones() const {
    std::vector<Cone> out;
    for (const Cone& c : cones) {
      bool maximal = true;
      for (const Cone& d : cones)
        if (&c != &d && c != d && is_face_of(c, d)) { maximal = false; break; }
      if (maximal) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Fan& o) const {
    return rank == o.rank && rays == o.rays && cones == o.cones;
  }
  bool operator!=(const Fan& o) const { return !(*this == o); }
};

/// Builds a fan from maximal cones, closing under faces. No validation.
inline Fan make_fan(int rank, std::vector<Vec> rays, const std::vector<Cone>& maximal) {
  Fan f;
  f.rank = rank;
  f.rays = std::move(rays);
  f.cones.insert(Cone{});
  for (Cone c : maximal) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    const std::size_t k = c.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      Cone face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t(1) << i)) face.push_back(c[i]);
      f.cones.insert(std::move(face));
    }
  }
  return f;
}

/// Coefficients of x in the (independent) generators of a simplicial cone;
/// nullopt when x is outside the generators' span.
inline std::optional<std::vector<Rat>> cone_coefficients(const Mat& generators, const Vec& x) {
  const int k = generators.rows(), n = generators.cols();
  if (k == 0) {
    for (const Int& e : x)
      if (e != 0) return std::nullopt;
    return std::vector<Rat>{};
  }
  // solve generators^T * lambda = x by rational elimination
  std::vector<std::vector<Rat>> t(n, std::vector<Rat>(k + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) t[i][j] = Rat(generators.at(j, i));
    t[i][k] = Rat(x[i]);
  }
  std::vector<int> pivot_row(k, -1);
  int r = 0;
  for (int c = 0; c < k && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (t[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(t[r], t[p]);
    Rat inv = t[r][c];
    for (int j = c; j <= k; ++j) t[r][j] /= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (int j = c; j <= k; ++j) t[i][j] -= f * t[r][j];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (int c = 0; c < k; ++c)
    if (pivot_row[c] < 0) throw std::invalid_argument("cone_coefficients: dependent generators");
  for (int i = r; i < n; ++i)
    if (t[i][k] != 0) return std::nullopt;
  std::vector<Rat> lambda(k);
  for (int c = 0; c < k; ++c) lambda[c] = t[pivot_row[c]][k];
  return lambda;
}

/// Exact membership x ∈ cone(generators) for a simplicial generator set.
inline bool cone_contains(const Mat& generators, const Vec& x) {
  auto lambda = cone_coefficients(generators, x);
  if (!lambda) return false;
  for (const Rat& l : *lambda)
    if (l < 0) return false;
  return true;
}

namespace detail {

// Extreme-ray generators of { z >= 0 : B z = 0 }, pushed through the columns
// of `image` (image has one column per z-coordinate). Supports of extreme rays
// have size at most rank(B)+1, which bounds the subset enumeration.
inline std::vector<Vec> pairing_cone_images(const Mat& b, const std::vector<Vec>& image_cols) {
  const int w = b.cols();
  const int support_bound = std::min(w, b.rows() + 1);
  std::vector<Vec> out;
  std::set<Vec> seen;
  std::vector<int> subset;
  auto consider = [&](const std::vector<int>& cols) {
    Mat sub(b.rows(), int(cols.size()));
    for (int i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) sub.at(i, int(j)) = b.at(i, cols[j]);
    Mat ker = right_kernel(sub);
    if (ker.rows() != 1) return;  // want a one-dimensional solution line
    Vec z = ker.row(0);
    bool nonneg = true, nonpos = true;
    for (const Int& e : z) {
      if (e < 0) nonneg = false;
      if (e > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return;
    if (nonpos)
      for (Int& e : z) e = -e;
    Vec x(image_cols.empty() ? 0 : image_cols[0].size(), Int(0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += z[j] * image_cols[cols[j]][i];
    if (seen.insert(x).second) out.push_back(std::move(x));
  };
  std::vector<int> cols;
  auto rec = [&](auto&& self, int next, int remaining) -> void {
    if (!cols.empty()) consider(cols);
    if (remaining == 0) return;
    for (int c = next; c < w; ++c) {
      cols.push_back(c);
      self(self, c + 1, remaining - 1);
      cols.pop_back();
    }
  };
  rec(rec, 0, support_bound);
  return out;
}

}  // namespace detail

/// Exactness check that cone(c1) ∩ cone(c2) = cone(c1 ∩ c2) as point sets.
/// The intersection is the image of the pairing cone
/// { (λ, μ) >= 0 : Σ λ_i v_i = Σ μ_j w_j }, which is spanned by its extreme
/// rays; it suffices that each of those lands in the common face.
inline bool cones_meet_along_common_face(const Fan& f, const Cone& c1, const Cone& c2) {
  Cone common;
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common));
  Mat g1 = f.cone_matrix(c1), g2 = f.cone_matrix(c2), gf = f.cone_matrix(common);
  const int k1 = g1.rows(), k2 = g2.rows();
  if (k1 == 0 || k2 == 0) return true;  // zero cone intersects everything in itself
  Mat b(f.rank, k1 + k2);
  for (int i = 0; i < f.rank; ++i) {
    for (int j = 0; j < k1; ++j) b.at(i, j) = g1.at(j, i);
    for (int j = 0; j < k2; ++j) b.at(i, k1 + j) = -g2.at(j, i);
  }
  std::vector<Vec> image_cols(k1 + k2, Vec(f.rank, Int(0)));
  for (int j = 0; j < k1; ++j) image_cols[j] = g1.row(j);
  // μ-columns map to zero: the image point is read off the λ side
  for (const Vec& x : detail::pairing_cone_images(b, image_cols)) {
    bool zero = true;
    for (const Int& e : x)
      if (e != 0) { zero = false; break; }
    if (zero) continue;
    if (!cone_contains(gf, x)) return false;
  }
  return true;
}

/// Fan axioms, report style: primitive distinct rays, simplicial independent
/// cones, face closure, ray coverage, and the exact pairwise intersection
/// condition (checked on maximal cones, which implies it for all pairs).
inline Report validate_fan(const Fan& f) {
  Report rep;
  Clause& rays_ok = rep.add("rays");
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const Vec& r = f.rays[i];
    if (int(r.size()) != f.rank) {
      rep.fail(rays_ok, "ray " + std::to_string(i) + " has wrong length");
      continue;
    }
    bool zero = true;
    Int g = 0;
    for (const Int& e : r) {
      if (e != 0) zero = false;
      g = boost::multiprecision::gcd(g, e);
    }
    if (zero) rep.fail(rays_ok, "ray " + std::to_string(i) + " is zero");
    else if (g != 1) rep.fail(rays_ok, "ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = i + 1; j < f.rays.size(); ++j)
      if (f.rays[j] == r)
        rep.fail(rays_ok, "duplicate ray at indices " + std::to_string(i) + "," + std::to_string(j));
  }

  Clause& cones_ok = rep.add("cones-simplicial");
  for (const Cone& c : f.cones) {
    bool in_range = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= int(f.rays.size())) {
        rep.fail(cones_ok, "cone " + cone_token(c) + " has out-of-range ray index");
        in_range = false;
      }
      if (i + 1 < c.size() && c[i] >= c[i + 1]) {
        rep.fail(cones_ok, "cone " + cone_token(c) + " indices not strictly sorted");
        in_range = false;
      }
    }
    if (!in_range || !rays_ok.pass) continue;
    Mat g = f.cone_matrix(c);
    if (hermite_normal_form(g).rank != g.rows())
      rep.fail(cones_ok, "cone " + cone_token(c) + " has dependent rays (not simplicial)");
  }

  Clause& closed = rep.add("face-closed");
  if (!f.has_cone(Cone{})) rep.fail(closed, "zero cone missing");
  for (const Cone& c : f.cones)
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      Cone face;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != drop) face.push_back(c[i]);
      if (!f.has_cone(face))
        rep.fail(closed, "facet " + cone_token(face) + " of " + cone_token(c) + " missing");
    }

  Clause& covered = rep.add("rays-covered");
  {
    std::vector<bool> used(f.rays.size(), false);
    for (const Cone& c : f.cones)
      for (int i : c)
        if (i >= 0 && i < int(used.size())) used[i] = true;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i]) rep.fail(covered, "ray " + std::to_string(i) + " appears in no cone");
  }

  Clause& meets = rep.add("pairwise-intersection");
  if (rays_ok.pass && cones_ok.pass && closed.pass) {
    std::vector<Cone> maximal = f.maximal_cones();
    for (std::size_t i = 0; i < maximal.size(); ++i)
      for (std::size_t j = i + 1; j < maximal.size(); ++j)
        if (!cones_meet_along_common_face(f, maximal[i], maximal[j]))
          rep.fail(meets, "cones " + cone_token(maximal[i]) + " and " + cone_token(maximal[j]) +
                              " do not meet along their common face");
  }
  return rep;
}

/// Cone poset under face inclusion; elements ordered by (dim, indices).
/// The accompanying vector lists the cone of each poset element.
inline std::pair<Poset, std::vector<Cone>> face_poset(const Fan& f) {
  std::vector<Cone> elems = f.cones_sorted();
  Poset p;
  p.labels.reserve(elems.size());
  for (const Cone& c : elems) p.labels.push_back(cone_token(c));
  p.leq.assign(elems.size(), std::vector<bool>(elems.size(), false));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      p.leq[i][j] = is_face_of(elems[i], elems[j]);
  return {std::move(p), std::move(elems)};
}

/// All cones having sigma as a face.
inline std::vector<Cone> star(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma)) throw std::invalid_argument("star: cone not in fan " + cone_token(sigma));
  std::vector<Cone> out;
  for (const Cone& c : f.cones)
    if (is_face_of(sigma, c)) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

/// Smallest cone containing both s1 and s2, if any cone contains their union.
inline std::optional<Cone> wedge(const Fan& f, const Cone& s1, const Cone& s2) {
  if (!f.has_cone(s1) || !f.has_cone(s2))
    throw std::invalid_argument("wedge: cone not in fan");
  Cone u;
  std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(u));
  std::optional<Cone> best;
  for (const Cone& c : f.cones) {
    if (!is_face_of(u, c)) continue;
    if (!best || c.size() < best->size()) best = c;
  }
  return best;
}

struct QuotientFanResult {
  QuotientMap map;               // M ↠ M/⟨σ⟩
  Fan fan;                       // Σ/σ
  std::map<Cone, Cone> cone_map; // star(σ) → cones of Σ/σ, τ ↦ τ/⟨σ⟩
};

/// Quotient fan Σ/σ: images of the cones containing σ under the canonical
/// lattice quotient, with ray images re-primitivized and deduplicated.
/// Quotient by the zero cone reproduces the fan with the identity map.
inline QuotientFanResult quotient_fan(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma))
    throw std::invalid_argument("quotient_fan: cone not in fan " + cone_token(sigma));
  QuotientFanResult out;
  out.map = quotient_map(f.rank, f.cone_matrix(sigma));
  const Mat& p = out.map.projection;

  std::vector<Cone> st = star(f, sigma);
  std::set<int> star_rays;
  for (const Cone& c : st)
    for (int i : c)
      if (!std::binary_search(sigma.begin(), sigma.end(), i)) star_rays.insert(i);

  out.fan.rank = out.map.target_rank;
  std::map<int, int> new_index;  // old ray index -> new ray index
  std::map<Vec, int> by_value;
  for (int i : star_rays) {
    Vec image = primitive(p.apply(f.rays[i]));
    auto it = by_value.find(image);
    if (it == by_value.end()) {
      int idx = int(out.fan.rays.size());
      out.fan.rays.push_back(image);
      by_value.emplace(std::move(image), idx);
      new_index[i] = idx;
    } else {
      new_index[i] = it->second;
    }
  }
  for (const Cone& tau : st) {
    Cone image;
    for (int i : tau)
      if (!std::binary_search(sigma.begin(), sigma.end(), i)) image.push_back(new_index[i]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    out.fan.cones.insert(image);
    out.cone_map[tau] = std::move(image);
  }
  return out;
}

/// Support equals the whole space. Decided by the facet-pairing criterion for
/// simplicial fans plus an exact ray-shooting certificate over a finite net of
/// rational directions (± rays, pairwise sums and differences, coordinate
/// directions). Rank-0 fans are vacuously complete.
inline bool is_complete(const Fan& f) {
  if (f.rank == 0) return true;
  std::vector<Cone> maximal = f.maximal_cones();
  std::vector<Cone> top;
  for (const Cone& c : maximal) {
    if (int(c.size()) != f.rank) return false;
    top.push_back(c);
  }
  if (top.empty()) return false;
  // facet pairing: each (rank-1)-cone bounds exactly two top cones
  for (const Cone& c : f.cones) {
    if (int(c.size()) != f.rank - 1) continue;
    int count = 0;
    for (const Cone& t : top)
      if (is_face_of(c, t)) ++count;
    if (count != 2) return false;
  }
  // ray-shooting certificate
  std::vector<Vec> directions;
  auto push = [&](Vec v) {
    bool zero = true;
    for (const Int& e : v)
      if (e != 0) { zero = false; break; }
    if (!zero) directions.push_back(std::move(v));
  };
  for (const Vec& r : f.rays) {
    push(r);
    Vec neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    push(std::move(neg));
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    for (std::size_t j = i + 1; j < f.rays.size(); ++j) {
      Vec sum(f.rank), diff(f.rank);
      for (int k = 0; k < f.rank; ++k) {
        sum[k] = f.rays[i][k] + f.rays[j][k];
        diff[k] = f.rays[i][k] - f.rays[j][k];
      }
      Vec msum(f.rank), mdiff(f.rank);
      for (int k = 0; k < f.rank; ++k) { msum[k] = -sum[k]; mdiff[k] = -diff[k]; }
      push(std::move(sum));
      push(std::move(diff));
      push(std::move(msum));
      push(std::move(mdiff));
    }
  for (int k = 0; k < f.rank; ++k) {
    Vec e(f.rank, Int(0)), me(f.rank, Int(0));
    e[k] = 1;
    me[k] = -1;
    push(std::move(e));
    push(std::move(me));
  }
  std::vector<Mat> top_gens;
  for (const Cone& t : top) top_gens.push_back(f.cone_matrix(t));
  for (const Vec& d : directions) {
    bool hit = false;
    for (const Mat& g : top_gens)
      if (cone_contains(g, d)) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

/// Unimodular identification of two fans: a lattice isomorphism together with
/// the induced bijection of ray tables.
struct FanIso {
  Mat lattice_iso;               // target_ray[bijection[i]] = lattice_iso * source_ray[i]
  std::vector<int> ray_bijection;
};

inline bool verify_fan_iso(const Fan& f, const Fan& g, const FanIso& iso) {
  if (f.rank != g.rank || f.rays.size() != g.rays.size()) return false;
  if (iso.lattice_iso.rows() != f.rank || iso.lattice_iso.cols() != f.rank) return false;
  if (!is_unimodular(iso.lattice_iso)) return false;
  if (iso.ray_bijection.size() != f.rays.size()) return false;
  std::vector<bool> hit(g.rays.size(), false);
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    int m = iso.ray_bijection[i];
    if (m < 0 || m >= int(g.rays.size()) || hit[m]) return false;
    hit[m] = true;
    if (iso.lattice_iso.apply(f.rays[i]) != g.rays[m]) return false;
  }
  std::set<Cone> mapped;
  for (const Cone& c : f.cones) {
    Cone image;
    for (int i : c) image.push_back(iso.ray_bijection[i]);
    std::sort(image.begin(), image.end());
    mapped.insert(std::move(image));
  }
  return mapped == g.cones;
}

/// Builds the FanIso induced by a given unimodular lattice map, if that map
/// really carries f onto g.
inline std::optional<FanIso> fan_iso_from_matrix(const Fan& f, const Fan& g, const Mat& u) {
  if (f.rays.size() != g.rays.size()) return std::nullopt;
  FanIso iso;
  iso.lattice_iso = u;
  iso.ray_bijection.assign(f.rays.size(), -1);
  std::map<Vec, int> g_index;
  for (std::size_t i = 0; i < g.rays.size(); ++i) g_index[g.rays[i]] = int(i);
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    auto it = g_index.find(u.apply(f.rays[i]));
    if (it == g_index.end()) return std::nullopt;
    iso.ray_bijection[i] = it->second;
  }
  if (!verify_fan_iso(f, g, iso)) return std::nullopt;
  return iso;
}

namespace detail {

// per-ray profile: number of cones of each dimension through the ray
inline std::vector<std::vector<int>> ray_profiles(const Fan& f) {
  std::vector<std::vector<int>> prof(f.rays.size(), std::vector<int>(f.rank + 1, 0));
  for (const Cone& c : f.cones)
    for (int i : c) ++prof[i][c.size()];
  return prof;
}

}  // namespace detail

/// Searches for fan isomorphisms (desk scale), up to `limit` of them. Ray
/// spans are reduced to coordinates on their saturations, a basis tuple of
/// source rays is matched against candidate tuples of target rays, and each
/// resulting lattice map is verified in full.
inline std::vector<FanIso> fan_isomorphisms(const Fan& f, const Fan& g, std::size_t limit) {
  std::vector<FanIso> found;
  if (limit == 0) return found;
  if (f.rank != g.rank || f.rays.size() != g.rays.size()) return found;
  {
    std::map<std::size_t, int> fdims, gdims;
    for (const Cone& c : f.cones) ++fdims[c.size()];
    for (const Cone& c : g.cones) ++gdims[c.size()];
    if (fdims != gdims) return found;
  }
  const int n = f.rank;
  if (f.rays.empty()) {
    found.push_back(FanIso{Mat::identity(n), {}});
    return found;
  }

  Mat span_f = saturate(Mat::from_rows(f.rays, n), n);
  Mat span_g = saturate(Mat::from_rows(g.rays, n), n);
  const int s = span_f.rows();
  if (span_g.rows() != s) return found;

  auto coords = [&](const Mat& basis, const std::vector<Vec>& rays) {
    std::vector<Vec> out;
    for (const Vec& r : rays) {
      Mat rhs(int(r.size()), 1);
      for (std::size_t i = 0; i < r.size(); ++i) rhs.at(int(i), 0) = r[i];
      auto sol = solve_exact(basis.transposed(), rhs);
      Vec c(s);
      for (int i = 0; i < s; ++i) c[i] = sol->first.at(i, 0);
      out.push_back(std::move(c));
    }
    return out;
  };
  std::vector<Vec> cf = coords(span_f, f.rays), cg = coords(span_g, g.rays);

  // greedy independent pivot tuple among source rays
  std::vector<int> pivots;
  {
    Mat acc(0, s);
    for (std::size_t i = 0; i < cf.size() && int(pivots.size()) < s; ++i) {
      Mat cand = acc.stacked(Mat::from_rows({cf[i]}, s));
      if (hermite_normal_form(cand).rank == int(pivots.size()) + 1) {
        acc = cand;
        pivots.push_back(int(i));
      }
    }
  }

  auto prof_f = detail::ray_profiles(f), prof_g = detail::ray_profiles(g);
  std::vector<int> image(pivots.size(), -1);
  std::vector<bool> used(g.rays.size(), false);
  Mat comp_f = complete_to_unimodular(span_f), comp_g = complete_to_unimodular(span_g);
  Mat comp_f_inv = inverse_unimodular(comp_f.transposed());

  auto try_assignment = [&]() {
    Mat bf(int(pivots.size()), s), bg(int(pivots.size()), s);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (int j = 0; j < s; ++j) {
        bf.at(int(i), j) = cf[pivots[i]][j];
        bg.at(int(i), j) = cg[image[i]][j];
      }
    // V * bf_row^T = bg_row^T for every pivot ⇔ bf * V^T = bg
    auto sol = solve_exact(bf, bg);
    if (!sol || !sol->second) return;
    Mat v = sol->first.transposed();
    if (!is_unimodular(v)) return;
    // lift V on span coordinates to a unimodular U on the whole lattice
    Mat block = Mat::identity(n);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) block.at(i, j) = v.at(i, j);
    Mat u = comp_g.transposed() * block * comp_f_inv;
    if (auto iso = fan_iso_from_matrix(f, g, u)) found.push_back(*iso);
  };

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (found.size() >= limit) return;
    if (pos == pivots.size()) { try_assignment(); return; }
    for (std::size_t cand = 0; cand < g.rays.size() && found.size() < limit; ++cand) {
      if (used[cand]) continue;
      if (prof_f[pivots[pos]] != prof_g[cand]) continue;
      // partial independence
      Mat acc(int(pos) + 1, s);
      bool dep = false;
      for (std::size_t i = 0; i < pos; ++i)
        for (int j = 0; j < s; ++j) acc.at(int(i), j) = cg[image[i]][j];
      for (int j = 0; j < s; ++j) acc.at(int(pos), j) = cg[cand][j];
      if (hermite_normal_form(acc).rank != int(pos) + 1) dep = true;
      if (dep) continue;
      used[cand] = true;
      image[pos] = int(cand);
      self(self, pos + 1);
      used[cand] = false;
    }
  };
  rec(rec, 0);
  return found;
}

inline std::optional<FanIso> fan_isomorphic(const Fan& f, const Fan& g) {
  std::vector<FanIso> all = fan_isomorphisms(f, g, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

/// Confirms (Σ/σ)/(τ/⟨σ⟩) ≅ Σ/τ for all face pairs σ ⊆ τ, with the
/// isomorphism induced by the composed projections. Report style.
inline Report check_quotient_functoriality(const Fan& f) {
  Report rep;
  Clause& cl = rep.add("quotient-functoriality");
  for (const Cone& sigma : f.cones) {
    QuotientFanResult first = quotient_fan(f, sigma);
    for (const Cone& tau : star(f, sigma)) {
      QuotientFanResult iterated = quotient_fan(first.fan, first.cone_map.at(tau));
      QuotientFanResult direct = quotient_fan(f, tau);
      Mat composed = iterated.map.projection * first.map.projection;
      auto v = factor_through(direct.map.projection, composed);
      std::string pair = cone_token(sigma) + " ⊆ " + cone_token(tau);
      if (!v || !is_unimodular(*v)) {
        rep.fail(cl, "no unimodular factorization for " + pair);
        continue;
      }
      if (!fan_iso_from_matrix(direct.fan, iterated.fan, *v))
        rep.fail(cl, "induced map is not a fan isomorphism for " + pair);
    }
  }
  return rep;
}

}  // namespace fanifold
