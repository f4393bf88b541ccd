// Exact integer-lattice algebra: Hermite normal form, saturation, kernels,
// quotient presentations and perpendicular sublattices.
//
// Conventions. Vectors are columns; a lattice map Z^n -> Z^m is an m x n
// matrix acting by left multiplication. Generating sets and lattice bases are
// stored as matrix ROWS. The canonical basis of a sublattice is the row-style
// Hermite normal form of any basis: pivots positive, entries above each pivot
// reduced into [0, pivot).

#pragma once

#include "fanifold/matrix.hpp"

#include <numeric>
#include <optional>
#include <tuple>
#include <utility>

namespace fanifold {

namespace detail {

// g = gcd(a,b) >= 0 with g = x*a + y*b.
inline std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b; b = r;
    Int x2 = x0 - q * x1, y2 = y0 - q * y1;
    x0 = x1; y0 = y1;
    x1 = x2; y1 = y2;
  }
  if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
  return {a, x0, y0};
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

struct HnfResult {
  Mat hnf;        // canonical row-style Hermite normal form
  Mat transform;  // unimodular, transform * input = hnf
  int rank = 0;   // number of nonzero rows of hnf
};

/// Row-style Hermite normal form with unimodular transform.
inline HnfResult hermite_normal_form(const Mat& m) {
  const int rows = m.rows(), cols = m.cols();
  Mat a = m;
  Mat t = Mat::identity(rows);
  int r = 0;
  auto combine = [&](int i, int j, const Int& p, const Int& q, const Int& u, const Int& v) {
    // rows (i,j) <- (p*ri + q*rj, u*ri + v*rj), applied to both a and t
    for (int c = 0; c < cols; ++c) {
      Int ai = a.at(i, c), aj = a.at(j, c);
      a.at(i, c) = p * ai + q * aj;
      a.at(j, c) = u * ai + v * aj;
    }
    for (int c = 0; c < rows; ++c) {
      Int ti = t.at(i, c), tj = t.at(j, c);
      t.at(i, c) = p * ti + q * tj;
      t.at(j, c) = u * ti + v * tj;
    }
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < cols; ++c) a.at(i, c) = -a.at(i, c);
    for (int c = 0; c < rows; ++c) t.at(i, c) = -t.at(i, c);
  };
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(a.at(i, c), a.at(j, c));
    for (int c = 0; c < rows; ++c) std::swap(t.at(i, c), t.at(j, c));
  };
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (a.at(i, c) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    swap_rows(r, pivot);
    for (int i = r + 1; i < rows; ++i) {
      if (a.at(i, c) == 0) continue;
      auto [g, x, y] = detail::xgcd(a.at(r, c), a.at(i, c));
      Int u = -a.at(i, c) / g, v = a.at(r, c) / g;
      combine(r, i, x, y, u, v);
    }
    if (a.at(r, c) < 0) negate_row(r);
    for (int i = 0; i < r; ++i) {
      Int q = detail::floor_div(a.at(i, c), a.at(r, c));
      if (q == 0) continue;
      for (int cc = 0; cc < cols; ++cc) a.at(i, cc) -= q * a.at(r, cc);
      for (int cc = 0; cc < rows; ++cc) t.at(i, cc) -= q * t.at(r, cc);
    }
    ++r;
  }
  return {std::move(a), std::move(t), r};
}

/// v / gcd(entries), direction preserved. The zero vector has no primitive
/// representative.
inline Vec primitive(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

/// Canonical basis (rows) of { x in Z^n : a·x = 0 }. Kernels are saturated,
/// so this doubles as the perpendicular-sublattice workhorse.
inline Mat right_kernel(const Mat& a) {
  const int n = a.cols();
  if (a.rows() == 0) return Mat::identity(n);
  HnfResult h = hermite_normal_form(a.transposed());
  // zero rows of h.hnf correspond to transform rows annihilating every column
  std::vector<Vec> basis;
  for (int i = h.rank; i < n; ++i) basis.push_back(h.transform.row(i));
  Mat k = Mat::from_rows(basis, n);
  return hermite_normal_form(k).hnf;  // already full rank; canonicalize
}

/// Basis of span_Q(generators) ∩ Z^rank, canonical. Empty generator sets give
/// the zero sublattice.
inline Mat saturate(const Mat& generators, int rank) {
  if (generators.rows() > 0 && generators.cols() != rank)
    throw std::invalid_argument("saturate: generator width != rank");
  Mat gens = generators.rows() == 0 ? Mat(0, rank) : generators;
  HnfResult h = hermite_normal_form(gens);
  if (h.rank == 0) return Mat(0, rank);
  return right_kernel(right_kernel(gens));
}

/// Integer right inverse of a surjection p: Z^n -> Z^k (p * result = I_k).
/// Throws if p is not surjective.
inline Mat solve_right_inverse(const Mat& p) {
  const int k = p.rows(), n = p.cols();
  HnfResult h = hermite_normal_form(p.transposed());
  bool unit = h.rank == k;
  for (int i = 0; unit && i < k; ++i)
    for (int j = 0; unit && j < k; ++j)
      if (h.hnf.at(i, j) != (i == j ? 1 : 0)) unit = false;
  if (!unit) throw std::invalid_argument("solve_right_inverse: map is not onto");
  Mat r(n, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) r.at(j, i) = h.transform.at(i, j);
  return r;
}

/// Exact solution X of A·X = B over Q when A has full column rank; nullopt if
/// the system is inconsistent. Second member of the pair is false when the
/// solution exists but is not integral.
inline std::optional<std::pair<Mat, bool>> solve_exact(const Mat& a, const Mat& b) {
  const int n = a.rows(), m = a.cols(), w = b.cols();
  if (b.rows() != n) throw std::invalid_argument("solve_exact: shape mismatch");
  // rational Gaussian elimination on [a | b]
  std::vector<std::vector<Rat>> t(n, std::vector<Rat>(m + w));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) t[i][j] = Rat(a.at(i, j));
    for (int j = 0; j < w; ++j) t[i][m + j] = Rat(b.at(i, j));
  }
  std::vector<int> pivot_row(m, -1);
  int r = 0;
  for (int c = 0; c < m && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (t[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(t[r], t[p]);
    Rat inv = t[r][c];
    for (int j = c; j < m + w; ++j) t[r][j] /= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (int j = c; j < m + w; ++j) t[i][j] -= f * t[r][j];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (int c = 0; c < m; ++c)
    if (pivot_row[c] < 0) throw std::invalid_argument("solve_exact: matrix lacks full column rank");
  for (int i = r; i < n; ++i)
    for (int j = 0; j < w; ++j)
      if (t[i][m + j] != 0) return std::nullopt;  // inconsistent
  Mat x(m, w);
  bool integral = true;
  for (int c = 0; c < m; ++c)
    for (int j = 0; j < w; ++j) {
      const Rat& val = t[pivot_row[c]][m + j];
      if (boost::multiprecision::denominator(val) != 1) integral = false;
      else x.at(c, j) = boost::multiprecision::numerator(val);
    }
  return std::make_pair(std::move(x), integral);
}

/// Exact inverse of a unimodular matrix.
inline Mat inverse_unimodular(const Mat& u) {
  if (!is_unimodular(u)) throw std::invalid_argument("inverse_unimodular: |det| != 1");
  auto sol = solve_exact(u, Mat::identity(u.rows()));
  return sol->first;  // integral by unimodularity
}

/// Unique X with X·pa = pb, when it exists (pa must have full row rank;
/// rank-deficient input yields nullopt rather than an error).
/// Exists over Z iff ker(pa) ⊆ ker(pb) and the rational solution is integral.
inline std::optional<Mat> factor_through(const Mat& pa, const Mat& pb) {
  if (pa.cols() != pb.cols()) return std::nullopt;
  if (pa.rows() == 0) {
    if (pb.rows() == 0) return Mat(0, 0);
    return std::nullopt;
  }
  if (hermite_normal_form(pa).rank != pa.rows()) return std::nullopt;
  auto sol = solve_exact(pa.transposed(), pb.transposed());
  if (!sol || !sol->second) return std::nullopt;
  Mat x = sol->first.transposed();
  if (x * pa != pb) return std::nullopt;
  return x;
}

/// Completes the rows of a saturated-sublattice basis to a basis of Z^n.
/// Returns an n x n unimodular matrix whose first rows are exactly `basis`.
inline Mat complete_to_unimodular(const Mat& basis) {
  const int n = basis.cols(), r = basis.rows();
  if (r == 0) return Mat::identity(n);
  HnfResult h = hermite_normal_form(basis.transposed());
  bool unit = h.rank == r;
  for (int i = 0; unit && i < r; ++i)
    for (int j = 0; unit && j < r; ++j)
      if (h.hnf.at(i, j) != (i == j ? 1 : 0)) unit = false;
  if (!unit) throw std::invalid_argument("complete_to_unimodular: basis not saturated");
  Mat full = inverse_unimodular(h.transform).transposed();
  // first r rows of (T^{-1})^T coincide with `basis`; keep them verbatim
  Mat out(n, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = basis.at(i, j);
  for (int i = r; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = full.at(i, j);
  return out;
}

/// Presentation of the lattice quotient Z^n ↠ Z^n/⟨σ⟩ for the saturated
/// sublattice ⟨σ⟩ spanned by a cone's generators.
struct QuotientMap {
  int source_rank = 0;
  Mat kernel_basis;  // canonical basis of the saturation
  Mat projection;    // target_rank x source_rank, surjective
  int target_rank = 0;

  bool operator==(const QuotientMap& o) const {
    return source_rank == o.source_rank && target_rank == o.target_rank &&
           kernel_basis == o.kernel_basis && projection == o.projection;
  }
  bool operator!=(const QuotientMap& o) const { return !(*this == o); }
};

/// Canonical quotient presentation: kernel = saturation of the generators,
/// projection = canonical basis of the kernel's perpendicular, read as a map.
/// Two generating sets of the same saturation give identical matrices.
inline QuotientMap quotient_map(int rank, const Mat& cone_generators) {
  QuotientMap q;
  q.source_rank = rank;
  q.kernel_basis = saturate(cone_generators, rank);
  q.projection = right_kernel(q.kernel_basis);
  q.target_rank = q.projection.rows();
  return q;
}

/// second ∘ first. The composed kernel is the saturation of the combined
/// kernel; the composed projection is the literal matrix product, so
/// compositions stay strictly associative.
inline QuotientMap compose(const QuotientMap& second, const QuotientMap& first) {
  if (second.source_rank != first.target_rank)
    throw std::invalid_argument("compose: rank mismatch");
  QuotientMap q;
  q.source_rank = first.source_rank;
  q.projection = second.projection * first.projection;
  q.kernel_basis = right_kernel(q.projection);
  q.target_rank = second.target_rank;
  return q;
}

/// Canonical presentation with the same kernel.
inline QuotientMap canonicalized(const QuotientMap& q) {
  QuotientMap out;
  out.source_rank = q.source_rank;
  out.kernel_basis = hermite_normal_form(q.kernel_basis).hnf;
  out.projection = right_kernel(out.kernel_basis);
  out.target_rank = out.projection.rows();
  return out;
}

/// σ^⊥ ∩ M^∨: the saturated sublattice of the dual pairing to zero with every
/// generator of σ.
struct PerpLattice {
  int ambient_dual_rank = 0;
  Mat basis;  // canonical; one row per basis vector of σ^⊥

  bool operator==(const PerpLattice& o) const {
    return ambient_dual_rank == o.ambient_dual_rank && basis == o.basis;
  }
  bool operator!=(const PerpLattice& o) const { return !(*this == o); }
};

inline PerpLattice perp_lattice(int rank, const Mat& cone_generators) {
  PerpLattice p;
  p.ambient_dual_rank = rank;
  p.basis = cone_generators.rows() == 0 ? Mat::identity(rank) : right_kernel(cone_generators);
  return p;
}

/// Sublattice equality after canonicalization.
inline bool same_lattice(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) return false;
  HnfResult ha = hermite_normal_form(a), hb = hermite_normal_form(b);
  if (ha.rank != hb.rank) return false;
  for (int i = 0; i < ha.rank; ++i)
    if (ha.hnf.row(i) != hb.hnf.row(i)) return false;
  return true;
}

}  // namespace fanifold
