#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bratteli/errors.hpp"
#include "bratteli/numeric.hpp"

namespace bratteli {

// An edge of level n runs from a vertex of level n-1 (src) to one of
// level n (dst). Vertices are addressed by their index within a level.
struct Edge {
  std::string id;
  int src = 0;
  int dst = 0;
};

// Standard Bratteli diagram truncated at depth N: vertex levels 0..N,
// edge levels 1..N. Level 0 is the single source v0. Immutable after
// construction; all transforms return new diagrams.
class BratteliDiagram {
 public:
  BratteliDiagram() = default;
  BratteliDiagram(std::vector<std::vector<std::string>> levels,
                  std::vector<std::vector<Edge>> edge_levels)
      : levels_(std::move(levels)), edge_levels_(std::move(edge_levels)) {
    build_adjacency();
  }

  int depth() const { return static_cast<int>(edge_levels_.size()); }
  int num_vertices(int level) const { return static_cast<int>(levels_[level].size()); }
  const std::vector<std::string>& vertices(int level) const { return levels_[level]; }
  const std::string& vertex_name(int level, int v) const { return levels_[level][v]; }

  // Edges of level n, 1 <= n <= depth().
  const std::vector<Edge>& edges(int n) const { return edge_levels_[n - 1]; }
  int num_edges(int n) const { return static_cast<int>(edge_levels_[n - 1].size()); }
  const Edge& edge(int n, int e) const { return edge_levels_[n - 1][e]; }

  // Outgoing edge indices of vertex v at level n (edges of level n+1).
  const std::vector<int>& out_edges(int n, int v) const { return out_[n][v]; }
  int in_degree(int n, int v) const { return in_deg_[n][v]; }

  std::string digest() const {
    Digest d;
    for (const auto& lv : levels_) {
      for (const auto& name : lv) d.feed(name);
      d.feed(static_cast<std::uint64_t>(lv.size()));
    }
    for (const auto& el : edge_levels_) {
      for (const Edge& e : el) {
        d.feed(e.id);
        d.feed(e.src);
        d.feed(e.dst);
      }
      d.feed(static_cast<std::uint64_t>(el.size()));
    }
    return d.hex();
  }

 private:
  void build_adjacency() {
    const int n_levels = static_cast<int>(levels_.size());
    out_.assign(n_levels, {});
    in_deg_.assign(n_levels, {});
    for (int n = 0; n < n_levels; ++n) {
      out_[n].assign(levels_[n].size(), {});
      in_deg_[n].assign(levels_[n].size(), 0);
    }
    for (int n = 1; n < n_levels; ++n) {
      const auto& el = edge_levels_[n - 1];
      for (int e = 0; e < static_cast<int>(el.size()); ++e) {
        out_[n - 1][el[e].src].push_back(e);
        ++in_deg_[n][el[e].dst];
      }
    }
  }

  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<Edge>> edge_levels_;
  std::vector<std::vector<std::vector<int>>> out_;  // out_[n][v] -> edge ids at level n+1
  std::vector<std::vector<int>> in_deg_;
};

// Per-level vertex subsets W_n and edge subsets F_n, stored as flags
// parallel to the host diagram.
struct Subdiagram {
  std::vector<std::vector<char>> w;  // w[n][v], n = 0..N
  std::vector<std::vector<char>> f;  // f[n-1][e] for edge level n

  bool in_w(int level, int v) const { return w[level][v] != 0; }
  bool in_f(int edge_level, int e) const { return f[edge_level - 1][e] != 0; }

  static Subdiagram empty_for(const BratteliDiagram& d) {
    Subdiagram s;
    s.w.resize(d.depth() + 1);
    for (int n = 0; n <= d.depth(); ++n) s.w[n].assign(d.num_vertices(n), 0);
    s.f.resize(d.depth());
    for (int n = 1; n <= d.depth(); ++n) s.f[n - 1].assign(d.num_edges(n), 0);
    return s;
  }

  // Full subdiagram W = V, F = E.
  static Subdiagram full_for(const BratteliDiagram& d) {
    Subdiagram s = empty_for(d);
    for (auto& lv : s.w) std::fill(lv.begin(), lv.end(), 1);
    for (auto& el : s.f) std::fill(el.begin(), el.end(), 1);
    return s;
  }

  std::string digest() const {
    Digest d;
    for (const auto& lv : w) {
      for (char c : lv) d.feed(static_cast<int>(c));
      d.feed(static_cast<std::uint64_t>(lv.size()));
    }
    for (const auto& el : f) {
      for (char c : el) d.feed(static_cast<int>(c));
      d.feed(static_cast<std::uint64_t>(el.size()));
    }
    return d.hex();
  }
};

struct ValidationIssue {
  std::string where;
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Structural invariants of a standard diagram: single source, no sinks
// below the frontier, every vertex at level >= 1 reachable (has an
// incoming edge). Edge endpoints are range-checked by construction.
inline ValidationReport validate(const BratteliDiagram& d,
                                 const Subdiagram* sub = nullptr) {
  ValidationReport rep;
  auto issue = [&rep](std::string where, std::string what) {
    rep.issues.push_back({std::move(where), std::move(what)});
  };

  if (d.depth() < 1) issue("diagram", "depth must be at least 1");
  if (d.num_vertices(0) != 1) issue("level 0", "V_0 must be the singleton {v0}");
  for (int n = 0; n < d.depth(); ++n)
    for (int v = 0; v < d.num_vertices(n); ++v)
      if (d.out_edges(n, v).empty())
        issue("level " + std::to_string(n) + " vertex " + d.vertex_name(n, v),
              "sink below the truncation frontier");
  for (int n = 1; n <= d.depth(); ++n)
    for (int v = 0; v < d.num_vertices(n); ++v)
      if (d.in_degree(n, v) == 0)
        issue("level " + std::to_string(n) + " vertex " + d.vertex_name(n, v),
              "no incoming edge");

  if (sub == nullptr) return rep;
  const Subdiagram& s = *sub;
  if (static_cast<int>(s.w.size()) != d.depth() + 1 ||
      static_cast<int>(s.f.size()) != d.depth()) {
    issue("subdiagram", "level count does not match diagram");
    return rep;
  }
  if (!s.in_w(0, 0)) issue("subdiagram level 0", "v0 must belong to W");
  for (int n = 1; n <= d.depth(); ++n) {
    std::vector<char> covered(d.num_vertices(n), 0);
    for (int e = 0; e < d.num_edges(n); ++e) {
      if (!s.in_f(n, e)) continue;
      const Edge& ed = d.edge(n, e);
      if (!s.in_w(n - 1, ed.src))
        issue("edge " + ed.id, "F-edge source outside W");
      if (!s.in_w(n, ed.dst))
        issue("edge " + ed.id, "F-edge range outside W");
      covered[ed.dst] = 1;
    }
    for (int v = 0; v < d.num_vertices(n); ++v) {
      if (s.in_w(n, v) && !covered[v])
        issue("level " + std::to_string(n) + " vertex " + d.vertex_name(n, v),
              "W not covered: vertex has no incoming F-edge");
    }
  }
  for (int n = 0; n < d.depth(); ++n) {
    for (int v = 0; v < d.num_vertices(n); ++v) {
      if (!s.in_w(n, v)) continue;
      bool has_out = false;
      for (int e : d.out_edges(n, v))
        if (s.in_f(n + 1, e)) { has_out = true; break; }
      if (!has_out)
        issue("level " + std::to_string(n) + " vertex " + d.vertex_name(n, v),
              "sink within (W,F) below the frontier");
    }
  }
  return rep;
}

inline void require_valid(const BratteliDiagram& d, const Subdiagram* sub = nullptr) {
  ValidationReport rep = validate(d, sub);
  if (!rep.ok())
    fail(ErrorKind::InvalidInput,
         "invalid diagram: " + rep.issues.front().where + ": " + rep.issues.front().what);
}

// Exact path counts |E(v,w)| and |F(v,w)| between two levels, as matrix
// products of per-level incidence counts.
struct PathCountTable {
  int from = 0;
  int to = 0;
  std::vector<std::vector<BigInt>> e_counts;  // [v at from][w at to]
  std::vector<std::vector<BigInt>> f_counts;  // zero matrix when no subdiagram
};

inline PathCountTable path_counts(const BratteliDiagram& d, const Subdiagram* sub,
                                  int from, int to) {
  if (!(0 <= from && from < to && to <= d.depth()))
    fail(ErrorKind::InvalidInput, "path_counts: invalid level range");
  const int rows = d.num_vertices(from);
  PathCountTable t;
  t.from = from;
  t.to = to;
  t.e_counts.assign(rows, std::vector<BigInt>(d.num_vertices(from), 0));
  t.f_counts.assign(rows, std::vector<BigInt>(d.num_vertices(from), 0));
  for (int v = 0; v < rows; ++v) {
    t.e_counts[v].assign(rows, 0);
    t.e_counts[v][v] = 1;
    t.f_counts[v].assign(rows, 0);
    t.f_counts[v][v] = 1;
  }
  for (int n = from + 1; n <= to; ++n) {
    const int cols = d.num_vertices(n);
    std::vector<std::vector<BigInt>> ne(rows, std::vector<BigInt>(cols, 0));
    std::vector<std::vector<BigInt>> nf(rows, std::vector<BigInt>(cols, 0));
    for (int e = 0; e < d.num_edges(n); ++e) {
      const Edge& ed = d.edge(n, e);
      const bool in_f = sub != nullptr && sub->in_f(n, e);
      for (int v = 0; v < rows; ++v) {
        ne[v][ed.dst] += t.e_counts[v][ed.src];
        if (in_f) nf[v][ed.dst] += t.f_counts[v][ed.src];
      }
    }
    t.e_counts = std::move(ne);
    t.f_counts = std::move(nf);
  }
  if (sub == nullptr)
    for (auto& row : t.f_counts) std::fill(row.begin(), row.end(), BigInt(0));
  return t;
}

// |E(v0,v)| for every vertex of every level; counts[n][v].
inline std::vector<std::vector<BigInt>> root_counts(const BratteliDiagram& d) {
  std::vector<std::vector<BigInt>> counts(d.depth() + 1);
  counts[0] = {BigInt(1)};
  for (int n = 1; n <= d.depth(); ++n) {
    counts[n].assign(d.num_vertices(n), 0);
    for (int e = 0; e < d.num_edges(n); ++e) {
      const Edge& ed = d.edge(n, e);
      counts[n][ed.dst] += counts[n - 1][ed.src];
    }
  }
  return counts;
}

// |F(v0,v)| with the convention F(v0,v0) = 1 (the empty path).
inline std::vector<std::vector<BigInt>> root_f_counts(const BratteliDiagram& d,
                                                      const Subdiagram& sub) {
  std::vector<std::vector<BigInt>> counts(d.depth() + 1);
  counts[0] = {BigInt(1)};
  for (int n = 1; n <= d.depth(); ++n) {
    counts[n].assign(d.num_vertices(n), 0);
    for (int e = 0; e < d.num_edges(n); ++e) {
      if (!sub.in_f(n, e)) continue;
      const Edge& ed = d.edge(n, e);
      counts[n][ed.dst] += counts[n - 1][ed.src];
    }
  }
  return counts;
}

// Strictly increasing level sequence used for telescoping; always
// starts at 0.
struct TelescopePlan {
  std::vector<int> levels;  // 0 = levels[0] < levels[1] < ... <= N

  static TelescopePlan identity(int depth) {
    TelescopePlan p;
    p.levels.resize(depth + 1);
    for (int i = 0; i <= depth; ++i) p.levels[i] = i;
    return p;
  }

  void check(int depth) const {
    if (levels.size() < 2 || levels.front() != 0)
      fail(ErrorKind::InvalidInput, "telescope plan must start at 0 and pick at least one level");
    for (std::size_t i = 1; i < levels.size(); ++i)
      if (levels[i] <= levels[i - 1] || levels[i] > depth)
        fail(ErrorKind::InvalidInput, "telescope plan must be strictly increasing within 0..N");
  }
};

// Result of telescoping. Each new edge of new level k is a path segment
// of the original diagram between plan levels k-1 and k; `segments`
// stores these as original edge-index sequences, which is the bijective
// path recoding (new depth-K paths <-> old depth-n(K) paths).
struct TelescopeResult {
  BratteliDiagram diagram;
  std::optional<Subdiagram> sub;
  std::vector<std::vector<std::vector<int>>> segments;  // [k-1][new edge] -> old edge indices

  std::vector<int> to_old_path(const std::vector<int>& new_path) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < new_path.size(); ++k) {
      const auto& seg = segments[k][new_path[k]];
      out.insert(out.end(), seg.begin(), seg.end());
    }
    return out;
  }
};

inline TelescopeResult telescope(const BratteliDiagram& d, const TelescopePlan& plan,
                                 const Subdiagram* sub = nullptr) {
  plan.check(d.depth());
  const int K = static_cast<int>(plan.levels.size()) - 1;

  std::vector<std::vector<std::string>> levels(K + 1);
  for (int k = 0; k <= K; ++k) levels[k] = d.vertices(plan.levels[k]);

  std::vector<std::vector<Edge>> edge_levels(K);
  std::vector<std::vector<std::vector<int>>> segments(K);
  std::vector<std::vector<char>> new_f(K);

  for (int k = 1; k <= K; ++k) {
    const int lo = plan.levels[k - 1];
    const int hi = plan.levels[k];
    // Enumerate all segments from each vertex of level lo, in edge order.
    std::vector<int> stack;
    std::vector<Edge> edges_out;
    std::vector<std::vector<int>> segs_out;
    std::vector<char> f_out;
    for (int v = 0; v < d.num_vertices(lo); ++v) {
      // DFS over levels lo+1..hi keeping the running edge choice.
      struct Frame { int vertex; std::size_t next; };
      std::vector<Frame> frames;
      frames.push_back({v, 0});
      std::vector<int> chosen;
      while (!frames.empty()) {
        Frame& fr = frames.back();
        const int level = lo + static_cast<int>(frames.size()) - 1;
        if (level == hi) {
          std::string id;
          bool all_f = sub != nullptr;
          for (std::size_t i = 0; i < chosen.size(); ++i) {
            const Edge& ed = d.edge(lo + 1 + static_cast<int>(i), chosen[i]);
            if (!id.empty()) id += "|";
            id += ed.id;
            if (all_f && !sub->in_f(lo + 1 + static_cast<int>(i), chosen[i])) all_f = false;
          }
          edges_out.push_back({id, v, fr.vertex});
          segs_out.push_back(chosen);
          f_out.push_back(all_f ? 1 : 0);
          frames.pop_back();
          if (!chosen.empty()) chosen.pop_back();
          continue;
        }
        const auto& outs = d.out_edges(level, fr.vertex);
        if (fr.next >= outs.size()) {
          frames.pop_back();
          if (!chosen.empty()) chosen.pop_back();
          continue;
        }
        const int e = outs[fr.next++];
        chosen.push_back(e);
        frames.push_back({d.edge(level + 1, e).dst, 0});
      }
    }
    edge_levels[k - 1] = std::move(edges_out);
    segments[k - 1] = std::move(segs_out);
    new_f[k - 1] = std::move(f_out);
  }

  TelescopeResult res;
  res.diagram = BratteliDiagram(std::move(levels), std::move(edge_levels));
  res.segments = std::move(segments);
  if (sub != nullptr) {
    Subdiagram ns = Subdiagram::empty_for(res.diagram);
    for (int k = 0; k <= K; ++k)
      for (int v = 0; v < res.diagram.num_vertices(k); ++v)
        ns.w[k][v] = sub->w[plan.levels[k]][v];
    for (int k = 1; k <= K; ++k) ns.f[k - 1] = new_f[k - 1];
    res.sub = std::move(ns);
  }
  return res;
}

// Splits level n in two: one intermediate vertex per edge of E_n.
// Telescoping the two new levels back together recovers the original
// diagram up to edge relabeling.
inline BratteliDiagram microscope(const BratteliDiagram& d, int n) {
  if (n < 1 || n > d.depth())
    fail(ErrorKind::InvalidInput, "microscope: level out of range");
  std::vector<std::vector<std::string>> levels;
  std::vector<std::vector<Edge>> edge_levels;
  for (int k = 0; k < n; ++k) levels.push_back(d.vertices(k));
  std::vector<std::string> mid;
  for (const Edge& e : d.edges(n)) mid.push_back(e.id);
  levels.push_back(mid);
  for (int k = n; k <= d.depth(); ++k) levels.push_back(d.vertices(k));

  for (int k = 1; k < n; ++k) edge_levels.push_back(d.edges(k));
  std::vector<Edge> in_half, out_half;
  const auto& en = d.edges(n);
  for (int e = 0; e < static_cast<int>(en.size()); ++e) {
    in_half.push_back({en[e].id + ":in", en[e].src, e});
    out_half.push_back({en[e].id + ":out", e, en[e].dst});
  }
  edge_levels.push_back(std::move(in_half));
  edge_levels.push_back(std::move(out_half));
  for (int k = n + 1; k <= d.depth(); ++k) edge_levels.push_back(d.edges(k));
  return BratteliDiagram(std::move(levels), std::move(edge_levels));
}

// Simplicity witness check at finite horizon: for each start level the
// least m with an everywhere-positive E-block. A missing witness is
// excused only when the remaining window is shorter than the smallest
// observed span.
struct SimplicityReport {
  bool simple = false;
  std::vector<std::pair<int, int>> witnesses;  // (n, least m)
};

inline SimplicityReport is_simple_at_horizon(const BratteliDiagram& d, int horizon) {
  if (horizon > d.depth()) fail(ErrorKind::InvalidInput, "horizon beyond depth");
  SimplicityReport rep;
  for (int n = 0; n < horizon; ++n) {
    // positivity of the incidence product n -> m for growing m
    std::vector<std::vector<char>> block(d.num_vertices(n));
    for (int v = 0; v < d.num_vertices(n); ++v) {
      block[v].assign(d.num_vertices(n), 0);
      block[v][v] = 1;
    }
    for (int m = n + 1; m <= horizon; ++m) {
      std::vector<std::vector<char>> next(d.num_vertices(n));
      for (auto& row : next) row.assign(d.num_vertices(m), 0);
      for (int e = 0; e < d.num_edges(m); ++e) {
        const Edge& ed = d.edge(m, e);
        for (int v = 0; v < d.num_vertices(n); ++v)
          if (block[v][ed.src]) next[v][ed.dst] = 1;
      }
      block = std::move(next);
      bool all = true;
      for (const auto& row : block)
        for (char c : row)
          if (!c) { all = false; break; }
      if (all) {
        rep.witnesses.push_back({n, m});
        break;
      }
    }
  }
  if (rep.witnesses.empty()) return rep;
  int max_span = 0;
  for (auto [n, m] : rep.witnesses) max_span = std::max(max_span, m - n);
  // every start level must have a witness unless its window is shorter
  // than the largest span a witness needed elsewhere
  std::vector<char> have(horizon, 0);
  for (auto [n, m] : rep.witnesses) have[n] = 1;
  rep.simple = true;
  for (int n = 0; n < horizon; ++n)
    if (!have[n] && horizon - n > max_span) rep.simple = false;
  return rep;
}

// Searches the least level m > start with c*|F(v,w)| <= |E(v,w)| for all
// source vertices v and all w in W_m. Failure reports the best factor
// seen, never a negative verdict: thinness is a limit property.
struct ThinnessSearchResult {
  std::optional<int> level;
  BigInt best_factor = 0;  // largest c' that some m <= N would admit
  int best_level = -1;
};

inline ThinnessSearchResult thinness_telescope_search(
    const BratteliDiagram& d, const Subdiagram& sub, const BigInt& c,
    int start_level, const std::vector<int>& source_vertices) {
  if (start_level >= d.depth())
    fail(ErrorKind::InvalidInput, "thinness search: start level at or past frontier");
  if (c <= 0) fail(ErrorKind::InvalidInput, "thinness search: factor must be positive");
  ThinnessSearchResult res;

  const int rows = static_cast<int>(source_vertices.size());
  std::vector<std::vector<BigInt>> e_cnt(rows), f_cnt(rows);
  for (int i = 0; i < rows; ++i) {
    e_cnt[i].assign(d.num_vertices(start_level), 0);
    f_cnt[i].assign(d.num_vertices(start_level), 0);
    e_cnt[i][source_vertices[i]] = 1;
    f_cnt[i][source_vertices[i]] = 1;
  }
  for (int m = start_level + 1; m <= d.depth(); ++m) {
    std::vector<std::vector<BigInt>> ne(rows), nf(rows);
    for (int i = 0; i < rows; ++i) {
      ne[i].assign(d.num_vertices(m), 0);
      nf[i].assign(d.num_vertices(m), 0);
    }
    for (int e = 0; e < d.num_edges(m); ++e) {
      const Edge& ed = d.edge(m, e);
      const bool in_f = sub.in_f(m, e);
      for (int i = 0; i < rows; ++i) {
        ne[i][ed.dst] += e_cnt[i][ed.src];
        if (in_f) nf[i][ed.dst] += f_cnt[i][ed.src];
      }
    }
    e_cnt = std::move(ne);
    f_cnt = std::move(nf);

    bool ok = true;
    BigInt level_factor = -1;  // min over (v,w) of floor(E/F), F > 0
    for (int i = 0; i < rows && ok; ++i) {
      for (int w = 0; w < d.num_vertices(m); ++w) {
        if (!sub.in_w(m, w)) continue;
        if (f_cnt[i][w] == 0) continue;
        BigInt q = e_cnt[i][w] / f_cnt[i][w];
        if (level_factor < 0 || q < level_factor) level_factor = q;
        if (c * f_cnt[i][w] > e_cnt[i][w]) ok = false;
      }
    }
    if (level_factor > res.best_factor) {
      res.best_factor = level_factor;
      res.best_level = m;
    }
    if (ok) {
      res.level = m;
      return res;
    }
  }
  return res;
}

// Builds the telescoping plan of the counting lemma: level 1 by a
// factor-2 search from v0, the inductive steps by factor L_{n(k-1)}+1
// from W_{n(k-1)}, with L_n = max_{v in W_n} |F(v0,v)|. The returned
// plan always ends at depth N so the path universe is preserved.
inline TelescopePlan counting_telescope(const BratteliDiagram& d, const Subdiagram& sub) {
  require_valid(d, &sub);
  TelescopePlan plan;
  plan.levels.push_back(0);
  auto f_root = root_f_counts(d, sub);

  int cur = 0;
  BigInt factor = 2;
  std::vector<int> sources = {0};
  while (cur < d.depth()) {
    ThinnessSearchResult r = thinness_telescope_search(d, sub, factor, cur, sources);
    if (!r.level) {
      std::string msg = "counting telescope exhausted at level " + std::to_string(cur) +
                        " (factor " + to_string(factor) + " needed";
      if (r.best_level >= 0)
        msg += ", best factor " + to_string(r.best_factor) + " at level " +
               std::to_string(r.best_level);
      msg += ")";
      fail(ErrorKind::Exhausted, msg);
    }
    cur = *r.level;
    plan.levels.push_back(cur);
    BigInt L = 0;
    sources.clear();
    for (int v = 0; v < d.num_vertices(cur); ++v) {
      if (!sub.in_w(cur, v)) continue;
      sources.push_back(v);
      if (f_root[cur][v] > L) L = f_root[cur][v];
    }
    if (sources.empty())
      fail(ErrorKind::InvalidInput, "counting telescope: W empty at level " + std::to_string(cur));
    factor = L + 1;
  }
  return plan;
}

}  // namespace bratteli
