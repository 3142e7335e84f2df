#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/errors.hpp"

namespace bratteli {

constexpr std::int64_t kDefaultPathCap = 100000;

// All paths of a fixed depth from v0, in lexicographic edge order, with
// per-depth prefix tables. Lexicographic order is the canonical order
// for every downstream tie-break.
//
// Because paths are sorted, the depth-d prefixes are contiguous runs of
// path ids; prefix ids count those runs in order.
class PathUniverse {
 public:
  PathUniverse(const BratteliDiagram& d, int depth, std::int64_t cap = kDefaultPathCap)
      : diagram_(&d), depth_(depth) {
    if (depth < 0 || depth > d.depth())
      fail(ErrorKind::InvalidInput, "path enumeration: depth out of range");
    auto counts = root_counts(d);
    BigInt total = 0;
    for (const BigInt& c : counts[depth]) total += c;
    if (total > cap)
      fail(ErrorKind::CapExceeded,
           "path universe of size " + to_string(total) + " exceeds cap " +
               std::to_string(cap));
    const int n_paths = static_cast<int>(total);
    edges_.assign(static_cast<std::size_t>(n_paths) * depth_, 0);
    verts_.assign(static_cast<std::size_t>(n_paths) * (depth_ + 1), 0);

    // DFS from v0 over out-edges in order.
    std::vector<int> chosen;
    int next_id = 0;
    struct Frame { int vertex; std::size_t next; };
    std::vector<Frame> frames{{0, 0}};
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const int level = static_cast<int>(frames.size()) - 1;
      if (level == depth_) {
        for (int i = 0; i < depth_; ++i) edges_[static_cast<std::size_t>(next_id) * depth_ + i] = chosen[i];
        verts_[static_cast<std::size_t>(next_id) * (depth_ + 1)] = 0;
        for (int i = 0; i < depth_; ++i)
          verts_[static_cast<std::size_t>(next_id) * (depth_ + 1) + i + 1] =
              d.edge(i + 1, chosen[i]).dst;
        ++next_id;
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
    num_paths_ = next_id;

    build_prefix_tables();
  }

  const BratteliDiagram& diagram() const { return *diagram_; }
  int depth() const { return depth_; }
  int num_paths() const { return num_paths_; }

  // Edge of the path at level 1..depth (local index within that level).
  int edge_at(int path, int level) const {
    return edges_[static_cast<std::size_t>(path) * depth_ + level - 1];
  }
  // Vertex visited at level 0..depth.
  int vertex_at(int path, int level) const {
    return verts_[static_cast<std::size_t>(path) * (depth_ + 1) + level];
  }

  int num_prefixes(int d) const { return prefix_count_[d]; }
  int prefix_id(int path, int d) const {
    return prefix_of_[d][static_cast<std::size_t>(path)];
  }
  // First (least) path carrying the given prefix.
  int prefix_first(int d, int pid) const { return prefix_first_[d][pid]; }
  int prefix_end_vertex(int d, int pid) const {
    return vertex_at(prefix_first(d, pid), d);
  }

  // Lexicographic lookup of a full edge sequence; -1 if absent.
  int find_path(std::span<const int> seq) const {
    int lo = 0, hi = num_paths_ - 1;
    while (lo <= hi) {
      int mid = lo + (hi - lo) / 2;
      int c = compare_path(mid, seq);
      if (c == 0) return mid;
      if (c < 0) lo = mid + 1;
      else hi = mid - 1;
    }
    return -1;
  }

  // Prefix-id of an explicit depth-d edge sequence; -1 if absent.
  int find_prefix(int d, std::span<const int> seq) const {
    int lo = 0, hi = prefix_count_[d] - 1;
    while (lo <= hi) {
      int mid = lo + (hi - lo) / 2;
      int c = compare_prefix(mid, d, seq);
      if (c == 0) return mid;
      if (c < 0) lo = mid + 1;
      else hi = mid - 1;
    }
    return -1;
  }

 private:
  int compare_path(int path, std::span<const int> seq) const {
    for (int i = 0; i < depth_; ++i) {
      int a = edges_[static_cast<std::size_t>(path) * depth_ + i];
      if (a != seq[i]) return a < seq[i] ? -1 : 1;
    }
    return 0;
  }
  int compare_prefix(int pid, int d, std::span<const int> seq) const {
    const int rep = prefix_first_[d][pid];
    for (int i = 0; i < d; ++i) {
      int a = edges_[static_cast<std::size_t>(rep) * depth_ + i];
      if (a != seq[i]) return a < seq[i] ? -1 : 1;
    }
    return 0;
  }

  void build_prefix_tables() {
    prefix_of_.assign(depth_ + 1, {});
    prefix_first_.assign(depth_ + 1, {});
    prefix_count_.assign(depth_ + 1, 0);
    for (int d = 0; d <= depth_; ++d) {
      prefix_of_[d].assign(num_paths_, 0);
      int cur = -1;
      for (int p = 0; p < num_paths_; ++p) {
        bool new_run = p == 0;
        if (!new_run) {
          for (int i = 0; i < d; ++i) {
            if (edges_[static_cast<std::size_t>(p) * depth_ + i] !=
                edges_[static_cast<std::size_t>(p - 1) * depth_ + i]) {
              new_run = true;
              break;
            }
          }
        }
        if (new_run) {
          ++cur;
          prefix_first_[d].push_back(p);
        }
        prefix_of_[d][p] = cur;
      }
      prefix_count_[d] = cur + 1;
    }
  }

  const BratteliDiagram* diagram_;
  int depth_ = 0;
  int num_paths_ = 0;
  std::vector<int> edges_;
  std::vector<int> verts_;
  std::vector<std::vector<int>> prefix_of_;
  std::vector<std::vector<int>> prefix_first_;
  std::vector<int> prefix_count_;
};

// Paths of the universe using only F-edges, with index maps both ways.
struct YPaths {
  std::vector<int> ids;       // ascending path ids
  std::vector<int> index_of;  // path id -> position in ids, or -1

  int size() const { return static_cast<int>(ids.size()); }
  bool contains(int path) const { return index_of[path] >= 0; }
};

inline YPaths y_paths(const PathUniverse& u, const Subdiagram& sub) {
  YPaths y;
  y.index_of.assign(u.num_paths(), -1);
  for (int p = 0; p < u.num_paths(); ++p) {
    bool all_f = true;
    for (int level = 1; level <= u.depth(); ++level) {
      if (!sub.in_f(level, u.edge_at(p, level))) {
        all_f = false;
        break;
      }
    }
    if (all_f) {
      y.index_of[p] = static_cast<int>(y.ids.size());
      y.ids.push_back(p);
    }
  }
  return y;
}

// Depth-d prefixes all of whose edges lie in F, bucketed by end vertex.
// These are exactly the F(v0, w) path sets of the counting lemma.
struct FPrefixes {
  int depth = 0;
  std::vector<int> ids;                      // ascending prefix ids (at depth)
  std::vector<int> index_of;                 // prefix id -> position, or -1
  std::vector<std::vector<int>> by_vertex;   // for w at level depth: positions
};

inline FPrefixes f_prefixes(const PathUniverse& u, const Subdiagram& sub, int d) {
  FPrefixes out;
  out.depth = d;
  out.index_of.assign(u.num_prefixes(d), -1);
  out.by_vertex.assign(u.diagram().num_vertices(d), {});
  for (int pid = 0; pid < u.num_prefixes(d); ++pid) {
    const int rep = u.prefix_first(d, pid);
    bool all_f = true;
    for (int level = 1; level <= d; ++level) {
      if (!sub.in_f(level, u.edge_at(rep, level))) {
        all_f = false;
        break;
      }
    }
    if (!all_f) continue;
    out.index_of[pid] = static_cast<int>(out.ids.size());
    out.by_vertex[u.prefix_end_vertex(d, pid)].push_back(static_cast<int>(out.ids.size()));
    out.ids.push_back(pid);
  }
  return out;
}

}  // namespace bratteli
