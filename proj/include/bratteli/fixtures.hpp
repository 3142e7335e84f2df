#pragma once

#include <random>
#include <string>
#include <vector>

#include "bratteli/diagram.hpp"
#include "bratteli/paths.hpp"
#include "bratteli/relations.hpp"

namespace bratteli::fixtures {

struct Fixture {
  std::string name;
  BratteliDiagram diagram;
  Subdiagram sub;
};

namespace detail {
inline std::string pad2(int x) {
  std::string s = std::to_string(x);
  return s.size() < 2 ? "0" + s : s;
}
}  // namespace detail

// Dyadic odometer: one vertex per level, two parallel edges, F the
// a-chain. Y is a single path.
inline Fixture d2_odometer(int depth) {
  std::vector<std::vector<std::string>> levels{{"v0"}};
  std::vector<std::vector<Edge>> edges;
  for (int n = 1; n <= depth; ++n) {
    levels.push_back({"v"});
    edges.push_back({{"a" + detail::pad2(n), 0, 0}, {"b" + detail::pad2(n), 0, 0}});
  }
  Fixture fx{"d2_odometer", BratteliDiagram(std::move(levels), std::move(edges)), {}};
  fx.sub = Subdiagram::full_for(fx.diagram);
  for (int n = 1; n <= depth; ++n) fx.sub.f[n - 1] = {1, 0};  // a-edge only
  return fx;
}

// Two-vertex primitive diagram with incidence [[1,1],[1,1]] and the
// u-chain subdiagram.
inline Fixture two_vertex_primitive(int depth) {
  std::vector<std::vector<std::string>> levels{{"v0"}};
  std::vector<std::vector<Edge>> edges;
  levels.push_back({"u", "w"});
  edges.push_back({{"r_u", 0, 0}, {"r_w", 0, 1}});
  for (int n = 2; n <= depth; ++n) {
    levels.push_back({"u", "w"});
    const std::string l = detail::pad2(n);
    edges.push_back({{"uu" + l, 0, 0}, {"uw" + l, 0, 1}, {"wu" + l, 1, 0}, {"ww" + l, 1, 1}});
  }
  Fixture fx{"two_vertex_primitive", BratteliDiagram(std::move(levels), std::move(edges)), {}};
  fx.sub = Subdiagram::empty_for(fx.diagram);
  fx.sub.w[0][0] = 1;
  for (int n = 1; n <= depth; ++n) fx.sub.w[n][0] = 1;  // u only
  fx.sub.f[0][0] = 1;                                   // r_u
  for (int n = 2; n <= depth; ++n) fx.sub.f[n - 1][0] = 1;  // uu
  return fx;
}

// Two disjoint F-chains (|Y| = 2, distinct tails), six edges per bulk
// level so thinness telescoping lands quickly.
inline Fixture two_chain(int depth) {
  std::vector<std::vector<std::string>> levels{{"v0"}};
  std::vector<std::vector<Edge>> edges;
  levels.push_back({"u", "w"});
  edges.push_back({{"r_u", 0, 0}, {"r_w", 0, 1}});
  for (int n = 2; n <= depth; ++n) {
    levels.push_back({"u", "w"});
    const std::string l = detail::pad2(n);
    edges.push_back({{"uua" + l, 0, 0},
                     {"uub" + l, 0, 0},
                     {"uw" + l, 0, 1},
                     {"wu" + l, 1, 0},
                     {"wwa" + l, 1, 1},
                     {"wwb" + l, 1, 1}});
  }
  Fixture fx{"two_chain", BratteliDiagram(std::move(levels), std::move(edges)), {}};
  fx.sub = Subdiagram::empty_for(fx.diagram);
  for (int n = 0; n <= depth; ++n)
    for (int v = 0; v < fx.diagram.num_vertices(n); ++v) fx.sub.w[n][v] = 1;
  // F: r_u, r_w, then uua and wwa per level (sorted ids: uua,uub,uw,wu,wwa,wwb)
  fx.sub.f[0] = {1, 1};
  for (int n = 2; n <= depth; ++n) fx.sub.f[n - 1] = {1, 0, 0, 0, 1, 0};
  return fx;
}

// Stationary [[2,1],[1,1]]-type diagram with a thin single-chain
// subdiagram.
inline Fixture stationary_2111(int depth) {
  std::vector<std::vector<std::string>> levels{{"v0"}};
  std::vector<std::vector<Edge>> edges;
  levels.push_back({"u", "w"});
  edges.push_back({{"r_u", 0, 0}, {"r_w", 0, 1}});
  for (int n = 2; n <= depth; ++n) {
    levels.push_back({"u", "w"});
    const std::string l = detail::pad2(n);
    edges.push_back({{"uua" + l, 0, 0},
                     {"uub" + l, 0, 0},
                     {"uw" + l, 0, 1},
                     {"wu" + l, 1, 0},
                     {"ww" + l, 1, 1}});
  }
  Fixture fx{"stationary_2111", BratteliDiagram(std::move(levels), std::move(edges)), {}};
  fx.sub = Subdiagram::empty_for(fx.diagram);
  fx.sub.w[0][0] = 1;
  for (int n = 1; n <= depth; ++n) fx.sub.w[n][0] = 1;
  fx.sub.f[0][0] = 1;
  for (int n = 2; n <= depth; ++n) fx.sub.f[n - 1][0] = 1;  // uua
  return fx;
}

// Branching subdiagram: F doubles at levels 2 and 3 only, so |Y| = 4
// and the induced relations admit genuinely nontrivial S-sequences.
inline Fixture bush(int depth) {
  std::vector<std::vector<std::string>> levels{{"v0"}};
  std::vector<std::vector<Edge>> edges;
  levels.push_back({"u", "w"});
  edges.push_back({{"r_u", 0, 0}, {"r_w", 0, 1}});
  for (int n = 2; n <= depth; ++n) {
    levels.push_back({"u", "w"});
    const std::string l = detail::pad2(n);
    edges.push_back({{"uua" + l, 0, 0},
                     {"uub" + l, 0, 0},
                     {"uuc" + l, 0, 0},
                     {"uw" + l, 0, 1},
                     {"wu" + l, 1, 0},
                     {"ww" + l, 1, 1}});
  }
  Fixture fx{"bush", BratteliDiagram(std::move(levels), std::move(edges)), {}};
  fx.sub = Subdiagram::empty_for(fx.diagram);
  fx.sub.w[0][0] = 1;
  for (int n = 1; n <= depth; ++n) fx.sub.w[n][0] = 1;
  fx.sub.f[0][0] = 1;
  for (int n = 2; n <= depth; ++n) {
    if (n == 2 || n == 3) fx.sub.f[n - 1] = {1, 1, 0, 0, 0, 0};  // uua, uub
    else fx.sub.f[n - 1] = {1, 0, 0, 0, 0, 0};                   // uua
  }
  return fx;
}

// A diagram whose two branches never reconnect; fails simplicity and
// exhausts covering searches.
inline Fixture disconnected(int depth) {
  std::vector<std::vector<std::string>> levels{{"v0"}};
  std::vector<std::vector<Edge>> edges;
  levels.push_back({"p", "q"});
  edges.push_back({{"r_p", 0, 0}, {"r_q", 0, 1}});
  for (int n = 2; n <= depth; ++n) {
    levels.push_back({"p", "q"});
    const std::string l = detail::pad2(n);
    edges.push_back({{"ppa" + l, 0, 0}, {"ppb" + l, 0, 0}, {"qqa" + l, 1, 1}, {"qqb" + l, 1, 1}});
  }
  Fixture fx{"disconnected", BratteliDiagram(std::move(levels), std::move(edges)), {}};
  fx.sub = Subdiagram::empty_for(fx.diagram);
  fx.sub.w[0][0] = 1;
  for (int n = 1; n <= depth; ++n) fx.sub.w[n][0] = 1;
  fx.sub.f[0][0] = 1;
  for (int n = 2; n <= depth; ++n) fx.sub.f[n - 1][0] = 1;
  return fx;
}

// Seeded random simple diagrams (<=4 vertices and <=6 edges per level)
// with a random chain subdiagram. Candidates are filtered so that every
// accepted fixture is structurally usable at the requested depth:
// valid, simple at horizon, path universe within cap, counting
// telescope succeeds. Rejection sampling keeps the stream deterministic.
inline std::vector<Fixture> random_zoo(int count, int depth, unsigned seed,
                                       std::int64_t cap = kDefaultPathCap) {
  std::mt19937 rng(seed);
  std::vector<Fixture> out;
  int attempt = 0;
  while (static_cast<int>(out.size()) < count && attempt < count * 200) {
    ++attempt;
    std::vector<std::vector<std::string>> levels{{"v0"}};
    std::vector<int> widths{1};
    for (int n = 1; n <= depth; ++n) {
      int w = 1 + static_cast<int>(rng() % 4);
      widths.push_back(w);
      std::vector<std::string> names;
      for (int v = 0; v < w; ++v) names.push_back("v" + detail::pad2(n) + char('a' + v));
      levels.push_back(std::move(names));
    }
    std::vector<std::vector<Edge>> edge_levels;
    bool bad = false;
    for (int n = 1; n <= depth && !bad; ++n) {
      const int src_w = widths[n - 1];
      const int dst_w = widths[n];
      std::vector<std::pair<int, int>> pairs;
      // cover every source (no sinks) and every target (reachability)
      for (int v = 0; v < src_w; ++v) pairs.push_back({v, static_cast<int>(rng() % dst_w)});
      for (int v = 0; v < dst_w; ++v) {
        bool covered = false;
        for (auto& p : pairs) covered = covered || p.second == v;
        if (!covered) pairs.push_back({static_cast<int>(rng() % src_w), v});
      }
      if (static_cast<int>(pairs.size()) > 6) { bad = true; break; }
      const int extras = static_cast<int>(rng() % (7 - pairs.size()));
      for (int i = 0; i < extras; ++i)
        pairs.push_back({static_cast<int>(rng() % src_w), static_cast<int>(rng() % dst_w)});
      std::vector<Edge> es;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        es.push_back({"e" + detail::pad2(n) + "_" + detail::pad2(static_cast<int>(i)),
                      pairs[i].first, pairs[i].second});
      edge_levels.push_back(std::move(es));
    }
    if (bad) continue;
    BratteliDiagram d(std::move(levels), std::move(edge_levels));

    // random chain subdiagram
    Subdiagram sub = Subdiagram::empty_for(d);
    sub.w[0][0] = 1;
    int cur = 0;
    bool chain_ok = true;
    for (int n = 1; n <= depth; ++n) {
      const auto& outs = d.out_edges(n - 1, cur);
      if (outs.empty()) { chain_ok = false; break; }
      const int e = outs[rng() % outs.size()];
      sub.f[n - 1][e] = 1;
      cur = d.edge(n, e).dst;
      sub.w[n][cur] = 1;
    }
    if (!chain_ok) continue;

    if (!validate(d, &sub).ok()) continue;
    if (!is_simple_at_horizon(d, depth).simple) continue;
    auto counts = root_counts(d);
    BigInt total = 0;
    for (const BigInt& c : counts[depth]) total += c;
    if (total > cap) continue;
    try {
      counting_telescope(d, sub);
    } catch (const Error&) {
      continue;
    }
    Fixture fx{"random_" + detail::pad2(static_cast<int>(out.size())), d, sub};
    out.push_back(std::move(fx));
  }
  if (static_cast<int>(out.size()) < count)
    fail(ErrorKind::Internal, "random zoo: could not assemble enough fixtures");
  return out;
}

// Nested S-sequence used by the splitting fixtures: S_n refines R_n|Y
// by the edge chosen at `split_level` (diagonal below that level).
inline std::vector<Partition> split_by_edge_sequence(const PathUniverse& u,
                                                     const YPaths& y, int split_level,
                                                     int length) {
  std::vector<Partition> rs = tail_filtration(u);
  std::vector<Partition> out;
  for (int n = 1; n <= length; ++n) {
    Partition ry = rs[n].restrict_to(y.ids);
    out.push_back(ry.refine_by(
        [&](int i) { return u.edge_at(y.ids[i], split_level); }));
  }
  return out;
}

// Trivial S-sequence: the diagonal at every index.
inline std::vector<Partition> trivial_s_sequence(int y_count, int length) {
  return std::vector<Partition>(static_cast<std::size_t>(length), Partition::discrete(y_count));
}

// Tail truncation S-sequence: S_n = R_n|Y.
inline std::vector<Partition> tail_s_sequence(const PathUniverse& u, const YPaths& y,
                                              int length) {
  std::vector<Partition> rs = tail_filtration(u);
  std::vector<Partition> out;
  for (int n = 1; n <= length; ++n) out.push_back(rs[n].restrict_to(y.ids));
  return out;
}

}  // namespace bratteli::fixtures
