#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bratteli/diagram.hpp"

namespace bratteli {

using Json = nlohmann::ordered_json;

// Diagram JSON:
//   { "levels": [["v0"],["u","w"],...],
//     "edges":  [[{"id":"e1","s":"v0","r":"u"},...],...],
//     "subdiagram": { "W": [["v0"],["u"],...], "F": ["e1",...] } }
// Edge ids must be unique across the file; each edge level is sorted by
// id on load so lexicographic order is well defined.
struct LoadedDiagram {
  BratteliDiagram diagram;
  std::optional<Subdiagram> sub;
};

inline LoadedDiagram diagram_from_json(const Json& j) {
  if (!j.contains("levels") || !j.contains("edges"))
    fail(ErrorKind::InvalidInput, "diagram json: missing levels/edges");
  std::vector<std::vector<std::string>> levels;
  for (const auto& lv : j.at("levels")) {
    std::vector<std::string> names;
    for (const auto& v : lv) names.push_back(v.get<std::string>());
    levels.push_back(std::move(names));
  }
  if (levels.empty()) fail(ErrorKind::InvalidInput, "diagram json: no levels");
  std::vector<std::map<std::string, int>> vertex_index(levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) {
    for (std::size_t v = 0; v < levels[n].size(); ++v) {
      if (!vertex_index[n].emplace(levels[n][v], static_cast<int>(v)).second)
        fail(ErrorKind::InvalidInput, "diagram json: duplicate vertex name " + levels[n][v]);
    }
  }

  std::vector<std::vector<Edge>> edge_levels;
  std::map<std::string, std::pair<int, int>> edge_index;  // id -> (level, idx)
  const auto& ej = j.at("edges");
  if (ej.size() + 1 != levels.size())
    fail(ErrorKind::InvalidInput, "diagram json: edge level count must be levels-1");
  for (std::size_t n = 0; n < ej.size(); ++n) {
    std::vector<Edge> es;
    for (const auto& e : ej[n]) {
      Edge ed;
      ed.id = e.at("id").get<std::string>();
      const std::string s = e.at("s").get<std::string>();
      const std::string r = e.at("r").get<std::string>();
      auto si = vertex_index[n].find(s);
      auto ri = vertex_index[n + 1].find(r);
      if (si == vertex_index[n].end())
        fail(ErrorKind::InvalidInput, "edge " + ed.id + ": unknown source " + s);
      if (ri == vertex_index[n + 1].end())
        fail(ErrorKind::InvalidInput, "edge " + ed.id + ": unknown range " + r);
      ed.src = si->second;
      ed.dst = ri->second;
      es.push_back(std::move(ed));
    }
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!edge_index.emplace(es[i].id, std::make_pair(static_cast<int>(n + 1), static_cast<int>(i))).second)
        fail(ErrorKind::InvalidInput, "diagram json: duplicate edge id " + es[i].id);
    }
    edge_levels.push_back(std::move(es));
  }

  LoadedDiagram out;
  out.diagram = BratteliDiagram(std::move(levels), std::move(edge_levels));

  if (j.contains("subdiagram") && !j.at("subdiagram").is_null()) {
    const auto& sj = j.at("subdiagram");
    Subdiagram sub = Subdiagram::empty_for(out.diagram);
    const auto& wj = sj.at("W");
    if (wj.size() != static_cast<std::size_t>(out.diagram.depth() + 1))
      fail(ErrorKind::InvalidInput, "subdiagram json: W must list every level");
    for (std::size_t n = 0; n < wj.size(); ++n) {
      for (const auto& name : wj[n]) {
        auto it = vertex_index[n].find(name.get<std::string>());
        if (it == vertex_index[n].end())
          fail(ErrorKind::InvalidInput, "subdiagram json: unknown W vertex " + name.get<std::string>());
        sub.w[n][it->second] = 1;
      }
    }
    for (const auto& idj : sj.at("F")) {
      auto it = edge_index.find(idj.get<std::string>());
      if (it == edge_index.end())
        fail(ErrorKind::InvalidInput, "subdiagram json: unknown F edge " + idj.get<std::string>());
      sub.f[it->second.first - 1][it->second.second] = 1;
    }
    out.sub = std::move(sub);
  }
  return out;
}

inline Json diagram_to_json(const BratteliDiagram& d, const Subdiagram* sub = nullptr) {
  Json j;
  Json levels = Json::array();
  for (int n = 0; n <= d.depth(); ++n) {
    Json lv = Json::array();
    for (const auto& name : d.vertices(n)) lv.push_back(name);
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);
  Json edges = Json::array();
  for (int n = 1; n <= d.depth(); ++n) {
    Json el = Json::array();
    for (const Edge& e : d.edges(n)) {
      Json ej;
      ej["id"] = e.id;
      ej["s"] = d.vertex_name(n - 1, e.src);
      ej["r"] = d.vertex_name(n, e.dst);
      el.push_back(std::move(ej));
    }
    edges.push_back(std::move(el));
  }
  j["edges"] = std::move(edges);
  if (sub != nullptr) {
    Json sj;
    Json wj = Json::array();
    for (int n = 0; n <= d.depth(); ++n) {
      Json lv = Json::array();
      for (int v = 0; v < d.num_vertices(n); ++v)
        if (sub->in_w(n, v)) lv.push_back(d.vertex_name(n, v));
      wj.push_back(std::move(lv));
    }
    sj["W"] = std::move(wj);
    Json fj = Json::array();
    for (int n = 1; n <= d.depth(); ++n)
      for (int e = 0; e < d.num_edges(n); ++e)
        if (sub->in_f(n, e)) fj.push_back(d.edge(n, e).id);
    sj["F"] = std::move(fj);
    j["subdiagram"] = std::move(sj);
  }
  return j;
}

// Layered DOT: one rank per level, up to two subdiagrams styled
// distinctly (bold vs. bold+dashed color).
inline void render_dot(std::ostream& os, const BratteliDiagram& d,
                       const Subdiagram* sub0 = nullptr,
                       const Subdiagram* sub1 = nullptr) {
  os << "digraph bratteli {\n";
  os << "  rankdir=TB;\n  node [shape=circle,fontsize=10];\n";
  for (int n = 0; n <= d.depth(); ++n) {
    os << "  { rank=same;";
    for (int v = 0; v < d.num_vertices(n); ++v)
      os << " \"L" << n << ":" << d.vertex_name(n, v) << "\";";
    os << " }\n";
  }
  for (int n = 1; n <= d.depth(); ++n) {
    for (int e = 0; e < d.num_edges(n); ++e) {
      const Edge& ed = d.edge(n, e);
      os << "  \"L" << n - 1 << ":" << d.vertex_name(n - 1, ed.src) << "\" -> \"L" << n
         << ":" << d.vertex_name(n, ed.dst) << "\" [label=\"" << ed.id << "\"";
      if (sub0 != nullptr && sub0->in_f(n, e)) os << ",style=bold,color=black,penwidth=2";
      else if (sub1 != nullptr && sub1->in_f(n, e)) os << ",style=\"bold,dashed\",color=blue,penwidth=2";
      os << "];\n";
    }
  }
  os << "}\n";
}

}  // namespace bratteli
