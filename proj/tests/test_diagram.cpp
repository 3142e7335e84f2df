#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "bratteli/diagram.hpp"
#include "bratteli/diagram_io.hpp"
#include "bratteli/fixtures.hpp"
#include "bratteli/paths.hpp"

using namespace bratteli;

namespace {

// Brute-force path counter between two levels, independent of the
// incidence-product route.
long long count_paths_brute(const BratteliDiagram& d, int from, int v, int to, int w,
                            const Subdiagram* sub) {
  if (from == to) return v == w ? 1 : 0;
  long long total = 0;
  for (int e : d.out_edges(from, v)) {
    if (sub != nullptr && !sub->in_f(from + 1, e)) continue;
    total += count_paths_brute(d, from + 1, d.edge(from + 1, e).dst, to, w, sub);
  }
  return total;
}

}  // namespace

TEST_CASE("validate accepts the odometer and rejects broken diagrams") {
  auto fx = fixtures::d2_odometer(4);
  REQUIRE(validate(fx.diagram, &fx.sub).ok());

  SECTION("isolated vertex is reported") {
    std::vector<std::vector<std::string>> levels{{"v0"}, {"a"}, {"b", "iso"}, {"c"}};
    std::vector<std::vector<Edge>> edges{
        {{"e1", 0, 0}},
        {{"e2", 0, 0}},
        {{"e3", 0, 0}, {"e4", 1, 0}},
    };
    BratteliDiagram d(std::move(levels), std::move(edges));
    auto rep = validate(d);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& iss : rep.issues)
      if (iss.what.find("no incoming edge") != std::string::npos) found = true;
    REQUIRE(found);
  }

  SECTION("W not covered by r(F)") {
    auto bad = fixtures::d2_odometer(3);
    bad.sub.f[1] = {0, 0};  // W still claims level-2 vertex
    auto rep = validate(bad.diagram, &bad.sub);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& iss : rep.issues)
      if (iss.what.find("W not covered") != std::string::npos) found = true;
    REQUIRE(found);
  }
}

TEST_CASE("path counts are exact and multiplicative") {
  auto fx = fixtures::d2_odometer(4);
  auto counts = root_counts(fx.diagram);
  REQUIRE(counts[3][0] == 8);  // |E(v0,v_3)| = 2^3
  auto f_counts = root_f_counts(fx.diagram, fx.sub);
  REQUIRE(f_counts[3][0] == 1);

  auto fx2 = fixtures::two_vertex_primitive(4);
  auto t = path_counts(fx2.diagram, &fx2.sub, 0, 3);
  BigInt col_sum = t.e_counts[0][0] + t.e_counts[0][1];
  REQUIRE(col_sum == 8);  // 2^3 paths to level 3

  SECTION("brute force agreement on the stationary fixture") {
    auto fx3 = fixtures::stationary_2111(5);
    for (int w = 0; w < 2; ++w) {
      auto tab = path_counts(fx3.diagram, &fx3.sub, 1, 4);
      REQUIRE(tab.e_counts[0][w] == count_paths_brute(fx3.diagram, 1, 0, 4, w, nullptr));
      REQUIRE(tab.f_counts[0][w] == count_paths_brute(fx3.diagram, 1, 0, 4, w, &fx3.sub));
    }
  }

  SECTION("multiplicativity across an intermediate level") {
    auto fx3 = fixtures::bush(6);
    auto a = path_counts(fx3.diagram, &fx3.sub, 1, 3);
    auto b = path_counts(fx3.diagram, &fx3.sub, 3, 6);
    auto c = path_counts(fx3.diagram, &fx3.sub, 1, 6);
    for (int v = 0; v < 2; ++v)
      for (int w = 0; w < 2; ++w) {
        BigInt prod = 0;
        for (int m = 0; m < 2; ++m) prod += a.e_counts[v][m] * b.e_counts[m][w];
        REQUIRE(prod == c.e_counts[v][w]);
      }
  }
}

TEST_CASE("telescope composes levels") {
  auto fx = fixtures::d2_odometer(3);

  SECTION("plan 0<2<3 on D2") {
    TelescopePlan plan;
    plan.levels = {0, 2, 3};
    auto res = telescope(fx.diagram, plan, &fx.sub);
    REQUIRE(res.diagram.depth() == 2);
    REQUIRE(res.diagram.num_edges(1) == 4);
    REQUIRE(res.diagram.num_edges(2) == 2);
    // F-paths survive exactly when every component is in F
    int f_edges = 0;
    for (int e = 0; e < 4; ++e)
      if (res.sub->in_f(1, e)) ++f_edges;
    REQUIRE(f_edges == 1);
  }

  SECTION("identity plan preserves structure") {
    auto res = telescope(fx.diagram, TelescopePlan::identity(3), &fx.sub);
    REQUIRE(res.diagram.depth() == 3);
    for (int n = 1; n <= 3; ++n) REQUIRE(res.diagram.num_edges(n) == fx.diagram.num_edges(n));
  }

  SECTION("two-vertex [[1,1],[1,1]] with plan 0<2 squares the incidence") {
    auto fx2 = fixtures::two_vertex_primitive(2);
    TelescopePlan plan;
    plan.levels = {0, 2};
    auto res = telescope(fx2.diagram, plan, &fx2.sub);
    // Oracle: enumerate all 2-step paths by brute force.
    for (int w = 0; w < 2; ++w) {
      long long expect = count_paths_brute(fx2.diagram, 0, 0, 2, w, nullptr);
      long long got = 0;
      for (const Edge& e : res.diagram.edges(1))
        if (e.dst == w) ++got;
      REQUIRE(got == expect);
    }
  }

  SECTION("telescope of telescope equals telescope of composed plan") {
    auto fx3 = fixtures::bush(6);
    TelescopePlan p1;
    p1.levels = {0, 2, 4, 6};
    auto r1 = telescope(fx3.diagram, p1, &fx3.sub);
    TelescopePlan p2;
    p2.levels = {0, 2, 3};
    auto r2 = telescope(r1.diagram, p2, r1.sub ? &*r1.sub : nullptr);
    TelescopePlan comp;
    comp.levels = {0, 4, 6};
    auto rc = telescope(fx3.diagram, comp, &fx3.sub);
    REQUIRE(r2.diagram.digest() == rc.diagram.digest());
    REQUIRE(r2.sub->digest() == rc.sub->digest());
  }

  SECTION("path ids are preserved by telescoping to full depth") {
    auto fx3 = fixtures::two_chain(5);
    TelescopePlan plan;
    plan.levels = {0, 2, 5};
    auto res = telescope(fx3.diagram, plan, &fx3.sub);
    PathUniverse before(fx3.diagram, 5);
    PathUniverse after(res.diagram, 2);
    REQUIRE(before.num_paths() == after.num_paths());
    for (int p = 0; p < after.num_paths(); ++p) {
      std::vector<int> np{after.edge_at(p, 1), after.edge_at(p, 2)};
      std::vector<int> old = res.to_old_path(np);
      for (int lvl = 1; lvl <= 5; ++lvl) REQUIRE(old[lvl - 1] == before.edge_at(p, lvl));
    }
  }
}

TEST_CASE("microscope inserts a level and telescopes back") {
  auto fx = fixtures::d2_odometer(2);
  auto m = microscope(fx.diagram, 1);
  REQUIRE(m.depth() == 3);
  REQUIRE(m.num_vertices(1) == 2);  // one vertex per split edge
  for (int v = 0; v < 2; ++v) {
    REQUIRE(m.out_edges(1, v).size() == 1);
    REQUIRE(m.in_degree(1, v) == 1);
  }

  SECTION("microscope then telescope is the identity up to relabeling") {
    TelescopePlan plan;
    plan.levels = {0, 2, 3};
    auto back = telescope(m, plan);
    REQUIRE(back.diagram.depth() == fx.diagram.depth());
    for (int n = 1; n <= 2; ++n) {
      REQUIRE(back.diagram.num_edges(n) == fx.diagram.num_edges(n));
      for (int e = 0; e < fx.diagram.num_edges(n); ++e) {
        REQUIRE(back.diagram.edge(n, e).src == fx.diagram.edge(n, e).src);
        REQUIRE(back.diagram.edge(n, e).dst == fx.diagram.edge(n, e).dst);
      }
    }
  }

  SECTION("two-vertex [[2,1],[1,1]] at level 2 yields 5 intermediate vertices") {
    auto fx2 = fixtures::stationary_2111(3);
    auto m2 = microscope(fx2.diagram, 2);
    REQUIRE(m2.num_vertices(2) == 5);  // one per edge of E_2
  }
}

TEST_CASE("simplicity at horizon") {
  auto fx = fixtures::d2_odometer(4);
  auto rep = is_simple_at_horizon(fx.diagram, 4);
  REQUIRE(rep.simple);

  SECTION("[[1,1],[1,0]] needs a two-step window") {
    std::vector<std::vector<std::string>> levels{{"v0"}, {"u", "w"}, {"u", "w"}, {"u", "w"}, {"u", "w"}};
    std::vector<std::vector<Edge>> edges;
    edges.push_back({{"r_u", 0, 0}, {"r_w", 0, 1}});
    for (int n = 2; n <= 4; ++n) {
      std::string l = std::to_string(n);
      edges.push_back({{"uu" + l, 0, 0}, {"uw" + l, 0, 1}, {"wu" + l, 1, 0}});
    }
    BratteliDiagram d(std::move(levels), std::move(edges));
    auto r = is_simple_at_horizon(d, 4);
    REQUIRE(r.simple);
    for (auto [n, m] : r.witnesses)
      if (n >= 1) REQUIRE(m - n >= 2);
  }

  SECTION("disconnected diagram is not simple") {
    auto bad = fixtures::disconnected(4);
    REQUIRE_FALSE(is_simple_at_horizon(bad.diagram, 4).simple);
  }
}

TEST_CASE("thinness telescope search") {
  auto fx = fixtures::d2_odometer(6);

  SECTION("factor 2 from v0 lands at level 1") {
    auto r = thinness_telescope_search(fx.diagram, fx.sub, 2, 0, {0});
    REQUIRE(r.level);
    REQUIRE(*r.level == 1);
  }
  SECTION("factor 3 from v0 lands at level 2") {
    auto r = thinness_telescope_search(fx.diagram, fx.sub, 3, 0, {0});
    REQUIRE(r.level);
    REQUIRE(*r.level == 2);
  }
  SECTION("F = E never becomes thin") {
    auto full = Subdiagram::full_for(fx.diagram);
    auto r = thinness_telescope_search(fx.diagram, full, 2, 0, {0});
    REQUIRE_FALSE(r.level.has_value());
    REQUIRE(r.best_factor == 1);
  }
}

TEST_CASE("counting telescope") {
  SECTION("D2 advances one level at a time") {
    auto fx = fixtures::d2_odometer(6);
    auto plan = counting_telescope(fx.diagram, fx.sub);
    REQUIRE(plan.levels == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  }
  SECTION("F = E exhausts") {
    auto fx = fixtures::d2_odometer(6);
    auto full = Subdiagram::full_for(fx.diagram);
    REQUIRE_THROWS_AS(counting_telescope(fx.diagram, full), Error);
    try {
      counting_telescope(fx.diagram, full);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Exhausted);
    }
  }
  SECTION("the counting inequality holds after telescoping, by enumeration") {
    for (auto fx : {fixtures::two_chain(8), fixtures::stationary_2111(8), fixtures::bush(8)}) {
      auto plan = counting_telescope(fx.diagram, fx.sub);
      REQUIRE(plan.levels.back() == 8);
      auto res = telescope(fx.diagram, plan, &fx.sub);
      const auto& d = res.diagram;
      const auto& sub = *res.sub;
      auto f_root = root_f_counts(d, sub);
      for (int n = 1; n <= d.depth(); ++n) {
        for (int w = 0; w < d.num_vertices(n); ++w) {
          if (!sub.in_w(n, w)) continue;
          // independent enumeration of E\F edges into w
          long long not_f = 0;
          for (int e = 0; e < d.num_edges(n); ++e)
            if (d.edge(n, e).dst == w && !sub.in_f(n, e)) ++not_f;
          REQUIRE(f_root[n][w] <= not_f);
        }
      }
    }
  }
}

TEST_CASE("json round trip and dot rendering") {
  auto fx = fixtures::two_chain(4);
  Json j = diagram_to_json(fx.diagram, &fx.sub);
  auto loaded = diagram_from_json(j);
  REQUIRE(loaded.diagram.digest() == fx.diagram.digest());
  REQUIRE(loaded.sub);
  REQUIRE(loaded.sub->digest() == fx.sub.digest());

  std::ostringstream os;
  render_dot(os, fx.diagram, &fx.sub);
  std::string dot = os.str();
  REQUIRE(dot.find("digraph") != std::string::npos);
  REQUIRE(dot.find("style=bold") != std::string::npos);
  REQUIRE(dot.find("rank=same") != std::string::npos);
}
