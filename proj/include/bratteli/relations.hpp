#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bratteli/partition.hpp"
#include "bratteli/paths.hpp"

namespace bratteli {

// R_n on the depth-N universe: paths equivalent when they agree on all
// edges beyond level n. R_0 is the diagonal, R_N the single class.
inline Partition tail_relation(const PathUniverse& u, int n) {
  if (n < 0 || n > u.depth()) fail(ErrorKind::InvalidInput, "tail relation: index out of range");
  Partition p = Partition::single_class(u.num_paths());
  for (int level = u.depth(); level > n; --level)
    p = p.refine_by([&](int path) { return u.edge_at(path, level); });
  return p;
}

// All of R_0..R_N in one sweep (refining from the top down).
inline std::vector<Partition> tail_filtration(const PathUniverse& u) {
  std::vector<Partition> rs(u.depth() + 1);
  rs[u.depth()] = Partition::single_class(u.num_paths());
  for (int n = u.depth() - 1; n >= 0; --n)
    rs[n] = rs[n + 1].refine_by([&](int path) { return u.edge_at(path, n + 1); });
  return rs;
}

// Clopen set determined at depth d by its admissible prefixes.
struct CylinderSet {
  int depth = 0;
  std::vector<int> prefix_ids;         // ascending
  std::vector<char> member;            // by prefix id at `depth`

  bool contains_path(const PathUniverse& u, int path) const {
    return member[u.prefix_id(path, depth)] != 0;
  }
  static CylinderSet from_prefixes(const PathUniverse& u, int depth, std::vector<int> ids) {
    CylinderSet c;
    c.depth = depth;
    c.member.assign(u.num_prefixes(depth), 0);
    for (int pid : ids) c.member[pid] = 1;
    c.prefix_ids = std::move(ids);
    return c;
  }
};

// Y_k = {x : x_1..x_k all in F}, the paper's clopen shells around Y.
inline CylinderSet y_shell(const PathUniverse& u, const Subdiagram& sub, int k) {
  FPrefixes fp = f_prefixes(u, sub, k);
  return CylinderSet::from_prefixes(u, k, fp.ids);
}

// Finite-depth continuous map: total on the admissible depth-d prefixes.
struct CylinderFunction {
  int depth = 0;
  int num_labels = 0;
  std::vector<int> values;  // by prefix id at `depth`

  int eval_path(const PathUniverse& u, int path) const {
    return values[u.prefix_id(path, depth)];
  }
};

// The Lemma 1 realization: for a subrelation S of R (both partitions of
// the same universe), a finite label set K and map mu with
// S = {(x,x') in R : mu(x) = mu(x')}. mu is the S-class id; the minimal
// prefix depth at which mu is a cylinder function is reported when the
// elements are backed by concrete paths.
struct LabelRealization {
  int num_labels = 0;
  std::vector<int> mu;                 // per universe element
  std::optional<int> cylinder_depth;   // minimal d, when path-backed
};

inline LabelRealization realize_label_map(const Partition& r, const Partition& s,
                                          const PathUniverse* u = nullptr,
                                          const std::vector<int>* element_paths = nullptr) {
  if (!s.refines(r))
    fail(ErrorKind::InvalidInput, "realize_label_map: S is not a subrelation of R");
  LabelRealization out;
  out.num_labels = s.num_classes();
  out.mu = s.labels();
  if (u != nullptr && element_paths != nullptr) {
    for (int d = 0; d <= u->depth(); ++d) {
      // constant on every prefix fiber?
      std::vector<int> seen(u->num_prefixes(d), -1);
      bool ok = true;
      for (std::size_t i = 0; i < element_paths->size() && ok; ++i) {
        const int pid = u->prefix_id((*element_paths)[i], d);
        if (seen[pid] < 0) seen[pid] = out.mu[i];
        else if (seen[pid] != out.mu[i]) ok = false;
      }
      if (ok) {
        out.cylinder_depth = d;
        break;
      }
    }
  }
  return out;
}

// Alignment of a nested sequence against the tail filtration restricted
// to Y: least n_m with S_m contained in R_{n_m}|Y.
struct NestingReport {
  bool nested = false;
  std::vector<int> alignment;  // n_m per member
  std::string problem;
};

inline NestingReport check_nested(const std::vector<Partition>& s_seq,
                                  const std::vector<Partition>& tail_on_y) {
  NestingReport rep;
  for (std::size_t m = 0; m + 1 < s_seq.size(); ++m) {
    if (!s_seq[m].refines(s_seq[m + 1])) {
      rep.problem = "S_" + std::to_string(m + 1) + " not contained in S_" + std::to_string(m + 2);
      return rep;
    }
  }
  for (std::size_t m = 0; m < s_seq.size(); ++m) {
    int found = -1;
    for (std::size_t n = 0; n < tail_on_y.size(); ++n) {
      if (s_seq[m].refines(tail_on_y[n])) {
        found = static_cast<int>(n);
        break;
      }
    }
    if (found < 0) {
      rep.problem = "S_" + std::to_string(m + 1) + " not contained in any R_n|Y";
      return rep;
    }
    rep.alignment.push_back(found);
  }
  rep.nested = true;
  return rep;
}

}  // namespace bratteli
