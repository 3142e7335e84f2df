#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "bratteli/errors.hpp"
#include "bratteli/numeric.hpp"

namespace bratteli {

// Partition of {0..n-1} in canonical form: class ids are assigned in
// order of first occurrence, so equal partitions have equal vectors.
// Relations on path sets are always stored this way; pair sets would be
// quadratic.
class Partition {
 public:
  Partition() = default;
  explicit Partition(int n) : cls_(n) {
    std::iota(cls_.begin(), cls_.end(), 0);
    num_classes_ = n;
  }

  static Partition discrete(int n) { return Partition(n); }

  static Partition single_class(int n) {
    Partition p;
    p.cls_.assign(n, 0);
    p.num_classes_ = n > 0 ? 1 : 0;
    return p;
  }

  // From an arbitrary class-id labeling (canonicalized).
  static Partition from_labels(const std::vector<int>& labels) {
    Partition p;
    p.cls_ = labels;
    p.canonicalize();
    return p;
  }

  int size() const { return static_cast<int>(cls_.size()); }
  int num_classes() const { return num_classes_; }
  int class_of(int x) const { return cls_[x]; }
  bool same(int x, int y) const { return cls_[x] == cls_[y]; }
  const std::vector<int>& labels() const { return cls_; }

  bool operator==(const Partition& o) const { return cls_ == o.cls_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }

  std::vector<std::vector<int>> classes() const {
    std::vector<std::vector<int>> out(num_classes_);
    for (int x = 0; x < size(); ++x) out[cls_[x]].push_back(x);
    return out;
  }

  std::vector<int> class_sizes() const {
    std::vector<int> out(num_classes_, 0);
    for (int x = 0; x < size(); ++x) ++out[cls_[x]];
    return out;
  }

  // this <= other: every class of this lies inside a class of other.
  bool refines(const Partition& other) const {
    if (other.size() != size()) fail(ErrorKind::InvalidInput, "partition size mismatch");
    std::vector<int> rep(num_classes_, -1);
    for (int x = 0; x < size(); ++x) {
      int c = cls_[x];
      if (rep[c] < 0) rep[c] = other.cls_[x];
      else if (rep[c] != other.cls_[x]) return false;
    }
    return true;
  }

  // Meet with a labeling: split every class by label value.
  template <typename LabelFn>
  Partition refine_by(LabelFn&& label) const {
    std::vector<std::pair<int, long long>> key(size());
    for (int x = 0; x < size(); ++x) key[x] = {cls_[x], static_cast<long long>(label(x))};
    std::vector<int> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
    std::vector<int> lab(size(), -1);
    int next = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || key[order[i]] != key[order[i - 1]]) ++next;
      lab[order[i]] = next;
    }
    return from_labels(lab);
  }

  // Join (coarsest common refinement target): union-find over both.
  Partition join(const Partition& other) const {
    if (other.size() != size()) fail(ErrorKind::InvalidInput, "partition size mismatch");
    UnionFind uf(size());
    join_into(uf);
    other.join_into(uf);
    return from_union_find(uf);
  }

  // Restriction to a subset (given by ascending element ids): partition
  // of {0..|subset|-1}.
  Partition restrict_to(const std::vector<int>& subset) const {
    std::vector<int> lab(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) lab[i] = cls_[subset[i]];
    return from_labels(lab);
  }

  // Union of all classes meeting the subset, as ascending element ids.
  std::vector<int> saturate(const std::vector<int>& subset) const {
    std::vector<char> hit(num_classes_, 0);
    for (int x : subset) hit[cls_[x]] = 1;
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (hit[cls_[x]]) out.push_back(x);
    return out;
  }

  std::string digest() const {
    Digest d;
    d.feed(cls_);
    d.feed(num_classes_);
    return d.hex();
  }

  struct UnionFind {
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    std::vector<int> parent;
  };

  void join_into(UnionFind& uf) const {
    std::vector<int> rep(num_classes_, -1);
    for (int x = 0; x < size(); ++x) {
      int c = cls_[x];
      if (rep[c] < 0) rep[c] = x;
      else uf.unite(rep[c], x);
    }
  }

  static Partition from_union_find(UnionFind& uf) {
    const int n = static_cast<int>(uf.parent.size());
    std::vector<int> lab(n);
    for (int x = 0; x < n; ++x) lab[x] = uf.find(x);
    return from_labels(lab);
  }

 private:
  void canonicalize() {
    int mx = -1;
    for (int c : cls_) mx = std::max(mx, c);
    std::vector<int> remap(mx + 1, -1);
    int next = 0;
    for (int& c : cls_) {
      if (remap[c] < 0) remap[c] = next++;
      c = remap[c];
    }
    num_classes_ = next;
  }

  std::vector<int> cls_;
  int num_classes_ = 0;
};

}  // namespace bratteli
