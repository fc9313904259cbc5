#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spanner {

class UnionFindError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Union by rank with path compression. ops() counts pointer reads/writes.
class ClassicUF {
 public:
  explicit ClassicUF(int n = 0) { reset(n); }

  void reset(int n);
  int size() const { return static_cast<int>(parent_.size()); }
  int find(int x);
  // Returns false when a and b were already together.
  bool unite(int a, int b);
  bool same(int a, int b) { return find(a) == find(b); }
  std::uint64_t ops() const { return ops_; }

 private:
  void check(int x) const {
    if (x < 0 || x >= size()) throw UnionFindError("element " + std::to_string(x) + " out of range");
  }
  std::vector<int> parent_;
  std::vector<unsigned char> rank_;
  std::uint64_t ops_ = 0;
};

// Static tree union-find: unions only along edges of a fixed rooted tree,
// Link(v) == Union(v, parent(v)). find(v) returns the topmost vertex of v's set.
//
// kMicroMacro splits the tree into microsets of at most 64 vertices. Inside a
// microset a find is one mask lookup (ancestor mask & unlinked mask, highest
// bit). Crossing microsets goes through a small path-compressed forest over
// the microset boundary vertices.
// kPathCompression follows parent links with path compression only.
class StaticTreeUF {
 public:
  enum class Mode { kMicroMacro, kPathCompression };

  static Mode default_mode() {
#ifdef SPANNER_GT_PATH_COMPRESSION
    return Mode::kPathCompression;
#else
    return Mode::kMicroMacro;
#endif
  }

  StaticTreeUF() = default;
  explicit StaticTreeUF(const std::vector<int>& tree_parent, Mode mode = default_mode());

  int size() const { return static_cast<int>(tparent_.size()); }
  int root() const { return root_; }
  Mode mode() const { return mode_; }
  void link(int v);
  int find(int v);
  bool linked(int v) const { return linked_[v] != 0; }
  std::uint64_t ops() const { return ops_; }
  std::uint64_t links() const { return links_; }
  std::uint64_t finds() const { return finds_; }
  int microset_count() const { return static_cast<int>(micro_top_parent_.size()); }

 private:
  void check(int v) const {
    if (v < 0 || v >= size()) throw UnionFindError("element " + std::to_string(v) + " out of range");
  }
  int find_pc(int v);
  int find_mm(int v);
  int macro_find(int b);

  Mode mode_ = Mode::kMicroMacro;
  std::vector<int> tparent_;
  std::vector<char> linked_;
  int root_ = -1;
  std::uint64_t ops_ = 0, links_ = 0, finds_ = 0;

  // path-compression mode
  std::vector<int> up_;

  // micro/macro mode
  std::vector<int> micro_;                 // microset of each vertex
  std::vector<unsigned char> local_;       // index inside its microset
  std::vector<std::uint64_t> anc_;         // in-microset ancestors of v, v included
  std::vector<std::uint64_t> unlinked_;    // per microset
  std::vector<std::vector<int>> members_;  // per microset, by local index
  std::vector<int> micro_top_parent_;      // shared outside parent of the microset tops
  std::vector<int> macro_id_;              // boundary vertex -> macro node, or -1
  std::vector<int> macro_vertex_;          // macro node -> boundary vertex
  std::vector<int> macro_up_;              // macro forest parent
  std::vector<int> macro_label_;           // topmost boundary vertex of a macro set
};

}  // namespace spanner
