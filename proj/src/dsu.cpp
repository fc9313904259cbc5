#include "spanner/dsu.hpp"

#include <algorithm>
#include <bit>

namespace spanner {

void ClassicUF::reset(int n) {
  parent_.resize(n);
  for (int i = 0; i < n; ++i) parent_[i] = i;
  rank_.assign(n, 0);
  ops_ = 0;
}

int ClassicUF::find(int x) {
  check(x);
  int r = x;
  while (parent_[r] != r) {
    r = parent_[r];
    ++ops_;
  }
  while (parent_[x] != r) {
    int next = parent_[x];
    parent_[x] = r;
    x = next;
    ++ops_;
  }
  ++ops_;
  return r;
}

bool ClassicUF::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  ++ops_;
  return true;
}

namespace {
constexpr int kMicroBits = 64;
constexpr int kHalf = kMicroBits / 2;
}  // namespace

StaticTreeUF::StaticTreeUF(const std::vector<int>& tree_parent, Mode mode)
    : mode_(mode), tparent_(tree_parent), linked_(tree_parent.size(), 0) {
  const int n = size();
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v) {
    int p = tparent_[v];
    if (p < 0) {
      if (root_ >= 0) throw UnionFindError("union tree has more than one root");
      root_ = v;
    } else if (p >= n || p == v) {
      throw UnionFindError("invalid parent for vertex " + std::to_string(v));
    } else {
      children[p].push_back(v);
    }
  }
  if (n > 0 && root_ < 0) throw UnionFindError("union tree has no root");
  std::vector<int> order;
  order.reserve(n);
  if (n > 0) order.push_back(root_);
  for (std::size_t h = 0; h < order.size(); ++h)
    for (int c : children[order[h]]) order.push_back(c);
  if (static_cast<int>(order.size()) != n) throw UnionFindError("union tree is not connected");

  if (mode_ == Mode::kPathCompression) {
    up_.resize(n);
    for (int v = 0; v < n; ++v) up_[v] = v;
    return;
  }

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  micro_.assign(n, -1);
  local_.assign(n, 0);
  anc_.assign(n, 0);
  macro_id_.assign(n, -1);

  auto emit = [&](std::vector<int>& group, int outside_parent) {
    int s = static_cast<int>(members_.size());
    std::sort(group.begin(), group.end(), [&](int a, int b) { return pos[a] < pos[b]; });
    for (std::size_t i = 0; i < group.size(); ++i) {
      int x = group[i];
      micro_[x] = s;
      local_[x] = static_cast<unsigned char>(i);
      int p = tparent_[x];
      std::uint64_t bit = std::uint64_t{1} << i;
      anc_[x] = (p >= 0 && micro_[p] == s) ? (anc_[p] | bit) : bit;
    }
    unlinked_.push_back(group.size() == kMicroBits ? ~std::uint64_t{0}
                                                   : ((std::uint64_t{1} << group.size()) - 1));
    members_.push_back(std::move(group));
    micro_top_parent_.push_back(outside_parent);
    if (outside_parent >= 0 && macro_id_[outside_parent] < 0) {
      macro_id_[outside_parent] = static_cast<int>(macro_vertex_.size());
      macro_vertex_.push_back(outside_parent);
    }
  };

  std::vector<std::vector<int>> residual(n);
  for (int h = n - 1; h >= 0; --h) {
    int v = order[h];
    std::vector<int> group;
    for (int c : children[v]) {
      group.insert(group.end(), residual[c].begin(), residual[c].end());
      std::vector<int>().swap(residual[c]);
      if (static_cast<int>(group.size()) >= kHalf) {
        emit(group, v);
        group.clear();
      }
    }
    group.push_back(v);
    residual[v] = std::move(group);
  }
  if (n > 0) emit(residual[root_], -1);

  int b = static_cast<int>(macro_vertex_.size());
  macro_up_.resize(b);
  macro_label_.resize(b);
  for (int i = 0; i < b; ++i) {
    macro_up_[i] = i;
    macro_label_[i] = macro_vertex_[i];
  }
}

void StaticTreeUF::link(int v) {
  check(v);
  if (v == root_) throw UnionFindError("Link on the root of the union tree");
  if (linked_[v]) throw UnionFindError("vertex " + std::to_string(v) + " linked twice");
  linked_[v] = 1;
  ++links_;
  ++ops_;
  if (mode_ == Mode::kPathCompression) {
    up_[v] = tparent_[v];
  } else {
    unlinked_[micro_[v]] &= ~(std::uint64_t{1} << local_[v]);
  }
}

int StaticTreeUF::find(int v) {
  check(v);
  ++finds_;
  return mode_ == Mode::kPathCompression ? find_pc(v) : find_mm(v);
}

int StaticTreeUF::find_pc(int v) {
  int r = v;
  while (up_[r] != r) {
    r = up_[r];
    ++ops_;
  }
  while (up_[v] != r) {
    int next = up_[v];
    up_[v] = r;
    v = next;
    ++ops_;
  }
  ++ops_;
  return r;
}

int StaticTreeUF::macro_find(int b) {
  while (macro_up_[b] != b) {
    macro_up_[b] = macro_up_[macro_up_[b]];
    b = macro_up_[b];
    ++ops_;
  }
  return b;
}

int StaticTreeUF::find_mm(int v) {
  int s = micro_[v];
  std::uint64_t a = anc_[v] & unlinked_[s];
  ++ops_;
  if (a) return members_[s][63 - std::countl_zero(a)];
  int u = micro_top_parent_[s];
  for (;;) {
    int mu = macro_find(macro_id_[u]);
    u = macro_label_[mu];
    s = micro_[u];
    a = anc_[u] & unlinked_[s];
    ++ops_;
    if (a) return members_[s][63 - std::countl_zero(a)];
    int w = micro_top_parent_[s];
    int mw = macro_find(macro_id_[w]);
    macro_up_[mu] = mw;
    ++ops_;
    u = w;
  }
}

}  // namespace spanner
