#include <algorithm>
#include <optional>
#include <vector>

#include "clientnet/nora.hpp"

namespace clientnet {

namespace {

// Vertices live in exactly one intrusive list: sinks, sources, or the bucket
// of their current outdeg - indeg.
class VertexBuckets {
 public:
  static constexpr std::size_t kSinks = 0;
  static constexpr std::size_t kSources = 1;

  VertexBuckets(std::size_t n, std::size_t max_degree)
      : offset_(max_degree),
        heads_(2 + 2 * max_degree + 1, kNoNode),
        next_(n, kNoNode),
        prev_(n, kNoNode),
        list_(n, kNoList) {}

  void place(NodeIndex v, std::size_t indeg, std::size_t outdeg) {
    if (list_[v] != kNoList) unlink(v);
    std::size_t list;
    if (outdeg == 0) {
      list = kSinks;
    } else if (indeg == 0) {
      list = kSources;
    } else {
      list = 2 + offset_ + outdeg - indeg;
      max_bucket_ = std::max(max_bucket_, list);
    }
    link(v, list);
  }

  std::optional<NodeIndex> pop(std::size_t list) {
    const NodeIndex v = heads_[list];
    if (v == kNoNode) return std::nullopt;
    unlink(v);
    return v;
  }

  // Vertex with the largest outdeg - indeg among the non-sink, non-source ones.
  std::optional<NodeIndex> pop_max_delta() {
    while (max_bucket_ >= 2) {
      if (auto v = pop(max_bucket_)) return v;
      --max_bucket_;
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kNoList = static_cast<std::size_t>(-1);

  void link(NodeIndex v, std::size_t list) {
    list_[v] = list;
    prev_[v] = kNoNode;
    next_[v] = heads_[list];
    if (heads_[list] != kNoNode) prev_[heads_[list]] = v;
    heads_[list] = v;
  }

  void unlink(NodeIndex v) {
    const std::size_t list = list_[v];
    if (prev_[v] != kNoNode) next_[prev_[v]] = next_[v];
    else heads_[list] = next_[v];
    if (next_[v] != kNoNode) prev_[next_[v]] = prev_[v];
    list_[v] = kNoList;
  }

  std::size_t offset_;
  std::size_t max_bucket_ = 0;
  std::vector<NodeIndex> heads_;
  std::vector<NodeIndex> next_;
  std::vector<NodeIndex> prev_;
  std::vector<std::size_t> list_;
};

}  // namespace

std::vector<EdgeIndex> eades_feedback_arc_set(const DirectedMultigraph& dg) {
  const std::size_t n = dg.node_count;
  std::vector<EdgeIndex> feedback;

  std::vector<std::size_t> out_offset(n + 1, 0);
  std::vector<std::size_t> in_offset(n + 1, 0);
  for (const DirectedEdge& a : dg.arcs) {
    if (a.source == a.target) continue;
    ++out_offset[a.source + 1];
    ++in_offset[a.target + 1];
  }
  std::vector<std::size_t> outdeg(n), indeg(n);
  std::size_t max_degree = 0;
  for (std::size_t v = 0; v < n; ++v) {
    outdeg[v] = out_offset[v + 1];
    indeg[v] = in_offset[v + 1];
    max_degree = std::max({max_degree, outdeg[v], indeg[v]});
    out_offset[v + 1] += out_offset[v];
    in_offset[v + 1] += in_offset[v];
  }
  std::vector<NodeIndex> out_nbr(out_offset[n]), in_nbr(in_offset[n]);
  {
    std::vector<std::size_t> out_fill(out_offset.begin(), out_offset.end() - 1);
    std::vector<std::size_t> in_fill(in_offset.begin(), in_offset.end() - 1);
    for (const DirectedEdge& a : dg.arcs) {
      if (a.source == a.target) continue;
      out_nbr[out_fill[a.source]++] = a.target;
      in_nbr[in_fill[a.target]++] = a.source;
    }
  }

  VertexBuckets buckets(n, max_degree);
  // Reverse insertion leaves the lowest index at each list head.
  for (std::size_t v = n; v-- > 0;) buckets.place(static_cast<NodeIndex>(v), indeg[v], outdeg[v]);

  std::vector<std::uint8_t> removed(n, 0);
  std::vector<NodeIndex> prefix, suffix;
  prefix.reserve(n);
  auto remove_vertex = [&](NodeIndex u) {
    removed[u] = 1;
    for (std::size_t i = out_offset[u]; i < out_offset[u + 1]; ++i) {
      const NodeIndex v = out_nbr[i];
      if (removed[v]) continue;
      --indeg[v];
      buckets.place(v, indeg[v], outdeg[v]);
    }
    for (std::size_t i = in_offset[u]; i < in_offset[u + 1]; ++i) {
      const NodeIndex w = in_nbr[i];
      if (removed[w]) continue;
      --outdeg[w];
      buckets.place(w, indeg[w], outdeg[w]);
    }
  };

  std::size_t remaining = n;
  while (remaining > 0) {
    bool progressed = true;
    while (progressed) {
      progressed = false;
      while (auto u = buckets.pop(VertexBuckets::kSinks)) {
        remove_vertex(*u);
        suffix.push_back(*u);
        --remaining;
        progressed = true;
      }
      while (auto u = buckets.pop(VertexBuckets::kSources)) {
        remove_vertex(*u);
        prefix.push_back(*u);
        --remaining;
        progressed = true;
      }
    }
    if (remaining == 0) break;
    auto u = buckets.pop_max_delta();
    remove_vertex(*u);
    prefix.push_back(*u);
    --remaining;
  }

  std::vector<std::size_t> position(n);
  std::size_t pos = 0;
  for (NodeIndex v : prefix) position[v] = pos++;
  for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) position[*it] = pos++;

  for (const DirectedEdge& a : dg.arcs) {
    if (a.source == a.target || position[a.source] > position[a.target]) feedback.push_back(a.edge);
  }
  std::sort(feedback.begin(), feedback.end());
  return feedback;
}

}  // namespace clientnet
