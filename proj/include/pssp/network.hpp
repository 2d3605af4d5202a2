#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pssp/ssp_core.hpp"

namespace pssp {

enum class JunctionKind : std::uint8_t {
  kSplit,
  kPass,
  kConverge,
  kInputPort,
  kOutputPort,
  kLossSink,
};

enum class Branch : std::uint8_t { kVertical, kDiagonal };

const char* junction_kind_name(JunctionKind kind) noexcept;

// Topological position in node units. Block 0 holds the input port, blocks
// 1..N hold the element rows, block N+1 holds the output ports.
struct Node {
  int block = 0;
  std::int64_t row = 0;
  std::int64_t column = 0;
  JunctionKind kind = JunctionKind::kSplit;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  Branch branch = Branch::kVertical;
  // Vertical distance travelled, in node units.
  std::int64_t span = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct NetworkStats {
  std::size_t n_split = 0;
  std::size_t n_pass = 0;
  std::size_t n_converge = 0;
  std::size_t n_ports = 0;
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  std::int64_t depth = 0;

  friend bool operator==(const NetworkStats&, const NetworkStats&) = default;
};

/// Layered junction DAG for one instance.
///
/// Nodes are stored sorted by (block, row, column), which is a topological
/// order. Edges are stored grouped by destination node, in node order, so
/// in_edges(n) is a contiguous slice. Every node has at most one incoming edge
/// per branch.
class JunctionNetwork {
 public:
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Edge> in_edges(std::size_t node) const noexcept {
    return std::span<const Edge>(edges_).subspan(
        in_offsets_[node], in_offsets_[node + 1] - in_offsets_[node]);
  }

  /// P_0..P_N, each sorted ascending. P_0 = {0}.
  const std::vector<std::vector<std::int64_t>>& partial_sum_layers() const noexcept {
    return layers_;
  }
  /// Element value per block, in order.
  std::span<const std::int64_t> block_elements() const noexcept { return elements_; }
  /// Sorted output columns (= P_N).
  std::span<const std::int64_t> output_ports() const noexcept { return layers_.back(); }
  std::int64_t total() const noexcept { return total_; }

 private:
  friend JunctionNetwork build_network(const Instance&);
  friend JunctionNetwork import_network(const std::string&);

  void add_edge(std::uint32_t from, std::uint32_t to, Branch branch, std::int64_t span);
  void finish_node();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<std::vector<std::int64_t>> layers_;
  std::vector<std::int64_t> elements_;
  std::int64_t total_ = 0;
};

/// Compile an instance into its split/pass/converge network.
///
/// Block i starts with a split row at every column of P_{i-1}. The diagonal
/// leaving column x descends element_i rows, one column per row, and ends in a
/// converge node at x + element_i. A pass node sits wherever that diagonal
/// crosses a column of P_{i-1}. The converge row of block i and the split row
/// of block i+1 are distinct layers at the same depth.
JunctionNetwork build_network(const Instance& instance);

NetworkStats network_stats(const JunctionNetwork& network);

/// Paths from the input to each output port, routing straight through pass
/// junctions. Returned in output_ports() order. Sums to 2^N.
std::vector<std::uint64_t> count_port_paths(const JunctionNetwork& network);

/// JSON document {"nodes":[...], "edges":[...], "ports":[...]} in node order.
std::string export_network(const JunctionNetwork& network);

/// Inverse of export_network. Throws kParse on malformed documents.
JunctionNetwork import_network(const std::string& document);

}  // namespace pssp
