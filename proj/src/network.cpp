#include "pssp/network.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include <json.hpp>

#include "pssp/error.hpp"

namespace pssp {

namespace {

constexpr std::int64_t kNoNode = -1;

JunctionKind kind_from_name(const std::string& name) {
  if (name == "split") return JunctionKind::kSplit;
  if (name == "pass") return JunctionKind::kPass;
  if (name == "converge") return JunctionKind::kConverge;
  if (name == "input") return JunctionKind::kInputPort;
  if (name == "output") return JunctionKind::kOutputPort;
  if (name == "sink") return JunctionKind::kLossSink;
  throw Error(ErrorCode::kParse, "unknown node kind '" + name + "'");
}

std::vector<std::int64_t> merge_shifted(const std::vector<std::int64_t>& layer,
                                        std::int64_t shift) {
  std::vector<std::int64_t> next;
  next.reserve(layer.size() * 2);
  auto a = layer.begin();
  auto b = layer.begin();
  while (a != layer.end() || b != layer.end()) {
    std::int64_t v;
    if (b == layer.end() || (a != layer.end() && *a <= *b + shift)) {
      v = *a++;
    } else {
      v = *b++ + shift;
    }
    if (next.empty() || next.back() != v) next.push_back(v);
  }
  return next;
}

}  // namespace

const char* junction_kind_name(JunctionKind kind) noexcept {
  switch (kind) {
    case JunctionKind::kSplit: return "split";
    case JunctionKind::kPass: return "pass";
    case JunctionKind::kConverge: return "converge";
    case JunctionKind::kInputPort: return "input";
    case JunctionKind::kOutputPort: return "output";
    case JunctionKind::kLossSink: return "sink";
  }
  return "unknown";
}

void JunctionNetwork::add_edge(std::uint32_t from, std::uint32_t to, Branch branch,
                               std::int64_t span) {
  edges_.push_back(Edge{from, to, branch, span});
}

void JunctionNetwork::finish_node() { in_offsets_.push_back(edges_.size()); }

JunctionNetwork build_network(const Instance& instance) {
  if (instance.total() > kMaxTotal) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "total " + std::to_string(instance.total()) +
                    " exceeds the supported column range");
  }
  JunctionNetwork net;
  net.elements_.assign(instance.elements().begin(), instance.elements().end());
  net.total_ = instance.total();
  net.layers_.push_back({0});

  const auto width = static_cast<std::size_t>(instance.total()) + 1;
  std::vector<char> member(width, 0);
  // Latest node (and its depth) on each vertical column and on each diagonal,
  // diagonals keyed by their starting column.
  std::vector<std::int64_t> last_v(width, kNoNode), last_v_depth(width, 0);
  std::vector<std::int64_t> last_d(width, kNoNode), last_d_depth(width, 0);

  auto add_node = [&](int block, std::int64_t row, std::int64_t column,
                      JunctionKind kind) {
    if (net.nodes_.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::kInstanceTooLarge, "network exceeds 2^32 nodes");
    }
    net.nodes_.push_back(Node{block, row, column, kind});
    return static_cast<std::uint32_t>(net.nodes_.size() - 1);
  };
  auto link_vertical = [&](std::uint32_t id, std::int64_t column, std::int64_t depth) {
    const auto c = static_cast<std::size_t>(column);
    net.add_edge(static_cast<std::uint32_t>(last_v[c]), id, Branch::kVertical,
                 depth - last_v_depth[c]);
    last_v[c] = id;
    last_v_depth[c] = depth;
  };
  auto link_diagonal = [&](std::uint32_t id, std::int64_t start, std::int64_t depth) {
    const auto x = static_cast<std::size_t>(start);
    net.add_edge(static_cast<std::uint32_t>(last_d[x]), id, Branch::kDiagonal,
                 depth - last_d_depth[x]);
    last_d[x] = id;
    last_d_depth[x] = depth;
  };

  const auto input = add_node(0, 0, 0, JunctionKind::kInputPort);
  net.finish_node();
  last_v[0] = input;
  member[0] = 1;

  std::int64_t depth = 0;
  const int n_blocks = static_cast<int>(instance.size());
  for (int block = 1; block <= n_blocks; ++block) {
    const std::int64_t e = net.elements_[static_cast<std::size_t>(block - 1)];
    const auto& layer = net.layers_.back();

    for (const std::int64_t x : layer) {
      const auto id = add_node(block, 0, x, JunctionKind::kSplit);
      link_vertical(id, x, depth);
      net.finish_node();
      last_d[static_cast<std::size_t>(x)] = id;
      last_d_depth[static_cast<std::size_t>(x)] = depth;
    }

    for (std::int64_t row = 1; row < e; ++row) {
      for (const std::int64_t c : layer) {
        const std::int64_t start = c - row;
        if (start < 0 || !member[static_cast<std::size_t>(start)]) continue;
        const auto id = add_node(block, row, c, JunctionKind::kPass);
        link_vertical(id, c, depth + row);
        link_diagonal(id, start, depth + row);
        net.finish_node();
      }
    }

    for (const std::int64_t x : layer) {
      const std::int64_t c = x + e;
      const auto id = add_node(block, e, c, JunctionKind::kConverge);
      if (last_v[static_cast<std::size_t>(c)] != kNoNode) {
        link_vertical(id, c, depth + e);
      } else {
        last_v[static_cast<std::size_t>(c)] = id;
        last_v_depth[static_cast<std::size_t>(c)] = depth + e;
      }
      link_diagonal(id, x, depth + e);
      net.finish_node();
    }

    auto next = merge_shifted(layer, e);
    for (const std::int64_t c : next) member[static_cast<std::size_t>(c)] = 1;
    net.layers_.push_back(std::move(next));
    depth += e;
  }

  for (const std::int64_t c : net.layers_.back()) {
    const auto id = add_node(n_blocks + 1, 0, c, JunctionKind::kOutputPort);
    link_vertical(id, c, depth);
    net.finish_node();
  }
  return net;
}

NetworkStats network_stats(const JunctionNetwork& network) {
  NetworkStats stats;
  for (const Node& node : network.nodes()) {
    switch (node.kind) {
      case JunctionKind::kSplit: ++stats.n_split; break;
      case JunctionKind::kPass: ++stats.n_pass; break;
      case JunctionKind::kConverge: ++stats.n_converge; break;
      case JunctionKind::kOutputPort: ++stats.n_ports; break;
      default: break;
    }
  }
  stats.n_nodes = network.nodes().size();
  stats.n_edges = network.edges().size();
  stats.depth = network.total();
  return stats;
}

std::vector<std::uint64_t> count_port_paths(const JunctionNetwork& network) {
  if (network.block_elements().size() > kMaxCountSize) {
    throw Error(ErrorCode::kCountOverflow, "path count exceeds 64 bits");
  }
  const auto nodes = network.nodes();
  std::vector<std::uint64_t> out_v(nodes.size(), 0), out_d(nodes.size(), 0);
  std::vector<std::uint64_t> ports;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    std::uint64_t in_v = 0, in_d = 0;
    for (const Edge& edge : network.in_edges(n)) {
      if (edge.branch == Branch::kVertical) {
        in_v += out_v[edge.from];
      } else {
        in_d += out_d[edge.from];
      }
    }
    switch (nodes[n].kind) {
      case JunctionKind::kInputPort: out_v[n] = 1; break;
      case JunctionKind::kSplit: out_v[n] = in_v; out_d[n] = in_v; break;
      case JunctionKind::kPass: out_v[n] = in_v; out_d[n] = in_d; break;
      case JunctionKind::kConverge: out_v[n] = in_v + in_d; break;
      case JunctionKind::kOutputPort: ports.push_back(in_v); break;
      case JunctionKind::kLossSink: break;
    }
  }
  return ports;
}

std::string export_network(const JunctionNetwork& network) {
  using nlohmann::json;
  json nodes = json::array();
  for (const Node& node : network.nodes()) {
    nodes.push_back({{"block", node.block},
                     {"row", node.row},
                     {"col", node.column},
                     {"kind", junction_kind_name(node.kind)}});
  }
  json edges = json::array();
  for (const Edge& edge : network.edges()) {
    edges.push_back({{"from", edge.from},
                     {"to", edge.to},
                     {"branch", edge.branch == Branch::kVertical ? "v" : "d"}});
  }
  json doc;
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  doc["ports"] = std::vector<std::int64_t>(network.output_ports().begin(),
                                           network.output_ports().end());
  return doc.dump();
}

JunctionNetwork import_network(const std::string& document) {
  using nlohmann::json;
  JunctionNetwork net;
  try {
    const json doc = json::parse(document);
    for (const json& jn : doc.at("nodes")) {
      net.nodes_.push_back(Node{jn.at("block").get<int>(), jn.at("row").get<std::int64_t>(),
                                jn.at("col").get<std::int64_t>(),
                                kind_from_name(jn.at("kind").get<std::string>())});
    }
    for (const json& je : doc.at("edges")) {
      const std::string branch = je.at("branch").get<std::string>();
      if (branch != "v" && branch != "d") {
        throw Error(ErrorCode::kParse, "unknown branch '" + branch + "'");
      }
      net.edges_.push_back(Edge{je.at("from").get<std::uint32_t>(),
                                je.at("to").get<std::uint32_t>(),
                                branch == "v" ? Branch::kVertical : Branch::kDiagonal, 0});
    }
    net.layers_.clear();
    const auto ports = doc.at("ports").get<std::vector<std::int64_t>>();

    const auto& nodes = net.nodes_;
    if (nodes.empty() || nodes.front().kind != JunctionKind::kInputPort) {
      throw Error(ErrorCode::kParse, "network must start with an input node");
    }
    auto key = [](const Node& n) { return std::tuple(n.block, n.row, n.column); };
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (!(key(nodes[i - 1]) < key(nodes[i]))) {
        throw Error(ErrorCode::kParse, "nodes are not in (block,row,col) order");
      }
    }
    const int n_blocks = nodes.back().block - 1;
    if (n_blocks < 1) throw Error(ErrorCode::kParse, "network has no element blocks");

    // Each block's converge row equals its element value.
    net.elements_.assign(static_cast<std::size_t>(n_blocks), 0);
    std::vector<std::vector<std::int64_t>> splits(static_cast<std::size_t>(n_blocks));
    for (const Node& node : nodes) {
      if (node.block < 1 || node.block > n_blocks) continue;
      const auto b = static_cast<std::size_t>(node.block - 1);
      if (node.kind == JunctionKind::kConverge) {
        net.elements_[b] = std::max(net.elements_[b], node.row);
      } else if (node.kind == JunctionKind::kSplit) {
        splits[b].push_back(node.column);
      }
    }
    std::vector<std::int64_t> block_depth(static_cast<std::size_t>(n_blocks) + 2, 0);
    for (int b = 1; b <= n_blocks; ++b) {
      const std::int64_t e = net.elements_[static_cast<std::size_t>(b - 1)];
      if (e < 1) throw Error(ErrorCode::kParse, "block without converge nodes");
      block_depth[static_cast<std::size_t>(b) + 1] = block_depth[static_cast<std::size_t>(b)] + e;
    }
    net.total_ = block_depth.back();
    for (auto& layer : splits) net.layers_.push_back(std::move(layer));
    net.layers_.push_back(ports);

    auto depth_of = [&](const Node& n) {
      return block_depth[static_cast<std::size_t>(std::min(n.block, n_blocks + 1))] + n.row;
    };
    for (Edge& edge : net.edges_) {
      if (edge.from >= nodes.size() || edge.to >= nodes.size() || edge.from >= edge.to) {
        throw Error(ErrorCode::kParse, "edge endpoints out of order or range");
      }
      edge.span = depth_of(nodes[edge.to]) - depth_of(nodes[edge.from]);
    }
    std::stable_sort(net.edges_.begin(), net.edges_.end(),
                     [](const Edge& a, const Edge& b) { return a.to < b.to; });
    net.in_offsets_.assign(nodes.size() + 1, 0);
    for (const Edge& edge : net.edges_) ++net.in_offsets_[edge.to + 1];
    for (std::size_t i = 1; i < net.in_offsets_.size(); ++i) {
      net.in_offsets_[i] += net.in_offsets_[i - 1];
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("network document: ") + ex.what());
  }
  return net;
}

}  // namespace pssp
