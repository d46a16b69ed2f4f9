#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Physical world consumed by the TE optimizer and the simulator: wired
// topology, radio propagation, the link-rate abstraction, and lane mobility.

namespace dnsim::net {

enum class NodeKind { kGateway, kRouter, kRadioNode, kVusgwHost };

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::kRouter;
  double x = 0.0, y = 0.0;  // meters; meaningful for radio nodes
};

struct WiredLink {
  int from = 0, to = 0;
  double capacity_bps = 0.0;
  double latency_s = 0.0;
};

struct NetworkGraph {
  std::vector<Node> nodes;  // indexed by id
  std::vector<WiredLink> links;
  int gateway_id = 0;
  std::vector<int> vusgw_hosts;  // nodes able to host a v-u-SGW

  // adjacency: per node, (neighbor id, link index), sorted by neighbor id
  std::vector<std::vector<std::pair<int, int>>> adj;

  void build_adjacency();
  // BFS hop counts from a node; unreachable = -1
  std::vector<int> hop_distances(int from) const;
  // hop-shortest path from->to, lexicographically smallest next-hop ids;
  // empty when unreachable
  std::vector<int> shortest_path(int from, int to) const;
  int link_between(int a, int b) const;  // -1 when absent
};

struct RadioNode {
  int id = 0;  // node id in the graph
  double x = 0.0, y = 0.0;
  double tx_power_dbm = 24.0;
  double bandwidth_hz = 10e6;
  int reuse_group = 0;
};

struct UserEquipment {
  int id = 0;
  double x = 0.0, y = 0.0;
  double vx = 0.0, vy = 0.0;  // m/s
  int lane = 0;
  std::vector<int> serving_set;  // radio node ids, ascending path loss
  double noise_figure_db = 7.0;
};

struct ChannelSample {
  int ue_id = 0;
  int node_id = 0;
  double path_loss_db = 0.0;
  double sinr_db = 0.0;
  double peak_rate_bps = 0.0;  // rate if the node served this UE alone
};

struct RadioParams {
  double pl0_db = 38.0;          // reference loss at 1 m
  double alpha = 3.0;            // path-loss exponent
  double d_min_m = 1.0;
  double se_cap = 6.0;           // bit/s/Hz ceiling
  double mimo_gain = 1.5;
  double noise_figure_db = 7.0;
  int reuse_factor = 1;          // static frequency reuse
};

double path_loss_db(double distance_m, const RadioParams& p);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Linear-domain SINR at the UE for a given serving node. Only interferers in
// the serving node's reuse group count; the serving node itself is skipped if
// listed. Bandwidth for the noise floor is the node's reuse share.
double sinr_db(const UserEquipment& ue, const RadioNode& serving,
               const std::vector<const RadioNode*>& active_interferers,
               const RadioParams& p);

// fraction * bandwidth * min(log2(1+sinr), cap) * mimo_gain
double rate_from_sinr(double sinr_db_value, double bandwidth_hz,
                      double resource_fraction, const RadioParams& p);

double effective_bandwidth_hz(const RadioNode& n, const RadioParams& p);

ChannelSample sample_channel(const UserEquipment& ue, const RadioNode& serving,
                             const std::vector<const RadioNode*>& interferers,
                             const RadioParams& p);

// position += velocity * dt, wrapping along the strip [0, strip_length)
void step_mobility(std::vector<UserEquipment>& ues, double dt,
                   double strip_length_m);

// the n nodes with smallest path loss; ties by ascending node id
std::vector<int> best_n_cells(const UserEquipment& ue,
                              const std::vector<RadioNode>& nodes, int n,
                              const RadioParams& p);

struct TopologyConfig {
  int n_radio = 57;
  int n_router = 11;
  int n_gw_routers = 3;  // routers attached to the gateway
  double area_km2 = 0.04;
  double aspect = 1.0;  // width / height
  double radio_link_bps = 1e9;
  double core_link_bps = 10e9;
  double radio_link_latency_s = 0.0002;
  double core_link_latency_s = 0.0005;
  double tx_power_dbm = 24.0;
  double bandwidth_hz = 10e6;
  int reuse_factor = 1;
  uint64_t seed = 1;
};

struct Topology {
  NetworkGraph graph;
  std::vector<RadioNode> radio_nodes;
  double width_m = 0.0;
  double height_m = 0.0;
};

// Radio nodes uniformly placed in the configured rectangle; wired backhaul is
// a two-tier tree (radio node -> nearest grid router) over a router ring with
// n_gw_routers gateway attachments. Deterministic for a given seed.
Topology build_topology(const TopologyConfig& cfg);

// plain-text node/link list, one record per line
std::string export_topology(const Topology& t);
Topology import_topology(const std::string& text);

}  // namespace dnsim::net
