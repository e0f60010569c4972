#include "torelli/encoding.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace torelli {

namespace {

void check_types(const TorelliComplex& c, int gamma, int delta) {
  const int n = static_cast<int>(c.vertices().size());
  if (gamma < 0 || gamma >= n || c.vertices()[gamma].kind != VertexKind::BoundingPair) {
    throw std::invalid_argument("gamma must be a bounding-pair vertex");
  }
  if (delta < 0 || delta >= n || c.vertices()[delta].kind != VertexKind::Separating) {
    throw std::invalid_argument("delta must be a separating vertex");
  }
}

int position(const std::array<int, 3>& t, int v) {
  return static_cast<int>(std::find(t.begin(), t.end(), v) - t.begin());
}

int third(const std::array<int, 3>& t, int x, int y) {
  for (int v : t) {
    if (v != x && v != y) return v;
  }
  return -1;
}

bool certifies(const TorelliComplex& c, int gamma, int gamma_prime, int beta, int delta) {
  return c.adjacent(delta, beta) && !c.adjacent(delta, gamma) && !c.adjacent(delta, gamma_prime);
}

}  // namespace

std::vector<Certificate> certify_admissible(const TorelliComplex& c, int gamma, int delta) {
  check_types(c, gamma, delta);
  std::vector<Certificate> out;
  for (int t : c.triangles_at(gamma)) {
    const auto& tri = c.marked_triangles()[t];
    for (int beta : tri) {
      if (beta == gamma) continue;
      int gp = third(tri, gamma, beta);
      if (certifies(c, gamma, gp, beta, delta)) out.push_back({t, beta, gp});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int decode(const TorelliComplex& c, const AdmissiblePair& p) {
  const auto& cert = p.certificate;
  const int nt = static_cast<int>(c.marked_triangles().size());
  if (cert.triangle < 0 || cert.triangle >= nt) throw std::invalid_argument("malformed certificate");
  const auto& tri = c.marked_triangles()[cert.triangle];
  if (position(tri, p.gamma) == 3 || position(tri, cert.beta) == 3 || cert.beta == p.gamma ||
      cert.gamma_prime != third(tri, p.gamma, cert.beta)) {
    throw std::invalid_argument("malformed certificate");
  }
  const auto gc = c.vertices()[p.gamma].curves();
  const auto bc = c.vertices()[cert.beta].curves();
  std::vector<int> rest;
  for (int x : gc) {
    if (std::find(bc.begin(), bc.end(), x) == bc.end()) rest.push_back(x);
  }
  if (rest.size() != 1) throw std::invalid_argument("malformed certificate");
  return rest[0];
}

MoveGraph::MoveGraph(const TorelliComplex& c, int jobs) : complex_(&c) {
  const auto& tris = c.marked_triangles();
  certified_.assign(3 * tris.size(), {});
  parallel_for(tris.size(), jobs, [&](std::size_t t) {
    const auto& tri = tris[t];
    for (int k = 0; k < 3; ++k) {
      const int beta = tri[k];
      const int g1 = tri[(k + 1) % 3], g2 = tri[(k + 2) % 3];
      auto& list = certified_[3 * t + k];
      for (int d : c.graph().adj[beta]) {
        if (c.vertices()[d].kind != VertexKind::Separating) continue;
        if (!c.adjacent(d, g1) && !c.adjacent(d, g2)) list.push_back(d);
      }
    }
  });
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      for (int d : certified_[3 * t + k]) {
        nodes_.emplace_back(tris[t][(k + 1) % 3], d);
        nodes_.emplace_back(tris[t][(k + 2) % 3], d);
      }
    }
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    index_[key(nodes_[i].first, nodes_[i].second)] = static_cast<int>(i);
  }
  decode_.resize(nodes_.size());
  parallel_for(nodes_.size(), jobs, [&](std::size_t i) { decode_[i] = decode(c, pair(static_cast<int>(i))); });
}

const std::vector<int>& MoveGraph::certified(int triangle, int beta) const {
  return certified_[3 * triangle + position(complex_->marked_triangles()[triangle], beta)];
}

std::vector<Certificate> MoveGraph::certify(int gamma, int delta) const {
  check_types(*complex_, gamma, delta);
  std::vector<Certificate> out;
  for (int t : complex_->triangles_at(gamma)) {
    const auto& tri = complex_->marked_triangles()[t];
    for (int beta : tri) {
      if (beta == gamma) continue;
      const auto& list = certified(t, beta);
      if (std::binary_search(list.begin(), list.end(), delta)) {
        out.push_back({t, beta, third(tri, gamma, beta)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int MoveGraph::node_index(int gamma, int delta) const {
  auto it = index_.find(key(gamma, delta));
  return it == index_.end() ? -1 : it->second;
}

AdmissiblePair MoveGraph::pair(int i) const {
  auto [gamma, delta] = nodes_[i];
  auto certs = certify(gamma, delta);
  return {gamma, delta, certs.front()};
}

std::vector<AdmissiblePair> MoveGraph::moves_I(const AdmissiblePair& p) const {
  std::vector<AdmissiblePair> out;
  for (const auto& cert : certify(p.gamma, p.delta)) {
    out.push_back({cert.gamma_prime, p.delta, {cert.triangle, cert.beta, p.gamma}});
  }
  return out;
}

std::vector<AdmissiblePair> MoveGraph::moves_II(const AdmissiblePair& p) const {
  std::vector<AdmissiblePair> out;
  for (const auto& cert : certify(p.gamma, p.delta)) {
    for (int d : certified(cert.triangle, cert.beta)) out.push_back({p.gamma, d, cert});
  }
  return out;
}

std::vector<int> MoveGraph::components() const {
  DisjointSets ds(static_cast<int>(nodes_.size()));
  const auto& tris = complex_->marked_triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const auto& list = certified_[3 * t + k];
      const int g1 = tris[t][(k + 1) % 3], g2 = tris[t][(k + 2) % 3];
      for (int d : list) {
        int a = node_index(g1, d);
        ds.unite(a, node_index(g2, d));
        ds.unite(a, node_index(g1, list.front()));
      }
    }
  }
  std::vector<int> comp(nodes_.size());
  std::map<int, int> ids;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    int root = ds.find(static_cast<int>(i));
    comp[i] = ids.emplace(root, static_cast<int>(ids.size())).first->second;
  }
  return comp;
}

const char* to_string(MoveSearch::Status s) {
  switch (s) {
    case MoveSearch::Status::Found:
      return "found";
    case MoveSearch::Status::Exhausted:
      return "exhausted";
    case MoveSearch::Status::BudgetHit:
      return "budget";
  }
  return "?";
}

MoveSearch move_reachable(const MoveGraph& g, const AdmissiblePair& p, const AdmissiblePair& q,
                          std::size_t budget) {
  MoveSearch result;
  const int source = g.node_index(p.gamma, p.delta);
  const int target = g.node_index(q.gamma, q.delta);
  if (source < 0 || target < 0) throw std::invalid_argument("pair is not admissible in complex");
  const auto& c = g.complex();
  struct Visit {
    int parent = -1;
    MoveType move = MoveType::I;
    Certificate cert;
  };
  std::unordered_map<int, Visit> seen;
  // Rows {(gamma, d) : d certified by (t, beta)} are cliques of Type II moves;
  // each is expanded once.
  std::unordered_map<std::int64_t, char> used_rows;
  std::vector<int> queue{source};
  seen[source] = {};
  bool found = source == target;
  for (std::size_t head = 0; head < queue.size() && !found; ++head) {
    if (result.expansions >= budget) {
      result.status = MoveSearch::Status::BudgetHit;
      return result;
    }
    ++result.expansions;
    const int u = queue[head];
    const auto [gamma, delta] = g.node(u);
    auto visit = [&](int v, MoveType m, const Certificate& cert) {
      if (seen.count(v)) return;
      seen[v] = {u, m, cert};
      queue.push_back(v);
      if (v == target) found = true;
    };
    const auto certs = g.certify(gamma, delta);
    for (const auto& cert : certs) {
      visit(g.node_index(cert.gamma_prime, delta), MoveType::I,
            {cert.triangle, cert.beta, gamma});
    }
    for (const auto& cert : certs) {
      const auto& tri = c.marked_triangles()[cert.triangle];
      std::int64_t row = (static_cast<std::int64_t>(cert.triangle) * 3 + position(tri, cert.beta)) * 3 +
                         position(tri, gamma);
      if (!used_rows.emplace(row, 1).second) continue;
      for (int d : g.certified(cert.triangle, cert.beta)) {
        visit(g.node_index(gamma, d), MoveType::II, cert);
      }
    }
  }
  if (!found) {
    result.status = MoveSearch::Status::Exhausted;
    return result;
  }
  result.status = MoveSearch::Status::Found;
  std::vector<int> chain;
  for (int v = target; v != -1; v = seen[v].parent) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto [gamma, delta] = g.node(chain[k]);
    if (k == 0) {
      result.path.nodes.push_back(p);
    } else {
      const Visit& vis = seen[chain[k]];
      result.path.nodes.push_back({gamma, delta, vis.cert});
      result.path.moves.push_back(vis.move);
    }
  }
  return result;
}

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

nlohmann::json encoding_experiment(const MoveGraph& g, const EncodingParams& params) {
  const auto& c = g.complex();
  const int n = static_cast<int>(g.size());
  std::mt19937_64 rng(params.seed);

  // Exhaustive checks over the whole finite move graph.
  std::size_t total_moves = 0, preserved_moves = 0, ill_defined = 0;
  for (int i = 0; i < n; ++i) {
    const AdmissiblePair p = g.pair(i);
    for (const auto& cert : g.certify(p.gamma, p.delta)) {
      if (decode(c, {p.gamma, p.delta, cert}) != g.decode_node(i)) ++ill_defined;
    }
    for (const auto& list : {g.moves_I(p), g.moves_II(p)}) {
      for (const auto& m : list) {
        if (m.gamma == p.gamma && m.delta == p.delta) continue;
        ++total_moves;
        preserved_moves += decode(c, m) == g.decode_node(i);
      }
    }
  }
  const auto comp = g.components();
  std::map<int, std::vector<int>> decodes_by_component;
  std::map<int, std::vector<int>> by_decode;
  for (int i = 0; i < n; ++i) {
    decodes_by_component[comp[i]].push_back(g.decode_node(i));
    by_decode[g.decode_node(i)].push_back(i);
  }
  std::size_t mixed_components = 0;
  for (auto& [k, list] : decodes_by_component) {
    std::sort(list.begin(), list.end());
    if (list.front() != list.back()) ++mixed_components;
  }

  // Soundness: sampled move applications.
  std::size_t sampled = 0, sampled_ok = 0;
  if (n > 0) {
    for (std::size_t s = 0; s < params.soundness_samples; ++s) {
      const int i = static_cast<int>(draw(rng, n));
      const AdmissiblePair p = g.pair(i);
      std::vector<AdmissiblePair> moves = g.moves_I(p);
      for (const auto& m : g.moves_II(p)) {
        if (m.delta != p.delta) moves.push_back(m);
      }
      const auto& m = moves[draw(rng, moves.size())];
      ++sampled;
      sampled_ok += decode(c, m) == decode(c, p);
    }
  }

  // Completeness: same-decode pairs of pairs.
  std::vector<int> groups;
  for (auto& [d, list] : by_decode) {
    if (list.size() >= 2) groups.push_back(d);
  }
  std::vector<std::pair<int, int>> same;
  if (!groups.empty()) {
    for (std::size_t s = 0; s < params.completeness_samples; ++s) {
      const auto& list = by_decode[groups[draw(rng, groups.size())]];
      std::size_t x = draw(rng, list.size()), y = draw(rng, list.size() - 1);
      if (y >= x) ++y;
      same.emplace_back(list[x], list[y]);
    }
  }
  std::vector<std::pair<int, int>> different;
  if (by_decode.size() >= 2) {
    for (std::size_t tries = 0; different.size() < params.separation_samples &&
                                tries < 100 * params.separation_samples;
         ++tries) {
      int a = static_cast<int>(draw(rng, n)), b = static_cast<int>(draw(rng, n));
      if (g.decode_node(a) != g.decode_node(b)) different.emplace_back(a, b);
    }
  }

  auto search = [&](const std::vector<std::pair<int, int>>& queries, bool escalate) {
    std::vector<MoveSearch> out(queries.size());
    parallel_for(queries.size(), params.jobs, [&](std::size_t k) {
      std::size_t budget = params.budget;
      for (int round = 0;; ++round) {
        out[k] = move_reachable(g, g.pair(queries[k].first), g.pair(queries[k].second), budget);
        if (!escalate || out[k].status != MoveSearch::Status::BudgetHit || round >= params.escalations) break;
        budget *= 10;
      }
    });
    return out;
  };
  const auto same_results = search(same, true);
  const auto diff_results = search(different, false);

  std::map<std::size_t, std::size_t> lengths;
  std::size_t connected = 0, exhausted = 0, budget_cut = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t k = 0; k < same.size(); ++k) {
    const auto& r = same_results[k];
    if (r.status == MoveSearch::Status::Found) {
      ++connected;
      ++lengths[r.path.length()];
      continue;
    }
    (r.status == MoveSearch::Status::Exhausted ? exhausted : budget_cut)++;
    failures.push_back({{"from", {g.node(same[k].first).first, g.node(same[k].first).second}},
                        {"to", {g.node(same[k].second).first, g.node(same[k].second).second}},
                        {"cause", r.status == MoveSearch::Status::Exhausted ? "inventory_truncation"
                                                                           : "budget_truncation"},
                        {"expansions", r.expansions}});
  }
  std::size_t diff_found = 0, diff_exhausted = 0, diff_budget = 0;
  for (const auto& r : diff_results) {
    if (r.status == MoveSearch::Status::Found) ++diff_found;
    else if (r.status == MoveSearch::Status::Exhausted) ++diff_exhausted;
    else ++diff_budget;
  }
  nlohmann::json hist = nlohmann::json::array();
  for (auto [len, count] : lengths) hist.push_back({{"length", len}, {"count", count}});

  auto rate = [](std::size_t num, std::size_t den) -> nlohmann::json {
    if (den == 0) return nullptr;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  std::size_t multi = 0;
  for (auto& [d, list] : by_decode) multi += list.size() >= 2;
  return {
      {"num_marked_triangles", c.marked_triangles().size()},
      {"num_admissible_pairs", n},
      {"num_decode_classes", by_decode.size()},
      {"num_decode_classes_with_several_pairs", multi},
      {"num_move_components", decodes_by_component.size()},
      {"decode_well_defined", ill_defined == 0},
      {"soundness",
       {{"sampled", sampled},
        {"preserved", sampled_ok},
        {"rate", rate(sampled_ok, sampled)},
        {"exhaustive_moves", total_moves},
        {"exhaustive_preserved", preserved_moves}}},
      {"completeness",
       {{"sampled", same.size()},
        {"connected", connected},
        {"rate", rate(connected, same.size())},
        {"exhausted_frontier", exhausted},
        {"budget_cut", budget_cut},
        {"budget", params.budget},
        {"escalations", params.escalations},
        {"path_length_histogram", hist},
        {"failures", failures}}},
      {"separation",
       {{"sampled", different.size()},
        {"paths_found", diff_found},
        {"exhausted_frontier", diff_exhausted},
        {"budget_cut", diff_budget},
        {"mixed_decode_components", mixed_components}}},
  };
}

}  // namespace torelli
