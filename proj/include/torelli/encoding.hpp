#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "torelli/complex.hpp"

namespace torelli {

/// Marked triangle {gamma, gamma', beta} certifying a pair (gamma, delta).
struct Certificate {
  int triangle = -1;  // index into TorelliComplex::marked_triangles()
  int beta = -1;
  int gamma_prime = -1;
  friend auto operator<=>(const Certificate&, const Certificate&) = default;
};

struct AdmissiblePair {
  int gamma = -1;  // bounding-pair vertex
  int delta = -1;  // separating vertex
  Certificate certificate;
  friend bool operator==(const AdmissiblePair&, const AdmissiblePair&) = default;
};

enum class MoveType { I, II };

/// All certificates of (gamma, delta) within the complex; throws
/// std::invalid_argument if gamma is not a bounding pair or delta is not
/// separating.
std::vector<Certificate> certify_admissible(const TorelliComplex& c, int gamma, int delta);

/// The constituent curve of gamma not in beta (inventory index).
int decode(const TorelliComplex& c, const AdmissiblePair& p);

/// Admissible pairs of a complex with the certified separating vertices of
/// every (triangle, beta) cached. Nodes are the distinct (gamma, delta).
class MoveGraph {
 public:
  explicit MoveGraph(const TorelliComplex& c, int jobs = 1);

  const TorelliComplex& complex() const { return *complex_; }
  /// Separating vertices delta certified by triangle t with the given beta.
  const std::vector<int>& certified(int triangle, int beta) const;
  std::vector<Certificate> certify(int gamma, int delta) const;

  std::size_t size() const { return nodes_.size(); }
  const std::pair<int, int>& node(int i) const { return nodes_[i]; }
  int node_index(int gamma, int delta) const;
  /// Node as a pair carrying its smallest certificate.
  AdmissiblePair pair(int i) const;
  int decode_node(int i) const { return decode_[i]; }

  std::vector<AdmissiblePair> moves_I(const AdmissiblePair& p) const;
  /// Includes the trivial move delta' = delta.
  std::vector<AdmissiblePair> moves_II(const AdmissiblePair& p) const;

  /// Component id per node of the undirected move graph.
  std::vector<int> components() const;

 private:
  static std::uint64_t key(int gamma, int delta) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(gamma)) << 32) |
           static_cast<std::uint32_t>(delta);
  }
  const TorelliComplex* complex_;
  std::vector<std::vector<int>> certified_;  // 3 * triangle + position of beta
  std::vector<std::pair<int, int>> nodes_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<int> decode_;
};

struct MovePath {
  std::vector<AdmissiblePair> nodes;
  std::vector<MoveType> moves;
  std::size_t length() const { return moves.size(); }
};

struct MoveSearch {
  enum class Status { Found, Exhausted, BudgetHit };
  Status status = Status::Exhausted;
  MovePath path;
  std::size_t expansions = 0;
};

const char* to_string(MoveSearch::Status s);

/// Breadth-first search for a shortest move path from p to q.
MoveSearch move_reachable(const MoveGraph& g, const AdmissiblePair& p, const AdmissiblePair& q,
                          std::size_t budget = 1000000);

struct EncodingParams {
  std::size_t soundness_samples = 10000;
  std::size_t completeness_samples = 200;
  std::size_t separation_samples = 200;
  std::size_t budget = 1000000;
  int escalations = 2;  // budget x10 retries after a budget cut
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Soundness, completeness and separation statistics of the move calculus.
nlohmann::json encoding_experiment(const MoveGraph& g, const EncodingParams& params);

}  // namespace torelli
