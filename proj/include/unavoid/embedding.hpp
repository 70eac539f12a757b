#ifndef UNAVOID_EMBEDDING_HPP
#define UNAVOID_EMBEDDING_HPP

#include <string>
#include <vector>

#include "unavoid/error.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

/// Partial map node -> vertex; -1 marks an unassigned node.
struct Embedding {
  std::vector<int> image;

  Embedding() = default;
  explicit Embedding(int nodes) : image(nodes, -1) {}

  int size() const { return static_cast<int>(image.size()); }
  bool assigned(int node) const { return image[node] >= 0; }
  int operator[](int node) const { return image[node]; }
  bool total() const {
    for (int v : image)
      if (v < 0) return false;
    return true;
  }
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct Violation {
  enum class Kind { arc, collision } kind;
  int a;  // arc tail, or first colliding node
  int b;  // arc head, or second colliding node
  std::string describe() const {
    if (kind == Kind::arc) return "arc " + std::to_string(a) + "->" + std::to_string(b) + " not preserved";
    return "nodes " + std::to_string(a) + " and " + std::to_string(b) + " share a vertex";
  }
};

/// Empty iff `phi` is injective and arc-preserving. Throws PreconditionError
/// when `phi` is not total or maps outside the tournament.
inline std::vector<Violation> verify_embedding(const OrientedTree& a, const Tournament& t, const Embedding& phi) {
  if (phi.size() != a.size()) throw PreconditionError("embedding covers a different number of nodes than the tree");
  std::vector<int> owner(t.size(), -1);
  std::vector<Violation> out;
  for (int x = 0; x < a.size(); ++x) {
    int v = phi[x];
    if (v < 0) throw PreconditionError("node " + std::to_string(x) + " is unassigned");
    if (v >= t.size()) throw PreconditionError("node " + std::to_string(x) + " maps outside the tournament");
    if (owner[v] >= 0) out.push_back({Violation::Kind::collision, owner[v], x});
    else owner[v] = x;
  }
  for (auto [u, w] : a.arcs())
    if (!t.arc(phi[u], phi[w])) out.push_back({Violation::Kind::arc, u, w});
  return out;
}

inline bool is_valid_embedding(const OrientedTree& a, const Tournament& t, const Embedding& phi) {
  return phi.size() == a.size() && phi.total() && verify_embedding(a, t, phi).empty();
}

}  // namespace unavoid

#endif  // UNAVOID_EMBEDDING_HPP
