#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace glassbridge {

enum class Direction : int { horizontal = 0, vertical = 1 };

// L x L periodic square lattice. Sites and plaquettes are row-major
// (index = r * L + c); edge 2 * site + dir leaves `site` towards +c
// (horizontal) or +r (vertical). Plaquette (r, c) has corner sites (r, c),
// (r, c+1), (r+1, c), (r+1, c+1).
//
// The dual lattice is the same torus with plaquette (r, c) as dual site
// (r, c); dual_edge(e) is the dual edge crossing e.
class TorusLattice {
 public:
  explicit TorusLattice(int L);

  int size() const { return L_; }
  int num_sites() const { return L_ * L_; }
  int num_edges() const { return 2 * L_ * L_; }
  int num_plaquettes() const { return L_ * L_; }

  int site(int r, int c) const;
  int row(int site) const { return site / L_; }
  int col(int site) const { return site % L_; }
  int edge(int site, Direction d) const { return 2 * site + static_cast<int>(d); }
  int edge_site(int e) const { return e / 2; }
  Direction edge_direction(int e) const { return static_cast<Direction>(e % 2); }

  const std::array<int, 2>& endpoints(int e) const { return endpoints_[e]; }
  const std::array<int, 4>& star(int site) const { return stars_[site]; }
  const std::array<int, 4>& plaquette(int p) const { return plaquettes_[p]; }
  const std::array<int, 4>& plaquette_corners(int p) const { return corners_[p]; }
  const std::array<int, 2>& edge_plaquettes(int e) const { return edge_plaquettes_[e]; }

  int dual_edge(int e) const { return dual_edge_[e]; }

  // Transversal cuts: cut_v = horizontal edges in column 0, cut_h = vertical
  // edges in row 0. Closed-chain parities against them give (k_v, k_t).
  const std::vector<int>& cut_v() const { return cut_v_; }
  const std::vector<int>& cut_h() const { return cut_h_; }

  std::string to_json() const;

 private:
  int L_;
  std::vector<std::array<int, 2>> endpoints_;
  std::vector<std::array<int, 4>> stars_;
  std::vector<std::array<int, 4>> plaquettes_;
  std::vector<std::array<int, 4>> corners_;
  std::vector<std::array<int, 2>> edge_plaquettes_;
  std::vector<int> dual_edge_;
  std::vector<int> cut_v_;
  std::vector<int> cut_h_;
};

// Edge subset mod 2.
class ChainZ2 {
 public:
  ChainZ2() = default;
  explicit ChainZ2(int num_edges) : bits_(static_cast<std::size_t>(num_edges), 0) {}
  static ChainZ2 from_edges(int num_edges, const std::vector<int>& edges);

  int num_edges() const { return static_cast<int>(bits_.size()); }
  bool contains(int e) const { return bits_[static_cast<std::size_t>(e)] != 0; }
  void toggle(int e) { bits_[static_cast<std::size_t>(e)] ^= 1; }
  int weight() const;
  bool empty() const { return weight() == 0; }
  std::vector<int> edges() const;

  ChainZ2& operator^=(const ChainZ2& other);
  friend ChainZ2 operator^(ChainZ2 a, const ChainZ2& b) { return a ^= b; }
  friend bool operator==(const ChainZ2&, const ChainZ2&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct HomologyClass {
  int k_v = 0;
  int k_t = 0;

  // 0:(0,0) 1:(1,0) 2:(0,1) 3:(1,1); also the decoder's tie-break order.
  int index() const { return k_v + 2 * k_t; }
  static HomologyClass from_index(int i) { return {i & 1, (i >> 1) & 1}; }
  friend HomologyClass operator^(HomologyClass a, HomologyClass b) {
    return {a.k_v ^ b.k_v, a.k_t ^ b.k_t};
  }
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

TorusLattice build_torus(int L);

// Sites touched by an odd number of chain edges, ascending.
std::vector<int> boundary(const ChainZ2& chain, const TorusLattice& lattice);

HomologyClass homology_class(const ChainZ2& closed_chain, const TorusLattice& lattice);

// Straight non-contractible loops: first is the row-0 horizontal cycle, class
// (1,0); second is the column-0 vertical cycle, class (0,1).
std::pair<ChainZ2, ChainZ2> logical_representatives(const TorusLattice& lattice);

// Representative D_k of class k (index order as HomologyClass::index).
ChainZ2 logical_operator(const TorusLattice& lattice, HomologyClass k);

ChainZ2 plaquette_chain(const TorusLattice& lattice, int p);

}  // namespace glassbridge
