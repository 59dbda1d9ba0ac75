#include "glassbridge/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace glassbridge {

namespace {
int wrap(int x, int L) { return ((x % L) + L) % L; }
}  // namespace

TorusLattice::TorusLattice(int L) : L_(L) {
  if (L < 2) throw std::invalid_argument("torus size L must be at least 2");
  const int n = L * L;
  endpoints_.resize(2 * n);
  stars_.resize(n);
  plaquettes_.resize(n);
  corners_.resize(n);
  edge_plaquettes_.resize(2 * n);
  dual_edge_.resize(2 * n);

  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const int s = site(r, c);
      const int h = edge(s, Direction::horizontal);
      const int v = edge(s, Direction::vertical);
      endpoints_[h] = {s, site(r, c + 1)};
      endpoints_[v] = {s, site(r + 1, c)};
      stars_[s] = {h, v, edge(site(r, c - 1), Direction::horizontal),
                   edge(site(r - 1, c), Direction::vertical)};
      plaquettes_[s] = {h, edge(site(r + 1, c), Direction::horizontal), v,
                        edge(site(r, c + 1), Direction::vertical)};
      corners_[s] = {s, site(r, c + 1), site(r + 1, c), site(r + 1, c + 1)};
      // h(r,c) lies between plaquettes (r-1,c) and (r,c); v(r,c) between
      // (r,c-1) and (r,c).
      edge_plaquettes_[h] = {site(r, c), site(r - 1, c)};
      edge_plaquettes_[v] = {site(r, c), site(r, c - 1)};
      dual_edge_[h] = edge(site(r - 1, c), Direction::vertical);
      dual_edge_[v] = edge(site(r, c - 1), Direction::horizontal);
    }
  }
  for (int r = 0; r < L; ++r) cut_v_.push_back(edge(site(r, 0), Direction::horizontal));
  for (int c = 0; c < L; ++c) cut_h_.push_back(edge(site(0, c), Direction::vertical));
}

int TorusLattice::site(int r, int c) const { return wrap(r, L_) * L_ + wrap(c, L_); }

std::string TorusLattice::to_json() const {
  nlohmann::ordered_json j;
  j["L"] = L_;
  auto& list = j["edge_list"] = nlohmann::ordered_json::array();
  for (int e = 0; e < num_edges(); ++e)
    list.push_back({edge_site(e), edge_direction(e) == Direction::horizontal ? "h" : "v"});
  return j.dump();
}

ChainZ2 ChainZ2::from_edges(int num_edges, const std::vector<int>& edges) {
  ChainZ2 c(num_edges);
  for (int e : edges) {
    if (e < 0 || e >= num_edges) throw std::out_of_range("edge index out of range");
    c.toggle(e);
  }
  return c;
}

int ChainZ2::weight() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<int> ChainZ2::edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < bits_.size(); ++e)
    if (bits_[e]) out.push_back(static_cast<int>(e));
  return out;
}

ChainZ2& ChainZ2::operator^=(const ChainZ2& other) {
  if (other.bits_.size() != bits_.size()) throw std::invalid_argument("chain size mismatch");
  for (std::size_t e = 0; e < bits_.size(); ++e) bits_[e] ^= other.bits_[e];
  return *this;
}

TorusLattice build_torus(int L) { return TorusLattice(L); }

std::vector<int> boundary(const ChainZ2& chain, const TorusLattice& lattice) {
  if (chain.num_edges() != lattice.num_edges())
    throw std::invalid_argument("chain does not match lattice");
  std::vector<std::uint8_t> odd(static_cast<std::size_t>(lattice.num_sites()), 0);
  for (int e = 0; e < lattice.num_edges(); ++e) {
    if (!chain.contains(e)) continue;
    for (int s : lattice.endpoints(e)) odd[static_cast<std::size_t>(s)] ^= 1;
  }
  std::vector<int> out;
  for (int s = 0; s < lattice.num_sites(); ++s)
    if (odd[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

HomologyClass homology_class(const ChainZ2& closed_chain, const TorusLattice& lattice) {
  if (!boundary(closed_chain, lattice).empty())
    throw std::invalid_argument("homology class requires a closed chain");
  HomologyClass k;
  for (int e : lattice.cut_v()) k.k_v ^= closed_chain.contains(e) ? 1 : 0;
  for (int e : lattice.cut_h()) k.k_t ^= closed_chain.contains(e) ? 1 : 0;
  return k;
}

std::pair<ChainZ2, ChainZ2> logical_representatives(const TorusLattice& lattice) {
  const int L = lattice.size();
  ChainZ2 lv(lattice.num_edges());
  ChainZ2 lt(lattice.num_edges());
  for (int i = 0; i < L; ++i) {
    lv.toggle(lattice.edge(lattice.site(0, i), Direction::horizontal));
    lt.toggle(lattice.edge(lattice.site(i, 0), Direction::vertical));
  }
  return {lv, lt};
}

ChainZ2 logical_operator(const TorusLattice& lattice, HomologyClass k) {
  auto [lv, lt] = logical_representatives(lattice);
  ChainZ2 d(lattice.num_edges());
  if (k.k_v) d ^= lv;
  if (k.k_t) d ^= lt;
  return d;
}

ChainZ2 plaquette_chain(const TorusLattice& lattice, int p) {
  ChainZ2 c(lattice.num_edges());
  for (int e : lattice.plaquette(p)) c.toggle(e);
  return c;
}

}  // namespace glassbridge
