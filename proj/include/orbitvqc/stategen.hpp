#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbitvqc/rng.hpp"
#include "orbitvqc/statevec.hpp"

namespace orbitvqc {

// Undirected simple graph on vertices 0..n-1, adjacency kept as bitmasks.
class Graph {
  public:
    explicit Graph(int n_vertices);
    Graph(int n_vertices, const std::vector<std::pair<int, int>>& edges);

    // Edge bits ordered lexicographically: (0,1), (0,2), ..., (n-2,n-1).
    static Graph from_edge_mask(int n_vertices, std::uint32_t mask);
    std::uint32_t edge_mask() const;

    void add_edge(int u, int v);
    void toggle_edge(int u, int v);
    bool has_edge(int u, int v) const;

    int n_vertices() const { return n_vertices_; }
    std::uint32_t neighbors(int v) const;
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph& other) const = default;

  private:
    void check_vertex(int v) const;

    int n_vertices_;
    std::vector<std::uint32_t> adj_;
};

struct GraphClass {
    int id = 0;                               // 1..6
    std::uint32_t representative_mask = 0;    // quadratic monomials of f_G
    std::vector<std::uint32_t> member_masks;  // all graphs in the class
};

// The six equivalence classes of four-qubit graph states.
class GraphClassTable {
  public:
    explicit GraphClassTable(std::array<GraphClass, 6> classes);

    const GraphClass& cls(int id) const;       // id in 1..6
    int class_of(std::uint32_t edge_mask) const;
    const std::array<GraphClass, 6>& classes() const { return classes_; }

  private:
    std::array<GraphClass, 6> classes_;
    std::array<int, 64> class_by_mask_;
};

// |psi_G> = prod_e CZ_e |+>^n
StateVector graph_state(const Graph& g);

// Partition of all 64 four-vertex graphs into the six classes, computed by
// closing the class representatives under local complementation and vertex
// permutation. Counts are checked against [1, 6, 3, 16, 33, 5].
const GraphClassTable& enumerate_four_qubit_classes();

// Toggles every edge inside the neighborhood of v; an involution.
Graph local_complement(const Graph& g, int v);

// The 24 single-qubit Cliffords modulo global phase, generated by closing
// {H, S} under multiplication. Order is fixed across runs.
const std::vector<Mat2>& single_qubit_clifford_table();

Gate1Q random_single_qubit_clifford(Rng& rng);
std::vector<Gate1Q> random_local_clifford(int n, Rng& rng);

// Haar-uniform U(2) via Gram-Schmidt on a complex Gaussian matrix.
Gate1Q random_haar_u2(Rng& rng);

// 2^n i.i.d. standard complex Gaussian amplitudes, normalized.
StateVector random_pure_state(int n, Rng& rng);

// name in {separable, bisep-AB-C, bisep-A-BC, bisep-B-AC, W, GHZ}
StateVector named_three_qubit_state(const std::string& name);
const std::vector<std::string>& three_qubit_state_names();

} // namespace orbitvqc
