#include "orbitvqc/stategen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orbitvqc {

namespace {

std::vector<std::pair<int, int>> vertex_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            pairs.emplace_back(u, v);
        }
    }
    return pairs;
}

} // namespace

Graph::Graph(int n_vertices) : n_vertices_(n_vertices), adj_(n_vertices, 0) {
    if (n_vertices < 1 || n_vertices > 16) {
        throw std::invalid_argument("Graph supports 1..16 vertices");
    }
}

Graph::Graph(int n_vertices, const std::vector<std::pair<int, int>>& edges)
    : Graph(n_vertices) {
    for (const auto& [u, v] : edges) {
        add_edge(u, v);
    }
}

Graph Graph::from_edge_mask(int n_vertices, std::uint32_t mask) {
    Graph g(n_vertices);
    const auto pairs = vertex_pairs(n_vertices);
    if (mask >= (std::uint32_t{1} << pairs.size())) {
        throw std::invalid_argument("edge mask out of range");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask & (std::uint32_t{1} << i)) {
            g.add_edge(pairs[i].first, pairs[i].second);
        }
    }
    return g;
}

std::uint32_t Graph::edge_mask() const {
    const auto pairs = vertex_pairs(n_vertices_);
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (has_edge(pairs[i].first, pairs[i].second)) {
            mask |= std::uint32_t{1} << i;
        }
    }
    return mask;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_vertices_) {
        throw std::out_of_range("vertex out of range");
    }
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    adj_[u] |= std::uint32_t{1} << v;
    adj_[v] |= std::uint32_t{1} << u;
}

void Graph::toggle_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    adj_[u] ^= std::uint32_t{1} << v;
    adj_[v] ^= std::uint32_t{1} << u;
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[u] >> v) & 1u;
}

std::uint32_t Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_vertices_; ++u) {
        for (int v = u + 1; v < n_vertices_; ++v) {
            if (has_edge(u, v)) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

StateVector graph_state(const Graph& g) {
    const int n = g.n_vertices();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> amps(dim, cplx(std::pow(2.0, -n / 2.0), 0.0));
    // CZ along every edge; vertex v is qubit v+1, i.e. bit n-1-v.
    for (const auto& [u, v] : g.edges()) {
        detail::apply_cz_raw(amps, n - 1 - u, n - 1 - v);
    }
    return StateVector(n, std::move(amps));
}

Graph local_complement(const Graph& g, int v) {
    Graph out = g;
    const std::uint32_t nb = g.neighbors(v);
    for (int a = 0; a < g.n_vertices(); ++a) {
        if (!((nb >> a) & 1u)) {
            continue;
        }
        for (int b = a + 1; b < g.n_vertices(); ++b) {
            if ((nb >> b) & 1u) {
                out.toggle_edge(a, b);
            }
        }
    }
    return out;
}

GraphClassTable::GraphClassTable(std::array<GraphClass, 6> classes)
    : classes_(std::move(classes)) {
    class_by_mask_.fill(0);
    std::size_t total = 0;
    for (const GraphClass& c : classes_) {
        for (std::uint32_t mask : c.member_masks) {
            if (mask >= 64 || class_by_mask_[mask] != 0) {
                throw std::logic_error("graph class partition is inconsistent");
            }
            class_by_mask_[mask] = c.id;
        }
        total += c.member_masks.size();
    }
    if (total != 64) {
        throw std::logic_error("graph class partition does not cover all 64 graphs");
    }
}

const GraphClass& GraphClassTable::cls(int id) const {
    if (id < 1 || id > 6) {
        throw std::invalid_argument("class id must be in 1..6");
    }
    return classes_[id - 1];
}

int GraphClassTable::class_of(std::uint32_t edge_mask) const {
    if (edge_mask >= 64) {
        throw std::invalid_argument("edge mask out of range for n=4");
    }
    return class_by_mask_[edge_mask];
}

namespace {

std::uint32_t permute_mask(std::uint32_t mask, const std::array<int, 4>& perm) {
    Graph g = Graph::from_edge_mask(4, mask);
    Graph out(4);
    for (const auto& [u, v] : g.edges()) {
        out.add_edge(perm[u], perm[v]);
    }
    return out.edge_mask();
}

// Orbit of a representative under local complementation and relabeling.
std::vector<std::uint32_t> orbit_closure(std::uint32_t rep) {
    std::array<std::array<int, 4>, 24> perms;
    {
        std::array<int, 4> p{0, 1, 2, 3};
        int i = 0;
        do {
            perms[i++] = p;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    std::array<bool, 64> seen{};
    std::vector<std::uint32_t> frontier{rep}, members;
    seen[rep] = true;
    while (!frontier.empty()) {
        const std::uint32_t mask = frontier.back();
        frontier.pop_back();
        members.push_back(mask);
        const Graph g = Graph::from_edge_mask(4, mask);
        for (int v = 0; v < 4; ++v) {
            const std::uint32_t lc = local_complement(g, v).edge_mask();
            if (!seen[lc]) {
                seen[lc] = true;
                frontier.push_back(lc);
            }
        }
        for (const auto& perm : perms) {
            const std::uint32_t pm = permute_mask(mask, perm);
            if (!seen[pm]) {
                seen[pm] = true;
                frontier.push_back(pm);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

GraphClassTable build_four_qubit_classes() {
    // Representatives as edge lists; class 5 uses the 4-path.
    const std::vector<std::vector<std::pair<int, int>>> reps = {
        {},                                 // 1: empty
        {{0, 1}},                           // 2: one edge
        {{0, 1}, {2, 3}},                   // 3: two disjoint edges
        {{0, 1}, {0, 2}},                   // 4: 3-star plus isolated vertex
        {{0, 1}, {1, 2}, {2, 3}},           // 5: path
        {{0, 1}, {0, 2}, {0, 3}},           // 6: star (GHZ_4)
    };
    const std::array<std::size_t, 6> expected_counts = {1, 6, 3, 16, 33, 5};

    std::array<GraphClass, 6> classes;
    for (int i = 0; i < 6; ++i) {
        GraphClass c;
        c.id = i + 1;
        c.representative_mask = Graph(4, reps[i]).edge_mask();
        c.member_masks = orbit_closure(c.representative_mask);
        if (c.member_masks.size() != expected_counts[i]) {
            throw std::logic_error("class " + std::to_string(c.id) +
                                   " has unexpected orbit size " +
                                   std::to_string(c.member_masks.size()));
        }
        classes[i] = std::move(c);
    }
    return GraphClassTable(std::move(classes));
}

} // namespace

const GraphClassTable& enumerate_four_qubit_classes() {
    static const GraphClassTable table = build_four_qubit_classes();
    return table;
}

namespace {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

// Global phase fixed so the first entry of nonnegligible magnitude is real
// and positive; Cliffords differing only by phase then compare equal.
Mat2 phase_canonical(const Mat2& m) {
    const cplx entries[4] = {m.m00, m.m01, m.m10, m.m11};
    for (const cplx& e : entries) {
        if (std::abs(e) > 1e-8) {
            const cplx ph = std::conj(e / std::abs(e));
            return {m.m00 * ph, m.m01 * ph, m.m10 * ph, m.m11 * ph};
        }
    }
    throw std::logic_error("zero matrix cannot be phase-normalized");
}

bool mat_close(const Mat2& a, const Mat2& b) {
    return std::abs(a.m00 - b.m00) < 1e-9 && std::abs(a.m01 - b.m01) < 1e-9 &&
           std::abs(a.m10 - b.m10) < 1e-9 && std::abs(a.m11 - b.m11) < 1e-9;
}

std::vector<Mat2> build_clifford_table() {
    const double r = 1.0 / std::sqrt(2.0);
    const Mat2 h{{r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0}};
    const Mat2 s{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
    const Mat2 id{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};

    std::vector<Mat2> table{phase_canonical(id)};
    // Breadth-first closure under left-multiplication by the generators.
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (const Mat2* gen : {&h, &s}) {
            const Mat2 candidate = phase_canonical(mat_mul(*gen, table[i]));
            const bool known =
                std::any_of(table.begin(), table.end(), [&](const Mat2& m) {
                    return mat_close(m, candidate);
                });
            if (!known) {
                table.push_back(candidate);
            }
        }
    }
    if (table.size() != 24) {
        throw std::logic_error("single-qubit Clifford closure size " +
                               std::to_string(table.size()) + ", expected 24");
    }
    return table;
}

} // namespace

const std::vector<Mat2>& single_qubit_clifford_table() {
    static const std::vector<Mat2> table = build_clifford_table();
    return table;
}

Gate1Q random_single_qubit_clifford(Rng& rng) {
    const auto& table = single_qubit_clifford_table();
    return Gate1Q::unitary(table[rng.uniform_index(table.size())]);
}

std::vector<Gate1Q> random_local_clifford(int n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    std::vector<Gate1Q> ops;
    ops.reserve(n);
    for (int q = 0; q < n; ++q) {
        ops.push_back(random_single_qubit_clifford(rng));
    }
    return ops;
}

Gate1Q random_haar_u2(Rng& rng) {
    while (true) {
        const cplx a(rng.normal(), rng.normal());
        const cplx b(rng.normal(), rng.normal());
        const cplx c(rng.normal(), rng.normal());
        const cplx d(rng.normal(), rng.normal());
        // Gram-Schmidt on the columns; positive-diagonal R makes Q Haar.
        const double n1 = std::sqrt(std::norm(a) + std::norm(c));
        if (n1 < 1e-12) {
            continue;
        }
        const cplx q00 = a / n1, q10 = c / n1;
        const cplx proj = std::conj(q00) * b + std::conj(q10) * d;
        const cplx r01 = b - proj * q00, r11 = d - proj * q10;
        const double n2 = std::sqrt(std::norm(r01) + std::norm(r11));
        if (n2 < 1e-12) {
            continue;
        }
        return Gate1Q::unitary({q00, r01 / n2, q10, r11 / n2});
    }
}

StateVector random_pure_state(int n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    for (cplx& a : amps) {
        a = cplx(rng.normal(), rng.normal());
    }
    return StateVector(n, std::move(amps));
}

namespace {

StateVector three_qubit_from_indices(const std::vector<std::size_t>& indices) {
    std::vector<cplx> amps(8, cplx(0.0, 0.0));
    const double v = 1.0 / std::sqrt(static_cast<double>(indices.size()));
    for (std::size_t i : indices) {
        amps[i] = cplx(v, 0.0);
    }
    return StateVector(3, std::move(amps));
}

} // namespace

const std::vector<std::string>& three_qubit_state_names() {
    static const std::vector<std::string> names = {
        "separable", "bisep-AB-C", "bisep-A-BC", "bisep-B-AC", "W", "GHZ"};
    return names;
}

StateVector named_three_qubit_state(const std::string& name) {
    if (name == "separable") {
        return three_qubit_from_indices({0}); // |000>
    }
    if (name == "bisep-AB-C") {
        return three_qubit_from_indices({0, 6}); // |EPR> (x) |0>
    }
    if (name == "bisep-A-BC") {
        return three_qubit_from_indices({0, 3}); // |0> (x) |EPR>
    }
    if (name == "bisep-B-AC") {
        return three_qubit_from_indices({0, 5}); // (|000> + |101>)/sqrt(2)
    }
    if (name == "W") {
        return three_qubit_from_indices({1, 2, 4});
    }
    if (name == "GHZ") {
        return three_qubit_from_indices({0, 7});
    }
    throw std::invalid_argument("unknown three-qubit state: " + name);
}

} // namespace orbitvqc
