#pragma once
// Decorated graphs with a special vertex, canonical forms with orientation signs,
// blown-up components and enumeration of generators.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/famod.hpp"

namespace gcx {

// One omega color class of the decoration: `size` omega half-edges, permuted either
// by the sign character (alternating) or trivially.
struct OmegaClass {
    int size = 0;
    bool alternating = true;
    bool operator==(const OmegaClass&) const = default;
};

struct DecorScheme {
    std::vector<OmegaClass> classes;

    static DecorScheme alternating(const std::vector<int>& sizes);  // C_{1^a1} x ... x C_{1^ak}
    static DecorScheme symmetric(const std::vector<int>& sizes);    // Ind from a Young subgroup of 1
    int weight() const;
    int num_classes() const { return static_cast<int>(classes.size()); }
    std::string str() const;
    bool operator==(const DecorScheme&) const = default;
};

enum class Variant { Full, Star, Hat };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

inline constexpr std::uint8_t kEps = 0;         // epsilon label at *
inline constexpr std::uint8_t kNoLabel = 255;   // half-edges at black vertices

struct HalfEdge {
    int vertex = 0;
    int edge = -1;        // -1 for a numbered leg
    int leg_color = 0;    // legs only
    int label = kNoLabel; // at *: 0 = epsilon, 1 + c = omega of class c
    int wedge = 0;        // position inside its omega class
};

struct Edge {
    int a = -1, b = -1;  // half-edge ids
};

// Vertex 0 is the special vertex *.
struct Graph {
    int nv = 1;
    std::vector<int> genus{0};
    std::vector<HalfEdge> he;
    std::vector<Edge> edges;  // order = orientation

    int other(int h) const;
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_legs() const;
    int total_genus() const;  // first Betti number + vertex genera
    std::vector<std::vector<int>> incidence() const;
    void check() const;       // throws std::logic_error on malformed data
};

struct CanonResult {
    std::string code;
    int sign = 1;      // relation of the input orientation to the canonical one
    bool null = false; // an automorphism acts by -1
    struct Aut {
        std::vector<int> vertex_perm;
        int sign = 1;
    };
    std::vector<Aut> auts;
};

CanonResult canonicalize(const Graph& G, bool want_auts = false);  // every omega class alternating
CanonResult canonicalize_with(const Graph& G, const DecorScheme& s, bool want_auts = false);
Graph decode(const std::string& code);

struct GraphKey {
    std::string code;
    int sign = 1;
    bool null = false;
    std::vector<CanonResult::Aut> auts;
};
GraphKey graph_key(const Graph& G);

// Automorphisms as half-edge permutations (h -> image of h).
std::vector<std::vector<int>> automorphism_generators(const Graph& G);
// Whole group; throws BudgetExceeded beyond `limit` elements.
std::vector<std::vector<int>> automorphism_group(const Graph& G, std::size_t limit = 2000000);
// Sign of an automorphism on the edge order times the omega orders of the alternating classes.
int automorphism_sign(const Graph& G, const std::vector<int>& phi, const DecorScheme& s);

// Blown-up components: * deleted, its half-edges become omega- or epsilon-legs.
struct BlownComponent {
    struct Leg {
        int vertex;       // -1: the component is a bare numbered leg or a bare *-loop
        int kind;         // 0 numbered, 1 omega, 2 epsilon
        int color = 0;    // numbered-leg color, or omega class
        int wedge = 0;
        int pair = -1;    // for a bare *-loop: index of the other end inside `legs`
        int leg_color = 0;  // for an omega/epsilon mark that is itself a numbered leg at *
        bool is_numbered_at_star = false;
    };
    int nv = 0;
    std::vector<int> genus;
    std::vector<std::pair<int, int>> edges;  // internal, local vertex ids
    std::vector<Leg> legs;
    int loop_order = 0;
    int n_numbered = 0, n_omega = 0, n_eps = 0;
    // Edge order data so that reattaching restores the orientation.
    std::vector<int> edge_ids;  // global edge index of each internal edge
    std::vector<int> mark_edge_ids;  // global edge index of each mark (-1 for legs at *)
};

int excess(const BlownComponent& c);
std::vector<BlownComponent> blow_up(const Graph& G);
Graph reattach(const std::vector<BlownComponent>& comps);
bool is_star_graph(const Graph& G);

struct Budget {
    std::size_t max_generators = 2000000;
    std::size_t max_matrix_entries = 50000000;
    double max_seconds = 3600.0;
};

struct BudgetExceeded : std::runtime_error {
    std::size_t partial = 0;
    BudgetExceeded(const std::string& what, std::size_t p) : std::runtime_error(what), partial(p) {}
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphParams {
    DecorScheme scheme;
    int g = 0;
    int n = 0;
    std::vector<int> leg_colors;  // legs per color, sums to n; empty = all legs distinct
    Variant variant = Variant::Full;
    bool keep_null = false;  // also list graphs killed by an odd automorphism

    std::vector<int> colors() const;  // color of each leg 0..n-1
};

// Total excess 3g + 2n - 2N is below the bound guaranteeing nonzero complexes.
bool vanishing_predicate(int N, int r_lambda_value, int g, int n);
int top_degree(int g, int n, int N);

// Non-null canonical generators per degree, sorted by code.
struct GraphBasis {
    std::vector<std::vector<std::string>> by_degree;
    std::size_t explored = 0;  // graphs visited including null ones
    std::size_t total() const;
    int max_degree() const { return static_cast<int>(by_degree.size()) - 1; }
};

GraphBasis enumerate_all(const GraphParams& p, const Budget& budget = {}, int workers = 1);
std::vector<GraphKey> enumerate_basis(const GraphParams& p, int degree, const Budget& budget = {}, int workers = 1);
// Breadth-first enumeration that reports each finished degree to `visit` and stops
// as soon as it returns true.
GraphBasis enumerate_until(const GraphParams& p,
                           const std::function<bool(int degree, const std::vector<std::string>& codes)>& visit,
                           const Budget& budget = {}, int workers = 1);
// Cheap existence test: some non-null generator exists in some degree.
bool has_generator(const GraphParams& p, const Budget& budget = {});

// Differential terms of a graph (unnormalized, coefficient applied before canonicalization).
struct Term {
    Graph graph;
    int coeff;
};
std::vector<Term> star_splits(const Graph& G, Variant v, int max_genus = 0);
std::vector<Term> black_splits(const Graph& G, Variant v);
std::vector<Term> loop_terms(const Graph& G);
std::vector<Term> differential_terms(const Graph& G, Variant v);

// Seed graphs: * with g loops and n legs, all omega/epsilon labelings.
std::vector<Graph> roses(const DecorScheme& s, int g, const std::vector<int>& leg_color_of);

// Number of worker threads from GCX_WORKERS or hardware concurrency.
int default_workers();

}  // namespace gcx
