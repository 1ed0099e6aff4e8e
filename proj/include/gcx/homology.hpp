#pragma once
// Cochain complexes of decorated graphs and their equivariant cohomology over Q.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcx/famod.hpp"
#include "gcx/graphgen.hpp"
#include "gcx/symcore.hpp"

namespace gcx {

// Sparse integer matrix, column-major.
struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> col;  // sorted by row
    std::size_t nnz() const;
};

std::size_t rank_mod_p(const SparseMatrix& m, std::uint64_t p);
std::size_t rank_exact(const SparseMatrix& m);

struct RankResult {
    std::size_t rank = 0;
    std::vector<std::uint64_t> primes;
    bool exact = false;     // fraction-free fallback was needed
    bool disagreed = false; // the primes did not agree
};
RankResult sparse_rank(const SparseMatrix& m);

// Deterministic primes just below 2^62.
const std::vector<std::uint64_t>& rank_primes();
bool is_prime_u64(std::uint64_t n);

// One decoration scheme placed at a degree offset inside a total complex.
struct Block {
    DecorScheme scheme;
    int offset = 0;
};

enum class BlockMap { None, Contraction, Pieri };

// Tot of a short sequence of graph complexes linked by maps on the decoration.
struct ComplexPlan {
    std::vector<Block> blocks;  // increasing offset; the map goes blocks[i] -> blocks[i+1]
    BlockMap map = BlockMap::None;
    std::string str() const;
};

// Integer combination of plans whose sum is the complex of `spec`; (g,n) fixes the
// length of the resolution used for Tilde.
struct VirtualPlan {
    std::vector<std::pair<std::int64_t, ComplexPlan>> terms;
    bool is_virtual() const { return terms.size() != 1 || terms[0].first != 1; }
};
VirtualPlan plan_for(const FAModuleSpec& spec, int g = 0, int n = 0);

// s_lambda as an integer combination of h_mu (resp. e_mu).
std::map<Partition, std::int64_t> schur_in_h(const Partition& lambda);
std::map<Partition, std::int64_t> schur_in_e(const Partition& lambda);

struct TotGenerator {
    int block = 0;
    std::string code;
};

struct BuiltComplex {
    int g = 0, n = 0;
    std::vector<int> leg_colors;
    Variant variant = Variant::Full;
    int min_degree = 0;  // total degree of gens[0]
    std::vector<std::vector<TotGenerator>> gens;
    std::vector<SparseMatrix> D;  // D[i]: degree min+i -> min+i+1
    std::size_t explored = 0;
    std::size_t entries = 0;
    int max_degree() const { return min_degree + static_cast<int>(gens.size()) - 1; }
    std::size_t dim(int degree) const;
};

BuiltComplex build_complex(const ComplexPlan& plan, int g, int n, const std::vector<int>& leg_colors, Variant variant,
                           const Budget& budget, int workers, bool with_differential = true);

// Hard gate: throws ConsistencyError unless consecutive differentials compose to zero.
void check_d_squared(const BuiltComplex& c);
// Legs must all be distinct; checks that each adjacent leg transposition commutes with D.
void check_equivariance(const ComplexPlan& plan, const BuiltComplex& c);

struct Cohomology {
    std::map<int, std::size_t> dims;
    std::vector<std::uint64_t> primes;
    bool exact_fallback = false;
};
Cohomology complex_cohomology(const BuiltComplex& c, int workers = 1);

struct CohomologyOptions {
    Variant variant = Variant::Full;
    Budget budget;
    int workers = 1;
    bool gates = true;             // d^2 and equivariance checks
    bool use_vanishing_shortcut = true;
    bool chain_only = false;       // skip ranks, report chain-level characters only
};

struct CohomologyReport {
    FAModuleSpec spec;
    int g = 0, n = 0;
    Variant variant = Variant::Full;
    std::map<int, SymFunction> cohomology;  // Schur basis, per degree
    std::map<int, SymFunction> chains;      // Schur basis, per degree
    SymFunction euler;                      // alternating sum over degrees of the chains
    bool virtual_combination = false;
    bool shortcut = false;                  // vanishing predicate fired, nothing built
    std::vector<std::string> plans;
    std::vector<std::uint64_t> primes;
    bool exact_fallback = false;
    std::size_t generators = 0, explored = 0, entries = 0;
    mpz_class dimension(int degree) const;
};

CohomologyReport cohomology(const FAModuleSpec& spec, int g, int n, const CohomologyOptions& opt = {});

// Prediction that the complex of C_lambda vanishes identically.
bool predicts_vanishing(const FAModuleSpec& spec, int g, int n);

// Dimension of the chain space of G_lambda(g,n) (distinct legs) in a fixed degree,
// from skeleton graphs and the induced character of C_lambda; independent of the
// labeled enumeration. Stops early at the first nonzero degree when `first_only`.
struct SkeletonCount {
    std::map<int, mpz_class> dims;
    bool complete = true;
};
SkeletonCount skeleton_chain_dims(const Partition& lambda, int g, int n, const Budget& budget, bool first_only);
// Dimension of the coinvariants of C_lambda(E_*) on one undecorated graph, with the
// orientation sign; throws BudgetExceeded when Aut(G) has more than `group_limit` elements.
mpz_class skeleton_coinvariants(const Partition& lambda, const Graph& G, std::size_t group_limit = 2000000);

}  // namespace gcx
