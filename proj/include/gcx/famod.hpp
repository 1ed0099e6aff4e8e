#pragma once
// FA-module data: arity-wise representations, surjection action on subset summands,
// and the contraction maps between the modules C_{1^j}.

#include <string>
#include <vector>

#include "gcx/symcore.hpp"

namespace gcx {

struct FAModuleSpec {
    enum class Kind { C, Tilde, Product };
    Kind kind = Kind::C;
    Partition lambda;    // Kind::C
    int m = 0;           // Kind::Tilde
    std::vector<int> a;  // Kind::Product

    static FAModuleSpec C(const Partition& l);
    static FAModuleSpec Tilde(int m);
    static FAModuleSpec Product(std::vector<int> a);

    int weight() const;
    std::string str() const;  // "C(2,2)", "Tilde(17)", "Product(3,2)"
    bool operator==(const FAModuleSpec& o) const;
};

IrrDecomposition c_arity(const FAModuleSpec& spec, int n);

// Subset summands of C_lambda(r): all |lambda|-subsets of {0..r-1} in lexicographic order.
struct SummandBasis {
    int r = 0;
    int weight = 0;
    std::vector<std::vector<int>> subsets;
    int index_of(const std::vector<int>& sorted_subset) const;
};
SummandBasis summand_basis(int weight, int r);

// Action of a surjection f: {0..r-1} -> {0..r'-1} on subset summands.
// For each source summand A: target index (or -1 when f is not injective on A) and the
// permutation relating sorted(A) to sorted(f(A)): perm[i] = position of f(A[i]) in f(A).
struct SummandMap {
    int r_src = 0, r_dst = 0;
    std::vector<int> target;
    std::vector<std::vector<int>> perm;
    // Coefficient on a sign-representation summand (C_{1^N}): sign(perm), or 0.
    int sign_coefficient(int src) const;
};

SummandMap surjection_action(int weight, int r, const std::vector<int>& f);
// Collapse the block B (subset of {0..r-1}) to one point placed at min(B); other points keep order.
SummandMap collapse_action(const Partition& lambda, int r, const std::vector<int>& block);

// Sparse integer matrix, column-major by source: cols[src] = list of (row, value).
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, long>>> col;
    std::vector<long> dense() const;  // row-major
};

// Contraction C_{1^{j+1}}(n) -> C_{1^j}(n): omega_{x_0}^...^omega_{x_j} -> sum_t (-1)^t (drop x_t).
IntMatrix contraction_matrix(int j, int n);

struct ResolutionStep {
    FAModuleSpec module;  // C(1^j)
    int j = 0;
};
// 0 -> Tilde(m) -> C_{1^{m-1}} -> ... -> C_{1^0} -> 0, in that order.
std::vector<ResolutionStep> tilde_resolution(int m);

}  // namespace gcx
