#pragma once
// Hodge weight (k,0) reports: holomorphic forms in genus <= 2, the weight-zero data
// assembly in arity 0, and gr_{k,0} H_c of M_{g,n} from two graph complexes.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcx/famod.hpp"
#include "gcx/graphgen.hpp"
#include "gcx/symcore.hpp"

namespace gcx {

inline constexpr const char* kGenus3Hypothesis = "H^{19,0}(M-bar_{3,15}) = 0";

// FA-module of H^{k,0}(M-bar_{g,*}); module is empty when the forms vanish.
struct FormsClass {
    std::optional<FAModuleSpec> module;
    bool conditional = false;  // relies on the genus 3 vanishing hypotheses
    std::string hypothesis;
};
FormsClass classify_forms(int k, int g);

// Dimension of level one cusp forms of weight k+1.
int cusp_forms_N(int k);

// H^{k,0}(M-bar_{g,n}) for g in {1,2}.
IrrDecomposition forms_dimension(int g, int k, int n);

struct CoverageError : std::runtime_error {
    std::vector<std::pair<int, int>> missing;
    CoverageError(const std::string& what, std::vector<std::pair<int, int>> m)
        : std::runtime_error(what), missing(std::move(m)) {}
};

// W_0 H_c^*(M_{g,n}) by (g,n), then by degree.
struct W0Dataset {
    std::string source;
    bool synthetic = false;
    int coverage_bound = -1;  // cells with 3(g-1)+n <= bound are covered; -1: only listed cells
    std::map<std::pair<int, int>, std::map<int, IrrDecomposition>> cells;

    bool covers(int g, int n) const;
    // Empty map for covered cells without a record; throws CoverageError otherwise.
    std::map<int, IrrDecomposition> at(int g, int n) const;

    static W0Dataset parse(const std::string& json_text);
    static W0Dataset load(const std::string& path);
    std::string to_json() const;
};

struct N0Result {
    std::map<int, mpz_class> dims;           // by cohomological degree
    std::vector<std::pair<int, int>> cells;  // dataset cells that entered
};

// Cohomology of G_lambda(g,0) from weight-zero data; throws CoverageError listing
// the uncovered cells.
N0Result n0_assembly(const Partition& lambda, int g, const W0Dataset& data);
// Cells (g',n') of the dataset that can contribute to G_lambda(g,0) with |lambda| = N.
std::vector<std::pair<int, int>> n0_required_cells(int N, int g);

struct HodgeSummand {
    FAModuleSpec spec;
    int g = 0, n = 0;                        // arguments of the graph complex
    std::string method;                      // vanishing, tilde-top, n0-assembly, direct, gap
    bool complete = false;
    std::map<int, SymFunction> cohomology;   // by degree of the graph complex
    std::string note;
};

struct HodgeReport {
    int k = 0, g = 0, n = 0;
    bool conditional = false;
    std::string hypothesis;
    std::vector<HodgeSummand> summands;
    std::map<int, SymFunction> degrees;  // gr_{k,0} H_c^j, Schur basis
    bool complete = false;
    SymFunction euler;
    std::optional<SymFunction> expected_euler;  // generating function value, when checked

    mpz_class dimension(int j) const;
    std::string to_json() const;
};

struct HodgeOptions {
    Budget budget;
    int workers = 1;
    bool assume_conjecture = false;
    Variant variant = Variant::Full;
    const W0Dataset* w0 = nullptr;
    bool check_euler = true;
};

// The two graph complexes whose cohomology gives gr_{k,0} H_c, with their (g,n).
std::vector<std::pair<FAModuleSpec, std::pair<int, int>>> hodge_constituents(int k, int g, int n);

// Throws ConsistencyError when a complete report disagrees with ec_weight.
HodgeReport hodge_weight(int k, int g, int n, const HodgeOptions& opt = {});

}  // namespace gcx
