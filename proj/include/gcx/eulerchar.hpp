#pragma once
// Equivariant Euler characteristics of decorated graph complexes from the product
// formula over l >= 1 of ratios of U_l, evaluated in a truncated series ring.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gcx/famod.hpp"
#include "gcx/symcore.hpp"

namespace gcx {

// Scalar Laurent series sum_{k >= lo} c[k - lo] u^k, known up to u^T.
struct LaurentSeries {
    int lo = 0;
    int T = 0;
    std::vector<mpq_class> c;

    mpq_class at(int k) const;
    int valuation() const;  // T + 1 when zero
};

int mobius(int n);
// B_0..B_r with B_1 = -1/2.
const std::vector<mpq_class>& bernoulli(int r);

LaurentSeries series_E(int l, int T);       // (1/l) sum_{d|l} mu(l/d) u^{-d}
LaurentSeries series_lambda(int l, int T);  // u^l (1 - u^l) l
LaurentSeries series_inverse(const LaurentSeries& f);
LaurentSeries series_multiply(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_log(const LaurentSeries& f);  // f = 1 + O(u)

// Polynomials in p_1..p_D (p_d of weight d, total weight <= n_max) and
// w_1..w_k (w_i of degree <= cap_i), stored densely.
struct PolyRing {
    int n_max = 0;
    std::vector<int> caps;
    std::vector<Partition> pmon;  // p-monomials by index
    int wsize = 1;

    PolyRing(int n_max, std::vector<int> caps);
    std::size_t size() const { return pmon.size() * static_cast<std::size_t>(wsize); }
    int p_index(const Partition& mu) const;  // -1 if beyond n_max
    int w_index(const std::vector<int>& e) const;  // -1 beyond the caps
    std::vector<int> w_exponents(int wi) const;

    std::vector<std::vector<int>> pmul, wmul;  // index products, -1 when truncated
};

using Poly = std::vector<mpq_class>;

// Power series in u with coefficients in a PolyRing, known up to u^T.
struct Series {
    std::shared_ptr<const PolyRing> ring;
    int T = 0;
    std::vector<Poly> c;  // c[k] is the coefficient of u^k

    Series(std::shared_ptr<const PolyRing> r, int T);
    static Series constant(std::shared_ptr<const PolyRing> r, int T, const Poly& p);
    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series scaled(const LaurentSeries& s) const;  // s must be a power series
    Series exp() const;                            // requires c[0] == 0
    bool operator==(const Series& o) const;
};

Poly poly_zero(const PolyRing& r);
Poly poly_one(const PolyRing& r);
Poly poly_mul(const PolyRing& r, const Poly& a, const Poly& b);

// log U_l(X, u); X may depend on u.
Series log_U(const Series& X, int l);

// Table of S_n-equivariant Euler characteristics in the Schur basis.
struct ECTable {
    std::string source;
    int g_max = 0, n_max = 0, truncation = 0;
    bool conditional = false;  // depends on the vanishing hypothesis in genus 3
    std::map<std::pair<int, int>, SymFunction> cells;

    SymFunction at(int g, int n) const;  // throws std::out_of_range outside the table
    ECTable operator+(const ECTable& o) const;
    ECTable operator-(const ECTable& o) const;
    ECTable scaled(const mpq_class& c) const;
    ECTable shifted(int dg, const mpq_class& sign) const;  // cell (g,n) moves to (g+dg,n)

    std::string to_json() const;
    std::string to_csv() const;
    std::string to_text() const;  // aligned, one row per g
};

// The product over l of U_l(X_num)/U_l(X_den), with k w-variables truncated at `caps`.
struct GeneratingFunction {
    int g_max = 0, n_max = 0;
    std::vector<int> caps;
    std::shared_ptr<const PolyRing> ring;
    Series F;  // the product, including its constant 1

    GeneratingFunction(std::vector<int> caps, int g_max, int n_max);
    // Coefficient of w^e at u^(g+n), p-weight n, in the Schur basis.
    SymFunction extract(const std::vector<int>& e, int g, int n) const;
};

ECTable ec_general(const std::vector<int>& a, int g_max, int n_max);
ECTable ec_tilde(int a, int g_max, int n_max);
ECTable ec_two_column(int k, int l, int g_max, int n_max);
// Any module kind; general lambda through its expansion in elementary products.
ECTable ec_module(const FAModuleSpec& spec, int g_max, int n_max);

// Hodge weight (k,0) compactly supported Euler characteristics of M_{g,n}.
struct WeightTables {
    ECTable first, second, total;
};
WeightTables ec_weight_terms(int k, int g_max, int n_max, bool assume_conjecture);
ECTable ec_weight(int k, int g_max, int n_max, bool assume_conjecture);

}  // namespace gcx
