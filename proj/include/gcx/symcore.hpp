#pragma once
// Partitions, symmetric group characters and symmetric functions.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gcx {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive

    Partition() = default;
    Partition(std::initializer_list<int> p);
    explicit Partition(std::vector<int> p);

    int size() const;
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }
    int operator[](int i) const { return i < length() ? parts[i] : 0; }

    Partition conjugate() const;
    bool contains(const Partition& mu) const;  // Young diagram inclusion
    bool is_single_column() const;
    int columns() const { return parts.empty() ? 0 : parts[0]; }

    std::string str() const;  // "3,1,1"; empty partition -> ""
    static Partition parse(const std::string& s);

    // 1^k and (n)
    static Partition column(int k);
    static Partition row(int n);

    auto operator<=>(const Partition&) const = default;
};

// All partitions of n, in reverse lexicographic order ((n) first).
const std::vector<Partition>& partitions_of(int n);

bool dominates(const Partition& a, const Partition& b);

// z_mu = prod i^{m_i} m_i!
mpz_class z_factor(const Partition& mu);
mpz_class factorial(int n);
mpz_class binomial(int n, int k);

mpz_class hook_dimension(const Partition& lambda);

// chi_lambda(mu) by Murnaghan-Nakayama; memoized, thread-safe.
std::int64_t character(const Partition& lambda, const Partition& mu);

// Kostka number K_{lambda,mu}; mu must be a partition of |lambda|.
std::int64_t kostka(const Partition& lambda, const Partition& mu);

struct IrrDecomposition {
    int n = 0;
    std::map<Partition, std::int64_t> terms;

    void add(const Partition& p, std::int64_t m);
    mpz_class dimension() const;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const IrrDecomposition& o) const { return n == o.n && terms == o.terms; }
};

// Littlewood-Richardson coefficient c^nu_{alpha,beta}.
std::int64_t lr_coefficient(const Partition& alpha, const Partition& beta, const Partition& nu);
IrrDecomposition induction_product(const Partition& alpha, const Partition& beta);
IrrDecomposition induction_product(const IrrDecomposition& a, const IrrDecomposition& b);

enum class Basis { Schur, PowerSum };

// Homogeneous or inhomogeneous symmetric function with rational coefficients.
// Power-sum monomials p_mu are indexed by the partition mu.
struct SymFunction {
    Basis basis = Basis::Schur;
    std::map<Partition, mpq_class> coeffs;

    void add(const Partition& p, const mpq_class& c);
    bool is_zero() const { return coeffs.empty(); }
    int max_degree() const;
    SymFunction operator+(const SymFunction& o) const;
    SymFunction operator-(const SymFunction& o) const;
    SymFunction operator*(const mpq_class& c) const;
    bool operator==(const SymFunction& o) const { return basis == o.basis && coeffs == o.coeffs; }
    bool integral() const;
    // Homogeneous part of degree n.
    SymFunction degree_part(int n) const;
    std::string str() const;  // "2 s_{2,1} - s_{3}"
};

inline constexpr int kMaxConvertDegree = 26;

// Throws std::domain_error when a degree exceeds max_degree.
SymFunction convert(const SymFunction& f, Basis target, int max_degree = kMaxConvertDegree);

// Product in the power-sum basis (both arguments in power sums).
SymFunction powersum_multiply(const SymFunction& a, const SymFunction& b);

SymFunction to_symfunction(const IrrDecomposition& d);
// Schur expansion with nonnegative integer coefficients -> decomposition; throws otherwise.
IrrDecomposition to_decomposition(const SymFunction& schur, int n);

// Schur coefficients from monomial-basis coefficients of a degree-n function.
std::map<Partition, mpq_class> monomial_to_schur(const std::map<Partition, mpq_class>& mono, int n);

// e_r[h_2] = V_{1^r} o V_2 as an S_{2r}-representation.
IrrDecomposition plethysm_wedge_sym2(int r);

int r_lambda(const Partition& lambda);

}  // namespace gcx
