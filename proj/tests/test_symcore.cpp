#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gcx/symcore.hpp"

using namespace gcx;

namespace {

// Cycle type of a permutation.
Partition cycle_type(const std::vector<int>& p) {
    std::vector<int> seen(p.size(), 0), parts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        parts.push_back(len);
    }
    return Partition(parts);
}

// Count standard Young tableaux by removing corners.
long count_syt(std::vector<int> shape) {
    while (!shape.empty() && shape.back() == 0) shape.pop_back();
    if (shape.empty()) return 1;
    long s = 0;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        bool corner = (i + 1 == shape.size()) || shape[i + 1] < shape[i];
        if (!corner) continue;
        shape[i]--;
        s += count_syt(shape);
        shape[i]++;
    }
    return s;
}

// <chi_a chi_b, chi_nu> over S_n by summation over the full group (via classes).
long inner_product_ind(const Partition& a, const Partition& b, const Partition& nu) {
    int n = nu.size();
    int na = a.size();
    // Ind character at mu = sum over ways to split mu into parts for S_na x S_nb
    mpq_class total = 0;
    for (const auto& mu : partitions_of(n)) {
        // average over S_n: sum_mu chi_ind(mu) chi_nu(mu) / z_mu
        // chi_ind(mu) = sum over (rho, sigma) with rho u sigma = mu of z_mu/(z_rho z_sigma) chi_a(rho) chi_b(sigma)
        mpq_class ind = 0;
        for (const auto& rho : partitions_of(na)) {
            std::vector<int> rest = mu.parts;
            bool ok = true;
            for (int x : rho.parts) {
                auto it = std::find(rest.begin(), rest.end(), x);
                if (it == rest.end()) {
                    ok = false;
                    break;
                }
                rest.erase(it);
            }
            if (!ok) continue;
            Partition sigma(rest);
            mpq_class c(z_factor(mu), z_factor(rho) * z_factor(sigma));
            ind += c * character(a, rho) * character(b, sigma);
        }
        total += ind * character(nu, mu) / mpq_class(z_factor(mu));
    }
    total.canonicalize();
    return total.get_num().get_si();
}

}  // namespace

TEST_CASE("hook dimension examples") {
    CHECK(hook_dimension(Partition::column(9)) == 1);
    CHECK(hook_dimension(Partition::row(7)) == 1);
    CHECK(hook_dimension(Partition::column(0)) == 1);
    CHECK(hook_dimension(Partition({2, 2, 2, 2, 2, 2, 2})) == count_syt({2, 2, 2, 2, 2, 2, 2}));
    CHECK(hook_dimension(Partition({2, 2, 2, 2, 2, 2, 2})) == 429);
    for (int n = 1; n <= 8; ++n)
        for (auto& l : partitions_of(n)) CHECK(hook_dimension(l) == count_syt(l.parts));
}

TEST_CASE("character examples") {
    CHECK(character({1, 1}, {2}) == -1);
    CHECK(character({2, 1}, {1, 1, 1}) == 2);
    CHECK(character({2, 1}, {3}) == -1);
    CHECK_THROWS(character({2, 1}, {2}));
}

TEST_CASE("characters match permutation brute force for the standard representation") {
    // chi_{(n-1,1)}(sigma) = fixed points - 1
    for (int n = 2; n <= 6; ++n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            int fix = 0;
            for (int i = 0; i < n; ++i) fix += p[i] == i;
            CHECK(character({n - 1, 1}, cycle_type(p)) == fix - 1);
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("irreducibility of characters up to size 6") {
    for (int n = 0; n <= 6; ++n)
        for (auto& l : partitions_of(n)) {
            mpq_class s = 0;
            for (auto& mu : partitions_of(n)) s += mpq_class(character(l, mu) * character(l, mu)) / z_factor(mu);
            CHECK(s == 1);
        }
}

TEST_CASE("induction products") {
    auto d = induction_product(Partition{1, 1}, Partition{});
    CHECK(d.terms.size() == 1);
    CHECK(d.terms.at(Partition{1, 1}) == 1);
    d = induction_product(Partition{1, 1}, Partition{2});
    CHECK(d.terms.size() == 2);
    CHECK(d.terms.at(Partition{3, 1}) == 1);
    CHECK(d.terms.at(Partition{2, 1, 1}) == 1);
    for (int k = 1; k <= 4; ++k)
        for (int l = 0; l <= 3; ++l) {
            auto e = induction_product(Partition::column(k + l), Partition::column(k));
            std::vector<int> two(k, 2);
            for (int i = 0; i < l; ++i) two.push_back(1);
            CHECK(e.terms.at(Partition(two)) == 1);
        }
}

TEST_CASE("Littlewood-Richardson agrees with character inner products") {
    for (int n = 1; n <= 7; ++n)
        for (int na = 0; na <= n; ++na)
            for (auto& a : partitions_of(na))
                for (auto& b : partitions_of(n - na))
                    for (auto& nu : partitions_of(n)) CHECK(lr_coefficient(a, b, nu) == inner_product_ind(a, b, nu));
}

TEST_CASE("induction product is commutative and associative") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int s[3];
        int tot = std::uniform_int_distribution<int>(0, 8)(rng);
        s[0] = std::uniform_int_distribution<int>(0, tot)(rng);
        s[1] = std::uniform_int_distribution<int>(0, tot - s[0])(rng);
        s[2] = tot - s[0] - s[1];
        Partition p[3];
        for (int i = 0; i < 3; ++i) {
            auto& all = partitions_of(s[i]);
            p[i] = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        }
        CHECK(induction_product(p[0], p[1]) == induction_product(p[1], p[0]));
        auto left = induction_product(induction_product(p[0], p[1]), induction_product(p[2], Partition{}));
        auto right = induction_product(induction_product(p[0], Partition{}), induction_product(p[1], p[2]));
        CHECK(left == right);
    }
}

TEST_CASE("basis conversion examples") {
    SymFunction p11;
    p11.basis = Basis::PowerSum;
    p11.add({1, 1}, 1);
    auto s = convert(p11, Basis::Schur);
    CHECK(s.coeffs.size() == 2);
    CHECK(s.coeffs.at(Partition{2}) == 1);
    CHECK(s.coeffs.at(Partition{1, 1}) == 1);

    SymFunction s11;
    s11.add({1, 1}, 1);
    auto p = convert(s11, Basis::PowerSum);
    CHECK(p.coeffs.at(Partition{1, 1}) == mpq_class(1, 2));
    CHECK(p.coeffs.at(Partition{2}) == mpq_class(-1, 2));

    // regular representation of S_3: p_1^3
    SymFunction reg;
    reg.basis = Basis::PowerSum;
    reg.add({1, 1, 1}, 1);
    auto r = convert(reg, Basis::Schur);
    CHECK(r.str() == "s_{1,1,1} + 2 s_{2,1} + s_{3}");
    SymFunction big;
    big.add(Partition::row(30), 1);
    CHECK_THROWS_AS(convert(big, Basis::PowerSum), std::domain_error);
}

TEST_CASE("basis conversion round trip on random functions") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        SymFunction f;
        f.basis = trial % 2 ? Basis::Schur : Basis::PowerSum;
        for (int t = 0; t < 6; ++t) {
            int n = std::uniform_int_distribution<int>(0, 8)(rng);
            auto& all = partitions_of(n);
            auto& mu = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
            f.add(mu, mpq_class(std::uniform_int_distribution<int>(-9, 9)(rng), std::uniform_int_distribution<int>(1, 7)(rng)));
        }
        Basis other = f.basis == Basis::Schur ? Basis::PowerSum : Basis::Schur;
        CHECK(convert(convert(f, other), f.basis) == f);
    }
}

TEST_CASE("plethysm of wedge over Sym2") {
    auto d1 = plethysm_wedge_sym2(1);
    CHECK(d1.terms.size() == 1);
    CHECK(d1.terms.at(Partition{2}) == 1);
    auto d2 = plethysm_wedge_sym2(2);
    CHECK(d2.terms.size() == 1);
    CHECK(d2.terms.at(Partition{3, 1}) == 1);
    for (int r = 0; r <= 5; ++r) {
        mpz_class want = factorial(2 * r) / (mpz_class(1) << r) / factorial(r);
        CHECK(plethysm_wedge_sym2(r).dimension() == want);
    }
}

namespace {

// r_lambda from the definition, with plethysm decompositions from a brute-force
// character computation: V_{1^r} o V_2 is induced from the wreath product
// S_2 wr S_r with the sign of the S_r factor.
const std::map<Partition, mpq_class>& wreath_sign_sums(int r) {
    static std::map<int, std::map<Partition, mpq_class>> cache;
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    int n = 2 * r;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::map<Partition, mpq_class> wsum;
    do {
        // wreath subgroup: permutations preserving the pairs {2i,2i+1}
        bool in = true;
        std::vector<int> blk(r);
        for (int i = 0; i < r && in; ++i) {
            int a = p[2 * i] / 2, b = p[2 * i + 1] / 2;
            if (a != b) in = false;
            blk[i] = a;
        }
        if (!in) continue;
        int sgn = 1;
        std::vector<int> seen(r, 0);
        for (int i = 0; i < r; ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = blk[j]) {
                seen[j] = 1;
                ++len;
            }
            if (len % 2 == 0) sgn = -sgn;
        }
        wsum[cycle_type(p)] += sgn;
    } while (std::next_permutation(p.begin(), p.end()));
    mpq_class order(factorial(r) * (mpz_class(1) << r));
    for (auto& [mu, s] : wsum) s /= order;
    return cache[r] = wsum;
}

int r_lambda_bruteforce(const Partition& lam) {
    int N = lam.size();
    for (int r = N / 2; r >= 1; --r) {
        const auto& w = wreath_sign_sums(r);
        for (auto& nu : partitions_of(2 * r)) {
            if (!lam.contains(nu)) continue;
            mpq_class m = 0;
            for (auto& [mu, s] : w) m += s * character(nu, mu);
            if (m != 0) return r;
        }
    }
    return 0;
}

}  // namespace

TEST_CASE("r_lambda examples and sweep") {
    CHECK(r_lambda(Partition::column(7)) == 0);
    CHECK(r_lambda(Partition({2, 2, 2, 2, 2, 2, 2})) == 1);
    CHECK(r_lambda(Partition({2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1})) == 1);
    for (int p = 2; p <= 6; ++p)
        for (int q = 0; q <= 4; ++q) {
            std::vector<int> h(q, 1);
            h.insert(h.begin(), p);
            // the containment definition gives min(N/2, p-1, q+1) on hooks
            CHECK(r_lambda(Partition(h)) == std::min({(p + q) / 2, p - 1, q + 1}));
        }
    for (int N = 0; N <= 10; ++N)
        for (auto& l : partitions_of(N)) {
            int r = r_lambda(l);
            CHECK(r <= N / 2);
            CHECK((r == 0) == l.is_single_column());
            CHECK(r == r_lambda_bruteforce(l));
        }
}
