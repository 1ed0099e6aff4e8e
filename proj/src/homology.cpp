#include "gcx/homology.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "gcx/parallel.hpp"

namespace gcx {

// ---------------------------------------------------------------- primes

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

const std::vector<std::uint64_t>& rank_primes() {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> v;
        u64 x = (u64(1) << 62) - 1;
        while (v.size() < 3) {
            if (is_prime_u64(x)) v.push_back(x);
            x -= 2;
        }
        return v;
    }();
    return primes;
}

// ---------------------------------------------------------------- ranks

std::size_t SparseMatrix::nnz() const {
    std::size_t s = 0;
    for (auto& c : col) s += c.size();
    return s;
}

namespace {

std::vector<int> column_order(const SparseMatrix& m) {
    std::vector<int> order(m.cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return m.col[a].size() < m.col[b].size(); });
    return order;
}

}  // namespace

std::size_t rank_mod_p(const SparseMatrix& m, std::uint64_t p) {
    using Vec = std::vector<std::pair<int, u64>>;
    std::unordered_map<int, Vec> piv;
    std::size_t rank = 0;
    Vec v, tmp;
    for (int c : column_order(m)) {
        v.clear();
        for (auto [r, x] : m.col[c]) {
            std::int64_t y = x % static_cast<std::int64_t>(p);
            if (y < 0) y += static_cast<std::int64_t>(p);
            if (y) v.push_back({r, static_cast<u64>(y)});
        }
        while (!v.empty()) {
            auto it = piv.find(v[0].first);
            if (it == piv.end()) {
                u64 inv = powmod(v[0].second, p - 2, p);
                for (auto& e : v) e.second = mulmod(e.second, inv, p);
                piv.emplace(v[0].first, v);
                ++rank;
                break;
            }
            const Vec& q = it->second;
            u64 f = v[0].second;
            tmp.clear();
            std::size_t i = 1, j = 1;
            while (i < v.size() || j < q.size()) {
                if (j >= q.size() || (i < v.size() && v[i].first < q[j].first)) {
                    tmp.push_back(v[i++]);
                } else {
                    u64 sub = mulmod(f, q[j].second, p);
                    if (i < v.size() && v[i].first == q[j].first) {
                        u64 val = v[i].second >= sub ? v[i].second - sub : v[i].second + p - sub;
                        if (val) tmp.push_back({q[j].first, val});
                        ++i;
                    } else {
                        tmp.push_back({q[j].first, sub ? p - sub : 0});
                        if (!tmp.back().second) tmp.pop_back();
                    }
                    ++j;
                }
            }
            v.swap(tmp);
        }
    }
    return rank;
}

std::size_t rank_exact(const SparseMatrix& m) {
    using Vec = std::vector<std::pair<int, mpz_class>>;
    std::unordered_map<int, Vec> piv;
    std::size_t rank = 0;
    Vec v, tmp;
    for (int c : column_order(m)) {
        v.clear();
        for (auto [r, x] : m.col[c])
            if (x) v.push_back({r, mpz_class(static_cast<long>(x))});
        while (!v.empty()) {
            auto it = piv.find(v[0].first);
            if (it == piv.end()) {
                mpz_class gc = 0;
                for (auto& e : v) mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), e.second.get_mpz_t());
                if (v[0].second < 0) gc = -gc;
                for (auto& e : v) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), gc.get_mpz_t());
                piv.emplace(v[0].first, v);
                ++rank;
                break;
            }
            const Vec& q = it->second;
            // v <- q0 * v - v0 * q, then remove content
            mpz_class a = q[0].second, b = v[0].second;
            tmp.clear();
            std::size_t i = 1, j = 1;
            while (i < v.size() || j < q.size()) {
                if (j >= q.size() || (i < v.size() && v[i].first < q[j].first)) {
                    tmp.push_back({v[i].first, a * v[i].second});
                    ++i;
                } else if (i >= v.size() || q[j].first < v[i].first) {
                    tmp.push_back({q[j].first, -b * q[j].second});
                    ++j;
                } else {
                    mpz_class val = a * v[i].second - b * q[j].second;
                    if (val != 0) tmp.push_back({q[j].first, val});
                    ++i;
                    ++j;
                }
            }
            mpz_class gc = 0;
            for (auto& e : tmp) mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), e.second.get_mpz_t());
            if (gc > 1)
                for (auto& e : tmp) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), gc.get_mpz_t());
            v.swap(tmp);
        }
    }
    return rank;
}

RankResult sparse_rank(const SparseMatrix& m) {
    RankResult r;
    if (m.nnz() == 0) return r;
    const auto& P = rank_primes();
    std::size_t a = rank_mod_p(m, P[0]), b = rank_mod_p(m, P[1]);
    r.primes = {P[0], P[1]};
    if (a == b) {
        r.rank = a;
        return r;
    }
    r.disagreed = true;
    std::size_t c = rank_mod_p(m, P[2]);
    r.primes.push_back(P[2]);
    if (c == a || c == b) {
        r.rank = c;
        return r;
    }
    r.rank = rank_exact(m);
    r.exact = true;
    return r;
}

// ---------------------------------------------------------------- plans

std::string ComplexPlan::str() const {
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) s += map == BlockMap::Contraction ? " -c-> " : " -p-> ";
        s += blocks[i].scheme.str() + "@" + std::to_string(blocks[i].offset);
    }
    return s;
}

std::map<Partition, std::int64_t> schur_in_h(const Partition& lambda) {
    int N = lambda.size();
    const auto& parts = partitions_of(N);
    // s_nu in terms of h, for nu in dominance-compatible order
    std::map<Partition, std::map<Partition, std::int64_t>> s;
    for (const auto& nu : parts) {
        std::map<Partition, std::int64_t> e;
        e[nu] = 1;
        for (const auto& prev : parts) {
            if (prev == nu) break;
            std::int64_t k = kostka(prev, nu);
            if (!k) continue;
            for (auto& [mu, c] : s[prev]) e[mu] -= k * c;
        }
        for (auto it = e.begin(); it != e.end();) it = it->second ? std::next(it) : e.erase(it);
        s[nu] = e;
        if (nu == lambda) return e;
    }
    return {};
}

std::map<Partition, std::int64_t> schur_in_e(const Partition& lambda) { return schur_in_h(lambda.conjugate()); }

namespace {

ComplexPlan single(DecorScheme s) {
    ComplexPlan p;
    p.blocks.push_back({std::move(s), 0});
    return p;
}

ComplexPlan tilde_plan(int m, int g, int n) {
    ComplexPlan p;
    p.map = BlockMap::Contraction;
    int P = std::max(0, 2 * g + n - m);
    for (int q = P; q >= 0; --q) p.blocks.push_back({DecorScheme::alternating({m + q}), -q});
    return p;
}

ComplexPlan two_column_plan(const Partition& lambda) {
    Partition c = lambda.conjugate();
    int a = c[0], b = c[1];
    ComplexPlan p;
    p.map = BlockMap::Pieri;
    p.blocks.push_back({DecorScheme::alternating({a + 1, b - 1}), -1});
    p.blocks.push_back({DecorScheme::alternating({a, b}), 0});
    return p;
}

}  // namespace

VirtualPlan plan_for(const FAModuleSpec& spec, int g, int n) {
    VirtualPlan vp;
    switch (spec.kind) {
        case FAModuleSpec::Kind::Product:
            vp.terms.push_back({1, single(DecorScheme::alternating(spec.a))});
            return vp;
        case FAModuleSpec::Kind::Tilde:
            vp.terms.push_back({1, tilde_plan(spec.m, g, n)});
            return vp;
        case FAModuleSpec::Kind::C:
            break;
    }
    const Partition& l = spec.lambda;
    int N = l.size();
    if (l.is_single_column()) {
        vp.terms.push_back({1, single(DecorScheme::alternating({N}))});
    } else if (l.length() == 1) {
        vp.terms.push_back({1, single(DecorScheme::symmetric({N}))});
    } else if (l.columns() == 2) {
        vp.terms.push_back({1, two_column_plan(l)});
    } else if (l.length() <= l.columns()) {
        for (auto& [mu, c] : schur_in_h(l)) vp.terms.push_back({c, single(DecorScheme::symmetric(mu.parts))});
    } else {
        for (auto& [mu, c] : schur_in_e(l)) vp.terms.push_back({c, single(DecorScheme::alternating(mu.parts))});
    }
    return vp;
}

// ---------------------------------------------------------------- building

std::size_t BuiltComplex::dim(int degree) const {
    int i = degree - min_degree;
    if (i < 0 || i >= static_cast<int>(gens.size())) return 0;
    return gens[i].size();
}

namespace {

struct Index {
    // per block, per graph degree: sorted codes and the slot of the first one in its total degree
    std::vector<std::vector<std::vector<std::string>>> codes;
    std::vector<std::vector<int>> start;
    const ComplexPlan* plan = nullptr;

    int find(int b, int e, const std::string& code) const {
        if (e < 0 || e >= static_cast<int>(codes[b].size())) return -1;
        const auto& v = codes[b][e];
        auto it = std::lower_bound(v.begin(), v.end(), code);
        if (it == v.end() || *it != code) return -1;
        return start[b][e] + static_cast<int>(it - v.begin());
    }
};

using Acc = std::map<std::pair<int, std::string>, std::int64_t>;

void add_term(Acc& acc, int block, const Graph& H, const DecorScheme& s, std::int64_t c) {
    auto r = canonicalize_with(H, s);
    if (r.null) return;
    acc[{block, r.code}] += c * r.sign;
}

std::vector<std::pair<Graph, int>> block_map_images(const Graph& G, BlockMap map) {
    std::vector<std::pair<Graph, int>> out;
    if (map == BlockMap::None) return out;
    for (int h = 0; h < static_cast<int>(G.he.size()); ++h) {
        const HalfEdge& x = G.he[h];
        if (x.vertex != 0 || x.label != 1) continue;
        int t = x.wedge;
        Graph H = G;
        for (auto& y : H.he) {
            if (y.vertex != 0) continue;
            if (y.label == 1 && y.wedge > t) y.wedge--;
            if (map == BlockMap::Pieri && y.label == 2) y.wedge++;
        }
        if (map == BlockMap::Contraction) {
            H.he[h].label = kEps;
            H.he[h].wedge = 0;
        } else {
            H.he[h].label = 2;
            H.he[h].wedge = 0;
        }
        out.push_back({std::move(H), t % 2 ? -1 : 1});
    }
    return out;
}

}  // namespace

BuiltComplex build_complex(const ComplexPlan& plan, int g, int n, const std::vector<int>& leg_colors,
                           Variant variant, const Budget& budget, int workers, bool with_differential) {
    BuiltComplex C;
    C.g = g;
    C.n = n;
    C.leg_colors = leg_colors;
    C.variant = variant;
    const int nb = static_cast<int>(plan.blocks.size());
    Index idx;
    idx.plan = &plan;
    idx.codes.resize(nb);
    idx.start.resize(nb);
    int lo = 0, hi = -1;
    bool any = false;
    for (int b = 0; b < nb; ++b) {
        GraphParams p;
        p.scheme = plan.blocks[b].scheme;
        p.g = g;
        p.n = n;
        p.leg_colors = leg_colors;
        p.variant = variant;
        Budget left = budget;
        if (C.explored >= budget.max_generators)
            throw BudgetExceeded("generator budget exceeded", C.explored);
        left.max_generators = budget.max_generators - C.explored;
        auto B = enumerate_all(p, left, workers);
        C.explored += B.explored;
        idx.codes[b] = std::move(B.by_degree);
        for (int e = 0; e < static_cast<int>(idx.codes[b].size()); ++e) {
            if (idx.codes[b][e].empty()) continue;
            int d = e + plan.blocks[b].offset;
            if (!any) lo = hi = d;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            any = true;
        }
    }
    if (!any) return C;
    C.min_degree = lo;
    C.gens.resize(hi - lo + 1);
    for (int b = 0; b < nb; ++b) {
        idx.start[b].assign(idx.codes[b].size(), 0);
        for (int e = 0; e < static_cast<int>(idx.codes[b].size()); ++e) {
            int d = e + plan.blocks[b].offset - lo;
            idx.start[b][e] = static_cast<int>(C.gens[d].size());
            for (auto& c : idx.codes[b][e]) C.gens[d].push_back({b, c});
        }
    }
    if (!with_differential) return C;
    C.D.resize(C.gens.size() > 0 ? C.gens.size() - 1 : 0);
    std::size_t entries = 0;
    for (std::size_t d = 0; d + 1 < C.gens.size(); ++d) {
        SparseMatrix& M = C.D[d];
        M.rows = static_cast<int>(C.gens[d + 1].size());
        M.cols = static_cast<int>(C.gens[d].size());
        M.col.assign(M.cols, {});
        std::mutex err_mu;
        parallel_for(static_cast<std::size_t>(M.cols), workers, [&](std::size_t c, int) {
            const TotGenerator& tg = C.gens[d][c];
            const Block& blk = plan.blocks[tg.block];
            Graph G = decode(tg.code);
            int e = G.num_edges();
            Acc acc;
            for (auto& t : differential_terms(G, variant)) add_term(acc, tg.block, t.graph, blk.scheme, t.coeff);
            if (tg.block + 1 < nb) {
                const Block& nxt = plan.blocks[tg.block + 1];
                std::int64_t s = e % 2 ? -1 : 1;
                for (auto& [H, c2] : block_map_images(G, plan.map)) add_term(acc, tg.block + 1, H, nxt.scheme, s * c2);
            }
            auto& col = M.col[c];
            for (auto& [key, v] : acc) {
                if (!v) continue;
                int b2 = key.first;
                Graph H = decode(key.second);
                int row = idx.find(b2, H.num_edges(), key.second);
                if (row < 0) {
                    if (variant == Variant::Star && !is_star_graph(H))
                        throw ConsistencyError("differential leaves the star subcomplex");
                    throw ConsistencyError("differential hits a graph outside the enumerated basis");
                }
                col.push_back({row, v});
            }
            std::sort(col.begin(), col.end());
        });
        entries += M.nnz();
        if (entries > budget.max_matrix_entries) throw BudgetExceeded("matrix entry budget exceeded", entries);
    }
    C.entries = entries;
    return C;
}

void check_d_squared(const BuiltComplex& c) {
    for (std::size_t d = 0; d + 1 < c.D.size(); ++d) {
        const auto& A = c.D[d];
        const auto& B = c.D[d + 1];
        for (int j = 0; j < A.cols; ++j) {
            std::map<int, __int128> out;
            for (auto [k, a] : A.col[j])
                for (auto [i, b] : B.col[k]) out[i] += static_cast<__int128>(a) * b;
            for (auto& [i, v] : out)
                if (v != 0)
                    throw ConsistencyError("d^2 != 0 in degree " + std::to_string(c.min_degree + static_cast<int>(d)) +
                                           " (column " + std::to_string(j) + ")");
        }
    }
}

void check_equivariance(const ComplexPlan& plan, const BuiltComplex& c) {
    if (c.n < 2) return;
    std::vector<std::map<std::pair<int, std::string>, int>> where(c.gens.size());
    for (std::size_t d = 0; d < c.gens.size(); ++d)
        for (std::size_t i = 0; i < c.gens[d].size(); ++i) where[d][{c.gens[d][i].block, c.gens[d][i].code}] = static_cast<int>(i);
    for (int i = 0; i + 1 < c.n; ++i) {
        // signed permutation per degree
        std::vector<std::vector<std::pair<int, int>>> P(c.gens.size());
        for (std::size_t d = 0; d < c.gens.size(); ++d) {
            P[d].resize(c.gens[d].size());
            for (std::size_t k = 0; k < c.gens[d].size(); ++k) {
                const auto& tg = c.gens[d][k];
                Graph G = decode(tg.code);
                for (auto& h : G.he) {
                    if (h.edge >= 0) continue;
                    if (h.leg_color == i)
                        h.leg_color = i + 1;
                    else if (h.leg_color == i + 1)
                        h.leg_color = i;
                }
                auto r = canonicalize_with(G, plan.blocks[tg.block].scheme);
                auto it = where[d].find({tg.block, r.code});
                if (r.null || it == where[d].end()) throw ConsistencyError("leg permutation leaves the basis");
                P[d][k] = {it->second, r.sign};
            }
        }
        for (std::size_t d = 0; d < c.D.size(); ++d) {
            const auto& M = c.D[d];
            for (int j = 0; j < M.cols; ++j) {
                std::map<int, std::int64_t> dp, pd;
                auto [pj, sj] = P[d][j];
                for (auto [r, v] : M.col[pj]) dp[r] += sj * v;
                for (auto [r, v] : M.col[j]) pd[P[d + 1][r].first] += P[d + 1][r].second * v;
                for (auto it = dp.begin(); it != dp.end();) it = it->second ? std::next(it) : dp.erase(it);
                for (auto it = pd.begin(); it != pd.end();) it = it->second ? std::next(it) : pd.erase(it);
                if (dp != pd)
                    throw ConsistencyError("differential is not equivariant under the leg transposition (" +
                                           std::to_string(i + 1) + " " + std::to_string(i + 2) + ")");
            }
        }
    }
}

Cohomology complex_cohomology(const BuiltComplex& c, int workers) {
    Cohomology H;
    std::vector<RankResult> ranks(c.D.size());
    parallel_for(c.D.size(), workers, [&](std::size_t d, int) { ranks[d] = sparse_rank(c.D[d]); });
    for (auto& r : ranks) {
        for (auto p : r.primes)
            if (std::find(H.primes.begin(), H.primes.end(), p) == H.primes.end()) H.primes.push_back(p);
        H.exact_fallback = H.exact_fallback || r.exact;
    }
    std::sort(H.primes.begin(), H.primes.end());
    for (std::size_t d = 0; d < c.gens.size(); ++d) {
        std::size_t out = d < ranks.size() ? ranks[d].rank : 0;
        std::size_t in = d > 0 ? ranks[d - 1].rank : 0;
        std::size_t h = c.gens[d].size() - out - in;
        if (out + in > c.gens[d].size()) throw ConsistencyError("ranks exceed the chain dimension");
        if (h) H.dims[c.min_degree + static_cast<int>(d)] = h;
    }
    return H;
}

// ---------------------------------------------------------------- reports

mpz_class CohomologyReport::dimension(int degree) const {
    auto it = cohomology.find(degree);
    if (it == cohomology.end()) return 0;
    mpq_class s = 0;
    for (auto& [p, c] : it->second.coeffs) s += c * mpq_class(hook_dimension(p));
    return s.get_num();
}

bool predicts_vanishing(const FAModuleSpec& spec, int g, int n) {
    if (g == 0 && n == 0) return true;
    // every C_{1^j} in the resolution of Tilde(m) has j >= m and r = 0
    if (spec.kind == FAModuleSpec::Kind::Tilde) return 3 * g + 2 * n < 2 * spec.m;
    if (spec.kind != FAModuleSpec::Kind::C) return false;
    return vanishing_predicate(spec.lambda.size(), r_lambda(spec.lambda), g, n);
}

CohomologyReport cohomology(const FAModuleSpec& spec, int g, int n, const CohomologyOptions& opt) {
    CohomologyReport R;
    R.spec = spec;
    R.g = g;
    R.n = n;
    R.variant = opt.variant;
    R.euler.basis = Basis::Schur;
    if (opt.use_vanishing_shortcut && predicts_vanishing(spec, g, n)) {
        R.shortcut = true;
        return R;
    }
    VirtualPlan vp = plan_for(spec, g, n);
    R.virtual_combination = vp.is_virtual();
    for (auto& [c, p] : vp.terms) R.plans.push_back((c == 1 ? std::string() : std::to_string(c) + " * ") + p.str());
    // monomial coefficients per degree: dimension of leg-coinvariants for each coloring
    std::map<int, std::map<Partition, mpq_class>> hmono, cmono;
    std::size_t explored = 0;
    for (const auto& alpha : partitions_of(n)) {
        bool distinct = alpha.length() == n;
        for (auto& [coef, plan] : vp.terms) {
            Budget b = opt.budget;
            if (explored >= b.max_generators) throw BudgetExceeded("generator budget exceeded", explored);
            b.max_generators -= explored;
            auto C = build_complex(plan, g, n, alpha.parts, opt.variant, b, opt.workers, !opt.chain_only);
            explored += C.explored;
            R.explored += C.explored;
            R.entries += C.entries;
            if (distinct) R.generators += [&] {
                std::size_t s = 0;
                for (auto& v : C.gens) s += v.size();
                return s;
            }();
            for (std::size_t d = 0; d < C.gens.size(); ++d)
                if (!C.gens[d].empty()) cmono[C.min_degree + static_cast<int>(d)][alpha] += coef * mpq_class(C.gens[d].size());
            if (opt.chain_only) continue;
            if (opt.gates) {
                check_d_squared(C);
                if (distinct) check_equivariance(plan, C);
            }
            auto H = complex_cohomology(C, opt.workers);
            for (auto [d, h] : H.dims) hmono[d][alpha] += coef * mpq_class(static_cast<unsigned long>(h));
            for (auto p : H.primes)
                if (std::find(R.primes.begin(), R.primes.end(), p) == R.primes.end()) R.primes.push_back(p);
            R.exact_fallback = R.exact_fallback || H.exact_fallback;
        }
    }
    std::sort(R.primes.begin(), R.primes.end());
    auto to_schur = [&](const std::map<Partition, mpq_class>& mono) {
        SymFunction f;
        f.basis = Basis::Schur;
        for (auto& [p, c] : monomial_to_schur(mono, n)) f.add(p, c);
        return f;
    };
    for (auto& [d, mono] : cmono) {
        auto f = to_schur(mono);
        if (f.is_zero()) continue;
        R.chains[d] = f;
        R.euler = R.euler + (d % 2 ? f * mpq_class(-1) : f);
    }
    for (auto& [d, mono] : hmono) {
        auto f = to_schur(mono);
        if (!f.is_zero()) R.cohomology[d] = f;
    }
    return R;
}

// ---------------------------------------------------------------- skeleton count

namespace {

// chi of Ind_{S_N x S_{r-N}}(V_lambda x 1) at a permutation with the given cycle lengths
mpz_class induced_character(const Partition& lambda, const std::vector<int>& cycles) {
    int N = lambda.size();
    mpz_class total = 0;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (left == 0) {
            total += static_cast<long>(character(lambda, Partition(chosen)));
            return;
        }
        if (i == cycles.size()) return;
        if (cycles[i] <= left) {
            chosen.push_back(cycles[i]);
            self(self, i + 1, left - cycles[i]);
            chosen.pop_back();
        }
        self(self, i + 1, left);
    };
    rec(rec, 0, N);
    return total;
}

}  // namespace

mpz_class skeleton_coinvariants(const Partition& lambda, const Graph& G, std::size_t group_limit) {
    static const DecorScheme none;
    auto grp = automorphism_group(G, group_limit);
    mpq_class s = 0;
    std::vector<int> star;
    for (int h = 0; h < static_cast<int>(G.he.size()); ++h)
        if (G.he[h].vertex == 0) star.push_back(h);
    std::vector<int> pos(G.he.size(), -1);
    for (std::size_t i = 0; i < star.size(); ++i) pos[star[i]] = static_cast<int>(i);
    for (auto& sigma : grp) {
        std::vector<int> cyc;
        std::vector<char> seen(star.size(), 0);
        for (std::size_t i = 0; i < star.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = static_cast<int>(i); !seen[j]; j = pos[sigma[star[j]]]) {
                seen[j] = 1;
                ++len;
            }
            cyc.push_back(len);
        }
        s += mpq_class(induced_character(lambda, cyc) * automorphism_sign(G, sigma, none));
    }
    s /= static_cast<unsigned long>(grp.size());
    if (s.get_den() != 1) throw ConsistencyError("non-integral coinvariant dimension");
    return s.get_num();
}

SkeletonCount skeleton_chain_dims(const Partition& lambda, int g, int n, const Budget& budget, bool first_only) {
    SkeletonCount out;
    GraphParams p;
    p.scheme = DecorScheme::alternating({});
    p.g = g;
    p.n = n;
    p.keep_null = true;
    auto coinvariants = [&](const std::string& code) { return skeleton_coinvariants(lambda, decode(code)); };
    try {
        enumerate_until(
            p,
            [&](int e, const std::vector<std::string>& codes) {
                mpz_class d = 0;
                for (auto& c : codes) d += coinvariants(c);
                if (d != 0) out.dims[e] = d;
                return first_only && d != 0;
            },
            budget, 1);
    } catch (const BudgetExceeded&) {
        out.complete = false;
    }
    return out;
}

}  // namespace gcx
