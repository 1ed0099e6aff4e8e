#include "gcx/famod.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gcx {

FAModuleSpec FAModuleSpec::C(const Partition& l) {
    FAModuleSpec s;
    s.kind = Kind::C;
    s.lambda = l;
    return s;
}

FAModuleSpec FAModuleSpec::Tilde(int m) {
    if (m < 1) throw std::invalid_argument("Tilde(m) needs m >= 1");
    FAModuleSpec s;
    s.kind = Kind::Tilde;
    s.m = m;
    return s;
}

FAModuleSpec FAModuleSpec::Product(std::vector<int> a) {
    if (a.empty()) throw std::invalid_argument("Product needs at least one factor");
    for (int x : a)
        if (x < 0) throw std::invalid_argument("Product factors must be nonnegative");
    FAModuleSpec s;
    s.kind = Kind::Product;
    s.a = std::move(a);
    return s;
}

int FAModuleSpec::weight() const {
    switch (kind) {
        case Kind::C:
            return lambda.size();
        case Kind::Tilde:
            return m;
        case Kind::Product: {
            int w = 0;
            for (int x : a) w += x;
            return w;
        }
    }
    return 0;
}

std::string FAModuleSpec::str() const {
    switch (kind) {
        case Kind::C:
            return "C(" + lambda.str() + ")";
        case Kind::Tilde:
            return "Tilde(" + std::to_string(m) + ")";
        case Kind::Product: {
            std::string s = "Product(";
            for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
            return s + ")";
        }
    }
    return "";
}

bool FAModuleSpec::operator==(const FAModuleSpec& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::C:
            return lambda == o.lambda;
        case Kind::Tilde:
            return m == o.m;
        case Kind::Product:
            return a == o.a;
    }
    return false;
}

IrrDecomposition c_arity(const FAModuleSpec& spec, int n) {
    IrrDecomposition d;
    d.n = n;
    int N = spec.weight();
    if (n < N || n < 0) return d;
    switch (spec.kind) {
        case FAModuleSpec::Kind::C:
            return induction_product(spec.lambda, Partition::row(n - N));
        case FAModuleSpec::Kind::Tilde: {
            std::vector<int> hook(spec.m - 1, 1);
            hook.insert(hook.begin(), n - spec.m + 1);
            d.add(Partition(hook), 1);
            return d;
        }
        case FAModuleSpec::Kind::Product: {
            IrrDecomposition acc;
            acc.add(Partition::row(n - N), 1);
            acc.n = n - N;
            for (int x : spec.a) {
                IrrDecomposition e;
                e.n = x;
                e.add(Partition::column(x), 1);
                acc = induction_product(acc, e);
            }
            return acc;
        }
    }
    return d;
}

SummandBasis summand_basis(int weight, int r) {
    SummandBasis b;
    b.r = r;
    b.weight = weight;
    if (weight > r || weight < 0) return b;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == weight) {
            b.subsets.push_back(cur);
            return;
        }
        for (int x = start; x < r; ++x) {
            cur.push_back(x);
            self(self, x + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return b;
}

int SummandBasis::index_of(const std::vector<int>& s) const {
    auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
    if (it == subsets.end() || *it != s) return -1;
    return static_cast<int>(it - subsets.begin());
}

namespace {
int perm_sign(const std::vector<int>& p) {
    int s = 1;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}
}  // namespace

int SummandMap::sign_coefficient(int src) const {
    if (target[src] < 0) return 0;
    return perm_sign(perm[src]);
}

SummandMap surjection_action(int weight, int r, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != r) throw std::invalid_argument("surjection_action: size mismatch");
    int rd = 0;
    for (int x : f) rd = std::max(rd, x + 1);
    std::vector<char> hit(rd, 0);
    for (int x : f) hit[x] = 1;
    for (char h : hit)
        if (!h) throw std::invalid_argument("surjection_action: map is not onto");
    SummandBasis src = summand_basis(weight, r), dst = summand_basis(weight, rd);
    SummandMap m;
    m.r_src = r;
    m.r_dst = rd;
    m.target.assign(src.subsets.size(), -1);
    m.perm.assign(src.subsets.size(), {});
    for (std::size_t i = 0; i < src.subsets.size(); ++i) {
        const auto& A = src.subsets[i];
        std::vector<int> img;
        for (int x : A) img.push_back(f[x]);
        std::vector<int> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        m.target[i] = dst.index_of(sorted);
        std::vector<int> p(img.size());
        for (std::size_t t = 0; t < img.size(); ++t)
            p[t] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), img[t]) - sorted.begin());
        m.perm[i] = p;
    }
    return m;
}

SummandMap collapse_action(const Partition& lambda, int r, const std::vector<int>& block) {
    if (block.empty()) throw std::invalid_argument("collapse_action: empty block");
    std::vector<char> inb(r, 0);
    for (int x : block) {
        if (x < 0 || x >= r) throw std::invalid_argument("collapse_action: block out of range");
        inb[x] = 1;
    }
    int p = *std::min_element(block.begin(), block.end());
    std::vector<int> f(r);
    int next = 0;
    for (int x = 0; x < r; ++x) {
        if (inb[x] && x != p) continue;
        f[x] = next++;
    }
    for (int x = 0; x < r; ++x)
        if (inb[x]) f[x] = f[p];
    return surjection_action(lambda.size(), r, f);
}

std::vector<long> IntMatrix::dense() const {
    std::vector<long> d(static_cast<std::size_t>(rows) * cols, 0);
    for (int c = 0; c < cols; ++c)
        for (auto [rr, v] : col[c]) d[static_cast<std::size_t>(rr) * cols + c] += v;
    return d;
}

IntMatrix contraction_matrix(int j, int n) {
    SummandBasis src = summand_basis(j + 1, n), dst = summand_basis(j, n);
    IntMatrix M;
    M.rows = static_cast<int>(dst.subsets.size());
    M.cols = static_cast<int>(src.subsets.size());
    M.col.resize(M.cols);
    for (int c = 0; c < M.cols; ++c) {
        const auto& A = src.subsets[c];
        for (int t = 0; t <= j; ++t) {
            std::vector<int> B;
            for (int s = 0; s <= j; ++s)
                if (s != t) B.push_back(A[s]);
            M.col[c].push_back({dst.index_of(B), t % 2 ? -1L : 1L});
        }
    }
    return M;
}

std::vector<ResolutionStep> tilde_resolution(int m) {
    if (m < 1) throw std::invalid_argument("tilde_resolution needs m >= 1");
    std::vector<ResolutionStep> out;
    for (int j = m - 1; j >= 0; --j) out.push_back({FAModuleSpec::C(Partition::column(j)), j});
    return out;
}

}  // namespace gcx
