#include "gcx/symcore.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace gcx {

namespace {

void normalize(std::vector<int>& p) {
    std::sort(p.begin(), p.end(), std::greater<int>());
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::string key_of(const std::vector<int>& a, const std::vector<int>& b) {
    std::string k;
    k.reserve(a.size() + b.size() + 1);
    for (int x : a) k.push_back(static_cast<char>(x));
    k.push_back('|');
    for (int x : b) k.push_back(static_cast<char>(x));
    return k;
}

template <class V>
class Memo {
public:
    bool find(const std::string& k, V& out) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void put(const std::string& k, const V& v) {
        std::unique_lock lock(mu_);
        map_.emplace(k, v);
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, V> map_;
};

}  // namespace

Partition::Partition(std::initializer_list<int> p) : parts(p) { normalize(parts); }
Partition::Partition(std::vector<int> p) : parts(std::move(p)) { normalize(parts); }

int Partition::size() const {
    int s = 0;
    for (int x : parts) s += x;
    return s;
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (parts.empty()) return Partition();
    for (int j = 0; j < parts[0]; ++j) {
        int cnt = 0;
        for (int x : parts)
            if (x > j) ++cnt;
        c.push_back(cnt);
    }
    return Partition(c);
}

bool Partition::contains(const Partition& mu) const {
    if (mu.length() > length()) return false;
    for (int i = 0; i < mu.length(); ++i)
        if (mu.parts[i] > parts[i]) return false;
    return true;
}

bool Partition::is_single_column() const { return parts.empty() || parts[0] == 1; }

std::string Partition::str() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s;
}

Partition Partition::parse(const std::string& s) {
    std::vector<int> p;
    std::string tok;
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        auto e = tok.find_last_not_of(" \t");
        tok = tok.substr(b, e - b + 1);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partition entry '" + tok + "'");
        }
        if (used != tok.size() || v <= 0) throw std::invalid_argument("bad partition entry '" + tok + "'");
        p.push_back(v);
    }
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[i - 1]) throw std::invalid_argument("partition parts must be nonincreasing: " + s);
    return Partition(p);
}

Partition Partition::column(int k) { return Partition(std::vector<int>(k, 1)); }
Partition Partition::row(int n) { return n == 0 ? Partition() : Partition({n}); }

const std::vector<Partition>& partitions_of(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Partition>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            Partition p;
            p.parts = cur;
            out.push_back(p);
            return;
        }
        for (int k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rem - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return cache.emplace(n, std::move(out)).first->second;
}

bool dominates(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return false;
    int sa = 0, sb = 0;
    int L = std::max(a.length(), b.length());
    for (int i = 0; i < L; ++i) {
        sa += a[i];
        sb += b[i];
        if (sa < sb) return false;
    }
    return true;
}

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class z_factor(const Partition& mu) {
    mpz_class z = 1;
    std::map<int, int> mult;
    for (int x : mu.parts) mult[x]++;
    for (auto [i, m] : mult) {
        mpz_class ip;
        mpz_ui_pow_ui(ip.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(m));
        z *= ip * factorial(m);
    }
    return z;
}

mpz_class hook_dimension(const Partition& lambda) {
    mpz_class num = factorial(lambda.size());
    mpz_class den = 1;
    Partition c = lambda.conjugate();
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda.parts[i]; ++j) den *= (lambda.parts[i] - j - 1) + (c.parts[j] - i - 1) + 1;
    return num / den;
}

namespace {

Memo<std::int64_t>& char_memo() {
    static Memo<std::int64_t> m;
    return m;
}

// beta-set version of Murnaghan-Nakayama; mu consumed from the front.
std::int64_t mn_rec(const std::vector<int>& lam, const std::vector<int>& mu, std::size_t pos) {
    if (pos == mu.size()) return lam.empty() ? 1 : 0;
    std::vector<int> rest(mu.begin() + static_cast<long>(pos), mu.end());
    std::string key = key_of(lam, rest);
    std::int64_t cached;
    if (char_memo().find(key, cached)) return cached;

    int k = mu[pos];
    int L = static_cast<int>(lam.size());
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = lam[i] + (L - 1 - i);
    std::int64_t total = 0;
    for (int i = 0; i < L; ++i) {
        int nb = beta[i] - k;
        if (nb < 0) continue;
        if (std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
        int between = 0;
        for (int j = 0; j < L; ++j)
            if (beta[j] > nb && beta[j] < beta[i]) ++between;
        std::vector<int> nbeta = beta;
        nbeta[i] = nb;
        std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
        std::vector<int> nl(L);
        for (int j = 0; j < L; ++j) nl[j] = nbeta[j] - (L - 1 - j);
        while (!nl.empty() && nl.back() == 0) nl.pop_back();
        std::int64_t sub = mn_rec(nl, mu, pos + 1);
        total += (between % 2 ? -sub : sub);
    }
    char_memo().put(key, total);
    return total;
}

}  // namespace

std::int64_t character(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw std::invalid_argument("character: size mismatch");
    return mn_rec(lambda.parts, mu.parts, 0);
}

namespace {

Memo<std::int64_t>& kostka_memo() {
    static Memo<std::int64_t> m;
    return m;
}

std::int64_t kostka_rec(const std::vector<int>& lam, const std::vector<int>& mu) {
    if (mu.empty()) return lam.empty() ? 1 : 0;
    std::string key = key_of(lam, mu);
    std::int64_t cached;
    if (kostka_memo().find(key, cached)) return cached;
    int k = mu.back();
    std::vector<int> rest(mu.begin(), mu.end() - 1);
    std::int64_t total = 0;
    // remove a horizontal strip of size k from lam
    int L = static_cast<int>(lam.size());
    std::vector<int> cur = lam;
    auto rec = [&](auto&& self, int i, int rem) -> void {
        if (i == L) {
            if (rem == 0) {
                std::vector<int> nl = cur;
                while (!nl.empty() && nl.back() == 0) nl.pop_back();
                total += kostka_rec(nl, rest);
            }
            return;
        }
        int lower = (i + 1 < L) ? lam[i + 1] : 0;
        int maxr = std::min(rem, lam[i] - lower);
        for (int r = 0; r <= maxr; ++r) {
            cur[i] = lam[i] - r;
            self(self, i + 1, rem - r);
        }
        cur[i] = lam[i];
    };
    rec(rec, 0, k);
    kostka_memo().put(key, total);
    return total;
}

}  // namespace

std::int64_t kostka(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) return 0;
    return kostka_rec(lambda.parts, mu.parts);
}

void IrrDecomposition::add(const Partition& p, std::int64_t m) {
    if (m == 0) return;
    if (terms.empty() && p.size() != n) n = p.size();
    if (p.size() != n) throw std::invalid_argument("IrrDecomposition: mixed sizes");
    auto& v = terms[p];
    v += m;
    if (v == 0) terms.erase(p);
}

mpz_class IrrDecomposition::dimension() const {
    mpz_class d = 0;
    for (auto& [p, m] : terms) d += hook_dimension(p) * m;
    return d;
}

namespace {

// All nu with c^nu_{alpha,beta} > 0, with multiplicities.
std::map<Partition, std::int64_t> lr_all(const Partition& alpha, const Partition& beta) {
    std::map<Partition, std::int64_t> out;
    int rows = alpha.length() + beta.length();
    std::vector<int> content(rows, 0);
    std::vector<std::vector<int>> T(beta.length());
    for (int i = 0; i < beta.length(); ++i) T[i].assign(beta.parts[i], -1);
    auto base = [&](int x) { return alpha[x] + content[x]; };
    // reading order: rows top to bottom, each right to left
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == beta.length()) {
            std::vector<int> nu(rows);
            for (int x = 0; x < rows; ++x) nu[x] = alpha[x] + content[x];
            out[Partition(nu)]++;
            return;
        }
        if (j < 0) {
            self(self, i + 1, (i + 1 < beta.length()) ? beta.parts[i + 1] - 1 : 0);
            return;
        }
        int hi = (j + 1 < beta.parts[i]) ? T[i][j + 1] : rows - 1;
        int lo = (i > 0) ? T[i - 1][j] + 1 : 0;
        for (int x = lo; x <= hi; ++x) {
            if (x > 0 && base(x) + 1 > base(x - 1)) continue;
            content[x]++;
            T[i][j] = x;
            self(self, i, j - 1);
            content[x]--;
        }
        T[i][j] = -1;
    };
    if (beta.length() == 0) {
        out[alpha] = 1;
        return out;
    }
    rec(rec, 0, beta.parts[0] - 1);
    return out;
}

}  // namespace

std::int64_t lr_coefficient(const Partition& alpha, const Partition& beta, const Partition& nu) {
    if (nu.size() != alpha.size() + beta.size()) return 0;
    if (!nu.contains(alpha) || !nu.contains(beta)) return 0;
    auto all = lr_all(alpha, beta);
    auto it = all.find(nu);
    return it == all.end() ? 0 : it->second;
}

IrrDecomposition induction_product(const Partition& alpha, const Partition& beta) {
    IrrDecomposition d;
    d.n = alpha.size() + beta.size();
    for (auto& [nu, c] : lr_all(alpha, beta)) d.add(nu, c);
    return d;
}

IrrDecomposition induction_product(const IrrDecomposition& a, const IrrDecomposition& b) {
    IrrDecomposition d;
    d.n = a.n + b.n;
    for (auto& [p, m] : a.terms)
        for (auto& [q, k] : b.terms)
            for (auto& [nu, c] : lr_all(p, q)) d.add(nu, m * k * c);
    return d;
}

void SymFunction::add(const Partition& p, const mpq_class& c) {
    mpq_class x = c;
    x.canonicalize();
    if (x == 0) return;
    auto& v = coeffs[p];
    v += x;
    if (v == 0) coeffs.erase(p);
}

int SymFunction::max_degree() const {
    int d = 0;
    for (auto& [p, c] : coeffs) d = std::max(d, p.size());
    return d;
}

SymFunction SymFunction::operator+(const SymFunction& o) const {
    if (basis != o.basis) throw std::invalid_argument("SymFunction: basis mismatch");
    SymFunction r = *this;
    for (auto& [p, c] : o.coeffs) r.add(p, c);
    return r;
}

SymFunction SymFunction::operator-(const SymFunction& o) const {
    if (basis != o.basis) throw std::invalid_argument("SymFunction: basis mismatch");
    SymFunction r = *this;
    for (auto& [p, c] : o.coeffs) r.add(p, -c);
    return r;
}

SymFunction SymFunction::operator*(const mpq_class& c) const {
    SymFunction r;
    r.basis = basis;
    if (c == 0) return r;
    for (auto& [p, v] : coeffs) r.coeffs[p] = v * c;
    return r;
}

bool SymFunction::integral() const {
    for (auto& [p, c] : coeffs)
        if (c.get_den() != 1) return false;
    return true;
}

SymFunction SymFunction::degree_part(int n) const {
    SymFunction r;
    r.basis = basis;
    for (auto& [p, c] : coeffs)
        if (p.size() == n) r.coeffs[p] = c;
    return r;
}

std::string SymFunction::str() const {
    if (coeffs.empty()) return "0";
    std::string s;
    const char* sym = basis == Basis::Schur ? "s" : "p";
    bool first = true;
    // largest partitions last, matching the table layout of increasing first part
    std::vector<std::pair<Partition, mpq_class>> items(coeffs.begin(), coeffs.end());
    std::sort(items.begin(), items.end(), [](auto& a, auto& b) {
        auto pa = a.first.parts, pb = b.first.parts;
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });
    for (auto& [p, c] : items) {
        mpq_class a = abs(c);
        if (first)
            s += (c < 0 ? "-" : "");
        else
            s += (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1) s += a.get_str() + " ";
        s += std::string(sym) + "_{" + p.str() + "}";
    }
    return s;
}

SymFunction convert(const SymFunction& f, Basis target, int max_degree) {
    if (f.basis == target) return f;
    if (f.max_degree() > max_degree) throw std::domain_error("symmetric function degree exceeds conversion bound");
    SymFunction r;
    r.basis = target;
    for (auto& [p, c] : f.coeffs) {
        int n = p.size();
        for (auto& q : partitions_of(n)) {
            if (f.basis == Basis::PowerSum) {
                // p_mu = sum_lambda chi_lambda(mu) s_lambda
                std::int64_t ch = character(q, p);
                if (ch) r.add(q, c * mpq_class(mpz_class(static_cast<long>(ch))));
            } else {
                // s_lambda = sum_mu chi_lambda(mu)/z_mu p_mu
                std::int64_t ch = character(p, q);
                if (ch) r.add(q, c * mpq_class(mpz_class(static_cast<long>(ch)), z_factor(q)));
            }
        }
    }
    return r;
}

SymFunction powersum_multiply(const SymFunction& a, const SymFunction& b) {
    if (a.basis != Basis::PowerSum || b.basis != Basis::PowerSum)
        throw std::invalid_argument("powersum_multiply expects power-sum inputs");
    SymFunction r;
    r.basis = Basis::PowerSum;
    for (auto& [p, c] : a.coeffs)
        for (auto& [q, d] : b.coeffs) {
            std::vector<int> u = p.parts;
            u.insert(u.end(), q.parts.begin(), q.parts.end());
            r.add(Partition(u), c * d);
        }
    return r;
}

SymFunction to_symfunction(const IrrDecomposition& d) {
    SymFunction f;
    for (auto& [p, m] : d.terms) f.add(p, mpq_class(static_cast<long>(m)));
    return f;
}

IrrDecomposition to_decomposition(const SymFunction& schur, int n) {
    if (schur.basis != Basis::Schur) throw std::invalid_argument("to_decomposition expects Schur basis");
    IrrDecomposition d;
    d.n = n;
    for (auto& [p, c] : schur.coeffs) {
        if (p.size() != n) throw std::invalid_argument("to_decomposition: wrong degree");
        if (c.get_den() != 1 || c < 0) throw std::domain_error("not a genuine representation: " + schur.str());
        d.add(p, c.get_num().get_si());
    }
    return d;
}

std::map<Partition, mpq_class> monomial_to_schur(const std::map<Partition, mpq_class>& mono, int n) {
    const auto& parts = partitions_of(n);  // reverse lex, dominance-compatible
    std::map<Partition, mpq_class> res;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Partition& a = parts[i];
        auto it = mono.find(a);
        mpq_class c = it == mono.end() ? mpq_class(0) : it->second;
        for (std::size_t j = 0; j < i; ++j) {
            auto rj = res.find(parts[j]);
            if (rj == res.end()) continue;
            std::int64_t k = kostka(parts[j], a);
            if (k) c -= rj->second * mpq_class(static_cast<long>(k));
        }
        if (c != 0) res[a] = c;
    }
    return res;
}

IrrDecomposition plethysm_wedge_sym2(int r) {
    SymFunction total;
    total.basis = Basis::PowerSum;
    for (auto& mu : partitions_of(r)) {
        SymFunction term;
        term.basis = Basis::PowerSum;
        term.add(Partition(), mpq_class(((r - mu.length()) % 2 ? -1 : 1)) / mpq_class(z_factor(mu)));
        for (int k : mu.parts) {
            SymFunction h2k;  // p_k[h_2] = (p_k^2 + p_{2k}) / 2
            h2k.basis = Basis::PowerSum;
            h2k.add(Partition({k, k}), mpq_class(1, 2));
            h2k.add(Partition({2 * k}), mpq_class(1, 2));
            term = powersum_multiply(term, h2k);
        }
        total = total + term;
    }
    IrrDecomposition d = to_decomposition(convert(total, Basis::Schur), 2 * r);
    d.n = 2 * r;
    return d;
}

int r_lambda(const Partition& lambda) {
    int N = lambda.size();
    for (int r = N / 2; r >= 1; --r) {
        auto d = plethysm_wedge_sym2(r);
        for (auto& [nu, m] : d.terms)
            if (lambda.contains(nu)) return r;
    }
    return 0;
}

}  // namespace gcx
