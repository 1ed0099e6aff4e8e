#include "gcx/eulerchar.hpp"

#include <algorithm>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "gcx/homology.hpp"
#include "json.hpp"

namespace gcx {

namespace {

mpq_class frac(long a, long b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

}  // namespace

// ---------------------------------------------------------------- scalar series

mpq_class LaurentSeries::at(int k) const {
    if (k < lo || k > T) return 0;
    std::size_t i = static_cast<std::size_t>(k - lo);
    return i < c.size() ? c[i] : mpq_class(0);
}

int LaurentSeries::valuation() const {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0 && lo + static_cast<int>(i) <= T) return lo + static_cast<int>(i);
    return T + 1;
}

int mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
    }
    if (n > 1) r = -r;
    return r;
}

const std::vector<mpq_class>& bernoulli(int r) {
    static std::mutex mu;
    static std::vector<mpq_class> B{mpq_class(1)};
    std::lock_guard lock(mu);
    while (static_cast<int>(B.size()) <= r) {
        int m = static_cast<int>(B.size());
        mpq_class s = 0;
        for (int j = 0; j < m; ++j) s += mpq_class(binomial(m + 1, j)) * B[j];
        mpq_class b = -s / mpq_class(m + 1);
        b.canonicalize();
        B.push_back(b);
    }
    return B;
}

namespace {

LaurentSeries make(int lo, int T) {
    LaurentSeries s;
    s.lo = lo;
    s.T = T;
    s.c.assign(static_cast<std::size_t>(std::max(0, T - lo + 1)), 0);
    return s;
}

void set(LaurentSeries& s, int k, const mpq_class& v) {
    if (k < s.lo || k > s.T) return;
    s.c[static_cast<std::size_t>(k - s.lo)] = v;
}

LaurentSeries truncated(const LaurentSeries& s, int T) {
    LaurentSeries r = make(s.lo, std::min(T, s.T));
    for (int k = r.lo; k <= r.T; ++k) set(r, k, s.at(k));
    return r;
}

LaurentSeries power(const LaurentSeries& y, int m, int T) {
    LaurentSeries r = make(0, T);
    set(r, 0, 1);
    for (int i = 0; i < m; ++i) r = truncated(series_multiply(r, y), T);
    return r;
}

void axpy(LaurentSeries& acc, const mpq_class& a, const LaurentSeries& x) {
    for (int k = acc.lo; k <= acc.T; ++k) {
        mpq_class v = x.at(k);
        if (v != 0) acc.c[static_cast<std::size_t>(k - acc.lo)] += a * v;
    }
}

}  // namespace

LaurentSeries series_E(int l, int T) {
    LaurentSeries s = make(-l, T);
    for (int d = 1; d <= l; ++d)
        if (l % d == 0) set(s, -d, frac(mobius(l / d), l));
    return s;
}

LaurentSeries series_lambda(int l, int T) {
    LaurentSeries s = make(0, T);
    set(s, l, l);
    set(s, 2 * l, -l);
    return s;
}

LaurentSeries series_multiply(const LaurentSeries& a, const LaurentSeries& b) {
    int lo = a.lo + b.lo;
    int T = std::min(a.T + b.lo, b.T + a.lo);
    LaurentSeries r = make(lo, T);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        int ka = a.lo + static_cast<int>(i);
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            int k = ka + b.lo + static_cast<int>(j);
            if (k > T) break;
            if (b.c[j] != 0) r.c[static_cast<std::size_t>(k - lo)] += a.c[i] * b.c[j];
        }
    }
    return r;
}

LaurentSeries series_inverse(const LaurentSeries& f) {
    int v = f.valuation();
    if (v > f.T) throw std::domain_error("inverse of a zero series");
    int prec = f.T - v;  // h = f / u^v known up to u^prec
    std::vector<mpq_class> h(prec + 1), g(prec + 1);
    for (int k = 0; k <= prec; ++k) h[k] = f.at(v + k);
    g[0] = 1 / h[0];
    for (int k = 1; k <= prec; ++k) {
        mpq_class s = 0;
        for (int i = 1; i <= k; ++i)
            if (h[i] != 0) s += h[i] * g[k - i];
        g[k] = -s * g[0];
    }
    LaurentSeries r = make(-v, prec - v);
    for (int k = 0; k <= prec; ++k) set(r, k - v, g[k]);
    return r;
}

LaurentSeries series_log(const LaurentSeries& f) {
    if (f.lo > 0 || f.at(0) != 1 || f.valuation() < 0) throw std::domain_error("log needs 1 + O(u)");
    int T = f.T;
    LaurentSeries g = make(0, T);
    for (int m = 1; m <= T; ++m) {
        mpq_class s = f.at(m) * m;
        for (int k = 1; k < m; ++k) {
            mpq_class fk = f.at(m - k);
            if (fk != 0 && g.c[k] != 0) s -= mpq_class(k) * g.c[k] * fk;
        }
        g.c[m] = s / m;
    }
    return g;
}

// ---------------------------------------------------------------- polynomial ring

PolyRing::PolyRing(int n_max_, std::vector<int> caps_) : n_max(n_max_), caps(std::move(caps_)) {
    for (int w = 0; w <= n_max; ++w)
        for (auto& mu : partitions_of(w)) pmon.push_back(mu);
    for (int c : caps) wsize *= c + 1;
    int P = static_cast<int>(pmon.size());
    pmul.assign(P, std::vector<int>(P, -1));
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            if (pmon[i].size() + pmon[j].size() > n_max) continue;
            std::vector<int> u = pmon[i].parts;
            u.insert(u.end(), pmon[j].parts.begin(), pmon[j].parts.end());
            std::sort(u.rbegin(), u.rend());
            pmul[i][j] = p_index(Partition(u));
        }
    wmul.assign(wsize, std::vector<int>(wsize, -1));
    for (int i = 0; i < wsize; ++i)
        for (int j = 0; j < wsize; ++j) {
            auto a = w_exponents(i), b = w_exponents(j);
            for (std::size_t t = 0; t < a.size(); ++t) a[t] += b[t];
            wmul[i][j] = w_index(a);
        }
}

int PolyRing::p_index(const Partition& mu) const {
    if (mu.size() > n_max) return -1;
    auto it = std::find(pmon.begin(), pmon.end(), mu);
    return it == pmon.end() ? -1 : static_cast<int>(it - pmon.begin());
}

int PolyRing::w_index(const std::vector<int>& e) const {
    int idx = 0;
    for (std::size_t t = 0; t < caps.size(); ++t) {
        if (e[t] < 0 || e[t] > caps[t]) return -1;
        idx = idx * (caps[t] + 1) + e[t];
    }
    return idx;
}

std::vector<int> PolyRing::w_exponents(int wi) const {
    std::vector<int> e(caps.size());
    for (int t = static_cast<int>(caps.size()) - 1; t >= 0; --t) {
        e[t] = wi % (caps[t] + 1);
        wi /= caps[t] + 1;
    }
    return e;
}

Poly poly_zero(const PolyRing& r) { return Poly(r.size(), 0); }

Poly poly_one(const PolyRing& r) {
    Poly p = poly_zero(r);
    p[0] = 1;  // empty p-monomial, all w exponents zero
    return p;
}

namespace {

std::vector<std::size_t> nonzeros(const Poly& a) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0) nz.push_back(i);
    return nz;
}

bool is_zero(const Poly& a) {
    for (auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

void addmul(const PolyRing& r, Poly& out, const Poly& a, const std::vector<std::size_t>& na, const Poly& b,
            const std::vector<std::size_t>& nb, const mpq_class& scale) {
    const std::size_t W = static_cast<std::size_t>(r.wsize);
    mpq_class t;
    for (auto i : na) {
        const auto& prow = r.pmul[i / W];
        const auto& wrow = r.wmul[i % W];
        for (auto j : nb) {
            int pi = prow[j / W];
            if (pi < 0) continue;
            int wi = wrow[j % W];
            if (wi < 0) continue;
            mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
            if (scale != 1) t *= scale;
            out[static_cast<std::size_t>(pi) * W + static_cast<std::size_t>(wi)] += t;
        }
    }
}

}  // namespace

Poly poly_mul(const PolyRing& r, const Poly& a, const Poly& b) {
    Poly out = poly_zero(r);
    addmul(r, out, a, nonzeros(a), b, nonzeros(b), 1);
    return out;
}

// ---------------------------------------------------------------- series over the ring

Series::Series(std::shared_ptr<const PolyRing> r, int T_) : ring(std::move(r)), T(T_) {
    if (ring) c.assign(static_cast<std::size_t>(T + 1), poly_zero(*ring));
}

Series Series::constant(std::shared_ptr<const PolyRing> r, int T, const Poly& p) {
    Series s(std::move(r), T);
    s.c[0] = p;
    return s;
}

Series Series::operator+(const Series& o) const {
    Series r(ring, std::min(T, o.T));
    for (int k = 0; k <= r.T; ++k)
        for (std::size_t i = 0; i < ring->size(); ++i) r.c[k][i] = c[k][i] + o.c[k][i];
    return r;
}

Series Series::operator-(const Series& o) const {
    Series r(ring, std::min(T, o.T));
    for (int k = 0; k <= r.T; ++k)
        for (std::size_t i = 0; i < ring->size(); ++i) r.c[k][i] = c[k][i] - o.c[k][i];
    return r;
}

Series Series::operator*(const Series& o) const {
    Series r(ring, std::min(T, o.T));
    std::vector<std::vector<std::size_t>> na(r.T + 1), nb(r.T + 1);
    for (int k = 0; k <= r.T; ++k) {
        na[k] = nonzeros(c[k]);
        nb[k] = nonzeros(o.c[k]);
    }
    for (int i = 0; i <= r.T; ++i) {
        if (na[i].empty()) continue;
        for (int j = 0; i + j <= r.T; ++j) {
            if (nb[j].empty()) continue;
            addmul(*ring, r.c[i + j], c[i], na[i], o.c[j], nb[j], 1);
        }
    }
    return r;
}

Series Series::scaled(const LaurentSeries& s) const {
    if (s.lo < 0 && s.valuation() < 0) throw std::domain_error("scaling by a Laurent tail");
    Series r(ring, std::min(T, s.T));
    for (int k = 0; k <= r.T; ++k) {
        if (is_zero(c[k])) continue;
        for (int m = 0; k + m <= r.T; ++m) {
            mpq_class v = s.at(m);
            if (v == 0) continue;
            auto& dst = r.c[k + m];
            for (std::size_t i = 0; i < ring->size(); ++i)
                if (sgn(c[k][i]) != 0) dst[i] += v * c[k][i];
        }
    }
    return r;
}

Series Series::exp() const {
    if (!is_zero(c[0])) throw std::domain_error("exp needs zero constant term");
    Series F(ring, T);
    F.c[0] = poly_one(*ring);
    std::vector<std::vector<std::size_t>> nl(T + 1), nf(T + 1);
    for (int k = 1; k <= T; ++k) nl[k] = nonzeros(c[k]);
    nf[0] = nonzeros(F.c[0]);
    for (int m = 1; m <= T; ++m) {
        Poly acc = poly_zero(*ring);
        for (int k = 1; k <= m; ++k) {
            if (nl[k].empty() || nf[m - k].empty()) continue;
            addmul(*ring, acc, c[k], nl[k], F.c[m - k], nf[m - k], frac(k, m));
        }
        F.c[m] = std::move(acc);
        nf[m] = nonzeros(F.c[m]);
    }
    return F;
}

bool Series::operator==(const Series& o) const {
    if (T != o.T) return false;
    for (int k = 0; k <= T; ++k)
        for (std::size_t i = 0; i < ring->size(); ++i)
            if (c[k][i] != o.c[k][i]) return false;
    return true;
}

namespace {

// log U_l(X) = sum_j X^j a_j(u); the a_j are scalar power series up to u^T.
std::vector<LaurentSeries> logU_coefficients(int l, int T) {
    LaurentSeries E = series_E(l, T + 2 * l);
    LaurentSeries y = truncated(series_inverse(E), T);
    LaurentSeries LE = series_log(truncated(series_multiply(series_lambda(l, T + 2 * l), E), T));
    int J = T / l + 1;
    std::vector<LaurentSeries> ypow(J + 2);
    ypow[0] = power(y, 0, T);
    for (int m = 1; m <= J + 1; ++m) ypow[m] = truncated(series_multiply(ypow[m - 1], y), T);
    std::vector<LaurentSeries> a(J + 1, make(0, T));
    axpy(a[1], 1, LE);
    for (int j = 1; j <= J; ++j) {
        if (j >= 2) {
            axpy(a[j], frac(1, j), ypow[j - 1]);
            axpy(a[j], frac(-1, j - 1), ypow[j - 1]);
        }
        axpy(a[j], frac(1, 2 * j), ypow[j]);
        // B(-E+X) - B(-E) = sum_r B_r/(r(r-1)) (-y)^{r-1} ((1 - X y)^{1-r} - 1)
        for (int r = 2; l * (r - 1 + j) <= T; ++r) {
            const auto& B = bernoulli(r);
            if (B[r] == 0) continue;
            mpq_class coef = B[r] / mpq_class(r * (r - 1));
            if ((r - 1) % 2) coef = -coef;
            coef *= mpq_class(binomial(r - 2 + j, j));
            if (r - 1 + j <= J + 1)
                axpy(a[j], coef, ypow[r - 1 + j]);
            else
                axpy(a[j], coef, power(y, r - 1 + j, T));
        }
    }
    return a;
}

}  // namespace

Series log_U(const Series& X, int l) {
    auto a = logU_coefficients(l, X.T);
    Series out(X.ring, X.T);
    Series Xj = Series::constant(X.ring, X.T, poly_one(*X.ring));
    for (std::size_t j = 1; j < a.size(); ++j) {
        Xj = Xj * X;
        out = out + Xj.scaled(a[j]);
    }
    return out;
}

// ---------------------------------------------------------------- generating function

GeneratingFunction::GeneratingFunction(std::vector<int> caps_, int g_max_, int n_max_)
    : g_max(g_max_), n_max(n_max_), caps(std::move(caps_)), F(nullptr, -1) {
    auto R = std::make_shared<PolyRing>(n_max, caps);
    ring = R;
    const int T = g_max + n_max;
    const std::size_t W = static_cast<std::size_t>(R->wsize);
    const int k = static_cast<int>(caps.size());
    Series L(ring, T);
    for (int l = 1; l <= std::max(1, 2 * T); ++l) {
        Poly xden = poly_zero(*R), xnum;
        for (int d = 1; d <= l; ++d) {
            if (l % d) continue;
            int m = mobius(l / d);
            if (!m) continue;
            int pi = R->p_index(Partition{d});
            if (pi >= 0) xden[static_cast<std::size_t>(pi) * W] += frac(-m, l);
        }
        xnum = xden;
        if (l == 1) xnum[0] += 1;
        for (int d = 1; d <= l; ++d) {
            if (l % d) continue;
            int m = mobius(l / d);
            if (!m) continue;
            for (int i = 0; i < k; ++i) {
                std::vector<int> e(k, 0);
                e[i] = d;
                int wi = R->w_index(e);
                if (wi >= 0) xnum[static_cast<std::size_t>(wi)] -= frac(m, l);
            }
        }
        auto a = logU_coefficients(l, T);
        Poly pn = poly_one(*R), pd = poly_one(*R);
        bool any = false;
        for (std::size_t j = 1; j < a.size(); ++j) {
            pn = poly_mul(*R, pn, xnum);
            pd = poly_mul(*R, pd, xden);
            if (a[j].valuation() > T) continue;
            for (int m = 1; m <= T; ++m) {
                mpq_class v = a[j].at(m);
                if (v == 0) continue;
                for (std::size_t i = 0; i < R->size(); ++i) {
                    if (pn[i] == pd[i]) continue;
                    L.c[m][i] += v * (pn[i] - pd[i]);
                    any = true;
                }
            }
            if (a[j].at(0) != 0) throw std::logic_error("log U coefficient with a constant term");
        }
        (void)any;
    }
    F = L.exp();
}

SymFunction GeneratingFunction::extract(const std::vector<int>& e, int g, int n) const {
    if (g < 0 || n < 0 || g > g_max || n > n_max) throw std::out_of_range("coefficient outside the truncation");
    if (e.size() != caps.size()) throw std::invalid_argument("w exponent arity mismatch");
    int wi = ring->w_index(e);
    if (wi < 0) throw std::out_of_range("w exponent beyond the truncation caps");
    const Poly& P = F.c[g + n];
    SymFunction ps;
    ps.basis = Basis::PowerSum;
    const std::size_t W = static_cast<std::size_t>(ring->wsize);
    for (std::size_t pi = 0; pi < ring->pmon.size(); ++pi) {
        if (ring->pmon[pi].size() != n) continue;
        const mpq_class& v = P[pi * W + static_cast<std::size_t>(wi)];
        if (v != 0) ps.add(ring->pmon[pi], v);
    }
    return convert(ps, Basis::Schur);
}

// ---------------------------------------------------------------- tables

SymFunction ECTable::at(int g, int n) const {
    auto it = cells.find({g, n});
    if (it == cells.end())
        throw std::out_of_range("no table entry at (g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ")");
    return it->second;
}

namespace {

ECTable combine(const ECTable& a, const ECTable& b, const mpq_class& sb) {
    ECTable r;
    r.source = a.source;
    r.g_max = std::min(a.g_max, b.g_max);
    r.n_max = std::min(a.n_max, b.n_max);
    r.truncation = std::min(a.truncation, b.truncation);
    r.conditional = a.conditional || b.conditional;
    for (int g = 0; g <= r.g_max; ++g)
        for (int n = 0; n <= r.n_max; ++n) r.cells[{g, n}] = a.at(g, n) + b.at(g, n) * sb;
    return r;
}

}  // namespace

ECTable ECTable::operator+(const ECTable& o) const { return combine(*this, o, 1); }
ECTable ECTable::operator-(const ECTable& o) const { return combine(*this, o, -1); }

ECTable ECTable::scaled(const mpq_class& c) const {
    ECTable r = *this;
    for (auto& [k, f] : r.cells) f = c == 0 ? SymFunction{} : f * c;
    return r;
}

ECTable ECTable::shifted(int dg, const mpq_class& sign) const {
    ECTable r = *this;
    r.cells.clear();
    r.g_max = g_max + dg;
    for (int g = 0; g <= r.g_max; ++g)
        for (int n = 0; n <= n_max; ++n) {
            if (g - dg < 0) {
                r.cells[{g, n}] = SymFunction{};
                continue;
            }
            r.cells[{g, n}] = at(g - dg, n) * sign;
        }
    return r;
}

std::string ECTable::to_json() const {
    nlohmann::ordered_json j;
    j["source"] = source;
    j["g_max"] = g_max;
    j["n_max"] = n_max;
    j["truncation"] = truncation;
    j["conditional"] = conditional;
    auto cells_json = nlohmann::ordered_json::array();
    for (auto& [k, f] : cells) {
        nlohmann::ordered_json c;
        c["g"] = k.first;
        c["n"] = k.second;
        nlohmann::ordered_json s = nlohmann::ordered_json::object();
        for (auto& [p, v] : f.coeffs) {
            if (v.get_den() == 1 && v.get_num().fits_slong_p())
                s[p.str()] = v.get_num().get_si();
            else
                s[p.str()] = v.get_str();
        }
        c["schur"] = s;
        cells_json.push_back(c);
    }
    j["cells"] = cells_json;
    return j.dump(2);
}

std::string ECTable::to_csv() const {
    std::ostringstream os;
    os << "g";
    for (int n = 0; n <= n_max; ++n) os << ",n=" << n;
    os << "\n";
    for (int g = 0; g <= g_max; ++g) {
        os << g;
        for (int n = 0; n <= n_max; ++n) {
            auto it = cells.find({g, n});
            os << ",\"" << (it == cells.end() ? std::string() : it->second.str()) << "\"";
        }
        os << "\n";
    }
    return os.str();
}

std::string ECTable::to_text() const {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"g,n"};
    for (int n = 0; n <= n_max; ++n) head.push_back(std::to_string(n));
    rows.push_back(head);
    for (int g = 0; g <= g_max; ++g) {
        std::vector<std::string> r{std::to_string(g)};
        for (int n = 0; n <= n_max; ++n) {
            auto it = cells.find({g, n});
            r.push_back(it == cells.end() ? "" : it->second.str());
        }
        rows.push_back(r);
    }
    std::vector<std::size_t> w(head.size(), 0);
    for (auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    std::ostringstream os;
    for (auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << std::left << std::setw(static_cast<int>(w[i])) << r[i];
            if (i + 1 < r.size()) os << " | ";
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- specializations

namespace {

ECTable blank(const std::string& source, int g_max, int n_max) {
    ECTable t;
    t.source = source;
    t.g_max = g_max;
    t.n_max = n_max;
    t.truncation = g_max + n_max;
    return t;
}

// T_e(F - 1) at every cell
SymFunction coefficient(const GeneratingFunction& gf, const std::vector<int>& e, int g, int n) {
    auto f = gf.extract(e, g, n);
    bool zero_e = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    if (g == 0 && n == 0 && zero_e) {
        SymFunction one;
        one.add(Partition{}, 1);
        f = f - one;
    }
    return f;
}

std::string join(const std::vector<int>& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s;
}

}  // namespace

ECTable ec_general(const std::vector<int>& a, int g_max, int n_max) {
    for (int x : a)
        if (x < 0) throw std::invalid_argument("negative exponent");
    GeneratingFunction gf(a, g_max, n_max);
    int total = 0;
    for (int x : a) total += x;
    mpq_class sign = total % 2 ? -1 : 1;
    ECTable t = blank("Product(" + join(a) + ")", g_max, n_max);
    for (int g = 0; g <= g_max; ++g)
        for (int n = 0; n <= n_max; ++n) t.cells[{g, n}] = coefficient(gf, a, g, n) * sign;
    return t;
}

ECTable ec_tilde(int a, int g_max, int n_max) {
    if (a < 1) throw std::invalid_argument("Tilde needs a >= 1");
    GeneratingFunction gf({a - 1}, g_max, n_max);
    mpq_class sign = (a - 1) % 2 ? -1 : 1;
    ECTable t = blank("Tilde(" + std::to_string(a) + ")", g_max, n_max);
    for (int g = 0; g <= g_max; ++g)
        for (int n = 0; n <= n_max; ++n) {
            SymFunction s;
            for (int j = 0; j <= a - 1; ++j) s = s + coefficient(gf, {j}, g, n);
            t.cells[{g, n}] = s * sign;
        }
    return t;
}

ECTable ec_two_column(int k, int l, int g_max, int n_max) {
    if (k < 1 || l < 0) throw std::invalid_argument("two-column shape needs k >= 1, l >= 0");
    GeneratingFunction gf({k + l + 1, k}, g_max, n_max);
    std::vector<int> parts(k, 2);
    for (int i = 0; i < l; ++i) parts.push_back(1);
    ECTable t = blank("C(" + join(parts) + ")", g_max, n_max);
    mpq_class sign = l % 2 ? -1 : 1;
    for (int g = 0; g <= g_max; ++g)
        for (int n = 0; n <= n_max; ++n)
            t.cells[{g, n}] = (coefficient(gf, {k + l, k}, g, n) - coefficient(gf, {k + l + 1, k - 1}, g, n)) * sign;
    return t;
}

ECTable ec_module(const FAModuleSpec& spec, int g_max, int n_max) {
    switch (spec.kind) {
        case FAModuleSpec::Kind::Product:
            return ec_general(spec.a, g_max, n_max);
        case FAModuleSpec::Kind::Tilde:
            return ec_tilde(spec.m, g_max, n_max);
        case FAModuleSpec::Kind::C:
            break;
    }
    const Partition& lam = spec.lambda;
    if (lam.size() == 0) {
        auto t = ec_general({}, g_max, n_max);
        t.source = spec.str();
        return t;
    }
    ECTable t = blank(spec.str(), g_max, n_max);
    for (int g = 0; g <= g_max; ++g)
        for (int n = 0; n <= n_max; ++n) t.cells[{g, n}] = SymFunction{};
    for (auto& [mu, c] : schur_in_e(lam)) t = t + ec_general(mu.parts, g_max, n_max).scaled(mpq_class(static_cast<long>(c)));
    t.source = spec.str();
    return t;
}

WeightTables ec_weight_terms(int k, int g_max, int n_max, bool assume_conjecture) {
    WeightTables w;
    int m, kk, ll;
    if (k == 17) {
        m = 17;
        kk = 7;
        ll = 0;
    } else if (k == 19) {
        if (!assume_conjecture)
            throw std::invalid_argument("weight 19 depends on the vanishing of H^{19,0} in genus 3; pass the assumption flag");
        m = 19;
        kk = 5;
        ll = 6;
    } else {
        throw std::invalid_argument("weight must be 17 or 19");
    }
    auto first = g_max >= 1 ? ec_tilde(m, g_max - 1, n_max) : blank("", -1, n_max);
    auto second = g_max >= 2 ? ec_two_column(kk, ll, g_max - 2, n_max) : blank("", -1, n_max);
    // odd shift by the weight flips the sign of the Euler characteristic
    w.first = first.shifted(1, -1);
    w.second = second.shifted(2, -1);
    w.first.g_max = w.second.g_max = g_max;
    w.first.source = "weight " + std::to_string(k) + " first term";
    w.second.source = "weight " + std::to_string(k) + " second term";
    w.total = w.first + w.second;
    w.total.source = "weight " + std::to_string(k);
    w.first.conditional = w.second.conditional = w.total.conditional = k == 19;
    return w;
}

ECTable ec_weight(int k, int g_max, int n_max, bool assume_conjecture) {
    return ec_weight_terms(k, g_max, n_max, assume_conjecture).total;
}

}  // namespace gcx
