#include "gcx/hodge.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "gcx/eulerchar.hpp"
#include "gcx/homology.hpp"
#include "json.hpp"

namespace gcx {

namespace {

Partition two_five_one_six() { return Partition{2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1}; }
Partition two_seven() { return Partition{2, 2, 2, 2, 2, 2, 2}; }

nlohmann::ordered_json schur_json(const SymFunction& f) {
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (auto& [p, v] : f.coeffs) {
        if (v.get_den() == 1 && v.get_num().fits_slong_p())
            s[p.str()] = v.get_num().get_si();
        else
            s[p.str()] = v.get_str();
    }
    return s;
}

}  // namespace

FormsClass classify_forms(int k, int g) {
    if (k < 0 || g < 0) throw std::invalid_argument("classify_forms: negative argument");
    if (k > 20) throw std::invalid_argument("classify_forms: only k <= 20 is classified");
    FormsClass c;
    if (k == 0) {
        c.module = FAModuleSpec::C(Partition{});
        return c;
    }
    if (g == 1 && (k == 11 || k == 15 || k == 17 || k == 19)) c.module = FAModuleSpec::Tilde(k);
    if (g == 2 && k == 17) c.module = FAModuleSpec::C(two_seven());
    if (g == 2 && k == 19) c.module = FAModuleSpec::C(two_five_one_six());
    // genus <= 2 is unconditional; in genus >= 3 the vanishing for k = 19, 20 is assumed
    if ((k == 19 || k == 20) && g >= 3) {
        c.conditional = true;
        c.hypothesis = k == 19 ? kGenus3Hypothesis : "H^{20,0}(M-bar_{3,16}) = 0";
    }
    return c;
}

int cusp_forms_N(int k) {
    int w = k + 1;
    if (w < 4 || w % 2) return 0;
    if (w % 12 == 2) return w / 12 - 1;
    return w / 12;
}

IrrDecomposition forms_dimension(int g, int k, int n) {
    if (n < 0 || k < 0) throw std::invalid_argument("forms_dimension: negative argument");
    IrrDecomposition d;
    d.n = n;
    if (g != 1 && g != 2) throw std::invalid_argument("forms_dimension: genus must be 1 or 2");
    if (k == 0) {
        d.add(Partition::row(n), 1);
        return d;
    }
    if (g == 1) {
        int N = cusp_forms_N(k);
        if (N == 0 || n < k) return d;
        std::vector<int> hook{n - k + 1};
        for (int i = 1; i < k; ++i) hook.push_back(1);
        d.add(Partition(hook), N);
        return d;
    }
    if (k % 2 == 0) return d;
    if (k == 17) return c_arity(FAModuleSpec::C(two_seven()), n);
    if (k == 19) return c_arity(FAModuleSpec::C(two_five_one_six()), n);
    throw std::invalid_argument("forms_dimension: genus 2 supports even k, 17 and 19");
}

// ---------------------------------------------------------------------------------
// weight-zero dataset

bool W0Dataset::covers(int g, int n) const {
    if (cells.count({g, n})) return true;
    return coverage_bound >= 0 && 3 * (g - 1) + n <= coverage_bound;
}

std::map<int, IrrDecomposition> W0Dataset::at(int g, int n) const {
    if (!covers(g, n)) throw CoverageError("W0 data does not cover (" + std::to_string(g) + "," + std::to_string(n) + ")", {{g, n}});
    auto it = cells.find({g, n});
    if (it == cells.end()) return {};
    return it->second;
}

W0Dataset W0Dataset::parse(const std::string& text) {
    W0Dataset d;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("W0 data: ") + e.what());
    }
    try {
        d.source = j.value("source", "");
        d.synthetic = j.value("synthetic", false);
        d.coverage_bound = j.value("coverage_bound", -1);
        for (auto& c : j.at("cells")) {
            int g = c.at("g"), n = c.at("n");
            if (g < 0 || n < 0 || 2 * g + n < 3) throw std::invalid_argument("W0 data: unstable cell");
            auto& slot = d.cells[{g, n}];
            for (auto& deg : c.at("degrees")) {
                int k = deg.at("degree");
                IrrDecomposition dec;
                dec.n = n;
                for (auto& t : deg.at("decomposition")) {
                    Partition p(t.at("partition").get<std::vector<int>>());
                    std::int64_t m = t.at("multiplicity");
                    if (p.size() != n) throw std::invalid_argument("W0 data: partition size differs from n");
                    if (m < 0) throw std::invalid_argument("W0 data: negative multiplicity");
                    dec.add(p, m);
                }
                if (!dec.is_zero()) slot[k] = dec;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("W0 data: ") + e.what());
    }
    return d;
}

W0Dataset W0Dataset::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open W0 data file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string W0Dataset::to_json() const {
    nlohmann::ordered_json j;
    j["source"] = source;
    j["synthetic"] = synthetic;
    j["coverage_bound"] = coverage_bound;
    auto arr = nlohmann::ordered_json::array();
    for (auto& [key, degs] : cells) {
        nlohmann::ordered_json c;
        c["g"] = key.first;
        c["n"] = key.second;
        auto da = nlohmann::ordered_json::array();
        for (auto& [k, dec] : degs) {
            nlohmann::ordered_json e;
            e["degree"] = k;
            auto terms = nlohmann::ordered_json::array();
            for (auto& [p, m] : dec.terms) terms.push_back({{"partition", p.parts}, {"multiplicity", m}});
            e["decomposition"] = terms;
            da.push_back(e);
        }
        c["degrees"] = da;
        arr.push_back(c);
    }
    j["cells"] = arr;
    return j.dump(2);
}

// ---------------------------------------------------------------------------------
// arity zero assembly

namespace {

// Genus- and degree-graded symmetric sequence in power sums.
using GradedKey = std::tuple<int, int, Partition>;  // genus, degree, mu
using Graded = std::map<GradedKey, mpq_class>;

Partition merge(const Partition& a, const Partition& b) {
    std::vector<int> v = a.parts;
    v.insert(v.end(), b.parts.begin(), b.parts.end());
    std::sort(v.rbegin(), v.rend());
    return Partition(v);
}

void accumulate(Graded& out, const GradedKey& key, const mpq_class& c) {
    if (c == 0) return;
    auto& slot = out[key];
    slot += c;
    if (slot == 0) out.erase(key);
}

Graded multiply(const Graded& a, const Graded& b, int G, int N) {
    Graded r;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) {
            int gen = std::get<0>(ka) + std::get<0>(kb);
            if (gen > G || std::get<2>(ka).size() + std::get<2>(kb).size() > N) continue;
            accumulate(r, {gen, std::get<1>(ka) + std::get<1>(kb), merge(std::get<2>(ka), std::get<2>(kb))}, ca * cb);
        }
    return r;
}

// Plethystic exponential with Koszul signs; every term of A has genus >= 1.
Graded plethystic_exp(const Graded& A, int G, int N) {
    Graded L;
    for (auto& [k, c] : A) {
        auto& [gen, deg, mu] = k;
        for (int r = 1; r * gen <= G && r * mu.size() <= N; ++r) {
            std::vector<int> v;
            for (int x : mu.parts) v.push_back(r * x);
            mpq_class s = c / r;
            if (deg % 2 && r % 2 == 0) s = -s;
            accumulate(L, {r * gen, r * deg, Partition(v)}, s);
        }
    }
    Graded result{{{0, 0, Partition{}}, 1}};
    Graded power{{{0, 0, Partition{}}, 1}};
    for (int j = 1; j <= G; ++j) {
        power = multiply(power, L, G, N);
        if (power.empty()) break;
        mpq_class inv = mpq_class(1) / mpq_class(factorial(j));
        for (auto& [k, c] : power) accumulate(result, k, c * inv);
    }
    return result;
}

void add_symfunction(Graded& out, int gen, int deg, const SymFunction& powersum) {
    for (auto& [mu, c] : powersum.coeffs) accumulate(out, {gen, deg, mu}, c);
}

// omega(p_mu) = (-1)^{|mu| - l(mu)} p_mu
SymFunction twist_sign(const SymFunction& p) {
    SymFunction r;
    r.basis = Basis::PowerSum;
    for (auto& [mu, c] : p.coeffs) r.add(mu, (mu.size() - mu.length()) % 2 ? mpq_class(-c) : c);
    return r;
}

struct Reach {
    int G, N;
    // reach[flags][g][n]: flags bit 0 = epsilon-epsilon edge used, bit 1 = omega-epsilon edge used
    std::vector<std::vector<std::vector<char>>> r;
};

}  // namespace

std::vector<std::pair<int, int>> n0_required_cells(int N, int g) {
    std::vector<std::pair<int, int>> candidates;  // (g', n') with component genus g'+n'-1
    for (int m = 1; m <= N; ++m)
        for (int gp = 0; gp + m - 1 <= g; ++gp)
            if (2 * gp + m >= 3) candidates.push_back({gp, m});
    // pieces: (genus, arity); unbounded ones are cells and the omega-omega edge
    std::vector<std::pair<int, int>> unbounded{{1, 2}};
    for (auto& [gp, m] : candidates) unbounded.push_back({gp + m - 1, m});
    std::vector<std::vector<char>> R(g + 1, std::vector<char>(N + 1, 0));
    R[0][0] = 1;
    for (int a = 0; a <= g; ++a)
        for (int b = 0; b <= N; ++b)
            if (R[a][b])
                for (auto& [pg, pn] : unbounded)
                    if (a + pg <= g && b + pn <= N) R[a + pg][b + pn] = 1;
    auto with_bounded = [&](int a, int b) {
        // the two pieces that occur at most once: (1,0) and (1,1)
        for (int e = 0; e <= 1; ++e)
            for (int w = 0; w <= 1; ++w) {
                int aa = a - e - w, bb = b - w;
                if (aa >= 0 && bb >= 0 && R[aa][bb]) return true;
            }
        return false;
    };
    std::vector<std::pair<int, int>> out;
    for (auto& [gp, m] : candidates) {
        int a = g - (gp + m - 1), b = N - m;
        if (a >= 0 && b >= 0 && with_bounded(a, b)) out.push_back({gp, m});
    }
    return out;
}

N0Result n0_assembly(const Partition& lambda, int g, const W0Dataset& data) {
    const int N = lambda.size();
    if (g < 0) throw std::invalid_argument("n0_assembly: negative genus");
    N0Result res;
    auto needed = n0_required_cells(N, g);
    std::vector<std::pair<int, int>> missing;
    for (auto& c : needed)
        if (!data.covers(c.first, c.second)) missing.push_back(c);
    if (!missing.empty()) {
        std::string what = "W0 data misses cells";
        for (auto& [a, b] : missing) what += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
        throw CoverageError(what, missing);
    }
    res.cells = needed;
    Graded A;
    // the genus 1 one-edge generators: epsilon-epsilon loop and omega-omega loop
    accumulate(A, {1, 1, Partition{}}, 1);
    if (N >= 2) {
        SymFunction h2;
        h2.add(Partition::row(2), 1);
        add_symfunction(A, 1, 1, convert(h2, Basis::PowerSum));
    }
    for (auto& [gp, m] : needed)
        for (auto& [k, dec] : data.at(gp, m)) {
            // legs fused to * shift the genus by m - 1 and the degree by m, and tensor with the sign
            auto p = twist_sign(convert(to_symfunction(dec), Basis::PowerSum));
            add_symfunction(A, gp + m - 1, k + m, p);
        }
    Graded M = plethystic_exp(A, g, N);
    // at most one omega-epsilon loop: (1 + V_1[-1]) in genus 1
    Graded factor{{{0, 0, Partition{}}, 1}, {{1, 1, Partition{1}}, 1}};
    Graded Mp = multiply(factor, M, g, N);
    std::map<int, SymFunction> by_degree;
    for (auto& [k, c] : Mp) {
        auto& [gen, deg, mu] = k;
        if (gen != g || mu.size() != N) continue;
        by_degree[deg].basis = Basis::PowerSum;
        by_degree[deg].add(mu, c);
    }
    for (auto& [deg, f] : by_degree) {
        auto s = convert(f, Basis::Schur);
        auto it = s.coeffs.find(lambda);
        if (it == s.coeffs.end()) continue;
        if (it->second.get_den() != 1 || it->second < 0)
            throw ConsistencyError("n0_assembly: non-integral multiplicity " + it->second.get_str());
        res.dims[deg] = it->second.get_num();
    }
    return res;
}

// ---------------------------------------------------------------------------------
// Hodge reports

std::vector<std::pair<FAModuleSpec, std::pair<int, int>>> hodge_constituents(int k, int g, int n) {
    FAModuleSpec second;
    if (k == 17)
        second = FAModuleSpec::C(two_seven());
    else if (k == 19)
        second = FAModuleSpec::C(two_five_one_six());
    else
        throw std::invalid_argument("hodge weight must be 17 or 19");
    std::vector<std::pair<FAModuleSpec, std::pair<int, int>>> out;
    if (g - 1 >= 0 && !(g - 1 == 0 && n == 0)) out.push_back({FAModuleSpec::Tilde(k), {g - 1, n}});
    if (g - 2 >= 0 && !(g - 2 == 0 && n == 0)) out.push_back({second, {g - 2, n}});
    return out;
}

namespace {

HodgeSummand solve_summand(const FAModuleSpec& spec, int g, int n, const HodgeOptions& opt) {
    HodgeSummand s;
    s.spec = spec;
    s.g = g;
    s.n = n;
    if (predicts_vanishing(spec, g, n)) {
        s.method = "vanishing";
        s.complete = true;
        return s;
    }
    if (spec.kind == FAModuleSpec::Kind::Tilde && n == 0 && 3 * g >= 2 * spec.m && 3 * (g - 1) < 2 * spec.m) {
        // lowest nonvanishing genus in arity 0: one class in degree m
        s.method = "tilde-top";
        s.complete = true;
        s.cohomology[spec.m].add(Partition{}, 1);
        return s;
    }
    if (spec.kind == FAModuleSpec::Kind::C && n == 0 && opt.w0) {
        try {
            auto r = n0_assembly(spec.lambda, g, *opt.w0);
            s.method = "n0-assembly";
            s.complete = true;
            for (auto& [d, m] : r.dims) s.cohomology[d].add(Partition{}, mpq_class(m));
            if (opt.w0->synthetic) s.note = "weight-zero input is synthetic";
            return s;
        } catch (const CoverageError& e) {
            s.note = e.what();
        }
    }
    CohomologyOptions co;
    co.variant = opt.variant;
    co.budget = opt.budget;
    co.workers = opt.workers;
    try {
        auto r = cohomology(spec, g, n, co);
        s.method = "direct";
        s.complete = true;
        s.cohomology = r.cohomology;
    } catch (const BudgetExceeded& e) {
        s.method = "gap";
        s.complete = false;
        if (!s.note.empty()) s.note += "; ";
        s.note += e.what();
    }
    return s;
}

}  // namespace

mpz_class HodgeReport::dimension(int j) const {
    auto it = degrees.find(j);
    if (it == degrees.end()) return 0;
    return to_decomposition(it->second, n).dimension();
}

HodgeReport hodge_weight(int k, int g, int n, const HodgeOptions& opt) {
    if (k != 17 && k != 19) throw std::invalid_argument("hodge weight must be 17 or 19");
    if (k == 19 && !opt.assume_conjecture)
        throw std::invalid_argument("weight 19 depends on " + std::string(kGenus3Hypothesis) + "; pass the assumption flag");
    if (g < 0 || n < 0) throw std::invalid_argument("hodge_weight: negative argument");
    HodgeReport R;
    R.k = k;
    R.g = g;
    R.n = n;
    R.conditional = k == 19;
    if (R.conditional) R.hypothesis = kGenus3Hypothesis;
    R.complete = true;
    R.euler.basis = Basis::Schur;
    for (auto& [spec, gn] : hodge_constituents(k, g, n)) {
        auto s = solve_summand(spec, gn.first, gn.second, opt);
        R.complete = R.complete && s.complete;
        for (auto& [e, f] : s.cohomology) {
            R.degrees[e + k] = R.degrees[e + k] + f;
            R.euler = R.euler + ((e + k) % 2 ? f * mpq_class(-1) : f);
        }
        R.summands.push_back(std::move(s));
    }
    if (R.complete && opt.check_euler) {
        auto expected = ec_weight(k, g, n, true).at(g, n);
        R.expected_euler = expected;
        if (!(expected == R.euler))
            throw ConsistencyError("hodge report at (" + std::to_string(g) + "," + std::to_string(n) + ") has Euler characteristic " +
                                   R.euler.str() + ", generating function gives " + expected.str());
    }
    return R;
}

std::string HodgeReport::to_json() const {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["g"] = g;
    j["n"] = n;
    j["conditional"] = conditional;
    j["hypothesis"] = hypothesis;
    j["complete"] = complete;
    nlohmann::ordered_json deg = nlohmann::ordered_json::object();
    for (auto& [d, f] : degrees)
        if (!f.is_zero()) deg[std::to_string(d)] = schur_json(f);
    j["degrees"] = deg;
    auto arr = nlohmann::ordered_json::array();
    for (auto& s : summands) {
        nlohmann::ordered_json e;
        e["complex"] = s.spec.str();
        e["g"] = s.g;
        e["n"] = s.n;
        e["method"] = s.method;
        e["complete"] = s.complete;
        nlohmann::ordered_json c = nlohmann::ordered_json::object();
        for (auto& [d, f] : s.cohomology)
            if (!f.is_zero()) c[std::to_string(d)] = schur_json(f);
        e["cohomology"] = c;
        e["degree_shift"] = k;
        if (!s.note.empty()) e["note"] = s.note;
        arr.push_back(e);
    }
    j["summands"] = arr;
    j["euler"] = schur_json(euler);
    if (expected_euler) j["euler_check"] = {{"source", "ec_weight " + std::to_string(k)}, {"expected", schur_json(*expected_euler)}, {"match", *expected_euler == euler}};
    else
        j["euler_check"] = nullptr;
    return j.dump(2);
}

}  // namespace gcx
