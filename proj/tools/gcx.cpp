// gcx: graph complex cohomology, Euler characteristics and Hodge weight reports.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cache.hpp"
#include "gcx/eulerchar.hpp"
#include "gcx/hodge.hpp"
#include "gcx/homology.hpp"
#include "json.hpp"

using nlohmann::ordered_json;
using namespace gcx;
using gcx::cli::Cache;

namespace {

constexpr const char* kCodeVersion = "gcx-1.0.0";

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kConsistency = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------------
// job description

struct JobSpec {
    std::string command;
    std::optional<FAModuleSpec> module;
    std::string g = "0", n = "0";
    std::optional<int> degree;
    std::string variant = "full";
    int weight = 17;
    bool assume_conjecture = false;
    int gmax = 0, nmax = 0;
    std::string term = "all";
    std::string format = "json";
    std::string output;
    std::string suite = "core";
    Budget budget;
    int workers = 1;
    std::string cache_dir;
    bool use_cache = true;
    std::string w0_data;

    ordered_json to_json() const;
    static JobSpec from_json(const nlohmann::json& j);
};

ordered_json module_json(const FAModuleSpec& s) {
    ordered_json j;
    switch (s.kind) {
        case FAModuleSpec::Kind::C:
            j["kind"] = "C";
            j["lambda"] = s.lambda.parts;
            break;
        case FAModuleSpec::Kind::Tilde:
            j["kind"] = "Tilde";
            j["m"] = s.m;
            break;
        case FAModuleSpec::Kind::Product:
            j["kind"] = "Product";
            j["a"] = s.a;
            break;
    }
    return j;
}

FAModuleSpec module_from_json(const nlohmann::json& j) {
    std::string k = j.at("kind");
    if (k == "C") return FAModuleSpec::C(Partition(j.at("lambda").get<std::vector<int>>()));
    if (k == "Tilde") return FAModuleSpec::Tilde(j.at("m").get<int>());
    if (k == "Product") return FAModuleSpec::Product(j.at("a").get<std::vector<int>>());
    throw UsageError("unknown module kind '" + k + "'");
}

ordered_json budget_json(const Budget& b) {
    return {{"max_generators", b.max_generators}, {"max_matrix_entries", b.max_matrix_entries}, {"max_seconds", b.max_seconds}};
}

Budget budget_from_json(const nlohmann::json& j) {
    Budget b;
    b.max_generators = j.value("max_generators", b.max_generators);
    b.max_matrix_entries = j.value("max_matrix_entries", b.max_matrix_entries);
    b.max_seconds = j.value("max_seconds", b.max_seconds);
    return b;
}

ordered_json JobSpec::to_json() const {
    ordered_json j;
    j["command"] = command;
    if (module) j["module"] = module_json(*module);
    j["g"] = g;
    j["n"] = n;
    j["degree"] = degree ? ordered_json(*degree) : ordered_json(nullptr);
    j["variant"] = variant;
    j["weight"] = weight;
    j["assume_conjecture"] = assume_conjecture;
    j["gmax"] = gmax;
    j["nmax"] = nmax;
    j["term"] = term;
    j["format"] = format;
    j["output"] = output;
    j["suite"] = suite;
    j["budget"] = budget_json(budget);
    j["workers"] = workers;
    j["cache_dir"] = cache_dir;
    j["use_cache"] = use_cache;
    j["w0_data"] = w0_data;
    return j;
}

JobSpec JobSpec::from_json(const nlohmann::json& j) {
    JobSpec s;
    s.command = j.at("command");
    if (j.contains("module") && !j["module"].is_null()) s.module = module_from_json(j["module"]);
    s.g = j.value("g", s.g);
    s.n = j.value("n", s.n);
    if (j.contains("degree") && !j["degree"].is_null()) s.degree = j["degree"].get<int>();
    s.variant = j.value("variant", s.variant);
    s.weight = j.value("weight", s.weight);
    s.assume_conjecture = j.value("assume_conjecture", false);
    s.gmax = j.value("gmax", 0);
    s.nmax = j.value("nmax", 0);
    s.term = j.value("term", s.term);
    s.format = j.value("format", s.format);
    s.output = j.value("output", "");
    s.suite = j.value("suite", s.suite);
    if (j.contains("budget")) s.budget = budget_from_json(j["budget"]);
    s.workers = j.value("workers", 1);
    s.cache_dir = j.value("cache_dir", "");
    s.use_cache = j.value("use_cache", true);
    s.w0_data = j.value("w0_data", "");
    return s;
}

// "3", "0..4", "0-4", "1,3,5" or a mix.
std::vector<int> parse_range(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    auto num = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            throw UsageError("bad range '" + s + "'");
        }
        if (used != t.size() || v < 0) throw UsageError("bad range '" + s + "'");
        return v;
    };
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto dots = tok.find("..");
        auto dash = tok.find('-');
        if (dots != std::string::npos || dash != std::string::npos) {
            std::size_t at = dots != std::string::npos ? dots : dash;
            int a = num(tok.substr(0, at)), b = num(tok.substr(at + (dots != std::string::npos ? 2 : 1)));
            if (b < a) throw UsageError("empty range '" + tok + "'");
            for (int v = a; v <= b; ++v) out.push_back(v);
        } else {
            out.push_back(num(tok));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw UsageError("empty range '" + s + "'");
    return out;
}

// ---------------------------------------------------------------------------------
// serialization helpers

ordered_json rational_json(const mpq_class& v) {
    if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
    return v.get_str();
}

ordered_json schur_json(const SymFunction& f) {
    ordered_json s = ordered_json::object();
    for (auto& [p, v] : f.coeffs) s[p.str()] = rational_json(v);
    return s;
}

ordered_json degrees_json(const std::map<int, SymFunction>& m, std::optional<int> only) {
    ordered_json j = ordered_json::object();
    for (auto& [d, f] : m)
        if (!f.is_zero() && (!only || *only == d)) j[std::to_string(d)] = schur_json(f);
    return j;
}

std::string degrees_text(const std::map<int, SymFunction>& m, std::optional<int> only) {
    std::string s;
    for (auto& [d, f] : m) {
        if (f.is_zero() || (only && *only != d)) continue;
        if (!s.empty()) s += "; ";
        s += "H^" + std::to_string(d) + " = " + f.str();
    }
    return s.empty() ? "0" : s;
}

void emit(const JobSpec& job, const std::string& text) {
    if (job.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::filesystem::path p(job.output);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::string tmp = job.output + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + job.output);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
    std::filesystem::rename(tmp, p);
}

// Job fields that determine results; workers, output and cache location do not.
ordered_json replay_fields(const JobSpec& job) {
    auto j = job.to_json();
    j.erase("workers");
    j.erase("output");
    j.erase("cache_dir");
    j.erase("use_cache");
    return j;
}

std::string now_utc() {
    auto t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::optional<Cache> open_cache(const JobSpec& job) {
    if (!job.use_cache || job.cache_dir.empty()) return std::nullopt;
    return Cache(job.cache_dir);
}

// ---------------------------------------------------------------------------------
// cells

ordered_json cohomology_material(const FAModuleSpec& spec, int g, int n, const std::string& variant, std::optional<int> degree) {
    ordered_json m;
    m["kind"] = "cohomology";
    m["module"] = module_json(spec);
    m["g"] = g;
    m["n"] = n;
    m["degree"] = degree ? ordered_json(*degree) : ordered_json(nullptr);
    m["variant"] = variant;
    m["code_version"] = kCodeVersion;
    return m;
}

std::string compute_cohomology_cell(const FAModuleSpec& spec, int g, int n, const std::string& variant, std::optional<int> degree,
                                    const Budget& budget, int workers) {
    CohomologyOptions o;
    o.variant = parse_variant(variant);
    o.budget = budget;
    o.workers = workers;
    auto r = cohomology(spec, g, n, o);
    ordered_json j;
    j["module"] = spec.str();
    j["g"] = g;
    j["n"] = n;
    j["variant"] = variant;
    j["status"] = "complete";
    j["cohomology"] = degrees_json(r.cohomology, degree);
    j["chains"] = degrees_json(r.chains, degree);
    j["euler"] = schur_json(r.euler);
    j["shortcut"] = r.shortcut;
    j["virtual_combination"] = r.virtual_combination;
    j["plans"] = r.plans;
    auto primes = ordered_json::array();
    for (auto p : r.primes) primes.push_back(std::to_string(p));
    j["primes"] = primes;
    j["exact_fallback"] = r.exact_fallback;
    j["generators"] = r.generators;
    j["explored"] = r.explored;
    j["matrix_entries"] = r.entries;
    j["source"] = r.shortcut ? "vanishing bound on excess" : "graph complex, multi-modular ranks";
    return j.dump();
}

// Cached cohomology cell; BudgetExceeded propagates.
ordered_json cohomology_cell(const JobSpec& job, const FAModuleSpec& spec, int g, int n) {
    auto material = cohomology_material(spec, g, n, job.variant, job.degree);
    auto cache = open_cache(job);
    if (cache)
        if (auto e = cache->get(material)) return ordered_json::parse(e->payload);
    auto payload = compute_cohomology_cell(spec, g, n, job.variant, job.degree, job.budget, job.workers);
    if (cache) cache->put(material, payload, {{"created", now_utc()}, {"budget", budget_json(job.budget)}});
    return ordered_json::parse(payload);
}

ordered_json hodge_material(int k, int g, int n, const std::string& variant, const std::string& w0_hash) {
    ordered_json m;
    m["kind"] = "hodge";
    m["k"] = k;
    m["g"] = g;
    m["n"] = n;
    m["variant"] = variant;
    m["w0_sha256"] = w0_hash;
    m["code_version"] = kCodeVersion;
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HodgeReport compute_hodge(int k, int g, int n, const std::string& variant, const W0Dataset* w0, bool assume, const Budget& b,
                          int workers) {
    HodgeOptions o;
    o.budget = b;
    o.workers = workers;
    o.assume_conjecture = assume;
    o.variant = parse_variant(variant);
    o.w0 = w0;
    return hodge_weight(k, g, n, o);
}

// ---------------------------------------------------------------------------------
// commands

FAModuleSpec require_module(const JobSpec& job) {
    if (!job.module) throw UsageError("a module is required: --lambda, --tilde or --product");
    return *job.module;
}

int run_cohomology(const JobSpec& job) {
    auto spec = require_module(job);
    auto gs = parse_range(job.g), ns = parse_range(job.n);
    ordered_json report;
    report["command"] = "cohomology";
    report["code_version"] = kCodeVersion;
    report["job"] = replay_fields(job);
    bool complete = true;
    auto cells = ordered_json::array();
    for (int g : gs)
        for (int n : ns) {
            try {
                cells.push_back(cohomology_cell(job, spec, g, n));
            } catch (const BudgetExceeded& e) {
                complete = false;
                cells.push_back({{"module", spec.str()}, {"g", g}, {"n", n}, {"variant", job.variant}, {"status", "budget_exceeded"},
                                 {"detail", e.what()}, {"explored", e.partial}});
            }
        }
    report["complete"] = complete;
    report["results"] = cells;
    if (job.format == "json") {
        emit(job, report.dump(2));
    } else {
        std::ostringstream os;
        bool csv = job.format == "csv";
        os << (csv ? "g" : "g \\ n");
        for (int n : ns) os << (csv ? ",n=" : "\t| n=") << n;
        os << '\n';
        std::size_t i = 0;
        for (int g : gs) {
            os << g;
            for (std::size_t c = 0; c < ns.size(); ++c, ++i) {
                auto& cell = cells[i];
                std::string text;
                if (cell["status"] != "complete") {
                    text = "budget exceeded";
                } else {
                    std::map<int, SymFunction> m;
                    for (auto& [d, f] : cell["cohomology"].items()) {
                        SymFunction s;
                        for (auto& [p, v] : f.items())
                            s.add(Partition::parse(p), v.is_string() ? mpq_class(v.get<std::string>()) : mpq_class(v.get<long>()));
                        m[std::stoi(d)] = s;
                    }
                    text = degrees_text(m, std::nullopt);
                }
                if (csv)
                    os << ",\"" << text << '"';
                else
                    os << "\t| " << text;
            }
            os << '\n';
        }
        emit(job, os.str());
    }
    return complete ? kOk : kBudget;
}

std::string render_table(const ECTable& t, const std::string& format) {
    if (format == "csv") return t.to_csv();
    return t.to_text();
}

int run_euler(const JobSpec& job) {
    if (job.gmax < 0 || job.nmax < 0) throw UsageError("--gmax and --nmax must be nonnegative");
    std::vector<std::pair<std::string, ECTable>> sheets;
    if (job.module) {
        auto t = ec_module(*job.module, job.gmax, job.nmax);
        sheets.push_back({"module", t});
    } else {
        auto w = ec_weight_terms(job.weight, job.gmax, job.nmax, job.assume_conjecture);
        if (job.term == "all" || job.term == "first") sheets.push_back({"first", w.first});
        if (job.term == "all" || job.term == "second") sheets.push_back({"second", w.second});
        if (job.term == "all" || job.term == "total") sheets.push_back({"total", w.total});
        if (sheets.empty()) throw UsageError("--term must be first, second, total or all");
    }
    if (job.format == "json") {
        ordered_json j;
        j["command"] = "euler";
        j["code_version"] = kCodeVersion;
        j["job"] = replay_fields(job);
        ordered_json s = ordered_json::object();
        for (auto& [name, t] : sheets) s[name] = ordered_json::parse(t.to_json());
        j["sheets"] = s;
        emit(job, j.dump(2));
    } else {
        std::string out;
        for (auto& [name, t] : sheets) {
            out += "# " + t.source + (t.conditional ? " (conditional on " + std::string(kGenus3Hypothesis) + ")" : "") +
                   ", truncation u^" + std::to_string(t.truncation) + "\n";
            out += render_table(t, job.format);
            out += "\n";
        }
        emit(job, out);
    }
    return kOk;
}

// Euler characteristics of the built complexes next to the generating function.
int run_table(const JobSpec& job) {
    auto spec = require_module(job);
    auto gs = parse_range(job.g), ns = parse_range(job.n);
    auto gf = ec_module(spec, gs.back(), ns.back());
    ordered_json j;
    j["command"] = "table";
    j["code_version"] = kCodeVersion;
    j["job"] = replay_fields(job);
    bool complete = true, agree = true;
    auto cells = ordered_json::array();
    std::ostringstream os;
    bool csv = job.format == "csv";
    if (job.format != "json") os << (csv ? "g,n,chains,generating_function,match\n" : "g\tn\tchains | generating function\n");
    for (int g : gs)
        for (int n : ns) {
            ordered_json c{{"g", g}, {"n", n}};
            auto expected = gf.at(g, n);
            c["generating_function"] = schur_json(expected);
            std::string chain_text = "budget exceeded";
            try {
                CohomologyOptions o;
                o.variant = parse_variant(job.variant);
                o.budget = job.budget;
                o.workers = job.workers;
                o.chain_only = true;
                o.use_vanishing_shortcut = false;
                auto r = cohomology(spec, g, n, o);
                c["chains"] = schur_json(r.euler);
                c["match"] = r.euler == expected;
                agree = agree && r.euler == expected;
                chain_text = r.euler.str();
            } catch (const BudgetExceeded& e) {
                complete = false;
                c["chains"] = nullptr;
                c["status"] = "budget_exceeded";
            }
            if (csv)
                os << g << ',' << n << ",\"" << chain_text << "\",\"" << expected.str() << "\"," << (c.contains("match") && c["match"] == true) << '\n';
            else if (job.format != "json")
                os << g << '\t' << n << '\t' << chain_text << " | " << expected.str() << '\n';
            cells.push_back(c);
        }
    j["complete"] = complete;
    j["agree"] = agree;
    j["cells"] = cells;
    emit(job, job.format == "json" ? j.dump(2) : os.str());
    if (!agree) return kConsistency;
    return complete ? kOk : kBudget;
}

int run_hodge(const JobSpec& job) {
    auto gs = parse_range(job.g), ns = parse_range(job.n);
    std::optional<W0Dataset> w0;
    std::string w0_hash;
    if (!job.w0_data.empty()) {
        auto text = read_file(job.w0_data);
        try {
            w0 = W0Dataset::parse(text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        w0_hash = cli::sha256_hex(text);
    }
    auto cache = open_cache(job);
    ordered_json j;
    j["command"] = "hodge";
    j["code_version"] = kCodeVersion;
    j["job"] = replay_fields(job);
    bool complete = true;
    auto reports = ordered_json::array();
    std::ostringstream os;
    if (job.format != "json") os << (job.format == "csv" ? "g,n,degree,schur,complete\n" : "g\tn\tdegree\tgr_{k,0} H_c\n");
    for (int g : gs)
        for (int n : ns) {
            auto material = hodge_material(job.weight, g, n, job.variant, w0_hash);
            std::string payload;
            if (cache)
                if (auto e = cache->get(material)) payload = e->payload;
            if (payload.empty()) {
                auto r = compute_hodge(job.weight, g, n, job.variant, w0 ? &*w0 : nullptr, job.assume_conjecture, job.budget, job.workers);
                payload = r.to_json();
                if (cache && r.complete)
                    cache->put(material, payload, {{"created", now_utc()}, {"budget", budget_json(job.budget)}, {"w0_data", job.w0_data},
                                                   {"assume_conjecture", job.assume_conjecture}});
            }
            auto r = ordered_json::parse(payload);
            complete = complete && r["complete"] == true;
            if (job.format != "json") {
                std::string flag = r["complete"] == true ? "complete" : "partial";
                if (r["degrees"].empty()) os << g << (job.format == "csv" ? "," : "\t") << n << (job.format == "csv" ? ",,0," : "\t-\t0 ") << flag << '\n';
                for (auto& [d, f] : r["degrees"].items()) {
                    SymFunction s;
                    for (auto& [p, v] : f.items()) s.add(Partition::parse(p), v.is_string() ? mpq_class(v.get<std::string>()) : mpq_class(v.get<long>()));
                    if (job.format == "csv")
                        os << g << ',' << n << ',' << d << ",\"" << s.str() << "\"," << flag << '\n';
                    else
                        os << g << '\t' << n << '\t' << d << '\t' << s.str() << ' ' << flag << '\n';
                }
            }
            reports.push_back(r);
        }
    j["complete"] = complete;
    j["reports"] = reports;
    emit(job, job.format == "json" ? j.dump(2) : os.str());
    return complete ? kOk : kBudget;
}

// ---------------------------------------------------------------------------------
// consistency suite

struct Checker {
    int failures = 0;
    void expect(bool ok, const std::string& name) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    }
    template <class F>
    void run(const std::string& name, F&& f) {
        try {
            expect(f(), name);
        } catch (const std::exception& e) {
            expect(false, name + " (" + e.what() + ")");
        }
    }
};

int run_check(const JobSpec& job) {
    Checker c;
    bool full = job.suite == "full";
    if (job.suite != "core" && !full) throw UsageError("--suite must be core or full");
    c.run("rank primes are prime", [] {
        for (auto p : rank_primes())
            if (!is_prime_u64(p)) return false;
        return rank_primes().size() >= 2;
    });
    std::vector<std::tuple<FAModuleSpec, int, int>> cases{{FAModuleSpec::C(Partition::column(3)), 0, 4},
                                                           {FAModuleSpec::C({2, 1}), 1, 2},
                                                           {FAModuleSpec::C({2}), 1, 2},
                                                           {FAModuleSpec::Tilde(2), 2, 0},
                                                           {FAModuleSpec::C({2, 2}), 1, 2}};
    if (full) {
        cases.push_back({FAModuleSpec::C({2, 1}), 2, 2});
        cases.push_back({FAModuleSpec::Tilde(3), 2, 2});
        cases.push_back({FAModuleSpec::C({3, 1}), 1, 3});
    }
    for (auto& [spec, g, n] : cases) {
        std::string tag = spec.str() + " at (" + std::to_string(g) + "," + std::to_string(n) + ")";
        c.run("d^2 = 0 and equivariance for " + tag, [&] {
            auto vp = plan_for(spec, g, n);
            for (auto& [coef, plan] : vp.terms) {
                auto C = build_complex(plan, g, n, {}, Variant::Full, job.budget, job.workers);
                check_d_squared(C);
                check_equivariance(plan, C);
            }
            return true;
        });
        c.run("chains agree with the generating function for " + tag, [&] {
            CohomologyOptions o;
            o.use_vanishing_shortcut = false;
            o.budget = job.budget;
            auto r = cohomology(spec, g, n, o);
            SymFunction alt;
            for (auto& [d, f] : r.cohomology) alt = alt + (d % 2 ? f * mpq_class(-1) : f);
            return r.euler == ec_module(spec, g, n).at(g, n) && alt == r.euler;
        });
        c.run("replay at 1 and 4 workers is byte-identical for " + tag, [&] {
            return compute_cohomology_cell(spec, g, n, "full", std::nullopt, job.budget, 1) ==
                   compute_cohomology_cell(spec, g, n, "full", std::nullopt, job.budget, 4);
        });
    }
    c.run("full and star variants agree", [&] {
        CohomologyOptions a, b;
        b.variant = Variant::Star;
        auto x = cohomology(FAModuleSpec::C({2, 1}), 1, 2, a), y = cohomology(FAModuleSpec::C({2, 1}), 1, 2, b);
        return x.cohomology == y.cohomology;
    });
    c.run("weight 17 first term at (13,0) is s_{}", [] {
        SymFunction one;
        one.add(Partition{}, 1);
        return ec_weight_terms(17, 14, 0, false).first.at(13, 0) == one;
    });
    c.run("resolution identity for tilde modules", [&] {
        int a_max = full ? 5 : 3;
        for (int a = 1; a <= a_max; ++a) {
            auto t = ec_tilde(a, 4, 4);
            std::vector<ECTable> parts;
            for (int j = 0; j < a; ++j) parts.push_back(ec_general({j}, 4, 4));
            for (auto& [key, f] : t.cells) {
                SymFunction s;
                for (int j = 0; j < a; ++j) s = s + parts[j].at(key.first, key.second) * mpq_class((a - 1 - j) % 2 ? -1 : 1);
                if (!(s == f)) return false;
            }
        }
        return true;
    });
    std::cout << (c.failures ? "consistency check failed\n" : "all checks passed\n");
    return c.failures ? kConsistency : kOk;
}

// ---------------------------------------------------------------------------------
// cache administration

std::optional<std::string> recompute(const cli::CacheEntry& e) {
    auto& m = e.material;
    Budget b = e.meta.contains("budget") ? budget_from_json(e.meta["budget"]) : Budget{};
    std::string kind = m.at("kind");
    if (kind == "cohomology") {
        std::optional<int> deg;
        if (!m["degree"].is_null()) deg = m["degree"].get<int>();
        return compute_cohomology_cell(module_from_json(m["module"]), m["g"], m["n"], m["variant"], deg, b, default_workers());
    }
    if (kind == "hodge") {
        std::optional<W0Dataset> w0;
        std::string path = e.meta.value("w0_data", "");
        if (!m["w0_sha256"].get<std::string>().empty()) {
            if (path.empty() || !std::filesystem::exists(path)) return std::nullopt;
            auto text = read_file(path);
            if (cli::sha256_hex(text) != m["w0_sha256"]) return std::nullopt;
            w0 = W0Dataset::parse(text);
        }
        return compute_hodge(m["k"], m["g"], m["n"], m["variant"], w0 ? &*w0 : nullptr, e.meta.value("assume_conjecture", false), b,
                             default_workers())
            .to_json();
    }
    return std::nullopt;
}

int run_cache(const JobSpec& job, const std::string& sub, int sample, std::optional<unsigned> seed) {
    if (job.cache_dir.empty()) throw UsageError("no cache directory: pass --cache-dir or set GCX_CACHE_DIR");
    Cache cache(job.cache_dir);
    if (!cache.exists()) throw UsageError("cache directory " + job.cache_dir + " does not exist");
    auto entries = cache.entries();
    ordered_json j;
    j["command"] = "cache " + sub;
    j["cache_dir"] = job.cache_dir;
    if (sub == "stats") {
        std::map<std::string, int> versions, kinds;
        std::uintmax_t bytes = 0;
        int corrupt = 0;
        for (auto& e : entries) {
            bytes += std::filesystem::file_size(e.path);
            if (e.material.is_null()) {
                ++corrupt;
                continue;
            }
            ++versions[e.material.value("code_version", "?")];
            ++kinds[e.material.value("kind", "?")];
        }
        j["entries"] = entries.size();
        j["bytes"] = bytes;
        j["unreadable"] = corrupt;
        j["by_version"] = versions;
        j["by_kind"] = kinds;
        std::cout << j.dump(2) << '\n';
        return corrupt ? kConsistency : kOk;
    }
    if (sub == "verify") {
        std::vector<std::size_t> idx(entries.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::mt19937 rng(seed ? *seed : std::random_device{}());
        std::shuffle(idx.begin(), idx.end(), rng);
        if (sample >= 0 && static_cast<std::size_t>(sample) < idx.size()) idx.resize(sample);
        std::sort(idx.begin(), idx.end());
        int matched = 0, skipped = 0;
        auto bad = ordered_json::array();
        for (auto i : idx) {
            auto& e = entries[i];
            if (e.material.is_null()) {
                bad.push_back({{"path", e.path}, {"problem", "unreadable"}});
                continue;
            }
            if (Cache::key_of(e.material) != e.key) {
                bad.push_back({{"path", e.path}, {"problem", "key does not match material"}});
                continue;
            }
            if (e.material.value("code_version", "") != kCodeVersion) {
                ++skipped;
                continue;
            }
            std::optional<std::string> fresh;
            try {
                fresh = recompute(e);
            } catch (const BudgetExceeded&) {
                fresh.reset();
            }
            if (!fresh) {
                ++skipped;
                continue;
            }
            if (*fresh == e.payload)
                ++matched;
            else
                bad.push_back({{"path", e.path}, {"problem", "payload differs from recomputation"}});
        }
        j["checked"] = idx.size();
        j["matched"] = matched;
        j["skipped"] = skipped;
        j["corrupt"] = bad;
        std::cout << j.dump(2) << '\n';
        return bad.empty() ? kOk : kConsistency;
    }
    if (sub == "gc") {
        int removed = 0, kept = 0;
        for (auto& e : entries) {
            bool stale = e.material.is_null() || e.material.value("code_version", "") != kCodeVersion;
            if (stale) {
                std::filesystem::remove(e.path);
                ++removed;
            } else {
                ++kept;
            }
        }
        // leftover temp files from interrupted writers
        for (auto& p : std::filesystem::recursive_directory_iterator(job.cache_dir))
            if (p.is_regular_file() && p.path().string().find(".json.tmp.") != std::string::npos) std::filesystem::remove(p.path());
        j["removed"] = removed;
        j["kept"] = kept;
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    throw UsageError("cache subcommand must be stats, verify or gc");
}

int dispatch(const JobSpec& job, const std::string& cache_sub, int sample, std::optional<unsigned> seed) {
    if (job.format != "json" && job.format != "csv" && job.format != "table") throw UsageError("--format must be json, csv or table");
    parse_variant(job.variant);
    if (job.budget.max_generators == 0 || job.budget.max_matrix_entries == 0 || job.budget.max_seconds <= 0)
        throw UsageError("budgets must be positive");
    if (job.command == "cohomology") return run_cohomology(job);
    if (job.command == "euler") return run_euler(job);
    if (job.command == "table") return run_table(job);
    if (job.command == "hodge") return run_hodge(job);
    if (job.command == "check") return run_check(job);
    if (job.command == "cache") return run_cache(job, cache_sub, sample, seed);
    throw UsageError("unknown command '" + job.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gcx: decorated graph complexes, equivariant Euler characteristics and Hodge weight reports"};
    app.require_subcommand(1);
    JobSpec job;
    std::string lambda, product, job_file, save_job;
    int tilde = -1, degree = -1, sample = -1;
    unsigned seed = 0;
    bool no_cache = false;
    std::string cache_sub;
    const char* env_cache = std::getenv("GCX_CACHE_DIR");
    if (env_cache) job.cache_dir = env_cache;
    job.workers = default_workers();

    auto add_module = [&](CLI::App* s) {
        s->add_option("--lambda", lambda, "partition, e.g. 2,2,1");
        s->add_option("--tilde", tilde, "the simple quotient of C_{1^m}");
        s->add_option("--product", product, "product of column modules, e.g. 3,2");
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--format", job.format, "json, csv or table");
        s->add_option("--output,-o", job.output, "write the report here instead of stdout");
        s->add_option("--workers", job.workers, "worker threads (env GCX_WORKERS)");
        s->add_option("--cache-dir", job.cache_dir, "result cache (env GCX_CACHE_DIR)");
        s->add_flag("--no-cache", no_cache, "bypass the cache");
        s->add_option("--job", job_file, "run a saved job file; only --output is taken from the command line");
        s->add_option("--save-job", save_job, "write the job file of this run");
    };
    auto add_budget = [&](CLI::App* s) {
        s->add_option("--budget-generators", job.budget.max_generators, "maximum graphs explored");
        s->add_option("--budget-entries", job.budget.max_matrix_entries, "maximum nonzero matrix entries");
        s->add_option("--budget-seconds", job.budget.max_seconds, "wall-clock limit for enumeration");
    };
    auto add_range = [&](CLI::App* s) {
        s->add_option("--g", job.g, "genus: value, list or range a..b");
        s->add_option("--n", job.n, "arity: value, list or range a..b");
    };

    auto* coh = app.add_subcommand("cohomology", "equivariant cohomology of G_M(g,n)");
    add_module(coh);
    add_range(coh);
    add_common(coh);
    add_budget(coh);
    coh->add_option("--degree", degree, "report only this degree");
    coh->add_option("--variant", job.variant, "full or star");

    auto* eul = app.add_subcommand("euler", "Euler characteristic tables from the generating functions");
    add_module(eul);
    add_common(eul);
    eul->add_option("--weight", job.weight, "17 or 19");
    eul->add_flag("--assume-conjecture", job.assume_conjecture, "assume the genus 3 vanishing needed for weight 19");
    eul->add_option("--gmax", job.gmax, "largest genus")->required();
    eul->add_option("--nmax", job.nmax, "largest arity")->required();
    eul->add_option("--term", job.term, "first, second, total or all");

    auto* tab = app.add_subcommand("table", "chain-level Euler characteristics next to the generating function");
    add_module(tab);
    add_range(tab);
    add_common(tab);
    add_budget(tab);
    tab->add_option("--variant", job.variant, "full or star");

    auto* hod = app.add_subcommand("hodge", "gr_{k,0} H_c(M_{g,n}) reports");
    add_range(hod);
    add_common(hod);
    add_budget(hod);
    hod->add_option("--weight", job.weight, "17 or 19");
    hod->add_flag("--assume-conjecture", job.assume_conjecture, "assume the genus 3 vanishing needed for weight 19");
    hod->add_option("--w0-data", job.w0_data, "weight-zero cohomology data (JSON)");
    hod->add_option("--variant", job.variant, "full or star");

    auto* chk = app.add_subcommand("check", "internal consistency gates");
    chk->add_option("--suite", job.suite, "core or full");
    add_budget(chk);
    chk->add_option("--workers", job.workers, "worker threads");

    auto* cac = app.add_subcommand("cache", "cache administration");
    cac->add_option("action", cache_sub, "stats, verify or gc")->required();
    cac->add_option("--cache-dir", job.cache_dir, "result cache (env GCX_CACHE_DIR)");
    cac->add_option("--sample", sample, "verify only this many random entries");
    cac->add_option("--seed", seed, "seed for the verify sample");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        for (auto* s : app.get_subcommands()) job.command = s->get_name();
        if (!job_file.empty()) {
            std::string output = job.output;
            try {
                job = JobSpec::from_json(nlohmann::json::parse(read_file(job_file)));
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(std::string("bad job file: ") + e.what());
            }
            // the environment may still move the cache and set the worker count
            if (env_cache) job.cache_dir = env_cache;
            if (const char* w = std::getenv("GCX_WORKERS")) job.workers = std::max(1, std::atoi(w));
            if (!output.empty()) job.output = output;
        } else {
            int given = (!lambda.empty()) + (tilde >= 0) + (!product.empty());
            if (given > 1) throw UsageError("give only one of --lambda, --tilde, --product");
            if (!lambda.empty()) job.module = FAModuleSpec::C(Partition::parse(lambda));
            if (tilde >= 0) job.module = FAModuleSpec::Tilde(tilde);
            if (!product.empty()) {
                std::vector<int> a;
                std::stringstream ss(product);
                std::string t;
                while (std::getline(ss, t, ',')) a.push_back(std::stoi(t));
                job.module = FAModuleSpec::Product(a);
            }
            if (degree >= 0) job.degree = degree;
            if (no_cache) job.use_cache = false;
        }
        if (job.workers < 1) job.workers = 1;
        if (!save_job.empty()) {
            std::ofstream out(save_job);
            if (!out) throw UsageError("cannot write " + save_job);
            out << job.to_json().dump(2) << '\n';
        }
        return dispatch(job, cache_sub, sample, cac->count("--seed") ? std::optional<unsigned>(seed) : std::nullopt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return kConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
