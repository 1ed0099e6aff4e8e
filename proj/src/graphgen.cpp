#include "gcx/graphgen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <climits>
#include <chrono>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include "gcx/parallel.hpp"

namespace gcx {

// ---------------------------------------------------------------- schemes

DecorScheme DecorScheme::alternating(const std::vector<int>& sizes) {
    DecorScheme s;
    for (int x : sizes)
        if (x > 0) s.classes.push_back({x, true});
    return s;
}

DecorScheme DecorScheme::symmetric(const std::vector<int>& sizes) {
    DecorScheme s;
    for (int x : sizes)
        if (x > 0) s.classes.push_back({x, false});
    return s;
}

int DecorScheme::weight() const {
    int w = 0;
    for (auto& c : classes) w += c.size;
    return w;
}

std::string DecorScheme::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < classes.size(); ++i)
        s += (i ? "," : "") + std::to_string(classes[i].size) + (classes[i].alternating ? "a" : "s");
    return s + "]";
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Full:
            return "full";
        case Variant::Star:
            return "star";
        case Variant::Hat:
            return "hat";
    }
    return "full";
}

Variant parse_variant(const std::string& s) {
    if (s == "full") return Variant::Full;
    if (s == "star") return Variant::Star;
    if (s == "hat") return Variant::Hat;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

std::vector<int> GraphParams::colors() const {
    std::vector<int> c;
    if (leg_colors.empty()) {
        for (int i = 0; i < n; ++i) c.push_back(i);
        return c;
    }
    for (std::size_t k = 0; k < leg_colors.size(); ++k)
        for (int i = 0; i < leg_colors[k]; ++i) c.push_back(static_cast<int>(k));
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("leg colors do not sum to n");
    return c;
}

int default_workers() {
    if (const char* w = std::getenv("GCX_WORKERS")) {
        int v = std::atoi(w);
        if (v > 0) return v;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

// ---------------------------------------------------------------- graph basics

int Graph::other(int h) const {
    const Edge& e = edges[he[h].edge];
    return e.a == h ? e.b : e.a;
}

int Graph::num_legs() const {
    int c = 0;
    for (auto& h : he)
        if (h.edge < 0) ++c;
    return c;
}

int Graph::total_genus() const {
    int s = num_edges() - nv + 1;
    for (int x : genus) s += x;
    return s;
}

std::vector<std::vector<int>> Graph::incidence() const {
    std::vector<std::vector<int>> inc(nv);
    for (int h = 0; h < static_cast<int>(he.size()); ++h) inc[he[h].vertex].push_back(h);
    return inc;
}

void Graph::check() const {
    if (static_cast<int>(genus.size()) != nv) throw std::logic_error("graph: genus size");
    for (int h = 0; h < static_cast<int>(he.size()); ++h) {
        const auto& x = he[h];
        if (x.vertex < 0 || x.vertex >= nv) throw std::logic_error("graph: vertex out of range");
        if (x.edge >= 0) {
            const Edge& e = edges.at(x.edge);
            if (e.a != h && e.b != h) throw std::logic_error("graph: edge/half-edge mismatch");
        }
        if (x.vertex == 0 && x.label == kNoLabel) throw std::logic_error("graph: unlabeled half-edge at *");
        if (x.vertex != 0 && x.label != kNoLabel) throw std::logic_error("graph: labeled black half-edge");
    }
    for (auto& e : edges)
        if (he.at(e.a).edge != he.at(e.b).edge) throw std::logic_error("graph: inconsistent edge");
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

// Sign of an isomorphism A -> B given on half-edges: edge order times omega orders
// of the alternating classes.
int iso_sign(const Graph& A, const Graph& B, const std::vector<int>& phi, const std::vector<char>& alt) {
    std::vector<int> p(A.edges.size());
    for (std::size_t i = 0; i < A.edges.size(); ++i) p[i] = B.he[phi[A.edges[i].a]].edge;
    int s = perm_sign(p);
    for (std::size_t c = 0; c < alt.size(); ++c) {
        if (!alt[c]) continue;
        std::vector<std::pair<int, int>> pairs;
        for (int h = 0; h < static_cast<int>(A.he.size()); ++h)
            if (A.he[h].vertex == 0 && A.he[h].label == static_cast<int>(c) + 1)
                pairs.push_back({A.he[h].wedge, B.he[phi[h]].wedge});
        std::sort(pairs.begin(), pairs.end());
        std::vector<int> q;
        for (auto& pr : pairs) q.push_back(pr.second);
        // wedge positions are 0..k-1 in both graphs
        s *= perm_sign(q);
    }
    return s;
}

std::vector<char> alt_flags_from(const Graph& G) {
    int K = 0;
    for (auto& h : G.he)
        if (h.vertex == 0 && h.label != kNoLabel) K = std::max(K, h.label);
    // the graph itself does not know the class parities; callers pass them in
    return std::vector<char>(static_cast<std::size_t>(K), 1);
}

using Key4 = std::array<int, 4>;

Key4 he_key(const Graph& G, int h, const std::vector<int>* vmap) {
    const HalfEdge& x = G.he[h];
    if (x.edge < 0) return {0, x.label, x.leg_color, 0};
    int o = G.other(h);
    int t = G.he[o].vertex;
    if (vmap) t = (*vmap)[t];
    return {1, x.label, t, G.he[o].label};
}

// Half-edge bijection A -> B extending the vertex map; requires that one exists.
std::vector<int> match_half_edges(const Graph& A, const std::vector<std::vector<int>>& incA, const Graph& B,
                                  const std::vector<std::vector<int>>& incB, const std::vector<int>& vmap) {
    std::vector<int> phi(A.he.size(), -1);
    std::vector<char> used(B.he.size(), 0);
    for (int v = 0; v < A.nv; ++v) {
        int w = vmap[v];
        for (int h : incA[v]) {
            if (phi[h] >= 0) continue;
            Key4 kh = he_key(A, h, &vmap);
            int found = -1;
            for (int k : incB[w]) {
                if (used[k]) continue;
                if (he_key(B, k, nullptr) == kh) {
                    found = k;
                    break;
                }
            }
            if (found < 0) throw std::logic_error("match_half_edges: no matching half-edge");
            phi[h] = found;
            used[found] = 1;
            if (A.he[h].edge >= 0) {
                int ho = A.other(h), ko = B.other(found);
                if (used[ko] || phi[ho] >= 0) throw std::logic_error("match_half_edges: partner clash");
                phi[ho] = ko;
                used[ko] = 1;
            }
        }
    }
    return phi;
}

struct Searcher {
    const Graph& G;
    std::vector<std::vector<int>> inc;
    int V;
    bool have = false;
    std::string best, first;
    std::vector<int> best_pos, first_pos;
    std::vector<std::vector<int>> auts;

    explicit Searcher(const Graph& g) : G(g), inc(g.incidence()), V(g.nv) {}

    static int rank_into(const std::vector<std::vector<int>>& sig, std::vector<int>& out) {
        int n = static_cast<int>(sig.size());
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
        out.assign(n, 0);
        int r = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++r;
            out[idx[i]] = r;
        }
        return n ? r + 1 : 0;
    }

    std::vector<int> initial() const {
        std::vector<std::vector<int>> sig(V);
        for (int v = 0; v < V; ++v) {
            auto& s = sig[v];
            s.push_back(v == 0 ? 0 : 1);
            s.push_back(G.genus[v]);
            s.push_back(static_cast<int>(inc[v].size()));
            std::vector<int> legs, ends;
            for (int h : inc[v]) {
                const HalfEdge& x = G.he[h];
                if (x.edge < 0)
                    legs.push_back(x.label * 256 + x.leg_color);
                else
                    ends.push_back(x.label * 256 + G.he[G.other(h)].label);
            }
            std::sort(legs.begin(), legs.end());
            std::sort(ends.begin(), ends.end());
            s.push_back(static_cast<int>(legs.size()));
            s.insert(s.end(), legs.begin(), legs.end());
            s.insert(s.end(), ends.begin(), ends.end());
        }
        std::vector<int> cells;
        rank_into(sig, cells);
        return cells;
    }

    int refine(std::vector<int>& cells) const {
        int count = 1 + *std::max_element(cells.begin(), cells.end());
        std::vector<std::vector<int>> sig(V);
        while (true) {
            for (int v = 0; v < V; ++v) {
                auto& s = sig[v];
                s.clear();
                s.push_back(cells[v]);
                std::size_t start = s.size();
                for (int h : inc[v]) {
                    if (G.he[h].edge < 0) continue;
                    int o = G.other(h);
                    s.push_back((G.he[h].label * 256 + G.he[o].label) * 256 + cells[G.he[o].vertex]);
                }
                std::sort(s.begin() + static_cast<long>(start), s.end());
            }
            std::vector<int> nc;
            int c2 = rank_into(sig, nc);
            cells.swap(nc);
            if (c2 == count) return count;
            count = c2;
        }
    }

    std::string code_for(const std::vector<int>& pos) const {
        std::vector<int> ord(V);
        for (int v = 0; v < V; ++v) ord[pos[v]] = v;
        std::string s;
        s.reserve(1 + 2 * V + 4 * G.he.size());
        s.push_back(static_cast<char>(V));
        std::vector<Key4> ds;
        for (int i = 0; i < V; ++i) {
            int v = ord[i];
            s.push_back(static_cast<char>(G.genus[v]));
            s.push_back(static_cast<char>(inc[v].size()));
            ds.clear();
            for (int h : inc[v]) ds.push_back(he_key(G, h, &pos));
            std::sort(ds.begin(), ds.end());
            for (auto& d : ds)
                for (int x : d) s.push_back(static_cast<char>(static_cast<unsigned char>(x)));
        }
        return s;
    }

    void record_aut(const std::vector<int>& ref, const std::vector<int>& pos) {
        std::vector<int> ord(V);
        for (int v = 0; v < V; ++v) ord[ref[v]] = v;
        std::vector<int> perm(V);
        bool ident = true;
        for (int v = 0; v < V; ++v) {
            perm[v] = ord[pos[v]];
            if (perm[v] != v) ident = false;
        }
        if (!ident) auts.push_back(std::move(perm));
    }

    void leaf(const std::vector<int>& pos) {
        std::string c = code_for(pos);
        if (!have) {
            have = true;
            first = c;
            first_pos = pos;
            best = std::move(c);
            best_pos = pos;
            return;
        }
        if (c == first) record_aut(first_pos, pos);
        if (c < best) {
            best = std::move(c);
            best_pos = pos;
        } else if (c == best && best != first) {
            record_aut(best_pos, pos);
        }
    }

    static int find(std::vector<int>& uf, int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    }

    void dfs(std::vector<int> cells, std::vector<int>& prefix) {
        int count = refine(cells);
        if (count == V) {
            leaf(cells);
            return;
        }
        std::vector<int> ccount(count, 0);
        for (int v = 0; v < V; ++v) ccount[cells[v]]++;
        int target = -1;
        for (int c = 0; c < count; ++c)
            if (ccount[c] >= 2) {
                target = c;
                break;
            }
        std::vector<int> members;
        for (int v = 0; v < V; ++v)
            if (cells[v] == target) members.push_back(v);
        std::vector<int> explored;
        for (int x : members) {
            if (!explored.empty()) {
                std::vector<int> uf(V);
                std::iota(uf.begin(), uf.end(), 0);
                for (auto& a : auts) {
                    bool fixes = true;
                    for (int p : prefix)
                        if (a[p] != p) {
                            fixes = false;
                            break;
                        }
                    if (!fixes) continue;
                    for (int v = 0; v < V; ++v) {
                        int r1 = find(uf, v), r2 = find(uf, a[v]);
                        if (r1 != r2) uf[r1] = r2;
                    }
                }
                bool skip = false;
                for (int y : explored)
                    if (find(uf, x) == find(uf, y)) {
                        skip = true;
                        break;
                    }
                if (skip) continue;
            }
            explored.push_back(x);
            std::vector<int> c2(V);
            for (int v = 0; v < V; ++v) c2[v] = 2 * cells[v] + (v == x ? 0 : 1);
            std::vector<std::vector<int>> sig(V);
            for (int v = 0; v < V; ++v) sig[v] = {c2[v]};
            std::vector<int> c3;
            rank_into(sig, c3);
            prefix.push_back(x);
            dfs(c3, prefix);
            prefix.pop_back();
        }
    }
};

}  // namespace

Graph decode(const std::string& code) {
    Graph D;
    auto byte = [&](std::size_t i) { return static_cast<int>(static_cast<unsigned char>(code.at(i))); };
    std::size_t p = 0;
    int V = byte(p++);
    D.nv = V;
    D.genus.assign(V, 0);
    std::vector<std::vector<Key4>> ds(V);
    std::vector<std::vector<int>> ids(V);
    for (int v = 0; v < V; ++v) {
        D.genus[v] = byte(p++);
        int d = byte(p++);
        for (int i = 0; i < d; ++i) {
            Key4 k{byte(p), byte(p + 1), byte(p + 2), byte(p + 3)};
            p += 4;
            ds[v].push_back(k);
            HalfEdge h;
            h.vertex = v;
            h.label = k[1];
            if (k[0] == 0) h.leg_color = k[2];
            ids[v].push_back(static_cast<int>(D.he.size()));
            D.he.push_back(h);
        }
    }
    if (p != code.size()) throw std::logic_error("decode: trailing bytes");
    for (int u = 0; u < V; ++u) {
        for (std::size_t i = 0; i < ds[u].size(); ++i) {
            const Key4& k = ds[u][i];
            int h = ids[u][i];
            if (k[0] == 0 || D.he[h].edge >= 0) continue;
            int v = k[2];
            if (v < u) throw std::logic_error("decode: unpaired half-edge");
            Key4 want{1, k[3], u, k[1]};
            int partner = -1;
            std::size_t startj = (v == u) ? i + 1 : 0;
            for (std::size_t j = startj; j < ds[v].size(); ++j) {
                int hj = ids[v][j];
                if (D.he[hj].edge >= 0 || hj == h) continue;
                if (ds[v][j] == want) {
                    partner = hj;
                    break;
                }
            }
            if (partner < 0) throw std::logic_error("decode: no partner");
            int e = static_cast<int>(D.edges.size());
            D.edges.push_back({h, partner});
            D.he[h].edge = e;
            D.he[partner].edge = e;
        }
    }
    std::map<int, int> counter;
    for (int h : ids[0]) {
        int l = D.he[h].label;
        if (l != kEps) D.he[h].wedge = counter[l]++;
    }
    return D;
}

namespace {

CanonResult canonicalize_impl(const Graph& G, const std::vector<char>& alt, bool want_auts) {
    Searcher S(G);
    std::vector<int> prefix;
    S.dfs(S.initial(), prefix);
    CanonResult R;
    R.code = S.best;
    Graph D = decode(R.code);
    auto incD = D.incidence();
    auto phi = match_half_edges(G, S.inc, D, incD, S.best_pos);
    R.sign = iso_sign(G, D, phi, alt);
    for (auto& a : S.auts) {
        auto psi = match_half_edges(G, S.inc, G, S.inc, a);
        int s = iso_sign(G, G, psi, alt);
        if (s < 0) R.null = true;
        if (want_auts) R.auts.push_back({a, s});
    }
    // symmetries fixing every vertex: transpositions of identical half-edges
    std::vector<int> ident(G.nv);
    std::iota(ident.begin(), ident.end(), 0);
    for (int v = 0; v < G.nv && (!R.null || want_auts); ++v) {
        const auto& hs = S.inc[v];
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j) {
                int h = hs[i], k = hs[j];
                if (he_key(G, h, nullptr) != he_key(G, k, nullptr)) continue;
                std::vector<int> sigma(G.he.size());
                std::iota(sigma.begin(), sigma.end(), 0);
                std::swap(sigma[h], sigma[k]);
                if (G.he[h].edge >= 0) {
                    int o = G.other(h), o2 = G.other(k);
                    if (o != k) std::swap(sigma[o], sigma[o2]);
                }
                int s = iso_sign(G, G, sigma, alt);
                if (s < 0) R.null = true;
                if (want_auts) R.auts.push_back({ident, s});
            }
    }
    return R;
}

}  // namespace

// The class parities are not stored in the graph; labels >= 1 are treated as
// alternating unless a scheme-aware overload is used.
CanonResult canonicalize(const Graph& G, bool want_auts) { return canonicalize_impl(G, alt_flags_from(G), want_auts); }

CanonResult canonicalize_with(const Graph& G, const DecorScheme& s, bool want_auts) {
    std::vector<char> alt;
    for (auto& c : s.classes) alt.push_back(c.alternating ? 1 : 0);
    return canonicalize_impl(G, alt, want_auts);
}

std::vector<std::vector<int>> automorphism_generators(const Graph& G) {
    Searcher S(G);
    std::vector<int> prefix;
    S.dfs(S.initial(), prefix);
    std::vector<std::vector<int>> gens;
    for (auto& a : S.auts) gens.push_back(match_half_edges(G, S.inc, G, S.inc, a));
    for (int v = 0; v < G.nv; ++v) {
        const auto& hs = S.inc[v];
        for (std::size_t i = 0; i + 1 < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j) {
                int h = hs[i], k = hs[j];
                if (he_key(G, h, nullptr) != he_key(G, k, nullptr)) continue;
                std::vector<int> sigma(G.he.size());
                std::iota(sigma.begin(), sigma.end(), 0);
                std::swap(sigma[h], sigma[k]);
                if (G.he[h].edge >= 0) {
                    int o = G.other(h), o2 = G.other(k);
                    if (o != k) std::swap(sigma[o], sigma[o2]);
                }
                gens.push_back(std::move(sigma));
            }
    }
    return gens;
}

std::vector<std::vector<int>> automorphism_group(const Graph& G, std::size_t limit) {
    auto gens = automorphism_generators(G);
    std::vector<int> id(G.he.size());
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> out{id};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (auto& g : gens) {
            std::vector<int> c(id.size());
            for (std::size_t h = 0; h < id.size(); ++h) c[h] = g[out[i][h]];
            if (seen.insert(c).second) {
                out.push_back(std::move(c));
                if (out.size() > limit) throw BudgetExceeded("automorphism group too large", out.size());
            }
        }
    return out;
}

int automorphism_sign(const Graph& G, const std::vector<int>& phi, const DecorScheme& s) {
    std::vector<char> alt;
    for (auto& c : s.classes) alt.push_back(c.alternating ? 1 : 0);
    return iso_sign(G, G, phi, alt);
}

GraphKey graph_key(const Graph& G) {
    auto r = canonicalize(G, true);
    return {r.code, r.sign, r.null, r.auts};
}

// ---------------------------------------------------------------- blow-up

int excess(const BlownComponent& c) { return 3 * (c.loop_order - 1) + 2 * c.n_numbered + 3 * c.n_eps + c.n_omega; }

std::vector<BlownComponent> blow_up(const Graph& G) {
    std::vector<BlownComponent> out;
    auto inc = G.incidence();
    std::vector<int> comp(G.nv, -1);
    int nc = 0;
    for (int v = 1; v < G.nv; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> st{v};
        comp[v] = nc;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int h : inc[x]) {
                if (G.he[h].edge < 0) continue;
                int y = G.he[G.other(h)].vertex;
                if (y != 0 && comp[y] < 0) {
                    comp[y] = nc;
                    st.push_back(y);
                }
            }
        }
        ++nc;
    }
    out.resize(nc);
    std::vector<int> local(G.nv, -1);
    for (int v = 1; v < G.nv; ++v) {
        auto& c = out[comp[v]];
        local[v] = c.nv++;
        c.genus.push_back(G.genus[v]);
    }
    auto mark_kind = [](int label) { return label == kEps ? 2 : 1; };
    for (int e = 0; e < G.num_edges(); ++e) {
        int a = G.edges[e].a, b = G.edges[e].b;
        int va = G.he[a].vertex, vb = G.he[b].vertex;
        if (va != 0 && vb != 0) {
            auto& c = out[comp[va]];
            c.edges.push_back({local[va], local[vb]});
            c.edge_ids.push_back(e);
        } else if (va == 0 && vb == 0) {
            BlownComponent c;
            BlownComponent::Leg l1{-1, mark_kind(G.he[a].label), std::max(0, G.he[a].label - 1), G.he[a].wedge, 1};
            BlownComponent::Leg l2{-1, mark_kind(G.he[b].label), std::max(0, G.he[b].label - 1), G.he[b].wedge, 0};
            c.legs = {l1, l2};
            c.mark_edge_ids = {e, e};
            out.push_back(c);
        } else {
            int s = va == 0 ? a : b, t = va == 0 ? b : a;
            auto& c = out[comp[G.he[t].vertex]];
            BlownComponent::Leg l{local[G.he[t].vertex], mark_kind(G.he[s].label), std::max(0, G.he[s].label - 1),
                                  G.he[s].wedge};
            c.legs.push_back(l);
            c.mark_edge_ids.push_back(e);
        }
    }
    for (int h = 0; h < static_cast<int>(G.he.size()); ++h) {
        if (G.he[h].edge >= 0) continue;
        int v = G.he[h].vertex;
        if (v == 0) {
            BlownComponent c;
            BlownComponent::Leg l{-1, mark_kind(G.he[h].label), std::max(0, G.he[h].label - 1), G.he[h].wedge};
            l.is_numbered_at_star = true;
            l.leg_color = G.he[h].leg_color;
            c.legs = {l};
            c.mark_edge_ids = {-1};
            out.push_back(c);
        } else {
            auto& c = out[comp[v]];
            BlownComponent::Leg l{local[v], 0, G.he[h].leg_color, 0};
            c.legs.push_back(l);
            c.mark_edge_ids.push_back(-1);
        }
    }
    for (auto& c : out) {
        c.n_numbered = c.n_omega = c.n_eps = 0;
        for (auto& l : c.legs) {
            if (l.is_numbered_at_star) c.n_numbered++;
            if (l.kind == 0)
                c.n_numbered++;
            else if (l.kind == 1)
                c.n_omega++;
            else
                c.n_eps++;
        }
        // h = E - V + 1 on the component, legs excluded; a bare *-loop is a single edge
        if (c.nv == 0)
            c.loop_order = 0;
        else
            c.loop_order = static_cast<int>(c.edges.size()) - c.nv + 1;
        for (int x : c.genus) c.loop_order += x;
    }
    return out;
}

Graph reattach(const std::vector<BlownComponent>& comps) {
    Graph G;
    G.nv = 1;
    G.genus = {0};
    int maxe = -1;
    for (auto& c : comps) {
        for (int e : c.edge_ids) maxe = std::max(maxe, e);
        for (int e : c.mark_edge_ids) maxe = std::max(maxe, e);
    }
    G.edges.assign(static_cast<std::size_t>(maxe + 1), Edge{});
    auto label_of = [](const BlownComponent::Leg& l) { return l.kind == 2 ? 0 : l.color + 1; };
    for (auto& c : comps) {
        int base = G.nv;
        for (int i = 0; i < c.nv; ++i) G.genus.push_back(c.genus[i]);
        G.nv += c.nv;
        for (std::size_t i = 0; i < c.edges.size(); ++i) {
            int e = c.edge_ids[i];
            HalfEdge x, y;
            x.vertex = base + c.edges[i].first;
            y.vertex = base + c.edges[i].second;
            x.edge = y.edge = e;
            G.edges[e] = {static_cast<int>(G.he.size()), static_cast<int>(G.he.size()) + 1};
            G.he.push_back(x);
            G.he.push_back(y);
        }
        for (std::size_t i = 0; i < c.legs.size(); ++i) {
            const auto& l = c.legs[i];
            int e = c.mark_edge_ids[i];
            if (l.vertex < 0) {
                if (l.is_numbered_at_star) {
                    HalfEdge x;
                    x.vertex = 0;
                    x.label = label_of(l);
                    x.wedge = l.wedge;
                    x.leg_color = l.leg_color;
                    G.he.push_back(x);
                } else if (l.pair > static_cast<int>(i)) {
                    const auto& l2 = c.legs[l.pair];
                    HalfEdge x, y;
                    x.vertex = y.vertex = 0;
                    x.label = label_of(l);
                    x.wedge = l.wedge;
                    y.label = label_of(l2);
                    y.wedge = l2.wedge;
                    x.edge = y.edge = e;
                    G.edges[e] = {static_cast<int>(G.he.size()), static_cast<int>(G.he.size()) + 1};
                    G.he.push_back(x);
                    G.he.push_back(y);
                }
                continue;
            }
            if (l.kind == 0) {
                HalfEdge x;
                x.vertex = base + l.vertex;
                x.leg_color = l.color;
                G.he.push_back(x);
                continue;
            }
            HalfEdge s, t;
            s.vertex = 0;
            s.label = label_of(l);
            s.wedge = l.wedge;
            t.vertex = base + l.vertex;
            s.edge = t.edge = e;
            G.edges[e] = {static_cast<int>(G.he.size()), static_cast<int>(G.he.size()) + 1};
            G.he.push_back(s);
            G.he.push_back(t);
        }
    }
    return G;
}

bool is_star_graph(const Graph& G) {
    int eps_numbered = 0;
    for (auto& c : blow_up(G)) {
        if (c.n_omega > 0) continue;
        if (c.nv > 0) return false;
        eps_numbered += c.n_numbered;
    }
    return eps_numbered <= 1;
}

// ---------------------------------------------------------------- splits

std::vector<Term> star_splits(const Graph& G, Variant variant, int max_genus) {
    std::vector<Term> out;
    std::vector<int> omegas, eps;
    for (int h = 0; h < static_cast<int>(G.he.size()); ++h) {
        if (G.he[h].vertex != 0) continue;
        (G.he[h].label == kEps ? eps : omegas).push_back(h);
    }
    const bool hat = variant == Variant::Hat;
    std::size_t ne = eps.size();
    if (ne > 30) throw BudgetExceeded("too many epsilon half-edges at *", 0);
    for (int wi = -1; wi < static_cast<int>(omegas.size()); ++wi) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << ne); ++mask) {
            std::vector<char> inS(G.he.size(), 0);
            int size = 0;
            for (std::size_t i = 0; i < ne; ++i)
                if (mask >> i & 1) {
                    inS[eps[i]] = 1;
                    ++size;
                }
            if (wi >= 0) {
                inS[omegas[wi]] = 1;
                ++size;
            }
            bool loop_inside = false;
            for (int h = 0; h < static_cast<int>(G.he.size()) && !loop_inside; ++h)
                if (inS[h] && G.he[h].edge >= 0 && inS[G.other(h)]) loop_inside = true;
            if (loop_inside && !hat) continue;
            for (int gv = 0; gv <= (hat ? max_genus : 0); ++gv) {
                if (2 * gv - 2 + size + 1 <= 0) continue;
                Graph H = G;
                int v = H.nv++;
                H.genus.push_back(gv);
                for (int h = 0; h < static_cast<int>(H.he.size()); ++h)
                    if (inS[h]) {
                        H.he[h].vertex = v;
                        H.he[h].label = kNoLabel;
                        H.he[h].wedge = 0;
                    }
                HalfEdge a, b;
                a.vertex = 0;
                if (wi >= 0) {
                    a.label = G.he[omegas[wi]].label;
                    a.wedge = G.he[omegas[wi]].wedge;
                } else {
                    a.label = kEps;
                }
                b.vertex = v;
                int ia = static_cast<int>(H.he.size());
                H.he.push_back(a);
                H.he.push_back(b);
                for (auto& x : H.he)
                    if (x.edge >= 0) x.edge++;
                H.he[ia].edge = H.he[ia + 1].edge = 0;
                H.edges.insert(H.edges.begin(), Edge{ia, ia + 1});
                out.push_back({std::move(H), 1});
            }
        }
    }
    return out;
}

std::vector<Term> black_splits(const Graph& G, Variant variant) {
    std::vector<Term> out;
    auto inc = G.incidence();
    const bool hat = variant == Variant::Hat;
    for (int v = 1; v < G.nv; ++v) {
        const auto& hs = inc[v];
        int k = static_cast<int>(hs.size());
        if (k > 30) throw BudgetExceeded("vertex valence too large", 0);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << k); mask += 2) {
            // bit 0 always set: hs[0] stays at v
            int sz = __builtin_popcountll(mask);
            int rest = k - sz;
            int gv = G.genus[v];
            for (int h1 = 0; h1 <= gv; ++h1) {
                int h2 = gv - h1;
                if (2 * h1 - 2 + sz + 1 <= 0 || 2 * h2 - 2 + rest + 1 <= 0) continue;
                if (!hat && (sz < 2 || rest < 2)) continue;
                Graph H = G;
                int w = H.nv++;
                H.genus[v] = h1;
                H.genus.push_back(h2);
                for (int i = 0; i < k; ++i)
                    if (!(mask >> i & 1)) H.he[hs[i]].vertex = w;
                HalfEdge a, b;
                a.vertex = v;
                b.vertex = w;
                int ia = static_cast<int>(H.he.size());
                H.he.push_back(a);
                H.he.push_back(b);
                for (auto& x : H.he)
                    if (x.edge >= 0) x.edge++;
                H.he[ia].edge = H.he[ia + 1].edge = 0;
                H.edges.insert(H.edges.begin(), Edge{ia, ia + 1});
                out.push_back({std::move(H), 1});
            }
        }
    }
    return out;
}

std::vector<Term> loop_terms(const Graph& G) {
    std::vector<Term> out;
    for (int v = 1; v < G.nv; ++v) {
        if (G.genus[v] < 1) continue;
        Graph H = G;
        H.genus[v]--;
        HalfEdge a, b;
        a.vertex = b.vertex = v;
        int ia = static_cast<int>(H.he.size());
        H.he.push_back(a);
        H.he.push_back(b);
        for (auto& x : H.he)
            if (x.edge >= 0) x.edge++;
        H.he[ia].edge = H.he[ia + 1].edge = 0;
        H.edges.insert(H.edges.begin(), Edge{ia, ia + 1});
        out.push_back({std::move(H), 1});
    }
    return out;
}

std::vector<Term> differential_terms(const Graph& G, Variant v) {
    auto out = star_splits(G, v, 0);
    auto b = black_splits(G, v);
    for (auto& t : b) out.push_back(std::move(t));
    if (v == Variant::Hat) {
        auto l = loop_terms(G);
        for (auto& t : l) out.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------- seeds

std::vector<Graph> roses(const DecorScheme& s, int g, const std::vector<int>& leg_color_of) {
    int K = s.num_classes();
    int n = static_cast<int>(leg_color_of.size());
    std::vector<int> need(K);
    for (int c = 0; c < K; ++c) need[c] = s.classes[c].size;
    std::vector<Graph> out;
    std::vector<int> leg_label(n, 0);
    std::vector<std::pair<int, int>> loops;
    auto emit = [&]() {
        Graph G;
        std::vector<int> counter(K, 0);
        auto lab = [&](int l, HalfEdge& h) {
            h.label = l;
            if (l != kEps) h.wedge = counter[l - 1]++;
        };
        for (int i = 0; i < n; ++i) {
            HalfEdge h;
            h.vertex = 0;
            h.leg_color = leg_color_of[i];
            lab(leg_label[i], h);
            G.he.push_back(h);
        }
        for (auto [a, b] : loops) {
            HalfEdge x, y;
            x.vertex = y.vertex = 0;
            lab(a, x);
            lab(b, y);
            int e = G.num_edges();
            x.edge = y.edge = e;
            G.edges.push_back({static_cast<int>(G.he.size()), static_cast<int>(G.he.size()) + 1});
            G.he.push_back(x);
            G.he.push_back(y);
        }
        out.push_back(std::move(G));
    };
    auto rec_loops = [&](auto&& self, int remaining, int minpair) -> void {
        if (remaining == 0) {
            for (int c = 0; c < K; ++c)
                if (need[c] != 0) return;
            emit();
            return;
        }
        int total_need = 0;
        for (int c = 0; c < K; ++c) total_need += need[c];
        if (total_need > 2 * remaining) return;
        for (int a = 0; a <= K; ++a)
            for (int b = a; b <= K; ++b) {
                int code = a * (K + 1) + b;
                if (code < minpair) continue;
                if (a > 0 && need[a - 1] == 0) continue;
                if (a > 0) need[a - 1]--;
                if (b > 0 && need[b - 1] == 0) {
                    if (a > 0) need[a - 1]++;
                    continue;
                }
                if (b > 0) need[b - 1]--;
                loops.push_back({a, b});
                self(self, remaining - 1, code);
                loops.pop_back();
                if (b > 0) need[b - 1]++;
                if (a > 0) need[a - 1]++;
            }
    };
    auto rec_legs = [&](auto&& self, int i) -> void {
        if (i == n) {
            rec_loops(rec_loops, g, 0);
            return;
        }
        // legs of equal color take nondecreasing labels
        int lo = (i > 0 && leg_color_of[i - 1] == leg_color_of[i]) ? leg_label[i - 1] : 0;
        for (int l = lo; l <= K; ++l) {
            if (l > 0 && need[l - 1] == 0) continue;
            if (l > 0) need[l - 1]--;
            leg_label[i] = l;
            self(self, i + 1);
            if (l > 0) need[l - 1]++;
        }
    };
    rec_legs(rec_legs, 0);
    return out;
}

// ---------------------------------------------------------------- enumeration

bool vanishing_predicate(int N, int r, int g, int n) { return 3 * g + 2 * n + std::min(r, g) < 2 * N; }
int top_degree(int g, int n, int N) { return 3 * g + n - N; }

std::size_t GraphBasis::total() const {
    std::size_t t = 0;
    for (auto& b : by_degree) t += b.size();
    return t;
}

namespace {

struct LevelEntry {
    std::string code;
    bool null;
    bool operator<(const LevelEntry& o) const { return code < o.code; }
};

void sort_unique(std::vector<LevelEntry>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](auto& a, auto& b) { return a.code == b.code; }), v.end());
}

constexpr std::size_t kRawPerGenerator = 64;

template <class Accept>
GraphBasis bfs(const GraphParams& p, const Budget& budget, int workers, Accept&& accept_stop) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    GraphBasis B;
    const auto colors = p.colors();
    const bool hat = p.variant == Variant::Hat;
    std::map<int, std::vector<LevelEntry>> levels;
    int gmin = hat ? 0 : p.g;
    for (int gg = gmin; gg <= p.g; ++gg)
        for (auto& G : roses(p.scheme, gg, colors)) {
            auto r = canonicalize_with(G, p.scheme, false);
            levels[gg].push_back({r.code, r.null});
        }
    if (hat) {
        // leaves of positive genus hanging off an omega at * are not reached by star splits
        for (int gg = 0; gg < p.g; ++gg)
            for (int t = 1; t <= p.g - gg; ++t) {
                auto cols = colors;
                const int tail_color = 1 << 20;
                for (int i = 0; i < t; ++i) cols.push_back(tail_color);
                auto base = roses(p.scheme, gg, cols);
                std::vector<int> hs(t, 1);
                auto rec = [&](auto&& self, int i, int left) -> void {
                    if (i == t) {
                        for (auto& R : base) {
                            Graph G = R;
                            int k = 0;
                            for (int h = 0; h < static_cast<int>(R.he.size()); ++h) {
                                if (R.he[h].edge >= 0 || R.he[h].leg_color != tail_color) continue;
                                int v = G.nv++;
                                G.genus.push_back(hs[k++]);
                                HalfEdge b;
                                b.vertex = v;
                                b.edge = G.he[h].edge = G.num_edges();
                                G.he[h].leg_color = 0;
                                G.edges.push_back({h, static_cast<int>(G.he.size())});
                                G.he.push_back(b);
                            }
                            auto r = canonicalize_with(G, p.scheme, false);
                            levels[G.num_edges()].push_back({r.code, r.null});
                        }
                        return;
                    }
                    for (int h = 1; h <= left - (t - i - 1); ++h) {
                        hs[i] = h;
                        self(self, i + 1, left - h);
                    }
                };
                rec(rec, 0, p.g - gg);
            }
    }
    int e = gmin;
    std::size_t explored = 0;
    while (true) {
        auto it = levels.find(e);
        if (it == levels.end()) {
            if (levels.empty() || e > levels.rbegin()->first) break;
            ++e;
            continue;
        }
        auto& cur = it->second;
        sort_unique(cur);
        explored += cur.size();
        if (explored > budget.max_generators)
            throw BudgetExceeded("generator budget exceeded while enumerating " + p.scheme.str() + " (g=" +
                                     std::to_string(p.g) + ", n=" + std::to_string(p.n) + ")",
                                 explored);
        double el = std::chrono::duration<double>(clock::now() - t0).count();
        if (el > budget.max_seconds) throw BudgetExceeded("time budget exceeded during enumeration", explored);
        if (static_cast<int>(B.by_degree.size()) <= e) B.by_degree.resize(e + 1);
        for (auto& le : cur) {
            if (le.null && !p.keep_null) continue;
            Graph D = decode(le.code);
            if (D.total_genus() != p.g) continue;
            if (p.variant == Variant::Star && !is_star_graph(D)) continue;
            B.by_degree[e].push_back(le.code);
        }
        if (accept_stop(B)) break;
        std::vector<std::vector<LevelEntry>> chunks(cur.size());
        // raw children before deduplication, so one level cannot run far past the budget
        std::atomic<std::size_t> raw{0};
        const std::size_t raw_cap = budget.max_generators > SIZE_MAX / kRawPerGenerator ? SIZE_MAX : budget.max_generators * kRawPerGenerator;
        parallel_for(cur.size(), workers, [&](std::size_t i, int) {
            Graph G = decode(cur[i].code);
            int room = p.g - G.total_genus();
            auto kids = star_splits(G, hat ? Variant::Hat : Variant::Full, hat ? room : 0);
            if ((raw += kids.size()) > raw_cap) throw BudgetExceeded("generator budget exceeded while expanding degree " + std::to_string(e), explored);
            if (std::chrono::duration<double>(clock::now() - t0).count() > budget.max_seconds)
                throw BudgetExceeded("time budget exceeded during enumeration", explored);
            auto& out = chunks[i];
            out.reserve(kids.size());
            for (auto& t : kids) {
                auto r = canonicalize_with(t.graph, p.scheme, false);
                out.push_back({std::move(r.code), r.null});
            }
            sort_unique(out);
        });
        std::vector<LevelEntry> next;
        for (auto& c : chunks)
            for (auto& x : c) next.push_back(std::move(x));
        cur.clear();
        cur.shrink_to_fit();
        sort_unique(next);
        if (explored + next.size() > budget.max_generators)
            throw BudgetExceeded("generator budget exceeded while enumerating " + p.scheme.str() + " (g=" +
                                     std::to_string(p.g) + ", n=" + std::to_string(p.n) + ")",
                                 explored + next.size());
        if (!next.empty()) {
            auto& dst = levels[e + 1];
            for (auto& x : next) dst.push_back(std::move(x));
        }
        ++e;
    }
    B.explored = explored;
    while (!B.by_degree.empty() && B.by_degree.back().empty()) B.by_degree.pop_back();
    int N = p.scheme.weight();
    if (!hat && B.max_degree() > top_degree(p.g, p.n, N))
        throw ConsistencyError("generator above the top degree bound");
    return B;
}

}  // namespace

GraphBasis enumerate_all(const GraphParams& p, const Budget& budget, int workers) {
    if (!p.leg_colors.empty()) p.colors();
    if (p.g == 0 && p.n == 0) return {};
    int N = p.scheme.weight();
    if (p.variant != Variant::Hat && top_degree(p.g, p.n, N) < 0) return {};
    return bfs(p, budget, workers, [](const GraphBasis&) { return false; });
}

std::vector<GraphKey> enumerate_basis(const GraphParams& p, int degree, const Budget& budget, int workers) {
    auto B = enumerate_all(p, budget, workers);
    std::vector<GraphKey> out;
    if (degree < 0 || degree > B.max_degree()) return out;
    for (auto& c : B.by_degree[degree]) {
        Graph D = decode(c);
        auto r = canonicalize_with(D, p.scheme, true);
        out.push_back({r.code, r.sign, r.null, r.auts});
    }
    return out;
}

GraphBasis enumerate_until(const GraphParams& p,
                           const std::function<bool(int, const std::vector<std::string>&)>& visit,
                           const Budget& budget, int workers) {
    if (p.g == 0 && p.n == 0) return {};
    int N = p.scheme.weight();
    if (p.variant != Variant::Hat && top_degree(p.g, p.n, N) < 0) return {};
    return bfs(p, budget, workers, [&](const GraphBasis& b) {
        int e = static_cast<int>(b.by_degree.size()) - 1;
        return e >= 0 && visit(e, b.by_degree[e]);
    });
}

bool has_generator(const GraphParams& p, const Budget& budget) {
    if (p.g == 0 && p.n == 0) return false;
    int N = p.scheme.weight();
    if (p.variant != Variant::Hat && top_degree(p.g, p.n, N) < 0) return false;
    auto B = bfs(p, budget, 1, [](const GraphBasis& b) { return b.total() > 0; });
    return B.total() > 0;
}

}  // namespace gcx
