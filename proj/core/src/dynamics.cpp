#include "morsedyn/dynamics.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mdyn {

void CombinatorialDynamicalSystem::set_successors(SimplexId s, const SimplexSet& succ) {
    if (succ.universe() != size())
        throw std::invalid_argument("set_successors: universe mismatch");
    if (succ.empty()) {
        pool_of_[s] = -1;
        return;
    }
    auto [it, fresh] = pool_ids_.try_emplace(succ, static_cast<int32_t>(pools_.size()));
    if (fresh) pools_.push_back(succ);
    pool_of_[s] = it->second;
}

void CombinatorialDynamicalSystem::add_edge(SimplexId s, SimplexId t) {
    SimplexSet succ = successors(s);
    succ.insert(t);
    set_successors(s, succ);
}

bool MorseDecomposition::greater(int i, int j) const {
    const auto& b = below[static_cast<size_t>(i)];
    return std::binary_search(b.begin(), b.end(), j);
}

namespace {

// Tarjan SCCs on the subgraph induced by `mask`, iterative. Components are
// emitted in reverse topological order of the condensation.
struct Condensation {
    std::vector<int> comp;               // vertex -> component id, -1 outside mask
    std::vector<std::vector<SimplexId>> members;
    std::vector<std::vector<int>> succ;  // condensation edges, deduped, no self
    std::vector<char> cyclic;            // component carries an internal edge
    std::vector<int> topo;               // component ids in topological order
};

Condensation condense(const CDS& F, const SimplexSet& mask) {
    size_t n = F.size();
    Condensation c;
    c.comp.assign(n, -1);

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0), has_self(n, 0);
    std::vector<SimplexId> stack;
    struct Frame {
        SimplexId v;
        std::vector<SimplexId> succ;
        size_t next;
    };
    std::vector<Frame> call;
    int counter = 0;

    auto masked_succ = [&](SimplexId v) {
        std::vector<SimplexId> out;
        (F.successors(v) & mask).for_each([&](SimplexId u) {
            if (u == v) has_self[v] = 1;
            else out.push_back(u);
        });
        return out;
    };

    mask.for_each([&](SimplexId root) {
        if (index[root] >= 0) return;
        call.push_back({root, masked_succ(root), 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < f.succ.size()) {
                SimplexId u = f.succ[f.next++];
                if (index[u] < 0) {
                    index[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = 1;
                    call.push_back({u, masked_succ(u), 0});
                } else if (on_stack[u]) {
                    low[f.v] = std::min(low[f.v], index[u]);
                }
                continue;
            }
            SimplexId v = f.v;
            if (low[v] == index[v]) {
                int id = static_cast<int>(c.members.size());
                c.members.emplace_back();
                SimplexId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    c.comp[w] = id;
                    c.members[static_cast<size_t>(id)].push_back(w);
                } while (w != v);
            }
            call.pop_back();
            if (!call.empty()) {
                SimplexId p = call.back().v;
                low[p] = std::min(low[p], low[v]);
            }
        }
    });

    size_t m = c.members.size();
    c.succ.resize(m);
    c.cyclic.assign(m, 0);
    for (size_t i = 0; i < m; ++i) {
        if (c.members[i].size() > 1) c.cyclic[i] = 1;
        for (SimplexId v : c.members[i]) {
            if (has_self[v]) c.cyclic[i] = 1;
            (F.successors(v) & mask).for_each([&](SimplexId u) {
                int j = c.comp[u];
                if (j != static_cast<int>(i)) c.succ[i].push_back(j);
            });
        }
        auto& s = c.succ[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    // Tarjan emits components in reverse topological order.
    c.topo.resize(m);
    for (size_t i = 0; i < m; ++i) c.topo[i] = static_cast<int>(m - 1 - i);
    return c;
}

// Per-component flags: reaches a cyclic component / reached from one.
void cyclic_flags(const Condensation& c, std::vector<char>* to_cyc, std::vector<char>* from_cyc) {
    size_t m = c.members.size();
    to_cyc->assign(m, 0);
    from_cyc->assign(m, 0);
    // Reverse topological order: successors already done.
    for (size_t i = 0; i < m; ++i) {
        int v = c.topo[static_cast<int>(m) - 1 - static_cast<int>(i)];
        auto& f = (*to_cyc)[static_cast<size_t>(v)];
        if (c.cyclic[static_cast<size_t>(v)]) f = 1;
        for (int u : c.succ[static_cast<size_t>(v)])
            if ((*to_cyc)[static_cast<size_t>(u)]) f = 1;
    }
    for (int v : c.topo) {
        if (c.cyclic[static_cast<size_t>(v)]) (*from_cyc)[static_cast<size_t>(v)] = 1;
        if ((*from_cyc)[static_cast<size_t>(v)])
            for (int u : c.succ[static_cast<size_t>(v)])
                (*from_cyc)[static_cast<size_t>(u)] = 1;
    }
}

SimplexSet invariant_part(const CDS& F, const SimplexSet& A) {
    Condensation c = condense(F, A);
    std::vector<char> to_cyc, from_cyc;
    cyclic_flags(c, &to_cyc, &from_cyc);
    SimplexSet out(F.size());
    for (size_t i = 0; i < c.members.size(); ++i)
        if (to_cyc[i] && from_cyc[i])
            for (SimplexId v : c.members[i]) out.insert(v);
    return out;
}

}  // namespace

bool is_invariant(const CDS& F, const SimplexSet& A) {
    if (A.empty()) return true;
    return invariant_part(F, A) == A;
}

SimplexSet maximal_invariant_set(const CDS& F) {
    return invariant_part(F, F.complex().full_set());
}

SimplexSet forward_closure(const CDS& F, const SimplexSet& seeds, const SimplexSet& mask) {
    SimplexSet visited(F.size());
    std::vector<SimplexId> work;
    std::vector<char> pool_done(F.pool_count(), 0);
    auto expand = [&](SimplexId v) {
        int32_t p = F.pool_of(v);
        if (p < 0 || pool_done[static_cast<size_t>(p)]) return;
        pool_done[static_cast<size_t>(p)] = 1;
        (F.pool(static_cast<size_t>(p)) & mask).for_each([&](SimplexId u) {
            if (!visited.contains(u)) {
                visited.insert(u);
                work.push_back(u);
            }
        });
    };
    seeds.for_each(expand);
    while (!work.empty()) {
        SimplexId v = work.back();
        work.pop_back();
        expand(v);
    }
    return visited;
}

bool is_isolating_neighborhood(const CDS& F, const SimplexSet& N, const SimplexSet& S) {
    const auto& K = F.complex();
    if (!is_closed(K, N)) return false;
    if (!S.subset_of(N)) return false;
    if (!is_invariant(F, S)) return false;
    SimplexSet T = N - S;
    // Heads of exits S -> T, their forward closure inside T, and whether that
    // closure re-enters S.
    SimplexSet exits(F.size());
    bool any = false;
    S.for_each([&](SimplexId v) {
        SimplexSet h = F.successors(v) & T;
        if (!h.empty()) {
            exits |= h;
            any = true;
        }
    });
    if (!any) return true;
    SimplexSet R = exits | forward_closure(F, exits, T);
    bool violated = false;
    R.for_each([&](SimplexId v) {
        if (!violated && F.successors(v).intersects(S)) violated = true;
    });
    return !violated;
}

bool is_isolated_invariant(const CDS& F, const SimplexSet& S) {
    // The candidate neighborhood must contain the image of S; otherwise the
    // walk condition is vacuous for closed sets with no room for excursions
    // (e.g. vertex singletons). Use the smallest closed admissible choice.
    SimplexSet n = S;
    S.for_each([&](SimplexId s) { n |= F.successors(s); });
    return is_isolating_neighborhood(F, closure(F.complex(), n), S);
}

MorseDecomposition minimal_morse_decomposition(const CDS& F) {
    Condensation c = condense(F, F.complex().full_set());
    size_t m = c.members.size();
    std::vector<int> morse_id(m, -1);
    MorseDecomposition md;
    // Deterministic set order: by smallest member id.
    std::vector<int> cyc;
    for (size_t i = 0; i < m; ++i)
        if (c.cyclic[i]) cyc.push_back(static_cast<int>(i));
    std::sort(cyc.begin(), cyc.end(), [&](int a, int b) {
        return *std::min_element(c.members[static_cast<size_t>(a)].begin(),
                                 c.members[static_cast<size_t>(a)].end()) <
               *std::min_element(c.members[static_cast<size_t>(b)].begin(),
                                 c.members[static_cast<size_t>(b)].end());
    });
    for (int ci : cyc) {
        morse_id[static_cast<size_t>(ci)] = static_cast<int>(md.sets.size());
        SimplexSet s(F.size());
        for (SimplexId v : c.members[static_cast<size_t>(ci)]) s.insert(v);
        md.sets.push_back(std::move(s));
    }
    // Morse sets reachable from each component, propagated along the DAG.
    size_t nm = md.sets.size();
    std::vector<SimplexSet> reach(m, SimplexSet(nm));
    for (size_t i = 0; i < m; ++i) {
        // Reverse topological scan: successors already final.
        int v = c.topo[static_cast<int>(m) - 1 - static_cast<int>(i)];
        auto& r = reach[static_cast<size_t>(v)];
        for (int u : c.succ[static_cast<size_t>(v)]) {
            r |= reach[static_cast<size_t>(u)];
            int mu = morse_id[static_cast<size_t>(u)];
            if (mu >= 0) r.insert(static_cast<SimplexId>(mu));
        }
    }
    md.below.resize(nm);
    for (int ci : cyc) {
        int i = morse_id[static_cast<size_t>(ci)];
        reach[static_cast<size_t>(ci)].for_each([&](SimplexId j) {
            md.below[static_cast<size_t>(i)].push_back(static_cast<int>(j));
        });
    }
    return md;
}

bool connections(const CDS& F, const SimplexSet& M, const SimplexSet& Mp) {
    if (M.intersects(Mp)) return true;
    return forward_closure(F, M, F.complex().full_set()).intersects(Mp);
}

bool verify_morse_decomposition(const CDS& F, const MorseDecomposition& md, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    SimplexSet seen(F.size());
    for (size_t i = 0; i < md.sets.size(); ++i) {
        const auto& s = md.sets[i];
        if (s.empty()) return fail("empty Morse set");
        if (seen.intersects(s)) return fail("Morse sets overlap");
        seen |= s;
        if (!is_invariant(F, s)) return fail("Morse set not invariant");
        if (!is_isolated_invariant(F, s)) return fail("Morse set not isolated");
    }
    if (!(seen == maximal_invariant_set(F)))
        return fail("union of Morse sets differs from the maximal invariant set");
    for (size_t i = 0; i < md.sets.size(); ++i) {
        if (md.greater(static_cast<int>(i), static_cast<int>(i)))
            return fail("order not irreflexive");
        for (int j : md.below[i]) {
            if (md.greater(j, static_cast<int>(i))) return fail("order not antisymmetric");
            for (int k : md.below[static_cast<size_t>(j)])
                if (!md.greater(static_cast<int>(i), k)) return fail("order not transitive");
        }
    }
    // Connections must agree with the order.
    for (size_t i = 0; i < md.sets.size(); ++i)
        for (size_t j = 0; j < md.sets.size(); ++j) {
            if (i == j) continue;
            if (connections(F, md.sets[i], md.sets[j]) !=
                md.greater(static_cast<int>(i), static_cast<int>(j)))
                return fail("order disagrees with connections");
        }
    return true;
}

void write_digraph(std::ostream& out, const CDS& F) {
    for (SimplexId s = 0; s < F.size(); ++s) {
        out << s << ":";
        F.successors(s).for_each([&](SimplexId t) { out << ' ' << t; });
        out << '\n';
    }
}

CDS read_digraph(std::istream& in, const SimplicialComplex& K) {
    CDS F(K);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("read_digraph: missing ':' in line: " + line);
        SimplexId s = static_cast<SimplexId>(std::stoul(line.substr(0, colon)));
        if (s >= K.size()) throw std::runtime_error("read_digraph: id out of range");
        SimplexSet succ(K.size());
        std::istringstream rest(line.substr(colon + 1));
        unsigned long t;
        while (rest >> t) {
            if (t >= K.size()) throw std::runtime_error("read_digraph: id out of range");
            succ.insert(static_cast<SimplexId>(t));
        }
        F.set_successors(s, succ);
    }
    return F;
}

}  // namespace mdyn
