// Acceptance suite: one criterion per --criterion N (1..12), each printing a
// single PASS/FAIL line. Running without arguments executes all criteria.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "approx_ds.hpp"
#include "cut_tree.hpp"
#include "errors.hpp"
#include "expansion.hpp"
#include "generators.hpp"
#include "gomory_hu.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "maxflow.hpp"
#include "oracle.hpp"
#include "query_ds.hpp"
#include "rng.hpp"
#include "ultrametric.hpp"

using namespace mcq;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// deterministic corpus shared by criteria 1, 2, 4 and 7
struct SmallInstance {
    WeightedGraph base;
    WeightedGraph perturbed;
};

std::vector<SmallInstance> small_corpus(int count) {
    std::vector<SmallInstance> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        RngStream rng = RngStream(20'000 + static_cast<std::uint64_t>(i)).derive("corpus");
        int n = 4 + static_cast<int>(rng.uniform(9)); // 4..12
        int max_m = std::min(30, n * (n - 1) / 2);
        int m = n - 1 + static_cast<int>(rng.uniform(
                            static_cast<std::uint64_t>(max_m - (n - 1) + 1)));
        WeightedGraph base =
            gen_random_with_edges(n, m, 50, 31'000 + static_cast<std::uint64_t>(i));
        WeightedGraph pert = perturb(base, 57'000 + static_cast<std::uint64_t>(i));
        out.push_back({std::move(base), std::move(pert)});
    }
    return out;
}

bool tree_values_match_matrix(const CutTree& t,
                              const std::vector<std::vector<Capacity>>& m) {
    for (int s = 0; s < t.n; ++s)
        for (int u = s + 1; u < t.n; ++u)
            if (tree_max_flow_value(t, s, u) !=
                m[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)])
                return false;
    return true;
}

// every tree edge's bipartition is a minimum cut between its endpoints of
// exactly the edge's weight
bool tree_bipartitions_verify(const WeightedGraph& g, const CutTree& t,
                              const std::vector<std::vector<Capacity>>& m) {
    for (const TreeEdge& e : t.edges) {
        CutTree scratch = t;
        scratch.kind = TreeKind::cut_equivalent;
        Bipartition bp = tree_cut_bipartition(scratch, e.u, e.v);
        Capacity side_value = cut_value_of_side(g, bp.side);
        if (side_value !=
            m[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)])
            return false;
        // the lightest edge on the (u,v) path is the edge itself, so the
        // bipartition value equals the edge weight
        if (bp.value != tree_max_flow_value(t, e.u, e.v)) return false;
    }
    return true;
}

Outcome criterion1() {
    Outcome out;
    auto corpus = small_corpus(200);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const WeightedGraph& g = corpus[i].perturbed;
        auto matrix = all_pairs_min_cut_bruteforce(g);

        CutTree gh = build_gomory_hu(g, exact_oracle_factory());
        CutTree gus = build_gusfield(g, make_exact_oracle(g));
        CutTree exp = build_via_expansion(g, exact_oracle_factory(),
                                          90'000 + static_cast<std::uint64_t>(i));

        for (const CutTree* t : {&gh, &gus, &exp}) {
            if (!tree_values_match_matrix(*t, matrix))
                out.fail("tree values differ from brute force on instance " +
                         std::to_string(i));
            if (!tree_bipartitions_verify(g, *t, matrix))
                out.fail("tree bipartition is not a minimum cut on instance " +
                         std::to_string(i));
        }
        if (!out.pass) break;
    }
    return out;
}

Outcome criterion2() {
    Outcome out;
    auto corpus = small_corpus(200);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const WeightedGraph& g = corpus[i].perturbed;
        CutTree a = build_via_expansion(g, exact_oracle_factory(),
                                        91'000 + static_cast<std::uint64_t>(i));
        CutTree b = build_gomory_hu(g, exact_oracle_factory());

        std::multiset<Capacity> wa, wb;
        for (auto& e : a.edges) wa.insert(e.weight);
        for (auto& e : b.edges) wb.insert(e.weight);
        if (wa != wb) {
            out.fail("weight multisets differ on instance " + std::to_string(i));
            break;
        }
        auto fa = tree_bipartition_family(a);
        auto fb = tree_bipartition_family(b);
        if (fa.size() != fb.size()) {
            out.fail("family sizes differ on instance " + std::to_string(i));
            break;
        }
        for (std::size_t k = 0; k < fa.size(); ++k) {
            if (!(fa[k] == fb[k])) {
                out.fail("bipartition families differ on instance " + std::to_string(i));
                break;
            }
        }
        if (!out.pass) break;
    }
    return out;
}

Outcome criterion3() {
    Outcome out;
    struct Inst {
        const char* name;
        WeightedGraph g;
    };
    std::vector<Inst> corpus;
    corpus.push_back({"random-64", gen_random_with_edges(64, 120, 50, 301)});
    corpus.push_back({"random-256", gen_random_with_edges(256, 470, 50, 302)});
    corpus.push_back({"random-700", gen_random_with_edges(700, 1200, 30, 303)});
    corpus.push_back({"random-2000", gen_random_with_edges(2000, 2600, 10, 304)});
    corpus.push_back({"two-stars-120", gen_two_stars_path(120, 200, 305)});

    for (auto& inst : corpus) {
        ExpansionAudit audit;
        CutTree t = build_via_expansion(inst.g, exact_oracle_factory(), 777, {}, &audit);
        (void)t;
        double bound = 16.0 * std::log(static_cast<double>(inst.g.node_count())) /
                       std::log(4.0 / 3.0);
        if (audit.recursion_depth > static_cast<int>(bound))
            out.fail(std::string(inst.name) + ": depth " +
                     std::to_string(audit.recursion_depth) + " above bound");
        for (const auto& d : audit.depths)
            if (!d.sizes.within_bound)
                out.fail(std::string(inst.name) + ": CAG totals exceed 2n+3m at depth " +
                         std::to_string(d.sizes.depth));
    }
    return out;
}

Outcome criterion4() {
    Outcome out;
    ExpansionOptions opts;
    opts.fixed_source = true;
    auto corpus = small_corpus(200);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const WeightedGraph& g = corpus[i].perturbed;
        auto matrix = all_pairs_min_cut_bruteforce(g);
        CutTree t = build_via_expansion(g, exact_oracle_factory(),
                                        90'000 + static_cast<std::uint64_t>(i), opts);
        if (!tree_values_match_matrix(t, matrix))
            out.fail("fixed-source tree values differ on instance " + std::to_string(i));
        if (!tree_bipartitions_verify(g, t, matrix))
            out.fail("fixed-source bipartition invalid on instance " + std::to_string(i));
        if (!out.pass) break;
    }
    return out;
}

Outcome criterion5() {
    Outcome out;
    const Rational eps_list[] = {Rational(0, 1), Rational(1, 8), Rational(1, 4)};
    for (int i = 0; i < 100 && out.pass; ++i) {
        RngStream rng = RngStream(40'000 + static_cast<std::uint64_t>(i)).derive("c5");
        int n = 4 + static_cast<int>(rng.uniform(7)); // 4..10
        int max_m = std::min(20, n * (n - 1) / 2);
        int m = n - 1 + static_cast<int>(rng.uniform(
                            static_cast<std::uint64_t>(max_m - (n - 1) + 1)));
        WeightedGraph g = gen_random_with_edges(n, m, 20, 45'000 + static_cast<std::uint64_t>(i));
        auto matrix = all_pairs_min_cut_bruteforce(g);

        for (const Rational& eps : eps_list) {
            std::uint64_t seed = 48'000 + static_cast<std::uint64_t>(i);
            auto oracle = make_noisy_oracle(g, eps, seed);
            auto res = build_approx_ds(g, oracle, eps, seed);
            Capacity q = eps.den, p = eps.num;
            for (int s = 0; s < n && out.pass; ++s) {
                for (int t = s + 1; t < n; ++t) {
                    Capacity opt =
                        matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
                    Capacity got = res.ds.query(s, t).value.base;
                    if (got < opt || got * q * q > opt * (q + p) * (q + p)) {
                        out.fail("query outside [opt,(1+eps)^2 opt] at eps " + eps.str());
                        break;
                    }
                    if (eps.is_zero() && got != opt) {
                        out.fail("eps=0 value differs from opt");
                        break;
                    }
                }
            }
            // emulator MST: (1+eps) * path-min within [opt, (1+eps)^3 opt]
            CutTree h = flow_equivalent_from_emulator(res.emulator);
            for (int s = 0; s < n && out.pass; ++s) {
                for (int t = s + 1; t < n; ++t) {
                    Capacity opt =
                        matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
                    Capacity base = tree_max_flow_value(h, s, t);
                    if (base * (q + p) < opt * q ||
                        base * q * q > opt * (q + p) * (q + p)) {
                        out.fail("emulator MST outside [opt,(1+eps)^3 opt] at eps " +
                                 eps.str());
                        break;
                    }
                }
            }
        }
    }
    return out;
}

Outcome criterion6() {
    Outcome out;
    struct Inst {
        int n;
        int m;
    };
    for (Inst inst : {Inst{64, 120}, Inst{256, 470}, Inst{2000, 2600}}) {
        WeightedGraph g = gen_random_with_edges(inst.n, inst.m, 20, 601);
        auto oracle = make_tree_oracle(g);
        auto res = build_approx_ds(g, oracle, Rational(0, 1), 11);
        double budget = 64.0 * inst.n * std::log2(static_cast<double>(inst.n));
        if (static_cast<double>(res.audit.total_cut_queries) > budget)
            out.fail("n=" + std::to_string(inst.n) + ": " +
                     std::to_string(res.audit.total_cut_queries) + " queries exceed budget");
    }
    return out;
}

Outcome criterion7() {
    Outcome out;
    auto corpus = small_corpus(200);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const WeightedGraph& g = corpus[i].base;
        auto matrix = all_pairs_min_cut_bruteforce(g);
        CutTree t = flow_equivalent_from_complete(matrix);
        if (!tree_values_match_matrix(t, matrix)) {
            out.fail("complete-matrix MST not flow-equivalent on instance " +
                     std::to_string(i));
            break;
        }
    }
    return out;
}

Outcome criterion8() {
    Outcome out;
    int runs = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        RngStream rng = RngStream(70'000 + seed).derive("c8");
        int n = 2 + static_cast<int>(rng.uniform(199)); // 2..200
        auto synth = synthesize_ultrametric(n, rng.derive("synth"));
        RepresentingTree rec =
            recover_representing_tree(*synth.oracle, n, rng.derive("rec"));
        ++runs;
        for (int u = 0; u < n && out.pass; ++u)
            for (int v = u + 1; v < n; ++v)
                if (lca_label(rec, u, v) != lca_label(synth.tree, u, v)) {
                    out.fail("recovered labels differ at n=" + std::to_string(n));
                    break;
                }
        double budget = 64.0 * n * std::log2(std::max(n, 2));
        if (static_cast<double>(synth.oracle->query_count()) > budget)
            out.fail("query budget exceeded at n=" + std::to_string(n));
        if (!out.pass) break;
    }
    if (runs < 500) out.fail("corpus too small");

    // duplicate-label counterexample raises a controlled error
    const int n = 8;
    std::vector<std::vector<Label>> m(static_cast<std::size_t>(n),
                                      std::vector<Label>(static_cast<std::size_t>(n), Label(5)));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    auto oracle = make_matrix_distance_oracle(m);
    bool raised = false;
    try {
        recover_representing_tree(*oracle, n, RngStream(1));
    } catch (const Error& e) {
        raised = e.code() == ErrorCode::ultrametric_violation;
    }
    if (!raised) out.fail("duplicate-label input did not raise UltrametricViolation");
    return out;
}

Outcome criterion9() {
    Outcome out;
    for (std::uint64_t i = 0; i < 50; ++i) {
        RngStream rng = RngStream(80'000 + i).derive("c9");
        int n = 4 + static_cast<int>(rng.uniform(9)); // 4..12
        int max_m = std::min(24, n * (n - 1) / 2);
        int m = n - 1 + static_cast<int>(rng.uniform(
                            static_cast<std::uint64_t>(max_m - (n - 1) + 1)));
        WeightedGraph base = gen_random_with_edges(n, m, 25, 81'000 + i);
        WeightedGraph g = perturb(base, 82'000 + i);

        MaxFlowDistanceAdapter adapter(g, make_exact_oracle(g));
        RepresentingTree rec =
            recover_representing_tree(adapter, n, RngStream(83'000 + i));
        invert_labels(rec, adapter.offset());
        CutTree path = flow_equivalent_path_from_tree(rec);

        auto matrix = all_pairs_min_cut_bruteforce(base);
        for (int s = 0; s < n && out.pass; ++s)
            for (int t = s + 1; t < n; ++t)
                if (round_back(tree_max_flow_value(path, s, t), n) !=
                    matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) {
                    out.fail("rounded path value differs at instance " + std::to_string(i));
                    break;
                }
        if (!out.pass) break;
    }
    return out;
}

Outcome criterion10() {
    Outcome out;
    // exactness on small corpora
    for (std::uint64_t i = 0; i < 50 && out.pass; ++i) {
        RngStream rng = RngStream(85'000 + i).derive("c10");
        int n = 4 + static_cast<int>(rng.uniform(9));
        int max_m = std::min(26, n * (n - 1) / 2);
        int m = n - 1 + static_cast<int>(rng.uniform(
                            static_cast<std::uint64_t>(max_m - (n - 1) + 1)));
        WeightedGraph g =
            perturb(gen_random_with_edges(n, m, 25, 86'000 + i), 87'000 + i);
        CutTree t = build_gomory_hu(g, exact_oracle_factory());
        QueryDS ds(g, t);
        for (int s = 0; s < n && out.pass; ++s) {
            for (int u = 0; u < n; ++u) {
                if (s == u) continue;
                EdgeReport rep = ds.report_min_cut_edges(s, u);
                std::set<int> uniq(rep.edge_ids.begin(), rep.edge_ids.end());
                if (uniq.size() != rep.edge_ids.size()) {
                    out.fail("duplicate edge id reported");
                    break;
                }
                Bipartition bp = tree_cut_bipartition(t, s, u);
                std::vector<int> expect = crossing_edges_of_side(g, bp.side);
                std::vector<int> got(rep.edge_ids.begin(), rep.edge_ids.end());
                std::sort(got.begin(), got.end());
                if (got != expect) {
                    out.fail("reported edges differ from the tree bipartition");
                    break;
                }
            }
        }
    }
    if (!out.pass) return out;

    // output sensitivity at n = 2000
    WeightedGraph big = perturb(gen_random_with_edges(2000, 2600, 10, 880), 881);
    CutTree t = build_gomory_hu(big, exact_oracle_factory());
    QueryDS ds(big, t);
    RngStream rng(882);
    double worst = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
        int s = static_cast<int>(rng.uniform(2000));
        int u = static_cast<int>(rng.uniform(2000));
        if (s == u) continue;
        EdgeReport rep = ds.report_min_cut_edges(s, u);
        double k = static_cast<double>(rep.edge_ids.size());
        worst = std::max(worst, static_cast<double>(rep.visited_nodes) /
                                    (k + std::log2(2000.0)));
    }
    if (worst > 8.0)
        out.fail("fitted output-sensitivity constant " + std::to_string(worst) + " > 8");
    return out;
}

// ---- criterion 11: the approximate-GH failure demonstration -------------

Outcome criterion11() {
    Outcome out;
    // heavy pair 0-1 tied to a light cluster {2,3}; the (1+eps)-valid answer
    // {0,2}|{1,3} for the first query splits the cluster and the final naive
    // tree overestimates mf(0,2) by a factor ~5
    WeightedGraph g(4, {{0, 1, 40}, {0, 2, 1}, {1, 3, 1}, {2, 3, 10}});
    Rational eps(1, 4);
    Capacity q = eps.den, p = eps.num;
    const std::uint64_t oseed = 0;

    auto matrix = all_pairs_min_cut_bruteforce(g);
    CutTree naive = build_gomory_hu(g, noisy_oracle_factory(eps, oseed));

    bool naive_exceeds = false;
    for (int s = 0; s < 4; ++s)
        for (int u = s + 1; u < 4; ++u) {
            Capacity tv = tree_max_flow_value(naive, s, u);
            Capacity opt = matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)];
            if (tv * q * q > opt * (q + p) * (q + p) ||
                opt * q * q > tv * (q + p) * (q + p))
                naive_exceeds = true;
        }
    if (!naive_exceeds)
        out.fail("naive Gomory-Hu stayed within (1+eps)^2 on the crafted instance");

    auto oracle = make_noisy_oracle(g, eps, oseed);
    auto res = build_approx_ds(g, oracle, eps, oseed);
    for (int s = 0; s < 4; ++s)
        for (int u = s + 1; u < 4; ++u) {
            Capacity opt = matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)];
            Capacity got = res.ds.query(s, u).value.base;
            if (got < opt || got * q * q > opt * (q + p) * (q + p))
                out.fail("approx DS violated its contract on the same instance");
        }
    return out;
}

Outcome criterion12() {
    Outcome out;
    RngStream rng(1200);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 * (1 + static_cast<int>(rng.uniform(250))); // even n in [2, 500]
        std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                ++outdeg[static_cast<std::size_t>(rng.coin() ? u : v)];
        int good = 0;
        for (int u = 0; u < n; ++u)
            if (4 * outdeg[static_cast<std::size_t>(u)] >= n) ++good;
        if (2 * good < n) ++violations;
    }
    if (violations != 0)
        out.fail(std::to_string(violations) + " tournaments violated the out-degree property");
    return out;
}

using CriterionFn = Outcome (*)();

struct Criterion {
    int id;
    const char* title;
    CriterionFn fn;
};

const Criterion kCriteria[] = {
    {1, "exact-tree oracle equivalence", criterion1},
    {2, "simulation equality with classical Gomory-Hu", criterion2},
    {3, "depth and CAG-size audits", criterion3},
    {4, "fixed-source sufficiency", criterion4},
    {5, "approximation contract (1+eps)^2 / (1+eps)^3", criterion5},
    {6, "approx build query budget", criterion6},
    {7, "complete-matrix MST flow equivalence", criterion7},
    {8, "ultrametric recovery", criterion8},
    {9, "flow-equivalent pipeline end to end", criterion9},
    {10, "output-sensitive edge reporting", criterion10},
    {11, "approximate-GH failure demonstration", criterion11},
    {12, "tournament out-degree property", criterion12},
};

} // namespace

int main(int argc, char** argv) {
    int only = -1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
    }

    bool all_pass = true;
    for (const Criterion& c : kCriteria) {
        if (only > 0 && c.id != only) continue;
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        std::cout << "CRITERION " << c.id << " [" << c.title << "]: "
                  << (out.pass ? "PASS" : "FAIL")
                  << (out.detail.empty() ? "" : "  (" + out.detail + ")") << std::endl;
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
