#include "mincutquery.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "approx_ds.hpp"
#include "cut_tree.hpp"
#include "errors.hpp"
#include "expansion.hpp"
#include "generators.hpp"
#include "gomory_hu.hpp"
#include "io.hpp"
#include "maxflow.hpp"
#include "oracle.hpp"
#include "query_ds.hpp"
#include "ultrametric.hpp"

using nlohmann::json;

struct mcq_graph {
    mcq::WeightedGraph g;
};
struct mcq_tree {
    mcq::CutTree t;
};
struct mcq_approx_ds {
    mcq::ApproxMinCutDS ds;
    mcq::FlowEmulator emulator;
};
struct mcq_query_ds {
    mcq::QueryDS q;
};

namespace {

thread_local std::string g_last_error;

mcq_status status_of(const mcq::Error& e) {
    using mcq::ErrorCode;
    switch (e.code()) {
    case ErrorCode::invalid_query:
    case ErrorCode::invalid_input:
    case ErrorCode::invalid_partition:
    case ErrorCode::invalid_matrix:
    case ErrorCode::invalid_tree:
    case ErrorCode::wrong_source:
    case ErrorCode::wrong_tree_kind:
    case ErrorCode::non_binary_tree:
        return MCQ_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse_error:
    case ErrorCode::version_mismatch:
        return MCQ_ERR_PARSE;
    case ErrorCode::disconnected:
        return MCQ_ERR_DISCONNECTED;
    case ErrorCode::oracle_scale_exceeded:
    case ErrorCode::double_scale:
        return MCQ_ERR_SCALE;
    case ErrorCode::restart_budget_exhausted:
    case ErrorCode::pivot_budget_exhausted:
    case ErrorCode::empty_candidate_set:
        return MCQ_ERR_BUDGET;
    case ErrorCode::ultrametric_violation:
    case ErrorCode::crossing_cut:
    case ErrorCode::emulator_disconnected:
        return MCQ_ERR_VALIDATION;
    case ErrorCode::io_error:
        return MCQ_ERR_IO;
    case ErrorCode::internal_error:
        return MCQ_ERR_INTERNAL;
    }
    return MCQ_ERR_INTERNAL;
}

template <typename Fn>
mcq_status guarded(Fn&& fn) {
    try {
        fn();
        return MCQ_OK;
    } catch (const mcq::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MCQ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return MCQ_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

mcq::OraclePtr make_oracle(const mcq::WeightedGraph& g, const std::string& kind,
                           const mcq::Rational& eps, std::uint64_t seed) {
    if (kind == "exact") return mcq::make_exact_oracle(g);
    if (kind == "noisy") return mcq::make_noisy_oracle(g, eps, seed);
    if (kind == "tree") return mcq::make_tree_oracle(g);
    mcq::raise(mcq::ErrorCode::invalid_input, "unknown oracle kind '" + kind + "'");
}

mcq::OracleFactory make_factory(const std::string& kind, const mcq::Rational& eps,
                                std::uint64_t seed) {
    if (kind == "exact") return mcq::exact_oracle_factory();
    if (kind == "noisy") return mcq::noisy_oracle_factory(eps, seed);
    if (kind == "tree")
        return [](const mcq::WeightedGraph& g) { return mcq::make_tree_oracle(g); };
    mcq::raise(mcq::ErrorCode::invalid_input, "unknown oracle kind '" + kind + "'");
}

json expansion_audit_json(const mcq::ExpansionAudit& audit) {
    json depths = json::array();
    for (const auto& d : audit.depths) {
        depths.push_back({{"depth", d.sizes.depth},
                          {"cag_count", d.sizes.cag_count},
                          {"total_nodes", d.sizes.total_nodes},
                          {"total_edges", d.sizes.total_edges},
                          {"bound_2n_3m", d.sizes.bound_2n_3m},
                          {"within_bound", d.sizes.within_bound},
                          {"pivot_retries", d.pivot_retries},
                          {"oracle_query_counts",
                           {{"cut_queries", d.cut_queries},
                            {"value_queries", d.value_queries}}}});
    }
    return json{{"algorithm", "expansion"},
                {"depths", std::move(depths)},
                {"recursion_depth", audit.recursion_depth},
                {"restarts", audit.restarts}};
}

} // namespace

extern "C" {

const char* mcq_last_error(void) { return g_last_error.c_str(); }

void mcq_string_free(char* s) { delete[] s; }

mcq_status mcq_graph_parse(const char* text, mcq_graph** out) {
    return guarded([&] {
        if (!text || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = new mcq_graph{mcq::parse_graph(text)};
    });
}

mcq_status mcq_graph_read_file(const char* path, mcq_graph** out) {
    return guarded([&] {
        if (!path || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = new mcq_graph{mcq::read_graph_file(path)};
    });
}

mcq_status mcq_graph_to_text(const mcq_graph* g, char** out) {
    return guarded([&] {
        if (!g || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = dup_string(mcq::write_graph(g->g));
    });
}

mcq_status mcq_graph_write_file(const mcq_graph* g, const char* path) {
    return guarded([&] {
        if (!g || !path) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::write_graph_file(g->g, path);
    });
}

mcq_status mcq_graph_generate(const char* kind, int n, int param, int64_t maxcap,
                              uint64_t seed, mcq_graph** out) {
    return guarded([&] {
        if (!kind || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        std::string k = kind;
        if (k == "random")
            *out = new mcq_graph{mcq::gen_random_with_edges(n, param, maxcap, seed)};
        else if (k == "gnp")
            *out = new mcq_graph{mcq::gen_random_connected(
                n, static_cast<std::uint64_t>(param), 1000, maxcap, seed)};
        else if (k == "star")
            *out = new mcq_graph{mcq::gen_star(n, maxcap, seed)};
        else if (k == "path")
            *out = new mcq_graph{mcq::gen_path(n, maxcap, seed)};
        else if (k == "grid")
            *out = new mcq_graph{mcq::gen_grid(n, param, maxcap, seed)};
        else if (k == "two-stars")
            *out = new mcq_graph{mcq::gen_two_stars_path(n, maxcap, seed)};
        else
            mcq::raise(mcq::ErrorCode::invalid_input, "unknown generator '" + k + "'");
    });
}

mcq_status mcq_graph_perturb(const mcq_graph* g, uint64_t seed, mcq_graph** out) {
    return guarded([&] {
        if (!g || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = new mcq_graph{mcq::perturb(g->g, seed)};
    });
}

int mcq_graph_node_count(const mcq_graph* g) { return g ? g->g.node_count() : 0; }
int mcq_graph_edge_count(const mcq_graph* g) { return g ? g->g.edge_count() : 0; }
int mcq_graph_scale_exponent(const mcq_graph* g) { return g ? g->g.scale_exponent() : 0; }

mcq_status mcq_graph_all_pairs_bruteforce_json(const mcq_graph* g, char** out) {
    return guarded([&] {
        if (!g || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = dup_string(mcq::matrix_to_json(mcq::all_pairs_min_cut_bruteforce(g->g)));
    });
}

void mcq_graph_free(mcq_graph* g) { delete g; }

mcq_status mcq_build_tree(const mcq_graph* g, const char* algorithm, const char* oracle,
                          const char* eps, uint64_t seed, int fixed_source,
                          mcq_tree** out, char** audit_json_out) {
    return guarded([&] {
        if (!g || !algorithm || !oracle || !out)
            mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::Rational eps_r = eps && *eps ? mcq::parse_rational(eps) : mcq::Rational(0, 1);
        std::string alg = algorithm;
        json audit;

        if (alg == "gomory-hu") {
            *out = new mcq_tree{mcq::build_gomory_hu(g->g, make_factory(oracle, eps_r, seed))};
            audit = {{"algorithm", alg}};
        } else if (alg == "gusfield") {
            auto o = make_oracle(g->g, oracle, eps_r, seed);
            *out = new mcq_tree{mcq::build_gusfield(g->g, o)};
            auto st = o->stats();
            audit = {{"algorithm", alg},
                     {"cut_queries", st.cut_queries},
                     {"reported_edges", st.total_reported_edges}};
        } else if (alg == "expansion") {
            mcq::ExpansionOptions opts;
            opts.fixed_source = fixed_source != 0;
            mcq::ExpansionAudit ea;
            *out = new mcq_tree{mcq::build_via_expansion(
                g->g, make_factory(oracle, eps_r, seed), seed, opts, &ea)};
            audit = expansion_audit_json(ea);
        } else if (alg == "ultrametric") {
            // value-oracle pipeline: perturb when unscaled, recover the
            // representing tree from inverted max-flow distances, emit the
            // path-shaped flow-equivalent tree at the original scale
            const bool internally_perturbed = g->g.scale_exponent() == 0;
            mcq::WeightedGraph work =
                internally_perturbed
                    ? mcq::perturb(g->g, mcq::RngStream(seed).derive("um-perturb").next_u64())
                    : g->g;
            auto o = make_oracle(work, oracle, eps_r, seed);
            mcq::MaxFlowDistanceAdapter adapter(work, o);
            mcq::RepresentingTree rt = mcq::recover_representing_tree(
                adapter, work.node_count(), mcq::RngStream(seed).derive("um"));
            mcq::invert_labels(rt, adapter.offset());
            mcq::CutTree path = mcq::flow_equivalent_path_from_tree(rt);
            if (internally_perturbed)
                for (auto& e : path.edges)
                    e.weight = mcq::round_back(e.weight, work.node_count());
            path.source_hash = g->g.content_hash();
            *out = new mcq_tree{std::move(path)};
            audit = {{"algorithm", alg},
                     {"distance_queries", adapter.query_count()},
                     {"n", work.node_count()}};
        } else {
            mcq::raise(mcq::ErrorCode::invalid_input, "unknown algorithm '" + alg + "'");
        }
        if (audit_json_out) *audit_json_out = dup_string(audit.dump(2));
    });
}

mcq_status mcq_tree_read_file(const char* path, mcq_tree** out) {
    return guarded([&] {
        if (!path || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = new mcq_tree{mcq::read_tree_file(path)};
    });
}

mcq_status mcq_tree_to_text(const mcq_tree* t, char** out) {
    return guarded([&] {
        if (!t || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = dup_string(mcq::write_tree(t->t));
    });
}

mcq_status mcq_tree_write_file(const mcq_tree* t, const char* path) {
    return guarded([&] {
        if (!t || !path) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::write_tree_file(t->t, path);
    });
}

int mcq_tree_node_count(const mcq_tree* t) { return t ? t->t.n : 0; }

const char* mcq_tree_kind(const mcq_tree* t) {
    if (!t) return "";
    return t->t.kind == mcq::TreeKind::cut_equivalent ? "cut_equivalent" : "flow_equivalent";
}

mcq_status mcq_tree_query_value(const mcq_tree* t, int s, int t_node, char** out) {
    return guarded([&] {
        if (!t || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = dup_string(mcq::tree_max_flow_value(t->t, s, t_node).str());
    });
}

mcq_status mcq_tree_validate(const mcq_graph* g, const mcq_tree* t, int value_only,
                             uint64_t sample_pairs, uint64_t seed, int* ok_out,
                             char** report_json_out) {
    return guarded([&] {
        if (!g || !t || !ok_out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::ValidateOptions opts;
        opts.value_only = value_only != 0;
        if (sample_pairs == UINT64_MAX) {
            opts.exhaustive_limit = t->t.n; // force all pairs
        } else if (sample_pairs) {
            opts.sample_pairs = sample_pairs;
        }
        opts.seed = seed;
        mcq::ValidationReport r = mcq::validate_cut_equivalent(g->g, t->t, opts);
        *ok_out = r.ok() ? 1 : 0;
        if (report_json_out) *report_json_out = dup_string(mcq::validation_report_to_json(r));
    });
}

void mcq_tree_free(mcq_tree* t) { delete t; }

mcq_status mcq_approx_build(const mcq_graph* g, const char* oracle, const char* eps,
                            uint64_t seed, mcq_approx_ds** out, char** audit_json_out) {
    return guarded([&] {
        if (!g || !oracle || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::Rational eps_r = eps && *eps ? mcq::parse_rational(eps) : mcq::Rational(0, 1);
        auto o = make_oracle(g->g, oracle, eps_r, seed);
        mcq::ApproxBuildResult res = mcq::build_approx_ds(g->g, o, eps_r, seed);
        if (audit_json_out) {
            json depths = json::array();
            for (const auto& d : res.audit.depths)
                depths.push_back({{"cut_queries", d.cut_queries},
                                  {"crossing_edges", d.crossing_edges},
                                  {"expansions", d.expansions},
                                  {"failed_pivots", d.failed_pivots}});
            json audit = {{"algorithm", "approx"},
                          {"total_cut_queries", res.audit.total_cut_queries},
                          {"store_size", res.audit.store_size},
                          {"recursion_depth", res.audit.recursion_depth},
                          {"depths", std::move(depths)}};
            *audit_json_out = dup_string(audit.dump(2));
        }
        *out = new mcq_approx_ds{std::move(res.ds), std::move(res.emulator)};
    });
}

mcq_status mcq_approx_save_text(const mcq_approx_ds* ds, char** out) {
    return guarded([&] {
        if (!ds || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = dup_string(mcq::write_approx_ds(ds->ds, ds->emulator));
    });
}

mcq_status mcq_approx_load_text(const char* text, mcq_approx_ds** out) {
    return guarded([&] {
        if (!text || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::ParsedApproxDS parsed = mcq::parse_approx_ds(text);
        *out = new mcq_approx_ds{std::move(parsed.ds), std::move(parsed.emulator)};
    });
}

mcq_status mcq_approx_query_value(const mcq_approx_ds* ds, int s, int t, char** out) {
    return guarded([&] {
        if (!ds || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = dup_string(ds->ds.query(s, t).value.base.str());
    });
}

mcq_status mcq_approx_query_cut_json(const mcq_approx_ds* ds, const mcq_graph* g,
                                     int s, int t, char** out) {
    return guarded([&] {
        if (!ds || !g || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        auto ans = ds->ds.query(s, t);
        const auto& entry = ds->ds.store.entry(ans.cut_index);
        json j = {{"s", s},
                  {"t", t},
                  {"value", entry.value.str()},
                  {"cut_index", ans.cut_index},
                  {"side", entry.side.to_vector()},
                  {"edge_ids", ds->ds.store.crossing_edges(ans.cut_index, g->g)}};
        *out = dup_string(j.dump(2));
    });
}

mcq_status mcq_approx_tree_complete(const mcq_approx_ds* ds, mcq_tree** out) {
    return guarded([&] {
        if (!ds || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        const int n = ds->ds.n;
        std::vector<std::vector<mcq::Capacity>> values(
            static_cast<std::size_t>(n), std::vector<mcq::Capacity>(static_cast<std::size_t>(n), 0));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                mcq::Capacity v = ds->ds.query(a, b).value.base;
                values[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
                values[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = v;
            }
        *out = new mcq_tree{mcq::flow_equivalent_from_complete(values)};
    });
}

mcq_status mcq_approx_tree_emulator(const mcq_approx_ds* ds, mcq_tree** out) {
    return guarded([&] {
        if (!ds || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = new mcq_tree{mcq::flow_equivalent_from_emulator(ds->emulator)};
    });
}

void mcq_approx_free(mcq_approx_ds* ds) { delete ds; }

mcq_status mcq_query_ds_build(const mcq_graph* g, const mcq_tree* t, mcq_query_ds** out) {
    return guarded([&] {
        if (!g || !t || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        *out = new mcq_query_ds{mcq::QueryDS(g->g, t->t)};
    });
}

mcq_status mcq_query_ds_report_json(const mcq_query_ds* q, int s, int t, char** out) {
    return guarded([&] {
        if (!q || !out) mcq::raise(mcq::ErrorCode::invalid_input, "null argument");
        mcq::EdgeReport r = q->q.report_min_cut_edges(s, t);
        json j = {{"s", s},
                  {"t", t},
                  {"value", r.value.str()},
                  {"edge_ids", r.edge_ids},
                  {"visited_nodes", r.visited_nodes},
                  {"split_edge",
                   {{"parent", r.split_edge.parent_endpoint},
                    {"child", r.split_edge.child_endpoint},
                    {"weight", r.split_edge.weight.str()}}}};
        *out = dup_string(j.dump(2));
    });
}

void mcq_query_ds_free(mcq_query_ds* q) { delete q; }

} // extern "C"
