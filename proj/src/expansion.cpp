#include "expansion.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace mcq {

namespace {

int log2_ceil(std::int64_t n) {
    int b = 0;
    while ((std::int64_t{1} << b) < n) ++b;
    return std::max(b, 1);
}

OraclePtr make_cag_oracle(const WeightedGraph& g, const OracleFactory& factory,
                          bool fixed_source, NodeId src) {
    OraclePtr o = factory(g);
    if (fixed_source) o = fixed_source_view(std::move(o), src);
    return o;
}

} // namespace

Cag build_cag(const WeightedGraph& g, const PartitionTree& pt, int supernode) {
    const auto& sn = pt.super(supernode);
    std::vector<std::vector<NodeId>> parts;
    parts.push_back(sn.nodes);
    auto comps = pt.components_excluding(supernode);
    for (auto& c : comps) parts.push_back(c.nodes);

    ContractionResult cr = contract_supernodes(g, parts, 0);

    Cag cag{std::move(cr.graph), supernode, sn.nodes, std::move(cr.node_map),
            NodeSet(), {}};
    std::sort(cag.core_original.begin(), cag.core_original.end());
    cag.core_mask = NodeSet(cag.graph.node_count());
    for (NodeId v : cag.core_original)
        cag.core_mask.set(cag.node_map[static_cast<std::size_t>(v)]);
    for (auto& c : comps) {
        NodeId rep = c.nodes.front();
        cag.boundary.push_back(
            {c.via_neighbor, cag.node_map[static_cast<std::size_t>(rep)]});
    }
    return cag;
}

std::vector<Cag> build_child_cags(const WeightedGraph& g, const PartitionTree& pt) {
    std::vector<Cag> cags;
    for (int i : pt.live_ids()) {
        if (pt.super(i).nodes.size() < 2) continue;
        cags.push_back(build_cag(g, pt, i));
    }
    return cags;
}

std::vector<std::int64_t> compute_h_values(const Cag& cag, NodeId p_cag,
                                           const OracleFactory& factory,
                                           bool fixed_source,
                                           std::uint64_t* value_queries) {
    const int nc = cag.graph.node_count();
    const Capacity scale = cap_pow(nc, 3);

    // delta-scaled copy: capacities * nc^3 plus a unit edge from the pivot to
    // every other core node (realizing delta = 1/nc^3 in integers)
    std::vector<Edge> scaled;
    scaled.reserve(cag.graph.edges().size() + cag.core_original.size());
    for (const Edge& e : cag.graph.edges())
        scaled.push_back({e.u, e.v, e.cap * scale});
    for (NodeId v : cag.core_original) {
        NodeId cv = cag.node_map[static_cast<std::size_t>(v)];
        if (cv != p_cag) scaled.push_back({p_cag, cv, 1});
    }
    WeightedGraph tilde(nc, std::move(scaled), cag.graph.scale_exponent());

    OraclePtr base = make_cag_oracle(cag.graph, factory, fixed_source, p_cag);
    OraclePtr delta = make_cag_oracle(tilde, factory, fixed_source, p_cag);

    std::vector<std::int64_t> h(static_cast<std::size_t>(nc), -1);
    std::uint64_t queries = 0;
    for (NodeId v : cag.core_original) {
        NodeId cv = cag.node_map[static_cast<std::size_t>(v)];
        if (cv == p_cag) continue;
        Capacity with_delta = delta->query_value(p_cag, cv);
        Capacity plain = base->query_value(p_cag, cv);
        queries += 2;
        Capacity diff = with_delta - plain * scale;
        h[static_cast<std::size_t>(cv)] = diff.convert_to<std::int64_t>();
        if (h[static_cast<std::size_t>(cv)] < 1 ||
            h[static_cast<std::size_t>(cv)] >= nc)
            raise(ErrorCode::internal_error, "h value out of range");
    }
    if (value_queries) *value_queries += queries;
    return h;
}

PivotSelection select_pivot(const Cag& cag, const OracleFactory& factory,
                            RngStream& rng, const ExpansionOptions& opts) {
    const int ni = static_cast<int>(cag.core_original.size());
    if (ni < 2) raise(ErrorCode::invalid_input, "expansion needs at least two core nodes");

    const int budget = opts.pivot_budget_factor * log2_ceil(cag.graph.node_count());
    PivotSelection sel;
    for (int attempt = 0; attempt < budget; ++attempt) {
        NodeId pick = cag.core_original[static_cast<std::size_t>(
            rng.uniform(static_cast<std::uint64_t>(ni)))];
        NodeId p_cag = cag.node_map[static_cast<std::size_t>(pick)];

        std::vector<std::int64_t> h =
            compute_h_values(cag, p_cag, factory, opts.fixed_source, &sel.value_queries);

        NodeSet candidates(cag.graph.node_count());
        int count = 0;
        for (NodeId v : cag.core_original) {
            NodeId cv = cag.node_map[static_cast<std::size_t>(v)];
            if (cv == p_cag) continue;
            if (2 * h[static_cast<std::size_t>(cv)] <= ni) {
                candidates.set(cv);
                ++count;
            }
        }
        if (4 * count >= ni) {
            sel.pivot_cag = p_cag;
            sel.candidates = std::move(candidates);
            sel.retries = attempt;
            return sel;
        }
    }
    raise(ErrorCode::pivot_budget_exhausted,
          "no pivot with |V^{<=1/2}| >= n_i/4 after " + std::to_string(budget) + " trials");
}

ExpansionOutcome expand_supernode(const Cag& cag, const OracleFactory& factory,
                                  RngStream& rng, const ExpansionOptions& opts) {
    const int ni = static_cast<int>(cag.core_original.size());
    PivotSelection sel = select_pivot(cag, factory, rng, opts);

    std::vector<NodeId> cag_to_orig(static_cast<std::size_t>(cag.graph.node_count()), -1);
    for (NodeId v : cag.core_original)
        cag_to_orig[static_cast<std::size_t>(cag.node_map[static_cast<std::size_t>(v)])] = v;

    ExpansionOutcome out;
    out.pivot_original = cag_to_orig[static_cast<std::size_t>(sel.pivot_cag)];
    out.pivot_retries = sel.retries;
    out.value_queries = sel.value_queries;

    OraclePtr oracle = make_cag_oracle(cag.graph, factory, opts.fixed_source, sel.pivot_cag);

    NodeSet center = cag.core_mask; // U_p, over CAG ids
    int center_size = ni;

    // attachment of boundary entities and already-created parts: -1 = center
    std::vector<int> boundary_attach(cag.boundary.size(), -1);
    std::vector<int> part_attach;
    std::vector<NodeSet> part_sets; // over CAG ids

    while (8 * center_size > 7 * ni) {
        std::vector<int> pool;
        for (int v = 0; v < cag.graph.node_count(); ++v)
            if (center.test(v) && sel.candidates.test(v)) pool.push_back(v);
        if (pool.empty())
            raise(ErrorCode::empty_candidate_set,
                  "candidate set emptied while |U_p| > 7 n_i / 8");

        NodeId u = pool[static_cast<std::size_t>(
            rng.uniform(static_cast<std::uint64_t>(pool.size())))];
        Cut cut = oracle->query_cut(sel.pivot_cag, u); // side = S_u
        out.cut_queries += 1;

        if (cut.side.test(sel.pivot_cag))
            raise(ErrorCode::crossing_cut, "pivot ended up inside S_u");

        // non-crossing checks: every earlier part must lie wholly on one side
        for (std::size_t j = 0; j < part_sets.size(); ++j) {
            if (part_sets[j].intersects(cut.side) && !part_sets[j].is_subset_of(cut.side))
                raise(ErrorCode::crossing_cut, "cut splits a previously separated part");
        }

        NodeSet part_cag = center.intersect(cut.side);
        int part_size = part_cag.count();
        if (part_size == 0 || part_size >= center_size)
            raise(ErrorCode::crossing_cut, "cut does not properly split the center");

        int k = static_cast<int>(out.parts.size());
        std::vector<NodeId> part_orig;
        for (int v : part_cag.to_vector())
            part_orig.push_back(cag_to_orig[static_cast<std::size_t>(v)]);
        std::sort(part_orig.begin(), part_orig.end());

        out.parts.push_back(std::move(part_orig));
        out.part_weights.push_back(cut.value);
        out.part_picks.push_back(cag_to_orig[static_cast<std::size_t>(u)]);
        out.part_parent.push_back(-1); // attaches to the center at creation

        // entities currently hanging off the center move with the cut side
        for (std::size_t b = 0; b < cag.boundary.size(); ++b) {
            if (boundary_attach[b] == -1 && cut.side.test(cag.boundary[b].second))
                boundary_attach[b] = k;
        }
        for (std::size_t j = 0; j < part_sets.size(); ++j) {
            if (part_attach[j] == -1 && part_sets[j].is_subset_of(cut.side)) {
                part_attach[j] = k;
                out.part_parent[j] = k;
            }
        }

        part_sets.push_back(part_cag);
        part_attach.push_back(-1);

        center = center.minus(cut.side);
        center_size -= part_size;
    }

    for (int v : center.to_vector())
        out.center_nodes.push_back(cag_to_orig[static_cast<std::size_t>(v)]);
    std::sort(out.center_nodes.begin(), out.center_nodes.end());

    for (std::size_t b = 0; b < cag.boundary.size(); ++b)
        if (boundary_attach[b] != -1)
            out.neighbor_rewiring[cag.boundary[b].first] = boundary_attach[b];

    return out;
}

CagSizeReport audit_cag_sizes(const std::vector<Cag>& cags, const WeightedGraph& g,
                              int depth) {
    CagSizeReport r;
    r.depth = depth;
    r.cag_count = static_cast<int>(cags.size());
    for (const Cag& c : cags) {
        r.total_nodes += c.graph.node_count();
        r.total_edges += c.graph.edge_count();
    }
    r.bound_2n_3m = 2 * static_cast<std::int64_t>(g.node_count()) +
                    3 * static_cast<std::int64_t>(g.edge_count());
    r.within_bound = (r.total_nodes + r.total_edges) <= r.bound_2n_3m;
    return r;
}

namespace {

// Replays one expansion outcome on the partition tree. Parts are split off
// in pick order; entities recorded as moving with part k are rewired at
// split k.
void apply_outcome(PartitionTree& pt, int supernode, const ExpansionOutcome& out) {
    std::vector<int> part_super_id(out.parts.size(), -1);
    for (std::size_t k = 0; k < out.parts.size(); ++k) {
        std::vector<int> rewire;
        for (auto& [neighbor_super, part] : out.neighbor_rewiring)
            if (part == static_cast<int>(k)) rewire.push_back(neighbor_super);
        for (std::size_t j = 0; j < k; ++j)
            if (out.part_parent[j] == static_cast<int>(k))
                rewire.push_back(part_super_id[j]);
        part_super_id[k] =
            pt.split(supernode, out.parts[k], out.part_weights[k], rewire);
    }
}

} // namespace

CutTree build_via_expansion(const WeightedGraph& g, const OracleFactory& factory,
                            std::uint64_t seed, const ExpansionOptions& opts,
                            ExpansionAudit* audit) {
    const bool internally_perturbed = (g.scale_exponent() == 0);
    RngStream master(seed);

    const int depth_limit = static_cast<int>(
        std::ceil(16.0 * std::log(std::max(g.node_count(), 2)) / std::log(4.0 / 3.0))) + 4;

    const int max_restarts = internally_perturbed ? opts.restart_budget : 1;
    for (int restart = 0; restart < max_restarts; ++restart) {
        RngStream run_rng = master.derive("run").derive(static_cast<std::uint64_t>(restart));
        WeightedGraph work =
            internally_perturbed ? perturb(g, run_rng.derive("perturb").next_u64()) : g;

        ExpansionAudit local;
        try {
            PartitionTree pt(work.node_count());
            int depth = 0;
            while (!pt.all_singletons()) {
                if (depth > depth_limit)
                    raise(ErrorCode::internal_error, "recursion depth exceeds bound");
                // super-nodes alive at depth start; each CAG is rebuilt right
                // before its own expansion so that neighbor ids reflect the
                // rewiring done by earlier expansions at this depth (the cuts
                // themselves are order-independent, the ids are not)
                std::vector<int> targets;
                for (int i : pt.live_ids())
                    if (pt.super(i).nodes.size() >= 2) targets.push_back(i);

                DepthAudit da;
                da.sizes.depth = depth;
                da.sizes.bound_2n_3m = 2 * static_cast<std::int64_t>(work.node_count()) +
                                       3 * static_cast<std::int64_t>(work.edge_count());
                RngStream depth_rng = run_rng.derive("depth").derive(
                    static_cast<std::uint64_t>(depth));
                for (int supernode : targets) {
                    Cag cag = build_cag(work, pt, supernode);
                    da.sizes.cag_count += 1;
                    da.sizes.total_nodes += cag.graph.node_count();
                    da.sizes.total_edges += cag.graph.edge_count();
                    RngStream super_rng = depth_rng.derive("super").derive(
                        static_cast<std::uint64_t>(cag.supernode_id));
                    ExpansionOutcome out = expand_supernode(cag, factory, super_rng, opts);
                    apply_outcome(pt, cag.supernode_id, out);
                    da.pivot_retries += out.pivot_retries;
                    da.cut_queries += out.cut_queries;
                    da.value_queries += out.value_queries;
                }
                da.sizes.within_bound =
                    (da.sizes.total_nodes + da.sizes.total_edges) <= da.sizes.bound_2n_3m;
#ifndef NDEBUG
                pt.check_invariants();
#endif
                local.depths.push_back(std::move(da));
                ++depth;
            }
            local.recursion_depth = depth;
            local.restarts = restart;

            CutTree tree = pt.to_cut_tree(TreeKind::cut_equivalent, g.content_hash());

            // cheap soundness sample on the working graph; a failure here
            // means some cut crossed undetected
            ValidateOptions vopts;
            vopts.sample_pairs = 100;
            vopts.seed = seed;
            ValidationReport vr = validate_cut_equivalent(work, tree, vopts);
            if (!vr.ok())
                raise(ErrorCode::crossing_cut, "final tree failed validation sample");

            if (internally_perturbed) {
                for (TreeEdge& e : tree.edges)
                    e.weight = round_back(e.weight, work.node_count());
            }
            if (audit) *audit = std::move(local);
            return tree;
        } catch (const Error& err) {
            bool restartable = err.code() == ErrorCode::crossing_cut ||
                               err.code() == ErrorCode::empty_candidate_set;
            if (!restartable || !internally_perturbed) throw;
            // fresh perturbation and seed on the next round
        }
    }
    raise(ErrorCode::restart_budget_exhausted,
          "expansion build kept detecting crossing cuts; this points at an "
          "arithmetic bug, not bad luck");
}

} // namespace mcq
