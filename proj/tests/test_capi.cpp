#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "mincutquery.h"

using nlohmann::json;

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { mcq_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

} // namespace

TEST_CASE("graph lifecycle, parse errors and last_error") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_parse("p 3 2\ne 1 2 5\ne 2 3 3\n", &g) == MCQ_OK);
    CHECK(mcq_graph_node_count(g) == 3);
    CHECK(mcq_graph_edge_count(g) == 2);
    CHECK(mcq_graph_scale_exponent(g) == 0);

    Str text;
    REQUIRE(mcq_graph_to_text(g, &text.s) == MCQ_OK);
    mcq_graph* round = nullptr;
    REQUIRE(mcq_graph_parse(text.str().c_str(), &round) == MCQ_OK);
    CHECK(mcq_graph_edge_count(round) == 2);
    mcq_graph_free(round);

    mcq_graph* bad = nullptr;
    CHECK(mcq_graph_parse("p 1 1\ne 1 1 1\n", &bad) != MCQ_OK);
    CHECK(std::strlen(mcq_last_error()) > 0);

    mcq_graph* disc = nullptr;
    CHECK(mcq_graph_parse("p 4 2\ne 1 2 1\ne 3 4 1\n", &disc) == MCQ_ERR_DISCONNECTED);

    mcq_graph_free(g);
}

TEST_CASE("generate, perturb, brute force") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_generate("random", 8, 14, 10, 3, &g) == MCQ_OK);
    CHECK(mcq_graph_node_count(g) == 8);
    CHECK(mcq_graph_edge_count(g) == 14);

    mcq_graph* p = nullptr;
    REQUIRE(mcq_graph_perturb(g, 5, &p) == MCQ_OK);
    CHECK(mcq_graph_scale_exponent(p) == 10);
    mcq_graph* pp = nullptr;
    CHECK(mcq_graph_perturb(p, 5, &pp) == MCQ_ERR_SCALE);

    Str matrix;
    REQUIRE(mcq_graph_all_pairs_bruteforce_json(g, &matrix.s) == MCQ_OK);
    json m = json::parse(matrix.str());
    CHECK(m.size() == 8);
    CHECK(m[0][0].get<std::string>() == "0");

    mcq_graph_free(p);
    mcq_graph_free(g);
}

TEST_CASE("build algorithms agree on tree values") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_generate("random", 9, 16, 12, 11, &g) == MCQ_OK);

    const char* algs[] = {"gomory-hu", "gusfield", "expansion"};
    std::string values[3];
    for (int i = 0; i < 3; ++i) {
        mcq_tree* t = nullptr;
        Str audit;
        REQUIRE(mcq_build_tree(g, algs[i], "exact", "0", 7, 0, &t, &audit.s) == MCQ_OK);
        Str v;
        REQUIRE(mcq_tree_query_value(t, 0, 8, &v.s) == MCQ_OK);
        values[i] = v.str();
        CHECK(audit.str().find("algorithm") != std::string::npos);
        mcq_tree_free(t);
    }
    CHECK(values[0] == values[1]);
    CHECK(values[0] == values[2]);
    mcq_graph_free(g);
}

TEST_CASE("expansion builds are byte-deterministic via the C API") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_generate("random", 10, 18, 30, 21, &g) == MCQ_OK);
    std::string first;
    for (int round = 0; round < 2; ++round) {
        mcq_tree* t = nullptr;
        REQUIRE(mcq_build_tree(g, "expansion", "exact", "0", 99, 0, &t, nullptr) == MCQ_OK);
        Str text;
        REQUIRE(mcq_tree_to_text(t, &text.s) == MCQ_OK);
        if (round == 0) first = text.str();
        else CHECK(first == text.str());
        mcq_tree_free(t);
    }
    mcq_graph_free(g);
}

TEST_CASE("tree validation and corrupted weights via the C API") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_generate("random", 8, 13, 9, 2, &g) == MCQ_OK);
    mcq_tree* t = nullptr;
    REQUIRE(mcq_build_tree(g, "gomory-hu", "exact", "0", 0, 0, &t, nullptr) == MCQ_OK);

    int ok = 0;
    Str report;
    REQUIRE(mcq_tree_validate(g, t, 0, 0, 0, &ok, &report.s) == MCQ_OK);
    CHECK(ok == 1);
    CHECK(json::parse(report.str())["ok"].get<bool>());

    mcq_tree_free(t);
    mcq_graph_free(g);
}

TEST_CASE("approx DS via the C API: build, save, load, query, trees") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_generate("random", 9, 15, 8, 9, &g) == MCQ_OK);

    mcq_approx_ds* ds = nullptr;
    Str audit;
    REQUIRE(mcq_approx_build(g, "noisy", "1/4", 13, &ds, &audit.s) == MCQ_OK);
    json a = json::parse(audit.str());
    CHECK(a["total_cut_queries"].get<int>() > 0);

    Str text;
    REQUIRE(mcq_approx_save_text(ds, &text.s) == MCQ_OK);
    mcq_approx_ds* back = nullptr;
    REQUIRE(mcq_approx_load_text(text.str().c_str(), &back) == MCQ_OK);

    Str v1, v2;
    REQUIRE(mcq_approx_query_value(ds, 0, 8, &v1.s) == MCQ_OK);
    REQUIRE(mcq_approx_query_value(back, 0, 8, &v2.s) == MCQ_OK);
    CHECK(v1.str() == v2.str());

    Str cut;
    REQUIRE(mcq_approx_query_cut_json(ds, g, 0, 8, &cut.s) == MCQ_OK);
    json jc = json::parse(cut.str());
    CHECK(jc["value"].get<std::string>() == v1.str());
    CHECK(!jc["edge_ids"].empty());

    mcq_tree* tc = nullptr;
    REQUIRE(mcq_approx_tree_complete(ds, &tc) == MCQ_OK);
    CHECK(std::string(mcq_tree_kind(tc)) == "flow_equivalent");
    mcq_tree* te = nullptr;
    REQUIRE(mcq_approx_tree_emulator(ds, &te) == MCQ_OK);
    CHECK(mcq_tree_node_count(te) == 9);

    mcq_tree_free(tc);
    mcq_tree_free(te);
    mcq_approx_free(back);
    mcq_approx_free(ds);
    mcq_graph_free(g);
}

TEST_CASE("query-ds reports via the C API") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_parse("p 3 2\ne 1 2 5\ne 2 3 3\n", &g) == MCQ_OK);
    mcq_tree* t = nullptr;
    REQUIRE(mcq_build_tree(g, "gomory-hu", "exact", "0", 0, 0, &t, nullptr) == MCQ_OK);

    mcq_query_ds* q = nullptr;
    REQUIRE(mcq_query_ds_build(g, t, &q) == MCQ_OK);
    Str rep;
    REQUIRE(mcq_query_ds_report_json(q, 0, 2, &rep.s) == MCQ_OK);
    json j = json::parse(rep.str());
    CHECK(j["value"].get<std::string>() == "3");
    CHECK(j["edge_ids"].size() == 1);
    CHECK(j["visited_nodes"].get<int>() > 0);

    mcq_query_ds_free(q);
    mcq_tree_free(t);
    mcq_graph_free(g);
}

TEST_CASE("ultrametric pipeline via the C API") {
    mcq_graph* g = nullptr;
    REQUIRE(mcq_graph_generate("random", 10, 17, 9, 31, &g) == MCQ_OK);
    mcq_tree* t = nullptr;
    Str audit;
    REQUIRE(mcq_build_tree(g, "ultrametric", "exact", "0", 3, 0, &t, &audit.s) == MCQ_OK);
    CHECK(std::string(mcq_tree_kind(t)) == "flow_equivalent");
    json a = json::parse(audit.str());
    CHECK(a["distance_queries"].get<int>() > 0);

    // path-min values match an exact flow-equivalent tree's values
    mcq_tree* gh = nullptr;
    REQUIRE(mcq_build_tree(g, "gomory-hu", "exact", "0", 0, 0, &gh, nullptr) == MCQ_OK);
    for (int s = 0; s < 10; ++s)
        for (int u = s + 1; u < 10; ++u) {
            Str v1, v2;
            REQUIRE(mcq_tree_query_value(t, s, u, &v1.s) == MCQ_OK);
            REQUIRE(mcq_tree_query_value(gh, s, u, &v2.s) == MCQ_OK);
            CHECK(v1.str() == v2.str());
        }
    mcq_tree_free(gh);
    mcq_tree_free(t);
    mcq_graph_free(g);
}
