#include "io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace mcq {

namespace {

using nlohmann::json;

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& s, int line_no, const char* what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        raise(ErrorCode::parse_error,
              std::string("line ") + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
}

std::string hex_words(const NodeSet& side) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (std::uint64_t w : side.words()) {
        for (int shift = 60; shift >= 0; shift -= 4)
            out.push_back(digits[(w >> shift) & 0xf]);
    }
    return out;
}

NodeSet side_from_hex(const std::string& hex, int n) {
    NodeSet side(n);
    std::size_t words = side.words().size();
    if (hex.size() != words * 16)
        raise(ErrorCode::parse_error, "bitmap block has wrong length");
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < 16; ++i) {
            char c = hex[w * 16 + i];
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else raise(ErrorCode::parse_error, "bad hex digit in bitmap");
            value = (value << 4) | static_cast<std::uint64_t>(d);
        }
        side.mutable_words()[w] = value;
    }
    return side;
}

} // namespace

WeightedGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = -1, m = -1, scale = 0;
    std::vector<Edge> edges;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "c") {
            if (toks.size() == 3 && toks[1] == "scale_exponent")
                scale = parse_int(toks[2], line_no, "scale exponent");
            continue;
        }
        if (toks[0] == "p") {
            if (n != -1)
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": duplicate header");
            if (toks.size() != 3)
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": header must be 'p <n> <m>'");
            n = parse_int(toks[1], line_no, "node count");
            m = parse_int(toks[2], line_no, "edge count");
            continue;
        }
        if (toks[0] == "e") {
            if (n == -1)
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": edge before header");
            if (toks.size() != 4)
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": edge must be 'e <u> <v> <cap>'");
            int u = parse_int(toks[1], line_no, "endpoint");
            int v = parse_int(toks[2], line_no, "endpoint");
            if (u < 1 || v < 1 || u > n || v > n)
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": endpoint out of range");
            Capacity cap;
            try {
                cap = cap_from_string(toks[3]);
            } catch (const Error&) {
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": bad capacity '" + toks[3] + "'");
            }
            edges.push_back({u - 1, v - 1, std::move(cap)});
            continue;
        }
        raise(ErrorCode::parse_error,
              "line " + std::to_string(line_no) + ": unknown directive '" + toks[0] + "'");
    }
    if (n == -1) raise(ErrorCode::parse_error, "missing 'p' header");
    if (m != static_cast<int>(edges.size()))
        raise(ErrorCode::parse_error, "header edge count differs from edge lines");
    return WeightedGraph(n, std::move(edges), scale);
}

std::string write_graph(const WeightedGraph& g) {
    std::ostringstream os;
    if (g.scale_exponent() != 0)
        os << "c scale_exponent " << g.scale_exponent() << '\n';
    os << "p " << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges())
        os << "e " << (e.u + 1) << ' ' << (e.v + 1) << ' ' << e.cap.str() << '\n';
    return os.str();
}

CutTree parse_tree(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    CutTree t;
    bool have_header = false;
    int line_no = 0;
    std::uint64_t declared_edges = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "tree") {
            // tree <version> <kind> <n> <source-hash-hex>
            if (toks.size() != 5)
                raise(ErrorCode::parse_error, "bad tree header");
            if (toks[1] != "1")
                raise(ErrorCode::version_mismatch,
                      "unsupported tree format version " + toks[1]);
            if (toks[2] == "cut_equivalent") t.kind = TreeKind::cut_equivalent;
            else if (toks[2] == "flow_equivalent") t.kind = TreeKind::flow_equivalent;
            else raise(ErrorCode::parse_error, "unknown tree kind '" + toks[2] + "'");
            t.n = parse_int(toks[3], line_no, "node count");
            t.source_hash = std::stoull(toks[4], nullptr, 16);
            declared_edges = static_cast<std::uint64_t>(t.n) - 1;
            have_header = true;
            continue;
        }
        if (toks[0] == "t") {
            if (!have_header)
                raise(ErrorCode::parse_error, "edge line before tree header");
            if (toks.size() != 4)
                raise(ErrorCode::parse_error,
                      "line " + std::to_string(line_no) + ": edge must be 't <u> <v> <w>'");
            int u = parse_int(toks[1], line_no, "endpoint");
            int v = parse_int(toks[2], line_no, "endpoint");
            t.edges.push_back({u - 1, v - 1, cap_from_string(toks[3])});
            continue;
        }
        raise(ErrorCode::parse_error,
              "line " + std::to_string(line_no) + ": unknown directive '" + toks[0] + "'");
    }
    if (!have_header) raise(ErrorCode::parse_error, "missing tree header");
    if (t.edges.size() != declared_edges)
        raise(ErrorCode::invalid_tree, "tree must have exactly n-1 edges");
    check_tree_shape(t);
    return t;
}

std::string write_tree(const CutTree& t) {
    std::ostringstream os;
    os << "tree 1 "
       << (t.kind == TreeKind::cut_equivalent ? "cut_equivalent" : "flow_equivalent") << ' '
       << t.n << ' ' << std::hex << t.source_hash << std::dec << '\n';
    for (const TreeEdge& e : t.edges)
        os << "t " << (e.u + 1) << ' ' << (e.v + 1) << ' ' << e.weight.str() << '\n';
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::io_error, "cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::io_error, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) raise(ErrorCode::io_error, "failed writing '" + path + "'");
}

WeightedGraph read_graph_file(const std::string& path) {
    return parse_graph(read_text_file(path));
}

void write_graph_file(const WeightedGraph& g, const std::string& path) {
    write_text_file(path, write_graph(g));
}

CutTree read_tree_file(const std::string& path) {
    return parse_tree(read_text_file(path));
}

void write_tree_file(const CutTree& t, const std::string& path) {
    write_text_file(path, write_tree(t));
}

namespace {

void write_newick_node(const RepresentingTree& t, int node, std::ostringstream& os) {
    const auto& nd = t.nodes[static_cast<std::size_t>(node)];
    if (nd.leaf) {
        os << nd.point;
        return;
    }
    os << '(';
    for (std::size_t i = 0; i < nd.children.size(); ++i) {
        if (i) os << ',';
        write_newick_node(t, nd.children[i], os);
    }
    os << ')' << nd.label.str();
}

struct NewickParser {
    const std::string& text;
    std::size_t pos = 0;
    RepresentingTree& tree;
    int max_point = -1;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    int parse_node() {
        skip_ws();
        if (pos >= text.size())
            raise(ErrorCode::parse_error, "unexpected end of representing-tree text");
        if (text[pos] == '(') {
            ++pos;
            std::vector<int> children;
            children.push_back(parse_node());
            skip_ws();
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                children.push_back(parse_node());
                skip_ws();
            }
            if (pos >= text.size() || text[pos] != ')')
                raise(ErrorCode::parse_error, "missing ')' in representing-tree text");
            ++pos;
            std::string digits = read_number();
            if (digits.empty())
                raise(ErrorCode::parse_error, "internal node without a label");
            int idx = tree.new_internal(cap_from_string(digits));
            for (int c : children) {
                tree.nodes[static_cast<std::size_t>(c)].parent = idx;
                tree.nodes[static_cast<std::size_t>(idx)].children.push_back(c);
            }
            return idx;
        }
        std::string digits = read_number();
        if (digits.empty())
            raise(ErrorCode::parse_error, "expected a leaf point id");
        int point = std::stoi(digits);
        max_point = std::max(max_point, point);
        return tree.new_leaf(point);
    }

    std::string read_number() {
        skip_ws();
        std::string out;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-'))
            out.push_back(text[pos++]);
        return out;
    }
};

} // namespace

std::string write_representing_tree(const RepresentingTree& t) {
    std::ostringstream os;
    if (t.root >= 0) write_newick_node(t, t.root, os);
    os << ";\n";
    return os.str();
}

RepresentingTree parse_representing_tree(const std::string& text) {
    RepresentingTree t;
    NewickParser parser{text, 0, t};
    t.root = parser.parse_node();
    parser.skip_ws();
    if (parser.pos >= text.size() || text[parser.pos] != ';')
        raise(ErrorCode::parse_error, "representing-tree text must end with ';'");
    t.n_points = parser.max_point + 1;
    t.leaf_of_point.resize(static_cast<std::size_t>(t.n_points), -1);
    for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
        if (t.nodes[static_cast<std::size_t>(i)].leaf)
            t.leaf_of_point[static_cast<std::size_t>(
                t.nodes[static_cast<std::size_t>(i)].point)] = i;
    for (int p = 0; p < t.n_points; ++p)
        if (t.leaf_of_point[static_cast<std::size_t>(p)] < 0)
            raise(ErrorCode::parse_error,
                  "point ids are not contiguous in representing-tree text");
    return t;
}

std::string write_approx_ds(const ApproxMinCutDS& ds, const FlowEmulator& emulator) {
    json j;
    j["format"] = "mcq-approx-ds";
    j["version"] = 1;
    j["n"] = ds.n;
    j["eps"] = ds.eps.str();
    j["seed"] = ds.seed;
    j["depth"] = ds.depth;
    j["source_hash"] = ds.source_hash;
    j["root"] = ds.root;

    json cuts = json::array();
    for (int i = 0; i < ds.store.size(); ++i) {
        const auto& e = ds.store.entry(i);
        cuts.push_back({{"side", hex_words(e.side)},
                        {"value", e.value.str()},
                        {"serial", e.serial}});
    }
    j["cuts"] = std::move(cuts);

    json records = json::array();
    for (const auto& r : ds.records) {
        json jr;
        jr["members"] = r.members;
        jr["pivot"] = r.pivot;
        jr["depth"] = r.depth;
        jr["cut_of"] = r.cut_of;
        json values = json::array();
        for (const auto& v : r.value_of)
            values.push_back({{"base", v.base.str()}, {"serial", v.serial}});
        jr["value_of"] = std::move(values);
        jr["part_of"] = r.part_of;
        jr["child_record"] = r.child_record;
        jr["pivot_retries"] = r.pivot_retries;
        records.push_back(std::move(jr));
    }
    j["records"] = std::move(records);

    json h = json::array();
    for (const auto& e : emulator.edges)
        h.push_back({{"u", e.u}, {"v", e.v}, {"base", e.base.str()}});
    j["emulator"] = std::move(h);

    return j.dump(2);
}

ParsedApproxDS parse_approx_ds(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        raise(ErrorCode::parse_error, std::string("bad JSON: ") + e.what());
    }
    try {
        if (j.at("format") != "mcq-approx-ds")
            raise(ErrorCode::parse_error, "not an approx-ds file");
        if (j.at("version") != 1)
            raise(ErrorCode::version_mismatch, "unsupported approx-ds version");

        ParsedApproxDS out;
        out.ds.n = j.at("n").get<int>();
        out.ds.eps = parse_rational(j.at("eps").get<std::string>());
        out.ds.seed = j.at("seed").get<std::uint64_t>();
        out.ds.depth = j.at("depth").get<int>();
        out.ds.source_hash = j.at("source_hash").get<std::uint64_t>();
        out.ds.root = j.at("root").get<int>();

        for (const auto& jc : j.at("cuts")) {
            NodeSet side = side_from_hex(jc.at("side").get<std::string>(), out.ds.n);
            int idx = out.ds.store.insert(side, cap_from_string(jc.at("value").get<std::string>()));
            if (static_cast<std::uint64_t>(idx) != jc.at("serial").get<std::uint64_t>())
                raise(ErrorCode::parse_error, "cut serials out of order");
        }

        for (const auto& jr : j.at("records")) {
            ExpansionRecord r;
            r.members = jr.at("members").get<std::vector<NodeId>>();
            r.pivot = jr.at("pivot").get<NodeId>();
            r.depth = jr.at("depth").get<int>();
            r.cut_of = jr.at("cut_of").get<std::vector<int>>();
            for (const auto& jv : jr.at("value_of"))
                r.value_of.push_back(TieBrokenValue{cap_from_string(jv.at("base").get<std::string>()),
                                              jv.at("serial").get<std::uint64_t>()});
            r.part_of = jr.at("part_of").get<std::vector<int>>();
            r.child_record = jr.at("child_record").get<std::vector<int>>();
            r.pivot_retries = jr.at("pivot_retries").get<int>();
            out.ds.records.push_back(std::move(r));
        }

        out.emulator.n = out.ds.n;
        out.emulator.eps = out.ds.eps;
        for (const auto& je : j.at("emulator"))
            out.emulator.edges.push_back({je.at("u").get<NodeId>(), je.at("v").get<NodeId>(),
                                          cap_from_string(je.at("base").get<std::string>())});
        return out;
    } catch (const json::exception& e) {
        raise(ErrorCode::parse_error, std::string("approx-ds JSON shape: ") + e.what());
    }
}

std::string cut_to_json(const WeightedGraph& g, const Cut& cut) {
    json j;
    j["value"] = cut.value.str();
    j["designated"] = cut.designated;
    j["side"] = cut.side.to_vector();
    json edges = json::array();
    for (int id : cut.crossing_edges) {
        const Edge& e = g.edge(id);
        edges.push_back({{"id", id}, {"u", e.u}, {"v", e.v}, {"cap", e.cap.str()}});
    }
    j["crossing_edges"] = std::move(edges);
    return j.dump(2);
}

std::string matrix_to_json(const std::vector<std::vector<Capacity>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(std::move(r));
    }
    return rows.dump();
}

std::string validation_report_to_json(const ValidationReport& r) {
    json j;
    j["ok"] = r.ok();
    j["pairs_checked"] = r.pairs_checked;
    json v = json::array();
    for (const auto& viol : r.violations)
        v.push_back({{"s", viol.s},
                     {"t", viol.t},
                     {"what", viol.what},
                     {"tree_value", viol.tree_value.str()},
                     {"graph_value", viol.graph_value.str()}});
    j["violations"] = std::move(v);
    return j.dump(2);
}

} // namespace mcq
