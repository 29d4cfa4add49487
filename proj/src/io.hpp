#ifndef MCQ_IO_HPP
#define MCQ_IO_HPP

#include <string>

#include "approx_ds.hpp"
#include "cut_tree.hpp"
#include "graph.hpp"
#include "ultrametric.hpp"

namespace mcq {

// DIMACS-like graph text: header `p <n> <m>`, then `e <u> <v> <cap>` lines,
// 1-indexed, decimal capacities of arbitrary width. `c` lines are comments;
// the writer records a nonzero scale exponent as `c scale_exponent <k>`.
WeightedGraph parse_graph(const std::string& text);
std::string write_graph(const WeightedGraph& g);

WeightedGraph read_graph_file(const std::string& path);
void write_graph_file(const WeightedGraph& g, const std::string& path);

// Tree text: header naming format version, kind and source-graph hash, then
// `t <u> <v> <weight>` lines, 1-indexed.
CutTree parse_tree(const std::string& text);
std::string write_tree(const CutTree& t);

CutTree read_tree_file(const std::string& path);
void write_tree_file(const CutTree& t, const std::string& path);

// Representing trees as parenthesized newick-like text: leaves are point
// ids, internal nodes close with their integer label, e.g. "((0,1)5,2)9;".
std::string write_representing_tree(const RepresentingTree& t);
RepresentingTree parse_representing_tree(const std::string& text);

// Approximate DS + emulator as versioned JSON; capacities as decimal strings,
// cut sides as hex bitmap blocks. Round trips are exact.
std::string write_approx_ds(const ApproxMinCutDS& ds, const FlowEmulator& emulator);
struct ParsedApproxDS {
    ApproxMinCutDS ds;
    FlowEmulator emulator;
};
ParsedApproxDS parse_approx_ds(const std::string& text);

// JSON helpers used by the CLI and the C API.
std::string cut_to_json(const WeightedGraph& g, const Cut& cut);
std::string matrix_to_json(const std::vector<std::vector<Capacity>>& m);
std::string validation_report_to_json(const ValidationReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace mcq

#endif
