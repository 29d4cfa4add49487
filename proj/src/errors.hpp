#ifndef MCQ_ERRORS_HPP
#define MCQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcq {

// Error taxonomy shared by the library and the C API layer.
enum class ErrorCode {
    invalid_query,
    invalid_input,
    invalid_partition,
    invalid_matrix,
    invalid_tree,
    parse_error,
    disconnected,
    oracle_scale_exceeded,
    double_scale,
    wrong_source,
    wrong_tree_kind,
    restart_budget_exhausted,
    pivot_budget_exhausted,
    empty_candidate_set,
    crossing_cut,
    ultrametric_violation,
    non_binary_tree,
    emulator_disconnected,
    version_mismatch,
    io_error,
    internal_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::invalid_query: return "InvalidQuery";
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::invalid_partition: return "InvalidPartition";
    case ErrorCode::invalid_matrix: return "InvalidMatrix";
    case ErrorCode::invalid_tree: return "InvalidTree";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::disconnected: return "Disconnected";
    case ErrorCode::oracle_scale_exceeded: return "OracleScaleExceeded";
    case ErrorCode::double_scale: return "DoubleScale";
    case ErrorCode::wrong_source: return "WrongSource";
    case ErrorCode::wrong_tree_kind: return "WrongTreeKind";
    case ErrorCode::restart_budget_exhausted: return "RestartBudgetExhausted";
    case ErrorCode::pivot_budget_exhausted: return "PivotBudgetExhausted";
    case ErrorCode::empty_candidate_set: return "EmptyCandidateSet";
    case ErrorCode::crossing_cut: return "CrossingCut";
    case ErrorCode::ultrametric_violation: return "UltrametricViolation";
    case ErrorCode::non_binary_tree: return "NonBinaryTree";
    case ErrorCode::emulator_disconnected: return "EmulatorDisconnected";
    case ErrorCode::version_mismatch: return "VersionMismatch";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::internal_error: return "InternalError";
    }
    return "UnknownError";
}

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

} // namespace mcq

#endif
