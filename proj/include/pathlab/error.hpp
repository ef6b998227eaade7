#ifndef PATHLAB_ERROR_HPP
#define PATHLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pathlab {

// Error categories surfaced by the library. Construction-time validation
// rejects bad inputs instead of producing half-built objects.
enum class Errc {
    negative_weight,
    node_out_of_range,
    self_loop,
    empty_graph,
    invalid_config,
    too_many_pivots,
    graph_mismatch,
    malformed_header,
    row_length_mismatch,
    unknown_glyph,
    malformed_entry,
    malformed_artifact,
    artifact_mismatch,
    cell_blocked,
    io_error,
    cost_mismatch,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace pathlab

#endif
