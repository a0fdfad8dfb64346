#pragma once

#include <stdexcept>
#include <string>

namespace psrlab {

enum class errc {
    parse,
    invalid_graph,
    invalid_plane,
    not_addable,
    invalid_embedding,
    unclassifiable,
    not_a_subgraph,
    size_mismatch,
    limit_exceeded,
    not_planar,
    size_limit,
    n_too_small,
    m_too_small,
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::parse: return "PARSE_ERROR";
    case errc::invalid_graph: return "INVALID_GRAPH";
    case errc::invalid_plane: return "INVALID_PLANE";
    case errc::not_addable: return "NOT_ADDABLE";
    case errc::invalid_embedding: return "INVALID_EMBEDDING";
    case errc::unclassifiable: return "UNCLASSIFIABLE";
    case errc::not_a_subgraph: return "NOT_A_SUBGRAPH";
    case errc::size_mismatch: return "SIZE_MISMATCH";
    case errc::limit_exceeded: return "LIMIT_EXCEEDED";
    case errc::not_planar: return "NOT_PLANAR";
    case errc::size_limit: return "SIZE_LIMIT";
    case errc::n_too_small: return "N_TOO_SMALL";
    case errc::m_too_small: return "M_TOO_SMALL";
    }
    return "UNKNOWN";
}

/// Domain error carrying one of the named error codes.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace psrlab
