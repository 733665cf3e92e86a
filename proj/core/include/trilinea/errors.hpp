#pragma once

#include <stdexcept>
#include <string>

namespace trilinea {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- geometry ---
struct ParallelLines : Error {
    explicit ParallelLines(const std::string& w) : Error(w) {}
};
struct DegenerateScene : Error {
    explicit DegenerateScene(const std::string& w) : Error(w) {}
};
struct NotPerpendicular : Error {
    explicit NotPerpendicular(const std::string& w) : Error(w) {}
};

// --- kinematics ---
struct EdgeTooShort : Error {
    explicit EdgeTooShort(const std::string& w) : Error(w) {}
};
struct DegenerateTriangle : Error {
    explicit DegenerateTriangle(const std::string& w) : Error(w) {}
};
struct NoThirdVertex : Error {
    explicit NoThirdVertex(const std::string& w) : Error(w) {}
};
struct AmbiguousSide : Error {
    explicit AmbiguousSide(const std::string& w) : Error(w) {}
};
struct InfeasibleScene : Error {
    explicit InfeasibleScene(const std::string& w) : Error(w) {}
};
struct InvalidSampleCount : Error {
    explicit InvalidSampleCount(const std::string& w) : Error(w) {}
};
struct NotPlanarizable : Error {
    explicit NotPlanarizable(const std::string& w) : Error(w) {}
};

// --- i/o ---
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(w) {}
};

// Raised when two supposedly equivalent internal signals disagree.
// The command line maps this to exit code 3.
struct InternalInconsistency : Error {
    explicit InternalInconsistency(const std::string& w) : Error(w) {}
};

} // namespace trilinea
