#pragma once

#include <stdexcept>
#include <string>

namespace circ {

/// Base class for every library error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Every kernel weight underflowed: the requested sigma is unusable.
class DegenerateKernel : public Error {
public:
    explicit DegenerateKernel(const std::string& what) : Error(what) {}
};

/// More than one eigenvalue was floored: the kernel graph is numerically disconnected.
class RankCollapse : public Error {
public:
    explicit RankCollapse(const std::string& what) : Error(what) {}
};

/// An operation received an embedding flagged degenerate.
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& what) : Error(what) {}
};

/// A profile was requested over an empty sigma grid.
class EmptyGrid : public Error {
public:
    explicit EmptyGrid(const std::string& what) : Error(what) {}
};

/// The objective is degenerate at every probed point.
class DegenerateObjective : public Error {
public:
    explicit DegenerateObjective(const std::string& what) : Error(what) {}
};

/// A descent step overflowed outside the representable range.
class NonFiniteStep : public Error {
public:
    explicit NonFiniteStep(const std::string& what) : Error(what) {}
};

/// Every sigma on the scan grid was degenerate.
class AllDegenerate : public Error {
public:
    explicit AllDegenerate(const std::string& what) : Error(what) {}
};

/// A polygon was requested on fewer than 3 vertices.
class TooFewPoints : public Error {
public:
    explicit TooFewPoints(const std::string& what) : Error(what) {}
};

/// Dimensional lift target below the current dimension.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Smoother window too small for the requested polynomial degree.
class WindowTooSmall : public Error {
public:
    explicit WindowTooSmall(const std::string& what) : Error(what) {}
};

/// File failed to parse; carries 1-based row and column when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long row = -1, long col = -1)
        : Error(what), row(row), col(col) {}
    long row;
    long col;
};

/// Rows of a csv file have inconsistent widths.
class RaggedRows : public ParseError {
public:
    RaggedRows(const std::string& what, long row) : ParseError(what, row) {}
};

/// A csv cell failed numeric conversion.
class NonNumericCell : public ParseError {
public:
    NonNumericCell(const std::string& what, long row, long col) : ParseError(what, row, col) {}
};

}  // namespace circ
