#ifndef CIRCDIAM_ERRORS_HPP
#define CIRCDIAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace circdiam {

/** Base for every error raised by the library. */
class Error : public std::runtime_error
{
    public:
        explicit Error(const std::string& what) : std::runtime_error(what) {}
        virtual const char* name() const { return "Error"; }
};

/** Malformed input text or file. */
class ParseError : public Error
{
    public:
        explicit ParseError(const std::string& what) : Error(what) {}
        const char* name() const override { return "ParseError"; }
};

/** Dimension mismatch between a matrix, a right-hand side or a point. */
class DimensionMismatch : public Error
{
    public:
        explicit DimensionMismatch(const std::string& what) : Error(what) {}
        const char* name() const override { return "DimensionMismatch"; }
};

/** Constraint matrix has column rank smaller than its column count. */
class RankDeficient : public Error
{
    public:
        explicit RankDeficient(const std::string& what) : Error(what) {}
        const char* name() const override { return "RankDeficient"; }
};

/** A point violates at least one inequality. */
class InfeasiblePoint : public Error
{
    public:
        explicit InfeasiblePoint(const std::string& what) : Error(what) {}
        const char* name() const override { return "InfeasiblePoint"; }
};

class NotAVertex : public Error
{
    public:
        explicit NotAVertex(const std::string& what) : Error(what) {}
        const char* name() const override { return "NotAVertex"; }
};

/** Tight graph of a dual transportation vertex is not a spanning tree. */
class DegenerateVertex : public Error
{
    public:
        explicit DegenerateVertex(const std::string& what) : Error(what) {}
        const char* name() const override { return "DegenerateVertex"; }
};

/** The constructive walk hit a state its correctness argument rules out. */
class InternalInvariantViolation : public Error
{
    public:
        explicit InternalInvariantViolation(const std::string& what) : Error(what) {}
        const char* name() const override { return "InternalInvariantViolation"; }
};

/** Two vertex trees share no edge. Never raised for valid inputs. */
class EmptyIntersection : public Error
{
    public:
        explicit EmptyIntersection(const std::string& what) : Error(what) {}
        const char* name() const override { return "EmptyIntersection"; }
};

class DisconnectedAfterRemoval : public Error
{
    public:
        explicit DisconnectedAfterRemoval(const std::string& what) : Error(what) {}
        const char* name() const override { return "DisconnectedAfterRemoval"; }
};

/** Random instance generation gave up after too many non-generic draws. */
class RetryLimit : public Error
{
    public:
        explicit RetryLimit(const std::string& what) : Error(what) {}
        const char* name() const override { return "RetryLimit"; }
};

/** Malformed graph (edge on one side only, parallel edges, disconnected). */
class InvalidGraph : public Error
{
    public:
        explicit InvalidGraph(const std::string& what) : Error(what) {}
        const char* name() const override { return "InvalidGraph"; }
};

}  // namespace circdiam

#endif
