#pragma once

#include <stdexcept>
#include <string>

namespace mythos {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A reasoning or inference task exceeded its configured cap (tableau nodes,
// rule fixpoint size, ...). Callers are expected to surface this as a
// resource-limit outcome, not as a verdict.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

// An operation was called outside its contract (e.g. asking for a
// justification of a concept that is satisfiable).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// instance_of was asked about an individual the ABox never mentions.
class UnknownIndividualError : public Error {
public:
    explicit UnknownIndividualError(const std::string& what) : Error(what) {}
};

// Two DEFINE-PRIMITIVE-ROLE statements declare conflicting inverses.
class InverseConflictError : public Error {
public:
    explicit InverseConflictError(const std::string& what) : Error(what) {}
};

// The role parent relation contains a cycle.
class RoleCycleError : public Error {
public:
    explicit RoleCycleError(const std::string& what) : Error(what) {}
};

// Two DATA-VALUE statements give one (individual, attribute) pair different
// integers. Attributes are single-valued.
class DataValueConflictError : public Error {
public:
    explicit DataValueConflictError(const std::string& what) : Error(what) {}
};

// A rule head uses a variable that never occurs in its body.
class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& what) : Error(what) {}
};

// Fixture-mode translation found no recorded sentence matching the input.
class FixtureMissingError : public Error {
public:
    explicit FixtureMissingError(const std::string& what) : Error(what) {}
};

// N-Triples syntax error or a failed live translation request.
class IngestError : public Error {
public:
    explicit IngestError(const std::string& what) : Error(what) {}
};

} // namespace mythos
