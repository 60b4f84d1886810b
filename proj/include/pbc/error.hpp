#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pbc {

// Base for all library errors. Pipelines catch these per item, count the
// cause, and keep going; the CLI maps uncaught ones to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string cause, const std::string& message)
        : std::runtime_error(message), cause_(std::move(cause)) {}

    const std::string& cause() const { return cause_; }

private:
    std::string cause_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("io", message) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& message) : Error("parse", message) {}
};

class TransportError : public Error {
public:
    explicit TransportError(const std::string& message) : Error("transport", message) {}
};

class RevisionNotFound : public Error {
public:
    explicit RevisionNotFound(const std::string& message) : Error("revision-not-found", message) {}
};

class RootCommit : public Error {
public:
    explicit RootCommit(const std::string& message) : Error("root-commit", message) {}
};

class MergeCommit : public Error {
public:
    explicit MergeCommit(const std::string& message) : Error("merge-commit", message) {}
};

class IssueNotFound : public Error {
public:
    explicit IssueNotFound(const std::string& message) : Error("issue-not-found", message) {}
};

class AccessDenied : public Error {
public:
    explicit AccessDenied(const std::string& message) : Error("access-denied", message) {}
};

class AdapterFailure : public Error {
public:
    explicit AdapterFailure(const std::string& message) : Error("adapter-failure", message) {}
};

class ConflictingEdits : public Error {
public:
    explicit ConflictingEdits(const std::string& message) : Error("conflicting-edits", message) {}
};

class InvalidRecord : public Error {
public:
    InvalidRecord(const std::string& message, std::vector<std::string> violations)
        : Error("invalid-record", message), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

class BaselineRed : public Error {
public:
    explicit BaselineRed(const std::string& message) : Error("baseline-red", message) {}
};

class FlakyBaseline : public Error {
public:
    explicit FlakyBaseline(const std::string& message) : Error("flaky-baseline", message) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error("usage", message) {}
};

} // namespace pbc
