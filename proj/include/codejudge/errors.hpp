#pragma once

#include <stdexcept>
#include <string>

namespace codejudge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FileNotFound : Error {
    explicit FileNotFound(const std::string& path)
        : Error("file not found: " + path), path(path) {}
    std::string path;
};

struct ParseError : Error {
    ParseError(size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason),
          line(line), reason(reason) {}
    size_t line;
    std::string reason;
};

struct DanglingProblemId : Error {
    explicit DanglingProblemId(const std::string& id)
        : Error("generation references unknown problem id: " + id), id(id) {}
    std::string id;
};

struct UnsupportedLanguage : Error {
    explicit UnsupportedLanguage(const std::string& name)
        : Error("unsupported language: " + name), name(name) {}
    std::string name;
};

struct MissingReference : Error {
    explicit MissingReference(const std::string& problem_id)
        : Error("problem has no reference code: " + problem_id) {}
};

struct TransportError : Error {
    using Error::Error;
};

struct AuthError : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    LengthMismatch(size_t nx, size_t ny)
        : Error("paired series length mismatch: " + std::to_string(nx) +
                " vs " + std::to_string(ny)) {}
};

struct TooFewPoints : Error {
    explicit TooFewPoints(size_t n)
        : Error("need at least 2 paired points, got " + std::to_string(n)) {}
};

struct NoUsableGroups : Error {
    NoUsableGroups() : Error("no group yields a defined correlation") {}
};

}  // namespace codejudge
