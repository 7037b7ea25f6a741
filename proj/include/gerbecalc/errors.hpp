#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gerbecalc {

/// Base class for all domain errors. Carries a stable machine-readable code
/// that the CLI maps onto its JSON error object.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct InvalidType : Error {
    explicit InvalidType(const std::string& w) : Error("InvalidType", w) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error("DimensionError", w) {}
};

struct NotSublattice : Error {
    explicit NotSublattice(const std::string& w) : Error("NotSublattice", w) {}
};

struct NotInAlcove : Error {
    explicit NotInAlcove(const std::string& w) : Error("NotInAlcove", w) {}
};

struct NotInStar : Error {
    explicit NotInStar(const std::string& w) : Error("NotInStar", w) {}
};

struct NotAdmissibleWeight : Error {
    explicit NotAdmissibleWeight(const std::string& w) : Error("NotAdmissibleWeight", w) {}
};

struct IllFormedWord : Error {
    explicit IllFormedWord(const std::string& w) : Error("IllFormedWord", w) {}
};

struct GlueTypeError : Error {
    explicit GlueTypeError(const std::string& w) : Error("GlueTypeError", w) {}
};

struct NoValidShrinking : Error {
    explicit NoValidShrinking(const std::string& w) : Error("NoValidShrinking", w) {}
};

struct RewriteLimit : Error {
    explicit RewriteLimit(const std::string& w) : Error("RewriteLimit", w) {}
};

struct MalformedRational : Error {
    explicit MalformedRational(const std::string& w) : Error("MalformedRational", w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

}  // namespace gerbecalc
