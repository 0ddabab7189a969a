#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latact {

// Exit-code buckets used by the CLI: input = 1, validation = 2, scope = 3.
enum class ErrorKind { input, validation, scope };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, std::string message)
        : std::runtime_error(code + ": " + message), kind_(kind), code_(std::move(code)),
          message_(std::move(message)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }
    const std::string& message() const { return message_; }

private:
    ErrorKind kind_;
    std::string code_;
    std::string message_;
};

struct InputError : Error {
    explicit InputError(const std::string& message) : Error(ErrorKind::input, "InputError", message) {}
};

struct SubcomplexViolation : Error {
    explicit SubcomplexViolation(const std::string& message)
        : Error(ErrorKind::validation, "SubcomplexViolation", message) {}
};

struct DegeneracyNotCertified : Error {
    explicit DegeneracyNotCertified(const std::string& message)
        : Error(ErrorKind::scope, "DegeneracyNotCertified", message) {}
};

struct UnsupportedRank : Error {
    explicit UnsupportedRank(const std::string& message) : Error(ErrorKind::scope, "UnsupportedRank", message) {}
};

struct SectionFlagMissing : Error {
    explicit SectionFlagMissing(const std::string& message)
        : Error(ErrorKind::scope, "SectionFlagMissing", message) {}
};

struct NormalizationViolation : Error {
    explicit NormalizationViolation(const std::string& message)
        : Error(ErrorKind::validation, "NormalizationViolation", message) {}
};

struct KTooSmall : Error {
    explicit KTooSmall(const std::string& message) : Error(ErrorKind::validation, "KTooSmall", message) {}
};

struct OrientationMissing : Error {
    explicit OrientationMissing(const std::string& message)
        : Error(ErrorKind::validation, "OrientationMissing", message) {}
};

struct InconsistentPropagation : Error {
    explicit InconsistentPropagation(const std::string& message)
        : Error(ErrorKind::validation, "InconsistentPropagation", message) {}
};

struct UnimodularityFailure : Error {
    explicit UnimodularityFailure(const std::string& message)
        : Error(ErrorKind::validation, "UnimodularityFailure", message) {}
};

struct MathError : Error {
    explicit MathError(const std::string& message) : Error(ErrorKind::validation, "MathError", message) {}
};

// Non-throwing validation outcome. Validators report everything they find.
struct ValidationIssue {
    std::string code;
    std::string subject;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }

    void add(std::string code, std::string subject, std::string message) {
        issues.push_back({std::move(code), std::move(subject), std::move(message)});
    }

    void merge(const ValidationReport& other) {
        issues.insert(issues.end(), other.issues.begin(), other.issues.end());
    }

    std::string summary() const {
        std::string s;
        for (const auto& i : issues) {
            s += i.code;
            s += " [";
            s += i.subject;
            s += "]: ";
            s += i.message;
            s += "\n";
        }
        return s;
    }
};

} // namespace latact
