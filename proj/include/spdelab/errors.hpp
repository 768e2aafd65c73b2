#pragma once

#include <stdexcept>
#include <string>

namespace spde {

// Error taxonomy used across the library. The CLI maps these onto
// machine-readable error JSON and distinct exit codes.
enum class ErrorKind {
    config,        // bad scenario file, unknown built-in, invalid parameters
    precondition,  // a documented operation precondition was violated
    contract,      // caller broke an API contract (e.g. interior index where boundary required)
    numerical,     // linear solve failure, non-finite values outside poisoning
    analysis,      // estimator cannot produce a result (e.g. all paths poisoned)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::config, msg); }
inline Error precondition_error(const std::string& msg) { return Error(ErrorKind::precondition, msg); }
inline Error contract_error(const std::string& msg) { return Error(ErrorKind::contract, msg); }
inline Error numerical_error(const std::string& msg) { return Error(ErrorKind::numerical, msg); }
inline Error analysis_error(const std::string& msg) { return Error(ErrorKind::analysis, msg); }

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::config: return "config";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::contract: return "contract";
        case ErrorKind::numerical: return "numerical";
        case ErrorKind::analysis: return "analysis";
    }
    return "unknown";
}

}  // namespace spde
