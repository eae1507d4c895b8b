#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace seqalg {

enum class ErrorCode {
  violation,
  not_a_position,
  not_a_response,
  size_limit,
  step_cap,
  illegal_move,
  type_mismatch,
  unknown_name,
  parse,
  stability_failure,
  fuel_exhausted,
  bad_path,
  unsupported_case,
  polarity,
  freshness,
  illegal_verb,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::violation: return "violation";
    case ErrorCode::not_a_position: return "not-a-position";
    case ErrorCode::not_a_response: return "not-a-response";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::step_cap: return "step-cap";
    case ErrorCode::illegal_move: return "illegal-move";
    case ErrorCode::type_mismatch: return "type-mismatch";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::parse: return "parse-error";
    case ErrorCode::stability_failure: return "stability-failure";
    case ErrorCode::fuel_exhausted: return "fuel-exhausted";
    case ErrorCode::bad_path: return "bad-path";
    case ErrorCode::unsupported_case: return "unsupported-case";
    case ErrorCode::polarity: return "polarity";
    case ErrorCode::freshness: return "freshness";
    case ErrorCode::illegal_verb: return "illegal-verb";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A rule broken by some object, reported instead of thrown by the check_*
// and validate_* family.
struct Violation {
  std::string clause;
  std::string subject;
  std::string detail;

  std::string message() const {
    std::string m = clause + " violated by '" + subject + "'";
    if (!detail.empty()) m += " (" + detail + ")";
    return m;
  }
  bool operator==(const Violation&) const = default;
};

// Either a validated value or the violation that prevented it.
template <class T>
class Checked {
 public:
  Checked(T value) : v_(std::move(value)) {}
  Checked(Violation violation) : v_(std::move(violation)) {}

  bool ok() const noexcept { return std::holds_alternative<T>(v_); }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& {
    if (!ok()) throw Error(ErrorCode::violation, violation().message());
    return std::get<T>(v_);
  }
  T value() && {
    if (!ok()) throw Error(ErrorCode::violation, violation().message());
    return std::get<T>(std::move(v_));
  }
  const Violation& violation() const { return std::get<Violation>(v_); }

 private:
  std::variant<T, Violation> v_;
};

}  // namespace seqalg
