#pragma once

#include <stdexcept>
#include <string>

namespace dilate {

// Status codes shared by the C API and the CLI exit status.
enum class Status : int {
    ok = 0,
    usage = 2,     // bad flags, out-of-range parameters, domain errors
    model = 3,     // malformed model spec or non-convergent rule model
    capacity = 4,  // frequency / member-count cap exceeded
    numeric = 5,   // certified-tolerance failure
};

class Error : public std::runtime_error {
public:
    Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
    Status status() const noexcept { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) { throw Error(Status::usage, msg); }
[[noreturn]] inline void throw_model(const std::string& msg) { throw Error(Status::model, msg); }
[[noreturn]] inline void throw_capacity(const std::string& msg) { throw Error(Status::capacity, msg); }
[[noreturn]] inline void throw_numeric(const std::string& msg) { throw Error(Status::numeric, msg); }

}  // namespace dilate
