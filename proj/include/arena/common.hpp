#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace arena {

struct Error {
    std::string message;
    bool retryable = false;
};

/// Value-or-error carrier used by fallible operations that must not throw
/// (agent decisions, chat transport, reply parsing).
template <typename T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error err) : v_(std::move(err)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }

    const T& value() const& {
        if (!ok()) throw std::logic_error("Result::value on error: " + error().message);
        return std::get<T>(v_);
    }
    T&& value() && {
        if (!ok()) throw std::logic_error("Result::value on error: " + error().message);
        return std::get<T>(std::move(v_));
    }
    const Error& error() const {
        if (ok()) throw std::logic_error("Result::error on success");
        return std::get<Error>(v_);
    }

private:
    std::variant<T, Error> v_;
};

}  // namespace arena
