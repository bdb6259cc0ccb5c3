#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace tsplab {

using CityId = std::size_t;

/// Undirected edge between two cities. Comparison is on the normalized pair.
struct Edge {
    CityId u = 0;
    CityId v = 0;

    [[nodiscard]] constexpr CityId lo() const noexcept { return u < v ? u : v; }
    [[nodiscard]] constexpr CityId hi() const noexcept { return u < v ? v : u; }
    [[nodiscard]] constexpr Edge normalized() const noexcept { return {lo(), hi()}; }

    friend constexpr bool operator==(const Edge& a, const Edge& b) noexcept {
        return a.lo() == b.lo() && a.hi() == b.hi();
    }
};

enum class ErrorCode {
    InvalidArgument,
    OutOfRange,
    Disconnected,
    Capacity,
    InexactLengths,
    Parse,
    Io,
    Assertion,
    Verification,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error(ErrorCode::Capacity, "integer overflow in distance arithmetic");
    }
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw Error(ErrorCode::Capacity, "integer overflow in distance arithmetic");
    }
    return out;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

inline std::int64_t pow3(int exp) { return ipow(3, exp); }

/// Integer p-th root if `value` is a perfect p-th power.
inline bool exact_root(std::int64_t value, int p, std::int64_t& root) {
    if (value < 0) return false;
    if (p == 1) {
        root = value;
        return true;
    }
    auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(value), 1.0 / p)));
    for (std::int64_t cand = guess > 0 ? guess - 1 : 0; cand <= guess + 1; ++cand) {
        std::int64_t pw = 1;
        bool overflow = false;
        for (int i = 0; i < p && !overflow; ++i) overflow = __builtin_mul_overflow(pw, cand, &pw);
        if (!overflow && pw == value) {
            root = cand;
            return true;
        }
    }
    return false;
}

}  // namespace detail
}  // namespace tsplab
