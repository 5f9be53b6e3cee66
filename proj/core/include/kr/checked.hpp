#pragma once

#include <cstdint>

#include "kr/error.hpp"

namespace kr {

// Multiplicities, dimensions and Hom-space counts are exact by contract:
// every arithmetic step goes through these helpers and overflow is a hard
// error, never a silent wraparound.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) raise(errc::overflow, "integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a, b, &r)) raise(errc::overflow, "integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) raise(errc::overflow, "integer overflow in multiplication");
    return r;
}

}  // namespace kr
