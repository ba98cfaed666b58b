#pragma once

#include <cstdint>

namespace faultsat::exec {

// Two's-complement wrap of v to a w-bit signed value (1 <= w <= 63).
inline long long wrap(long long v, int w) {
    const unsigned long long mask = (1ull << w) - 1;
    unsigned long long u = static_cast<unsigned long long>(v) & mask;
    if (u & (1ull << (w - 1))) u |= ~mask;  // sign extend
    return static_cast<long long>(u);
}

inline long long min_value(int w) { return -(1ll << (w - 1)); }
inline long long max_value(int w) { return (1ll << (w - 1)) - 1; }

// Division totalized over all inputs so the interpreter and the circuit
// encoder agree even on paths where the division guard is violated:
//   d == 0           ->  q = (x < 0 ? 1 : -1), r = x      (q*d + r == x)
//   min / -1         ->  q = min, r = 0                   (wraps like C on x86)
//   otherwise        ->  C semantics (truncate toward zero)
inline long long div_total(long long x, long long d, int w) {
    if (d == 0) return x < 0 ? 1 : -1;
    if (x == min_value(w) && d == -1) return min_value(w);
    return x / d;
}

inline long long mod_total(long long x, long long d, int w) {
    if (d == 0) return x;
    if (x == min_value(w) && d == -1) return 0;
    return x % d;
}

}  // namespace faultsat::exec
