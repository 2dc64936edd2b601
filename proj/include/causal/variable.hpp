#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>

namespace causal {

// A named variable. `primes` decorates bound copies introduced when a
// summation variable would collide with a free variable (x vs x', x'').
// Identity is (name, primes); the base name alone identifies the graph
// vertex the variable refers to.
struct VariableId {
    std::string name;
    int primes = 0;

    VariableId() = default;
    VariableId(std::string n, int p = 0) : name(std::move(n)), primes(p) {}

    auto operator<=>(const VariableId&) const = default;

    VariableId with_primes(int p) const { return VariableId(name, p); }
};

inline std::string to_string(const VariableId& v) {
    std::string s = v.name;
    for (int i = 0; i < v.primes; ++i) s += '\'';
    return s;
}

}  // namespace causal

template <>
struct std::hash<causal::VariableId> {
    std::size_t operator()(const causal::VariableId& v) const noexcept {
        return std::hash<std::string>()(v.name) ^ (std::size_t(v.primes) << 1);
    }
};
