#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quditcolor/errors.hpp"

namespace quditcolor {

inline constexpr std::size_t kMaxDimension = std::size_t{1} << 24;

// Qudit product basis: N atoms with k+1 levels each. Vertex 0 is the least
// significant digit, digit 0 is the ground state.
class Basis {
public:
    Basis(int n_atoms, int k) : n_(n_atoms), d_(k + 1) {
        if (n_atoms < 1) throw ConfigError("basis: need at least one atom");
        if (k < 1) throw ConfigError("basis: need at least one Rydberg level");
        dim_ = 1;
        stride_.reserve(n_);
        for (int v = 0; v < n_; ++v) {
            stride_.push_back(dim_);
            if (dim_ > kMaxDimension / d_)
                throw DimensionError("basis: (k+1)^N exceeds " + std::to_string(kMaxDimension));
            dim_ *= d_;
        }
    }

    int atoms() const { return n_; }
    int levels() const { return d_; }
    int k() const { return d_ - 1; }
    std::size_t dim() const { return dim_; }
    std::size_t stride(int v) const { return stride_[v]; }

    int digit(std::size_t index, int v) const { return static_cast<int>((index / stride_[v]) % d_); }

    std::size_t encode(const std::vector<int>& digits) const {
        if (static_cast<int>(digits.size()) != n_)
            throw std::invalid_argument("basis: expected " + std::to_string(n_) + " digits");
        std::size_t idx = 0;
        for (int v = 0; v < n_; ++v) {
            if (digits[v] < 0 || digits[v] >= d_)
                throw std::invalid_argument("basis: digit " + std::to_string(digits[v]) + " out of range");
            idx += static_cast<std::size_t>(digits[v]) * stride_[v];
        }
        return idx;
    }

    std::vector<int> decode(std::size_t index) const {
        if (index >= dim_) throw std::out_of_range("basis: index out of range");
        std::vector<int> out(n_);
        for (int v = 0; v < n_; ++v) {
            out[v] = static_cast<int>(index % d_);
            index /= d_;
        }
        return out;
    }

    // Digits in vertex order v1 v2 ... (e.g. "123").
    std::string label(std::size_t index) const {
        std::string s;
        for (int d : decode(index)) s.push_back(static_cast<char>('0' + d));
        return s;
    }

    std::size_t parse_label(const std::string& s) const {
        std::vector<int> digits;
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("basis: bad state label '" + s + "'");
            digits.push_back(c - '0');
        }
        return encode(digits);
    }

    // Index of the state with every vertex relabelled v -> perm[v].
    std::size_t permute(std::size_t index, const std::vector<int>& perm) const {
        std::size_t out = 0;
        for (int v = 0; v < n_; ++v) out += static_cast<std::size_t>(digit(index, v)) * stride_[perm[v]];
        return out;
    }

private:
    int n_;
    int d_;
    std::size_t dim_;
    std::vector<std::size_t> stride_;
};

inline std::size_t basis_encode(const std::vector<int>& digits, int k) {
    return Basis(static_cast<int>(digits.size()), k).encode(digits);
}

inline std::vector<int> basis_decode(std::size_t index, int k, int n_atoms) {
    return Basis(n_atoms, k).decode(index);
}

}  // namespace quditcolor
