#pragma once

// Dense integer kernels shared by the exact matrix code.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "drgtet/integer.hpp"

namespace drgtet::detail {

/// C = A * B for row-major integer matrices (n x k) * (k x p).
std::vector<Int> int_gemm(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n, std::size_t k,
                          std::size_t p);

/// Largest bit length over the array.
std::size_t max_bits(const std::vector<Int>& v);

/// gcd of g with every element, stopping early once it reaches 1.
Int content_gcd(Int g, const std::vector<Int>& v);

/// In-place exact division of every element by d.
void divide_all(std::vector<Int>& v, const Int& d);

/// In-place multiplication of every element by f.
void multiply_all(std::vector<Int>& v, const Int& f);

/// r = a*x - b*y, computed exactly.
Int mul_sub(const Int& a, const Int& x, const Int& b, const Int& y);

/// r = a*x - (b*y + m*c*z), computed exactly.
Int mul_sub3(const Int& a, const Int& x, const Int& b, const Int& y, int64_t m, const Int& c, const Int& z);

}  // namespace drgtet::detail
