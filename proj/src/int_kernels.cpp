#include "int_kernels.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>

#include "drgtet/parallel.hpp"

namespace drgtet::detail {

namespace {

std::size_t ceil_log2(std::size_t k) { return k <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(k - 1)); }

std::size_t rows_per_chunk(std::size_t k, std::size_t p) {
  // Aim for roughly 2^20 multiply-adds per task.
  const std::size_t work = std::max<std::size_t>(1, k * p);
  return std::max<std::size_t>(1, (std::size_t{1} << 20) / work);
}

template <typename Acc>
std::vector<Int> gemm_native(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n, std::size_t k,
                             std::size_t p) {
  std::vector<Acc> av(a.size());
  std::vector<Acc> bv(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) av[i] = static_cast<Acc>(a[i].small());
  for (std::size_t i = 0; i < b.size(); ++i) bv[i] = static_cast<Acc>(b[i].small());
  std::vector<Int> c(n * p);
  parallel_for(0, n, rows_per_chunk(k, p), [&](std::size_t lo, std::size_t hi) {
    std::vector<Acc> acc(p);
    for (std::size_t i = lo; i < hi; ++i) {
      std::fill(acc.begin(), acc.end(), Acc{0});
      const Acc* arow = av.data() + i * k;
      for (std::size_t kk = 0; kk < k; ++kk) {
        const Acc x = arow[kk];
        if (x == Acc{0}) continue;
        const Acc* brow = bv.data() + kk * p;
        Acc* out = acc.data();
        for (std::size_t j = 0; j < p; ++j) out[j] += x * brow[j];
      }
      for (std::size_t j = 0; j < p; ++j) {
        if constexpr (std::is_same_v<Acc, double>) {
          c[i * p + j] = Int(static_cast<long long>(acc[j]));
        } else {
          c[i * p + j] = Int(static_cast<__int128>(acc[j]));
        }
      }
    }
  });
  return c;
}

std::vector<Int> gemm_int128(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n, std::size_t k,
                             std::size_t p) {
  std::vector<int64_t> av(a.size());
  std::vector<int64_t> bv(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) av[i] = a[i].small();
  for (std::size_t i = 0; i < b.size(); ++i) bv[i] = b[i].small();
  std::vector<Int> c(n * p);
  parallel_for(0, n, rows_per_chunk(k, p), [&](std::size_t lo, std::size_t hi) {
    std::vector<__int128> acc(p);
    for (std::size_t i = lo; i < hi; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      const int64_t* arow = av.data() + i * k;
      for (std::size_t kk = 0; kk < k; ++kk) {
        const int64_t x = arow[kk];
        if (x == 0) continue;
        const int64_t* brow = bv.data() + kk * p;
        for (std::size_t j = 0; j < p; ++j) acc[j] += static_cast<__int128>(x) * brow[j];
      }
      for (std::size_t j = 0; j < p; ++j) c[i * p + j] = Int(acc[j]);
    }
  });
  return c;
}

std::vector<Int> gemm_mpz(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n, std::size_t k,
                          std::size_t p) {
  std::vector<mpz_class> av(a.size());
  std::vector<mpz_class> bv(b.size());
  std::vector<char> azero(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    av[i] = a[i].to_mpz();
    azero[i] = a[i].is_zero();
  }
  for (std::size_t i = 0; i < b.size(); ++i) bv[i] = b[i].to_mpz();
  std::vector<Int> c(n * p);
  parallel_for(0, n, std::max<std::size_t>(1, rows_per_chunk(k, p) / 16), [&](std::size_t lo, std::size_t hi) {
    std::vector<mpz_class> acc(p);
    for (std::size_t i = lo; i < hi; ++i) {
      for (auto& x : acc) x = 0;
      for (std::size_t kk = 0; kk < k; ++kk) {
        if (azero[i * k + kk]) continue;
        const mpz_srcptr x = av[i * k + kk].get_mpz_t();
        for (std::size_t j = 0; j < p; ++j) mpz_addmul(acc[j].get_mpz_t(), x, bv[kk * p + j].get_mpz_t());
      }
      for (std::size_t j = 0; j < p; ++j) c[i * p + j] = Int(acc[j]);
    }
  });
  return c;
}

}  // namespace

std::size_t max_bits(const std::vector<Int>& v) {
  std::size_t best = 0;
  for (const auto& x : v) {
    if (!x.is_small()) return std::max<std::size_t>(best, x.bit_length());
    best = std::max(best, x.bit_length());
  }
  return best;
}

std::vector<Int> int_gemm(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n, std::size_t k,
                          std::size_t p) {
  if (n == 0 || p == 0) return {};
  if (k == 0) return std::vector<Int>(n * p);
  const bool small = std::all_of(a.begin(), a.end(), [](const Int& x) { return x.is_small(); }) &&
                     std::all_of(b.begin(), b.end(), [](const Int& x) { return x.is_small(); });
  if (small) {
    const std::size_t bits = max_bits(a) + max_bits(b) + ceil_log2(k);
    if (bits <= 52) return gemm_native<double>(a, b, n, k, p);
    if (bits <= 62) return gemm_native<int64_t>(a, b, n, k, p);
    if (bits <= 126) return gemm_int128(a, b, n, k, p);
  }
  return gemm_mpz(a, b, n, k, p);
}

Int content_gcd(Int g, const std::vector<Int>& v) {
  for (const auto& x : v) {
    if (g.is_one()) return g;
    if (x.is_zero()) continue;
    g = gcd(g, x);
  }
  return g;
}

void divide_all(std::vector<Int>& v, const Int& d) {
  if (d.is_one()) return;
  for (auto& x : v) {
    if (!x.is_zero()) x = divexact(x, d);
  }
}

void multiply_all(std::vector<Int>& v, const Int& f) {
  if (f.is_one()) return;
  for (auto& x : v) {
    if (!x.is_zero()) x *= f;
  }
}

Int mul_sub(const Int& a, const Int& x, const Int& b, const Int& y) {
  if (a.is_small() && x.is_small() && b.is_small() && y.is_small()) {
    const __int128 t1 = static_cast<__int128>(a.small()) * x.small();
    const __int128 t2 = static_cast<__int128>(b.small()) * y.small();
    __int128 r;
    if (!__builtin_sub_overflow(t1, t2, &r)) return Int(r);
  }
  return a * x - b * y;
}

Int mul_sub3(const Int& a, const Int& x, const Int& b, const Int& y, int64_t m, const Int& c, const Int& z) {
  if (a.is_small() && x.is_small() && b.is_small() && y.is_small() && c.is_small() && z.is_small()) {
    const __int128 t1 = static_cast<__int128>(a.small()) * x.small();
    const __int128 t2 = static_cast<__int128>(b.small()) * y.small();
    const __int128 t3 = static_cast<__int128>(c.small()) * z.small();
    __int128 t3m;
    __int128 r;
    if (!__builtin_mul_overflow(t3, static_cast<__int128>(m), &t3m) && !__builtin_sub_overflow(t1, t2, &r) &&
        !__builtin_sub_overflow(r, t3m, &r)) {
      return Int(r);
    }
  }
  return a * x - (b * y + Int(m) * c * z);
}

}  // namespace drgtet::detail
