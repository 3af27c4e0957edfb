#include "l1match/convolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "l1match/counters.hpp"
#include "l1match/parallel.hpp"

namespace l1match {

namespace {

constexpr std::uint64_t kPrime = 4179340454199820289ULL;  // 29 * 2^57 + 1
constexpr std::uint64_t kRoot = 3;
constexpr std::int64_t kMagnitudeLimit = std::int64_t{1} << 60;
constexpr std::int64_t kFloatSafeLimit = std::int64_t{1} << 40;

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  a += b;
  if (a >= kPrime) a -= kPrime;
  return a;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kPrime - b;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, base);
    base = mulmod(base, base);
    exp >>= 1;
  }
  return acc;
}

void bit_reverse(std::size_t n, auto& a) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

void ntt(std::vector<std::uint64_t>& a, bool inverse) {
  const std::size_t n = a.size();
  bit_reverse(n, a);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = powmod(kRoot, (kPrime - 1) / len);
    if (inverse) w = powmod(w, kPrime - 2);
    for (std::size_t i = 0; i < n; i += len) {
      std::uint64_t wn = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::uint64_t u = a[i + j];
        const std::uint64_t v = mulmod(a[i + j + len / 2], wn);
        a[i + j] = addmod(u, v);
        a[i + j + len / 2] = submod(u, v);
        wn = mulmod(wn, w);
      }
    }
  }
  if (inverse) {
    const std::uint64_t inv_n = powmod(n, kPrime - 2);
    for (std::uint64_t& x : a) x = mulmod(x, inv_n);
  }
}

ScoreArray correlate_ntt(std::span<const std::int64_t> a,
                         std::span<const std::int64_t> b) {
  const std::size_t n = a.size(), m = b.size();
  const std::size_t conv_len = n + m - 1;
  const std::size_t size = std::bit_ceil(conv_len);
  std::vector<std::uint64_t> fa(size, 0), fb(size, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t v = a[i];
    fa[i] = v >= 0 ? static_cast<std::uint64_t>(v)
                   : kPrime - static_cast<std::uint64_t>(-v);
  }
  for (std::size_t j = 0; j < m; ++j) {
    const std::int64_t v = b[m - 1 - j];
    fb[j] = v >= 0 ? static_cast<std::uint64_t>(v)
                   : kPrime - static_cast<std::uint64_t>(-v);
  }
  ntt(fa, false);
  ntt(fb, false);
  for (std::size_t i = 0; i < size; ++i) fa[i] = mulmod(fa[i], fb[i]);
  ntt(fa, true);
  ScoreArray out(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i) {
    const std::uint64_t v = fa[i + m - 1];
    out[i] = v > kPrime / 2
                 ? -static_cast<std::int64_t>(kPrime - v)
                 : static_cast<std::int64_t>(v);
  }
  return out;
}

using Complex = std::complex<double>;

const std::vector<Complex>& fft_roots(std::size_t size) {
  static std::map<std::size_t, std::vector<Complex>> cache;
  auto it = cache.find(size);
  if (it != cache.end()) return it->second;
  std::vector<Complex> roots(size / 2);
  for (std::size_t j = 0; j < size / 2; ++j) {
    const double angle = 2.0 * M_PI * static_cast<double>(j) /
                         static_cast<double>(size);
    roots[j] = Complex(std::cos(angle), std::sin(angle));
  }
  return cache.emplace(size, std::move(roots)).first->second;
}

void fft(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  const std::vector<Complex>& roots = fft_roots(n);
  bit_reverse(n, a);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex w = roots[j * step];
        if (inverse) w = std::conj(w);
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Complex& x : a) x *= inv_n;
  }
}

// Both real inputs packed into one complex transform; the product spectrum is
// recovered from conjugate symmetry, so a full correlation costs two
// transforms.
ScoreArray correlate_fft(std::span<const std::int64_t> a,
                         std::span<const std::int64_t> b) {
  const std::size_t n = a.size(), m = b.size();
  const std::size_t conv_len = n + m - 1;
  const std::size_t size = std::bit_ceil(conv_len);
  std::vector<Complex> x(size, Complex(0, 0));
  for (std::size_t i = 0; i < n; ++i) x[i].real(static_cast<double>(a[i]));
  for (std::size_t j = 0; j < m; ++j)
    x[j].imag(static_cast<double>(b[m - 1 - j]));
  fft(x, false);
  std::vector<Complex> c(size);
  const Complex quarter_i(0.0, -0.25);
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t rk = (size - k) & (size - 1);
    const Complex xk = x[k];
    const Complex xc = std::conj(x[rk]);
    c[k] = (xk * xk - xc * xc) * quarter_i;
  }
  fft(c, true);
  ScoreArray out(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i)
    out[i] = std::llround(c[i + m - 1].real());
  return out;
}

// Zero pattern entries contribute nothing, so a sparse pattern costs
// (n - m + 1) * nnz regardless of m; dense patterns keep the plain loop.
ScoreArray correlate_naive(std::span<const std::int64_t> a,
                           std::span<const std::int64_t> b,
                           std::size_t nonzero_b) {
  const std::size_t n = a.size(), m = b.size();
  ScoreArray out(n - m + 1, 0);
  if (2 * nonzero_b >= m) {
    for (std::size_t i = 0; i + m <= n; ++i) {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < m; ++j) sum += a[i + j] * b[j];
      out[i] = sum;
    }
    return out;
  }
  std::vector<std::pair<std::size_t, std::int64_t>> taps;
  taps.reserve(nonzero_b);
  for (std::size_t j = 0; j < m; ++j)
    if (b[j] != 0) taps.emplace_back(j, b[j]);
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::int64_t sum = 0;
    for (const auto& [j, w] : taps) sum += a[i + j] * w;
    out[i] = sum;
  }
  return out;
}

// 0/1 inputs: sliding dot products are AND-popcounts of the packed pattern
// against text words shifted on the fly.
ScoreArray correlate_binary(std::span<const std::int64_t> a,
                            std::span<const std::int64_t> b) {
  const std::size_t n = a.size(), m = b.size();
  const std::size_t text_words = (n >> 6) + 2;
  std::vector<std::uint64_t> tw(text_words, 0);
  for (std::size_t t = 0; t < n; ++t)
    tw[t >> 6] |= static_cast<std::uint64_t>(a[t]) << (t & 63);
  const std::size_t pat_words = (m + 63) >> 6;
  std::vector<std::uint64_t> pw(pat_words, 0);
  for (std::size_t j = 0; j < m; ++j)
    pw[j >> 6] |= static_cast<std::uint64_t>(b[j]) << (j & 63);
  ScoreArray out(n - m + 1);
  for (std::size_t i = 0; i + m <= n; ++i) {
    const std::size_t q = i >> 6;
    const unsigned r = static_cast<unsigned>(i & 63);
    std::int64_t sum = 0;
    if (r == 0) {
      for (std::size_t w = 0; w < pat_words; ++w)
        sum += std::popcount(tw[q + w] & pw[w]);
    } else {
      for (std::size_t w = 0; w < pat_words; ++w) {
        const std::uint64_t window =
            (tw[q + w] >> r) | (tw[q + w + 1] << (64u - r));
        sum += std::popcount(window & pw[w]);
      }
    }
    out[i] = sum;
  }
  return out;
}

struct OperandStats {
  std::int64_t max_abs_a = 0;
  std::int64_t max_abs_b = 0;
  std::size_t nonzero_b = 0;
  bool binary = true;
};

OperandStats scan_operands(std::span<const std::int64_t> a,
                           std::span<const std::int64_t> b) {
  OperandStats s;
  for (std::int64_t v : a) {
    s.max_abs_a = std::max<std::int64_t>(s.max_abs_a, std::llabs(v));
    if (v != 0 && v != 1) s.binary = false;
  }
  for (std::int64_t v : b) {
    s.max_abs_b = std::max<std::int64_t>(s.max_abs_b, std::llabs(v));
    if (v != 0) ++s.nonzero_b;
    if (v != 0 && v != 1) s.binary = false;
  }
  return s;
}

}  // namespace

ScoreArray correlate(std::span<const std::int64_t> a,
                     std::span<const std::int64_t> b,
                     CorrelateBackend backend) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0 || m == 0) throw std::invalid_argument("empty sequence");
  if (m > n) throw std::invalid_argument("pattern longer than text");
  counters().correlations.fetch_add(1, std::memory_order_relaxed);

  const OperandStats stats = scan_operands(a, b);
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(m) *
      static_cast<unsigned __int128>(std::max<std::int64_t>(stats.max_abs_a, 1)) *
      static_cast<unsigned __int128>(std::max<std::int64_t>(stats.max_abs_b, 1));
  if (bound >= static_cast<unsigned __int128>(kMagnitudeLimit))
    throw std::overflow_error("correlate operands exceed exact range");

  const bool float_safe = bound <= static_cast<unsigned __int128>(kFloatSafeLimit);
  const std::size_t size = std::bit_ceil(n + m - 1);
  const double log_size = std::log2(static_cast<double>(size));
  const double naive_ops = static_cast<double>(n - m + 1) *
                           static_cast<double>(stats.nonzero_b + 1);
  const double binary_ops =
      stats.binary ? static_cast<double>(n - m + 1) *
                             static_cast<double>((m >> 6) + 2) * 4.0 +
                         static_cast<double>(n + m)
                   : std::numeric_limits<double>::infinity();
  const double transform_ops =
      static_cast<double>(size) * log_size * (float_safe ? 2.5 : 8.0);

  enum class Route { kDense, kBinary, kSpectral };
  Route route;
  switch (backend) {
    case CorrelateBackend::kNaive:
      route = binary_ops < naive_ops ? Route::kBinary : Route::kDense;
      break;
    case CorrelateBackend::kTransform:
      route = Route::kSpectral;
      break;
    default:
      if (transform_ops < naive_ops && transform_ops < binary_ops)
        route = Route::kSpectral;
      else
        route = binary_ops < naive_ops ? Route::kBinary : Route::kDense;
  }

  switch (route) {
    case Route::kBinary:
      return correlate_binary(a, b);
    case Route::kDense:
      return correlate_naive(a, b, stats.nonzero_b);
    default:
      break;
  }
  if (float_safe) return correlate_fft(a, b);
  return correlate_ntt(a, b);
}

WeightFunction WeightFunction::generic(
    std::function<std::int64_t(Symbol, Symbol)> fn, Symbol domain,
    std::int64_t magnitude) {
  return WeightFunction{std::move(fn), domain, magnitude, WeightKind::kGeneric};
}

WeightFunction WeightFunction::parity_score(Symbol domain) {
  return WeightFunction{[](Symbol x, Symbol y) { return parity_sign_score(x, y); },
                        domain, 1, WeightKind::kParityScore};
}

WeightFunction WeightFunction::abs_diff(Symbol domain) {
  return WeightFunction{
      [](Symbol x, Symbol y) { return std::llabs(x - y); }, domain,
      std::max<std::int64_t>(domain - 1, 1), WeightKind::kAbsDiff};
}

WeightFunction WeightFunction::inequality(Symbol domain) {
  return WeightFunction{
      [](Symbol x, Symbol y) { return x != y ? 1 : 0; }, domain, 1,
      WeightKind::kInequality};
}

namespace {

template <typename Eval>
void direct_accumulate(const std::vector<Symbol>& t,
                       const std::vector<Symbol>& p, ScoreArray& out,
                       Eval eval) {
  const std::size_t n = t.size(), m = p.size();
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::int64_t sum = 0;
    const Symbol* tw = t.data() + i;
    for (std::size_t j = 0; j < m; ++j) sum += eval(tw[j], p[j]);
    out[i] = sum;
  }
}

ScoreArray weighted_direct(const IntSequence& text, const IntSequence& pattern,
                           const WeightFunction& weight) {
  ScoreArray out(text.size() - pattern.size() + 1);
  switch (weight.kind) {
    case WeightKind::kParityScore:
      direct_accumulate(text.data, pattern.data, out, [](Symbol x, Symbol y) {
        return parity_sign_score(x, y);
      });
      break;
    case WeightKind::kAbsDiff:
      direct_accumulate(text.data, pattern.data, out, [](Symbol x, Symbol y) {
        return x >= y ? x - y : y - x;
      });
      break;
    case WeightKind::kInequality:
      direct_accumulate(text.data, pattern.data, out, [](Symbol x, Symbol y) {
        return static_cast<std::int64_t>(x != y);
      });
      break;
    default:
      direct_accumulate(text.data, pattern.data, out,
                        [&](Symbol x, Symbol y) { return weight.evaluate(x, y); });
  }
  return out;
}

ScoreArray weighted_per_symbol(const IntSequence& text,
                               const IntSequence& pattern,
                               const WeightFunction& weight) {
  const std::size_t n = text.size(), m = pattern.size();
  const std::size_t out_len = n - m + 1;
  const Symbol domain = weight.domain_size;
  const std::size_t blocks =
      std::min<std::size_t>(worker_count(), static_cast<std::size_t>(domain));
  std::vector<ScoreArray> partial(blocks, ScoreArray(out_len, 0));

  parallel_for(0, blocks, [&](std::size_t blk) {
    const Symbol lo = static_cast<Symbol>(
        static_cast<std::size_t>(domain) * blk / blocks);
    const Symbol hi = static_cast<Symbol>(
        static_cast<std::size_t>(domain) * (blk + 1) / blocks);
    std::vector<std::int64_t> text_weights(n);
    std::vector<std::int64_t> characteristic(m);
    ScoreArray& acc = partial[blk];
    for (Symbol c = lo; c < hi; ++c) {
      switch (weight.kind) {
        case WeightKind::kParityScore:
          for (std::size_t t = 0; t < n; ++t)
            text_weights[t] = parity_sign_score(text.data[t], c);
          break;
        case WeightKind::kAbsDiff:
          for (std::size_t t = 0; t < n; ++t)
            text_weights[t] = std::llabs(text.data[t] - c);
          break;
        case WeightKind::kInequality:
          for (std::size_t t = 0; t < n; ++t)
            text_weights[t] = text.data[t] != c ? 1 : 0;
          break;
        default:
          for (std::size_t t = 0; t < n; ++t)
            text_weights[t] = weight.evaluate(text.data[t], c);
      }
      for (std::size_t j = 0; j < m; ++j)
        characteristic[j] = pattern.data[j] == c ? 1 : 0;
      const ScoreArray corr = correlate(text_weights, characteristic);
      for (std::size_t i = 0; i < out_len; ++i) acc[i] += corr[i];
    }
  });

  ScoreArray out(out_len, 0);
  for (const ScoreArray& acc : partial)
    for (std::size_t i = 0; i < out_len; ++i) out[i] += acc[i];
  return out;
}

}  // namespace

ScoreArray weighted_mismatches(const IntSequence& text,
                               const IntSequence& pattern,
                               const WeightFunction& weight,
                               WeightedPolicy policy) {
  const std::size_t n = text.size(), m = pattern.size();
  if (m > n) throw std::invalid_argument("pattern longer than text");
  if (weight.domain_size < 1)
    throw std::invalid_argument("weight domain must be >= 1");
  for (Symbol v : text.data)
    if (v < 0 || v >= weight.domain_size)
      throw std::invalid_argument("symbol outside weight domain");
  for (Symbol v : pattern.data)
    if (v < 0 || v >= weight.domain_size)
      throw std::invalid_argument("symbol outside weight domain");

  bool direct;
  switch (policy) {
    case WeightedPolicy::kDirect:
      direct = true;
      break;
    case WeightedPolicy::kPerSymbolCorrelation:
      direct = false;
      break;
    default: {
      const double corr_cost = static_cast<double>(weight.domain_size) *
                               static_cast<double>(n) *
                               std::log2(std::max<double>(static_cast<double>(m), 2.0));
      const double direct_cost = static_cast<double>(n) * static_cast<double>(m);
      direct = corr_cost > direct_cost;
    }
  }
  return direct ? weighted_direct(text, pattern, weight)
                : weighted_per_symbol(text, pattern, weight);
}

}  // namespace l1match
