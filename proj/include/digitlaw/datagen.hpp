#pragma once

// Seeded synthetic generators used as independent oracles: families that are
// Benford-conformant by construction (log-uniform spans of whole decades,
// exponential, geometric sequences) and a deliberately non-conformant
// control (uniform integers over full decades).
//
// Reproducibility contract: the engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard, and every derivation from it is
// spelled out here (53-bit mantissa unit doubles, rejection sampling for
// bounded integers, inversion for the exponential), so a (family, seed,
// params) triple produces the same sample on every platform. Changing any
// of these derivations is a breaking change to pinned test values.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "digitlaw/errors.hpp"

namespace digitlaw {

/// mt19937_64 with portable value derivations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with a 53-bit mantissa: (x >> 11) * 2^-53.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw input_error("next_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

enum class Family { log_uniform, exponential, geometric_sequence, uniform_integer };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::log_uniform: return "log_uniform";
    case Family::exponential: return "exponential";
    case Family::geometric_sequence: return "geometric_sequence";
    default: return "uniform_integer";
  }
}

struct GeneratorSpec {
  Family family = Family::log_uniform;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  // log_uniform: 10^U with U uniform on [log10_min, log10_max)
  double log10_min = 0.0;
  double log10_max = 6.0;

  // exponential: inversion, -ln(1 - U) / rate
  double rate = 1.0;

  // geometric_sequence: base^1 .. base^length (deterministic, no seed)
  std::uint64_t base = 2;
  std::size_t length = 0;

  // uniform_integer: inclusive range
  std::uint64_t range_min = 1;
  std::uint64_t range_max = 999999;

  static GeneratorSpec log_uniform_spec(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                        double hi = 6.0) {
    GeneratorSpec s;
    s.family = Family::log_uniform;
    s.n = n;
    s.seed = seed;
    s.log10_min = lo;
    s.log10_max = hi;
    return s;
  }

  static GeneratorSpec exponential_spec(std::size_t n, std::uint64_t seed, double rate) {
    GeneratorSpec s;
    s.family = Family::exponential;
    s.n = n;
    s.seed = seed;
    s.rate = rate;
    return s;
  }

  static GeneratorSpec geometric_spec(std::uint64_t base, std::size_t length) {
    GeneratorSpec s;
    s.family = Family::geometric_sequence;
    s.base = base;
    s.length = length;
    s.n = length;
    return s;
  }

  static GeneratorSpec uniform_integer_spec(std::size_t n, std::uint64_t seed, std::uint64_t lo,
                                            std::uint64_t hi) {
    GeneratorSpec s;
    s.family = Family::uniform_integer;
    s.n = n;
    s.seed = seed;
    s.range_min = lo;
    s.range_max = hi;
    return s;
  }
};

/// Deterministic sample for the spec. Throws input_error on degenerate
/// parameters (zero-width range, rate <= 0, base <= 1, span < 3 decades).
inline std::vector<double> generate(const GeneratorSpec& spec) {
  std::vector<double> out;
  switch (spec.family) {
    case Family::log_uniform: {
      if (spec.n < 1) throw input_error("generate: n must be >= 1");
      const double span = spec.log10_max - spec.log10_min;
      if (!(span >= 3.0)) {
        throw input_error("generate: log_uniform span must cover at least 3 decades, got " +
                          std::to_string(span));
      }
      SeededRng rng(spec.seed);
      out.reserve(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        out.push_back(std::pow(10.0, spec.log10_min + span * rng.next_unit()));
      }
      return out;
    }
    case Family::exponential: {
      if (spec.n < 1) throw input_error("generate: n must be >= 1");
      if (!(spec.rate > 0.0)) {
        throw input_error("generate: exponential rate must be positive, got " +
                          std::to_string(spec.rate));
      }
      SeededRng rng(spec.seed);
      out.reserve(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        out.push_back(-std::log1p(-rng.next_unit()) / spec.rate);
      }
      return out;
    }
    case Family::geometric_sequence: {
      if (spec.base <= 1) throw input_error("generate: geometric base must be > 1");
      if (spec.length < 1) throw input_error("generate: geometric length must be >= 1");
      const double b = static_cast<double>(spec.base);
      if (!std::isfinite(std::pow(b, static_cast<double>(spec.length)))) {
        throw input_error("generate: geometric sequence overflows double range");
      }
      out.reserve(spec.length);
      double v = 1.0;
      for (std::size_t i = 0; i < spec.length; ++i) {
        v *= b;
        out.push_back(v);
      }
      return out;
    }
    case Family::uniform_integer: {
      if (spec.n < 1) throw input_error("generate: n must be >= 1");
      if (spec.range_max <= spec.range_min) {
        throw input_error("generate: uniform_integer range is empty or zero-width");
      }
      SeededRng rng(spec.seed);
      const std::uint64_t width = spec.range_max - spec.range_min + 1;
      out.reserve(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        out.push_back(static_cast<double>(spec.range_min + rng.next_below(width)));
      }
      return out;
    }
  }
  throw input_error("generate: unknown family");
}

/// Element-wise multiplication by a positive factor, order preserved.
inline std::vector<double> scale(std::span<const double> values, double factor) {
  if (!(factor > 0.0)) {
    throw input_error("scale: factor must be positive, got " + std::to_string(factor));
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(v * factor);
  return out;
}

}  // namespace digitlaw
