// Minimal tour: generate a conformant sample, tally first digits, and run
// the goodness-of-fit test.

#include <cstdio>

#include <digitlaw/digitlaw.hpp>

int main() {
  using namespace digitlaw;

  // A log-uniform spread over six decades is Benford-conformant by
  // construction; seed it so every run prints the same numbers.
  auto values = generate(GeneratorSpec::log_uniform_spec(5000, /*seed=*/7));

  DigitPosition first(1);
  ConformityVerdict verdict = conformity_test(values, first, 0.05);

  std::printf("digit  expected  observed\n");
  for (int d = first.min_digit(); d <= first.max_digit(); ++d) {
    std::printf("%5d  %8.4f  %8.4f\n", d, verdict.expectation.prob(d),
                verdict.table.relative_frequency(d));
  }
  std::printf("chi-square %.3f vs critical %.3f at alpha %.2f -> %s\n",
              verdict.result.statistic, verdict.result.critical_value, verdict.result.alpha,
              to_string(verdict.conclusion));
  return 0;
}
