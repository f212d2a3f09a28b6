// Command-line front end: analyze datasets, compare the paired search
// columns, run trim sweeps, generate seeded synthetic samples, and emit
// plot-data files.
//
// Exit codes: 0 = ran to completion (any statistical verdict), 1 = usage
// error, 2 = data error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <digitlaw/digitlaw.hpp>

namespace {

using namespace digitlaw;

// ---------------------------------------------------------------------------
// flag parsing helpers

std::vector<std::string> split_on_comma(const std::string& text) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ',')) out.push_back(piece);
  return out;
}

std::vector<DigitPosition> parse_digit_positions(const std::string& text) {
  std::vector<DigitPosition> out;
  for (const std::string& piece : split_on_comma(text)) {
    int k = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), k);
    if (ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw input_error("--digits: not a digit position: " + piece);
    }
    out.push_back(DigitPosition(k));  // rejects k < 1
  }
  if (out.empty()) throw input_error("--digits: no positions given");
  return out;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  for (const std::string& piece : split_on_comma(text)) {
    try {
      std::size_t consumed = 0;
      double f = std::stod(piece, &consumed);
      if (consumed != piece.size()) throw std::invalid_argument(piece);
      out.push_back(f);
    } catch (const std::exception&) {
      throw input_error("--fractions: not a number: " + piece);
    }
  }
  if (out.empty()) throw input_error("--fractions: no fractions given");
  return out;
}

std::vector<TrimEnd> parse_trim_ends(const std::string& text) {
  std::vector<TrimEnd> out;
  for (const std::string& piece : split_on_comma(text)) {
    if (piece == "top") {
      out.push_back(TrimEnd::top);
    } else if (piece == "bottom") {
      out.push_back(TrimEnd::bottom);
    } else if (piece == "both") {
      out.push_back(TrimEnd::both);
    } else {
      throw input_error("--ends: expected top, bottom, or both; got " + piece);
    }
  }
  if (out.empty()) throw input_error("--ends: no ends given");
  return out;
}

// ---------------------------------------------------------------------------
// input loading and column resolution

struct InputData {
  std::string id;  // the path as given
  std::optional<PairedDataset> paired;
  std::optional<GenericColumn> generic;
};

InputData load_input(const std::string& file, const std::string& format_flag, bool thousands) {
  LoadOptions opts;
  opts.thousands_separators = thousands;
  InputData input;
  input.id = file;

  bool json = format_flag == "json" ||
              (format_flag == "auto" && file.size() >= 5 && file.ends_with(".json"));
  if (json) {
    input.paired = load_dataset(file, DatasetFormat::json, opts);
    return input;
  }

  // CSV: a single-column `count` header marks a generic sample file; the
  // six-column header marks the paired dataset.
  std::ifstream probe(file, std::ios::binary);
  if (!probe) throw data_error("cannot open " + file);
  CsvReader reader(probe);
  std::vector<std::string> head;
  if (!reader.next_record(head)) throw data_error(file + ": empty file");
  if (head.size() == 1 && head[0] == "count") {
    input.generic = load_count_column(file);
  } else {
    input.paired = load_dataset(file, DatasetFormat::csv, opts);
  }
  return input;
}

struct ColumnValues {
  std::string name;
  bool integral = false;
  std::vector<std::uint64_t> ints;
  std::vector<double> reals;

  std::size_t size() const { return integral ? ints.size() : reals.size(); }
};

ColumnValues resolve_column(const InputData& input, const std::string& column_flag) {
  ColumnValues col;
  if (input.generic.has_value()) {
    if (column_flag != "auto" && column_flag != "generic") {
      throw data_error(input.id + ": single-column input provides only the `generic` column, not " +
                       column_flag);
    }
    col.name = "generic";
    if (input.generic->integers.has_value()) {
      col.integral = true;
      col.ints = *input.generic->integers;
    } else {
      col.reals = input.generic->reals;
    }
    return col;
  }
  if (column_flag == "generic") {
    throw data_error(input.id + ": paired dataset has columns count_a1 and count_a2, not generic");
  }
  col.name = column_flag == "auto" ? "count_a1" : column_flag;
  col.integral = true;
  col.ints = input.paired->column(col.name);
  return col;
}

// ---------------------------------------------------------------------------
// output plumbing

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write " + path);
  out << content;
  if (!out.flush()) throw data_error("write failed: " + path);
}

std::string render_count_column(std::span<const double> values) {
  std::ostringstream out;
  out << "count\n";
  char buf[64];
  for (double v : values) {
    if (v >= 0.0 && v == std::floor(v) && v < 18446744073709551616.0) {
      out << static_cast<std::uint64_t>(v) << '\n';
    } else {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out.write(buf, ptr - buf);
      out << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// commands

struct CommonFlags {
  std::string file;
  std::string column = "auto";
  std::string format = "auto";
  std::string json_out;
  double alpha = 0.05;
  bool thousands = false;
};

int run_analyze(const CommonFlags& flags, const std::string& digits_flag) {
  auto positions = parse_digit_positions(digits_flag);
  auto input = load_input(flags.file, flags.format, flags.thousands);
  auto col = resolve_column(input, flags.column);

  DescriptiveSummary descriptive =
      col.integral ? descriptive_summary(col.ints) : descriptive_summary(col.reals);
  std::vector<ConformityVerdict> verdicts;
  for (DigitPosition k : positions) {
    verdicts.push_back(col.integral ? conformity_test(col.ints, k, flags.alpha)
                                    : conformity_test(col.reals, k, flags.alpha));
  }
  std::vector<std::string> warnings;
  if (input.paired.has_value()) warnings = input.paired->warnings;
  ordered_json report = analyze_report(input.id, col.name, flags.alpha, col.size(), warnings,
                                       descriptive, verdicts);
  write_output(flags.json_out, render_report(report));
  return 0;
}

int run_compare(const CommonFlags& flags, const std::string& digits_flag) {
  auto positions = parse_digit_positions(digits_flag);
  auto input = load_input(flags.file, flags.format, flags.thousands);
  if (!input.paired.has_value()) {
    throw data_error(flags.file + ": compare needs the paired columns count_a1 and count_a2");
  }
  const PairedDataset& ds = *input.paired;

  auto analyze_column = [&](const char* name) {
    ColumnAnalysis a;
    auto values = ds.column(name);
    a.descriptive = descriptive_summary(values);
    for (DigitPosition k : positions) {
      a.verdicts.push_back(conformity_test(values, k, flags.alpha));
    }
    return a;
  };
  ColumnAnalysis a1 = analyze_column("count_a1");
  ColumnAnalysis a2 = analyze_column("count_a2");
  ordered_json report = compare_report(input.id, flags.alpha, ds, a1, a2);
  write_output(flags.json_out, render_report(report));
  return 0;
}

int run_trim_sweep(const CommonFlags& flags, int digit_flag, const std::string& fractions_flag,
                   const std::string& ends_flag) {
  DigitPosition k(digit_flag);
  auto fractions = parse_fractions(fractions_flag);
  auto ends = parse_trim_ends(ends_flag);
  auto input = load_input(flags.file, flags.format, flags.thousands);
  auto col = resolve_column(input, flags.column);

  ordered_json report;
  if (col.integral) {
    auto sweep = trim_sweep(std::span<const std::uint64_t>(col.ints), std::span(fractions),
                            std::span(ends), k, flags.alpha);
    report = trim_sweep_report_json(input.id, col.name, k, flags.alpha, sweep);
  } else {
    auto sweep = trim_sweep(std::span<const double>(col.reals), std::span(fractions),
                            std::span(ends), k, flags.alpha);
    report = trim_sweep_report_json(input.id, col.name, k, flags.alpha, sweep);
  }
  write_output(flags.json_out, render_report(report));
  return 0;
}

int run_plot_data(const CommonFlags& flags, int digit_flag, const std::string& out_path) {
  DigitPosition k(digit_flag);
  auto input = load_input(flags.file, flags.format, flags.thousands);
  auto col = resolve_column(input, flags.column);
  ConformityVerdict v = col.integral ? conformity_test(col.ints, k, flags.alpha)
                                     : conformity_test(col.reals, k, flags.alpha);
  std::ostringstream out;
  write_plot_data(out, v);
  write_output(out_path, out.str());
  return 0;
}

struct GenFlags {
  std::string family;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double log10_min = 0.0;
  double log10_max = 6.0;
  double rate = 1.0;
  std::uint64_t base = 2;
  std::size_t length = 0;
  std::uint64_t range_min = 1;
  std::uint64_t range_max = 999999;
  std::string out_path;
};

int run_gen(const GenFlags& flags) {
  GeneratorSpec spec;
  if (flags.family == "loguniform") {
    spec = GeneratorSpec::log_uniform_spec(flags.n, flags.seed, flags.log10_min, flags.log10_max);
  } else if (flags.family == "exponential") {
    spec = GeneratorSpec::exponential_spec(flags.n, flags.seed, flags.rate);
  } else if (flags.family == "geometric") {
    spec = GeneratorSpec::geometric_spec(flags.base, flags.length);
  } else if (flags.family == "uniform") {
    spec = GeneratorSpec::uniform_integer_spec(flags.n, flags.seed, flags.range_min,
                                               flags.range_max);
  } else {
    throw input_error("--family: expected loguniform, exponential, geometric, or uniform");
  }
  std::vector<double> values = generate(spec);
  write_output(flags.out_path, render_count_column(values));
  return 0;
}

void add_common_input_flags(CLI::App* cmd, CommonFlags& flags, bool with_column) {
  cmd->add_option("file", flags.file, "Input dataset (CSV or JSON)")->required();
  if (with_column) {
    cmd->add_option("--column", flags.column, "Column to analyze")
        ->check(CLI::IsMember({"auto", "count_a1", "count_a2", "generic"}))
        ->capture_default_str();
  }
  cmd->add_option("--alpha", flags.alpha, "Significance level")->capture_default_str();
  cmd->add_option("--format", flags.format, "Input format")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--thousands-separators", flags.thousands,
                "Accept space/comma group separators in counts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Significant-digit law analysis for count datasets"};
  app.set_version_flag("--version", digitlaw::version_string);
  app.require_subcommand(1);

  CommonFlags analyze_flags, compare_flags, trim_flags, plot_flags;
  std::string analyze_digits = "1,2";
  std::string compare_digits = "1,2";
  int trim_digit = 1;
  std::string trim_fractions = "0.01,0.05,0.10";
  std::string trim_ends = "top,bottom";
  int plot_digit = 1;
  std::string plot_out;
  GenFlags gen_flags;

  CLI::App* analyze = app.add_subcommand("analyze", "Digit-law conformity report for one column");
  add_common_input_flags(analyze, analyze_flags, true);
  analyze->add_option("--digits", analyze_digits, "Digit positions, comma-separated")
      ->capture_default_str();
  analyze->add_option("--json", analyze_flags.json_out, "Write the JSON report here (default stdout)");

  CLI::App* compare = app.add_subcommand("compare", "Paired A1-vs-A2 conformity report");
  add_common_input_flags(compare, compare_flags, false);
  compare->add_option("--digits", compare_digits, "Digit positions, comma-separated")
      ->capture_default_str();
  compare->add_option("--json", compare_flags.json_out, "Write the JSON report here (default stdout)");

  CLI::App* trim = app.add_subcommand("trim-sweep", "Re-test conformity under outcome trimming");
  add_common_input_flags(trim, trim_flags, true);
  trim->add_option("--digit", trim_digit, "Digit position")->capture_default_str();
  trim->add_option("--fractions", trim_fractions, "Trim fractions, comma-separated")
      ->capture_default_str();
  trim->add_option("--ends", trim_ends, "Trim ends (top/bottom/both), comma-separated")
      ->capture_default_str();
  trim->add_option("--json", trim_flags.json_out, "Write the JSON report here (default stdout)");

  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded synthetic sample");
  gen->add_option("--family", gen_flags.family, "loguniform, exponential, geometric, or uniform")
      ->required();
  gen->add_option("--n", gen_flags.n, "Sample size")->capture_default_str();
  gen->add_option("--seed", gen_flags.seed, "Generator seed")->capture_default_str();
  gen->add_option("--log10-min", gen_flags.log10_min, "Log-uniform: lower decade")
      ->capture_default_str();
  gen->add_option("--log10-max", gen_flags.log10_max, "Log-uniform: upper decade")
      ->capture_default_str();
  gen->add_option("--rate", gen_flags.rate, "Exponential: rate parameter")->capture_default_str();
  gen->add_option("--base", gen_flags.base, "Geometric: base")->capture_default_str();
  gen->add_option("--length", gen_flags.length, "Geometric: sequence length");
  gen->add_option("--min", gen_flags.range_min, "Uniform: inclusive lower bound")
      ->capture_default_str();
  gen->add_option("--max", gen_flags.range_max, "Uniform: inclusive upper bound")
      ->capture_default_str();
  gen->add_option("--out", gen_flags.out_path, "Write the sample here (default stdout)");

  CLI::App* plot = app.add_subcommand("plot-data", "Expected-vs-observed frequency series");
  add_common_input_flags(plot, plot_flags, true);
  plot->add_option("--digit", plot_digit, "Digit position")->capture_default_str();
  plot->add_option("--out", plot_out, "Write the CSV series here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors are exit 1; --help/--version exit 0
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_flags, analyze_digits);
    if (compare->parsed()) return run_compare(compare_flags, compare_digits);
    if (trim->parsed()) return run_trim_sweep(trim_flags, trim_digit, trim_fractions, trim_ends);
    if (gen->parsed()) return run_gen(gen_flags);
    if (plot->parsed()) return run_plot_data(plot_flags, plot_digit, plot_out);
  } catch (const digitlaw::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const digitlaw::data_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
