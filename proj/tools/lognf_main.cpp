// lognf: normal forms, equality and word-problem queries, and workspace
// metering sweeps for the supported group families.
//
// Exit codes: 0 success (or "true" for eq/wp), 1 false, 2 usage error,
// 3 runtime error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "lognf/sweep.hpp"

namespace {

using namespace lognf;

std::string read_word_arg(const std::string& arg) {
  if (arg != "-") return arg;
  std::string line;
  std::getline(std::cin, line);
  return line;
}

std::vector<long long> parse_lengths(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw CLI::ValidationError("--lengths must be ascending");
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"logspace normal forms for groups"};
  app.require_subcommand(1);

  std::string group, word, word2, lengths_s = "64,128,256,512,1024,2048,4096,8192", out_file;
  unsigned long long budget = Exec::kDefaultStepLimit;
  unsigned long long seed = 1;
  int samples = 20;
  bool with_meter = false;

  auto* nf = app.add_subcommand("nf", "print the normal form of a word");
  nf->add_option("--group", group, "group expression")->required();
  nf->add_option("--word", word, "input word ('-' reads stdin)")->required();
  nf->add_flag("--meter", with_meter, "append the space report CSV to stderr");
  nf->add_option("--budget", budget, "step budget");

  auto* eq = app.add_subcommand("eq", "test whether two words represent the same element");
  eq->add_option("--group", group)->required();
  eq->add_option("--word", word)->required();
  eq->add_option("--word2", word2)->required();
  eq->add_option("--budget", budget);

  auto* wp = app.add_subcommand("wp", "test whether a word represents the identity");
  wp->add_option("--group", group)->required();
  wp->add_option("--word", word)->required();
  wp->add_option("--budget", budget);

  auto* meter = app.add_subcommand("meter", "metering sweep over random words, CSV output");
  meter->add_option("--group", group)->required();
  meter->add_option("--lengths", lengths_s, "comma-separated ascending lengths");
  meter->add_option("--samples", samples, "samples per length");
  meter->add_option("--seed", seed, "RNG seed");
  meter->add_option("--out", out_file, "output CSV file (default stdout)");
  meter->add_option("--budget", budget);

  auto* bench = app.add_subcommand("bench", "sweep plus fitted space/step/output growth");
  bench->add_option("--group", group)->required();
  bench->add_option("--lengths", lengths_s);
  bench->add_option("--samples", samples);
  bench->add_option("--seed", seed);
  bench->add_option("--budget", budget);

  CLI11_PARSE(app, argc, argv);

  if (nf->parsed()) {
    Built b = build(group);
    Word w = parse_word(read_word_arg(word), b.alphabet);
    RunResult r = run(*b.nf, w, budget);
    std::cout << format_word(r.output, b.alphabet) << "\n";
    if (with_meter) std::cerr << r.report.csv() << "\n";
    return 0;
  }
  if (eq->parsed()) {
    Built b = build(group);
    Word u = parse_word(read_word_arg(word), b.alphabet);
    Word v = parse_word(read_word_arg(word2), b.alphabet);
    bool same = equal_nf(*b.nf, u, v, budget);
    std::cout << (same ? "true" : "false") << "\n";
    return same ? 0 : 1;
  }
  if (wp->parsed()) {
    Built b = build(group);
    Word w = parse_word(read_word_arg(word), b.alphabet);
    bool trivial = equal_nf(*b.nf, w, {}, budget);
    std::cout << (trivial ? "true" : "false") << "\n";
    return trivial ? 0 : 1;
  }

  Built b = build(group);
  std::vector<long long> lengths = parse_lengths(lengths_s);
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  auto rows = meter_sweep(b, lengths, samples, seed, budget, threads > 0 ? threads : 1);

  if (meter->parsed()) {
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!out_file.empty()) {
      f.open(out_file);
      if (!f) fail(Err::Io, "cannot open output file '" + out_file + "'");
      os = &f;
    }
    *os << "length,sample,peak_bits,steps,output_length\n";
    for (const auto& r : rows)
      *os << r.length << "," << r.sample << "," << r.peak_bits << "," << r.steps << ","
          << r.output_length << "\n";
    return 0;
  }

  // bench: per-doubling peak deltas and fitted growth laws.
  auto peaks = sweep_medians(rows, lengths, &SweepRow::peak_bits);
  auto outs = sweep_medians(rows, lengths, &SweepRow::output_length);
  auto steps = sweep_medians_steps(rows, lengths);
  std::cout << "length,median_peak_bits,median_steps,median_output_length\n";
  for (size_t i = 0; i < lengths.size(); ++i)
    std::cout << lengths[i] << "," << peaks[i] << "," << steps[i] << "," << outs[i] << "\n";
  for (size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i] == 2 * lengths[i - 1])
      std::cout << "peak_delta " << lengths[i - 1] << "->" << lengths[i] << ": "
                << peaks[i] - peaks[i - 1] << " bits\n";
  std::vector<double> lx, lpk, lst, lout;
  for (size_t i = 0; i < lengths.size(); ++i) {
    lx.push_back(std::log2(static_cast<double>(lengths[i])));
    lpk.push_back(peaks[i]);
    lst.push_back(std::log2(std::max(1.0, steps[i])));
    lout.push_back(std::log2(std::max(1.0, outs[i])));
  }
  LinFit fp = fit_linear(lx, lpk);
  LinFit fs = fit_linear(lx, lst);
  LinFit fo = fit_linear(lx, lout);
  std::cout << "fit peak_bits ~ " << fp.slope << " * log2(n) + " << fp.intercept << "\n";
  std::cout << "fit steps ~ n^" << fs.slope << "\n";
  std::cout << "fit output_length ~ n^" << fo.slope << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case Err::SyntaxError:
      case Err::ArityError:
      case Err::UnknownGenerator:
      case Err::MalformedExponent:
      case Err::UnknownToken:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
