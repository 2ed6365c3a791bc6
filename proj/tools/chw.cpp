// chw: command-line front end for the CHW classification library.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure,
// 3 internal invariant breach.

#include <fstream>
#include <numeric>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "chw/io.hpp"
#include "chw/pipeline.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kValidation = 2, kInternal = 3 };

std::vector<std::string> split_generators(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kUsage;
  }
  out << text;
  return kOk;
}

int cmd_sub(int n, const std::string& format) {
  if (n < 2 || n > chw::kMaxCodeLength) {
    std::cerr << "error: --dim must be in [2, " << chw::kMaxCodeLength << "]\n";
    return kUsage;
  }
  const auto classes = chw::enumerate_sub_classes(n);
  if (format == "json")
    std::cout << chw::sub_to_json(n, classes).dump(2) << "\n";
  else
    std::cout << chw::sub_to_text(classes);
  return kOk;
}

int cmd_classify(int n, const std::vector<std::string>& w_args, int jobs, const std::string& out_path, const std::string& format) {
  chw::ClassifyOptions opts;
  opts.jobs = jobs;
  try {
    chw::check_classify_dim(n);
    for (const auto& arg : w_args) {
      // an all-zero word names the trivial code
      auto gens = split_generators(arg);
      for (const auto& g : gens)
        if (static_cast<int>(g.size()) != n) throw std::invalid_argument("generator '" + g + "' does not have length " + std::to_string(n));
      std::erase_if(gens, [](const std::string& g) { return g.find('1') == std::string::npos; });
      opts.only.push_back(chw::Code::from_strings(n, gens));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const auto report = chw::classify(n, opts);
  const bool full = opts.only.empty();
  if (format == "csv") return emit(chw::report_to_csv(report), out_path);
  if (format == "text") return emit(chw::report_to_text(report, full), out_path);
  return emit(chw::report_to_json(report, full).dump(2) + "\n", out_path);
}

int cmd_check(const std::string& path) {
  const auto r = chw::run_check(path);
  std::cout << chw::check_to_json(r).dump(2) << "\n";
  if (!r.ok) return kValidation;
  return r.agreement ? kOk : kInternal;
}

int cmd_canon(const std::string& path) {
  try {
    const auto p = chw::validate_pair(chw::parse_pair_text(chw::read_file(path)));
    std::cout << chw::pair_to_json(chw::full_canonical_form(p)).dump(2) << "\n";
    return kOk;
  } catch (const chw::PairFileError& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return kValidation;
  }
}

int cmd_bound7() {
  const auto b = chw::dim7_lower_bound();
  const auto g = std::gcd(b.remainder, b.group_order);
  std::cout << "free_positions " << b.free_positions << "\n"
            << "matrix_count " << b.matrix_count << " = 2^46*" << (b.matrix_count >> 46) << "\n"
            << "group_order " << b.group_order << "\n"
            << "bound " << b.bound << "\n"
            << "fractional_part " << b.remainder / g << "/" << b.group_order / g << "\n";
  if (b.remainder == 0) {
    std::cerr << "error: quotient is an integer, the bound is not strict\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification of complex Hantzsche-Wendt manifolds"};
  app.require_subcommand(1);

  int n = 0;
  std::string sub_format, report_format;
  auto* sub = app.add_subcommand("sub", "List Sub(N) canonical representatives");
  sub->add_option("--dim", n, "Code length N")->required();
  sub->add_option("--format", sub_format, "json|text")->check(CLI::IsMember({"json", "text"}))->default_val("text");

  std::vector<std::string> w_args;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string out_path;
  auto* cls = app.add_subcommand("classify", "Count CHW manifolds of dimension N");
  cls->add_option("--dim", n, "Odd dimension N")->required();
  cls->add_option("--w", w_args, "Restrict to the class of W (comma-separated generators)");
  cls->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  cls->add_option("--out", out_path, "Write the report here instead of stdout");
  cls->add_option("--format", report_format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}))->default_val("json");

  std::string path;
  auto* check = app.add_subcommand("check", "Validate a pair file");
  check->add_option("path", path, "Pair file (JSON)")->required();
  auto* canon = app.add_subcommand("canon", "Print the canonical form of a pair");
  canon->add_option("path", path, "Pair file (JSON)")->required();
  auto* bound7 = app.add_subcommand("bound7", "Lower bound for diagonal CHW 7-folds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sub) return cmd_sub(n, sub_format);
    if (*cls) return cmd_classify(n, w_args, jobs, out_path, report_format);
    if (*check) return cmd_check(path);
    if (*canon) return cmd_canon(path);
    if (*bound7) return cmd_bound7();
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
