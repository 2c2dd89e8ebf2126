#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "contact_pi1/corpus.hpp"
#include "contact_pi1/crossval.hpp"
#include "contact_pi1/document.hpp"

using namespace contact_pi1;

namespace {

constexpr int kOk = 0;
constexpr int kInvalidInput = 1;
constexpr int kViolation = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("contact-pi1");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char *env = std::getenv("CONTACT_PI1_LOG"))
    spdlog::set_level(spdlog::level::from_str(env));
}

std::string slurp(const std::string &path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Method parse_method(const std::string &s) {
  if (s == "thmB") return Method::ThmB;
  if (s == "lerman") return Method::Lerman;
  if (s == "thmC") return Method::ThmC;
  return Method::All;
}

int cmd_compute(const std::string &file, const std::string &method, const std::string &format) {
  const std::vector<InputDocument> docs = parse_batch(slurp(file));
  RunOptions opt;
  opt.method = parse_method(method);
  opt.format = format == "text" ? Format::Text : Format::Json;
  int code = kOk;
  ordered_json batch = ordered_json::array();
  std::string text;
  for (const InputDocument &doc : docs) {
    spdlog::info("computing {}", doc.label.value_or(std::string(kind_name(doc.kind))));
    const OutputReport r = run(doc, opt);
    if (!r.result.agree) {
      spdlog::error("routes disagree: {}", r.result.disagreement);
      code = kViolation;
    }
    for (const std::string &w : r.result.warnings) spdlog::warn("{}", w);
    if (opt.format == Format::Json)
      batch.push_back(report_json(r));
    else
      text += (text.empty() ? "" : "\n") + render(r, Format::Text);
  }
  if (opt.format == Format::Text)
    std::cout << text;
  else if (docs.size() == 1)
    std::cout << batch[0].dump(2) << '\n';
  else
    std::cout << batch.dump(2) << '\n';
  return code;
}

int cmd_validate(const std::string &file) {
  const std::vector<InputDocument> docs = parse_batch(slurp(file));
  int code = kOk;
  ordered_json out = ordered_json::array();
  for (const InputDocument &doc : docs) {
    ordered_json v = validation_json(doc);
    if (!v["valid"].get<bool>()) code = kInvalidInput;
    out.push_back(std::move(v));
  }
  std::cout << (docs.size() == 1 ? out[0] : out).dump(2) << '\n';
  return code;
}

int cmd_crossval(const CrossvalOptions &opt) {
  spdlog::info("crossval: {} trials, seed {}", opt.count, opt.seed);
  const CrossvalSummary s = crossval(opt);
  std::cout << summary_json(s).dump(2) << '\n';
  for (const std::string &f : s.corpus_failures) spdlog::error("corpus: {}", f);
  if (s.disagree) spdlog::error("{} disagreement(s); minimized: {}", s.disagree, s.reproduction_detail);
  return s.ok() ? kOk : kViolation;
}

int cmd_corpus(const std::string &emit) {
  int code = kOk;
  if (!emit.empty()) std::filesystem::create_directories(emit);
  for (const CorpusEntry &e : corpus()) {
    const CorpusCheck c = check_entry(e);
    if (!c.passed) code = kViolation;
    std::cout << (c.passed ? "PASS " : "FAIL ") << e.name << "  " << e.expected.class_label
              << "  pi1=" << e.expected.pi1.value_or("none");
    for (const std::string &p : c.problems) std::cout << "  [" << p << "]";
    std::cout << '\n';
    if (!emit.empty()) {
      const std::filesystem::path dir(emit);
      std::ofstream(dir / (e.name + ".json")) << to_json(e.document).dump(2) << '\n';
      std::ofstream(dir / (e.name + ".expected.json")) << render(run(e.document), Format::Json);
    }
  }
  return code;
}

} // namespace

int main(int argc, char **argv) {
  setup_logging();
  CLI::App app{"Fundamental groups of compact connected contact toric manifolds"};
  app.require_subcommand(1);

  std::string file, method = "all", format = "json", emit;
  auto *compute = app.add_subcommand("compute", "compute pi_1 from a cone, polytope or bundle");
  compute->add_option("file", file, "input JSON document or array ('-' for stdin)")->required();
  compute->add_option("--method", method)->check(CLI::IsMember({"all", "thmB", "lerman", "thmC"}));
  compute->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto *validate = app.add_subcommand("validate", "check an input without computing pi_1");
  validate->add_option("file", file)->required();

  CrossvalOptions cv;
  std::string dims = "2..6", facets = "1..12";
  auto *cross = app.add_subcommand("crossval", "randomized agreement check of all routes");
  cross->add_option("--count", cv.count)->required();
  cross->add_option("--seed", cv.seed)->required();
  cross->add_option("--dim", dims, "ambient cone dimension range a..b");
  cross->add_option("--facets", facets, "facet count range a..b");
  cross->add_option("--jobs", cv.jobs, "worker threads")->check(CLI::PositiveNumber);

  auto *corp = app.add_subcommand("corpus", "run the built-in examples");
  corp->add_option("--emit", emit, "write inputs and reports to this directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*compute) return cmd_compute(file, method, format);
    if (*validate) return cmd_validate(file);
    if (*cross) {
      cv.dim = parse_range(dims);
      cv.facets = parse_range(facets);
      return cmd_crossval(cv);
    }
    if (*corp) return cmd_corpus(emit);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kViolation;
  }
  return kOk;
}
