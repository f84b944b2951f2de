#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "saw/cli.hpp"

namespace {

saw::Rational rational_option(const std::string& text) {
  try {
    return saw::parse_rational(text);
  } catch (const saw::Error&) {
    throw CLI::ValidationError("expected a rational such as 1/8, got '" + text + "'");
  }
}

saw::Point point_option(const std::string& text) {
  saw::Point p;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    p.push_back(rational_option(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witness construction and verification for semi-algebraic query expressions"};
  app.require_subcommand(1);
  saw::cli::RunConfig config;
  std::string resolution, margin = "1/2", region = "-2,2";
  std::vector<std::string> centers;
  std::string lhs, rhs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--dim", config.n, "Ambient dimension of the input symbol S")->capture_default_str();
    sub->add_option("--seed", config.seed, "Seed for every sampler")->capture_default_str();
    sub->add_option("--cert-budget", config.cert_budget, "Boxes per interval certificate")->capture_default_str();
    sub->add_option("--sample-budget", config.sample_budget, "Sample points per equality check")
        ->capture_default_str();
    sub->add_option("--resolution", resolution, "Grid cell width, e.g. 1/32");
    sub->add_option("--margin", margin, "Ball radius as a fraction of half the box width")->capture_default_str();
    sub->add_option("--region", region, "Initial cube 'lo,hi' per coordinate")->capture_default_str();
    sub->add_option("--out", config.out, "JSON report path");
  };
  auto with_expressions = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("expressions", config.input, "Expression file, one per line")->required();
    sub->add_option("--sets", config.sets, "Set-definition file for constants");
    common(sub);
    return sub;
  };

  with_expressions("classify", "Report fragment membership per expression");
  with_expressions("normalize", "Print product-free and one-pass normal forms");
  with_expressions("witness-cpfree", "Build a witness pair for product-free expressions");
  CLI::App* onepass = with_expressions("witness-onepass", "Search a witness pair for positive one-pass expressions");
  onepass->add_option("--first-exponent", config.first_exponent, "First scale is 2^-first")->capture_default_str();
  onepass->add_option("--last-exponent", config.last_exponent, "Last scale is 2^-last")->capture_default_str();
  onepass->add_option("--center", centers, "Candidate center 'x1,x2,x3' (repeatable)");

  CLI::App* verify = app.add_subcommand("verify", "Compare two sets, or an expression on two sets");
  verify->add_option("sets", config.input, "Set-definition file")->required();
  verify->add_option("--expr", config.expressions, "Expression file applied to both sets");
  verify->add_option("--lhs", lhs, "First set (default: A if the file has A and B, else the first set)");
  verify->add_option("--rhs", rhs, "Second set (default: B, else the second set)");
  common(verify);

  CLI::App* conn = app.add_subcommand("connectivity", "Count grid components of sets");
  conn->add_option("sets", config.input, "Set-definition file")->required();
  conn->add_option("--set", config.names, "Set to examine (repeatable; default: all)");
  common(conn);

  try {
    app.parse(argc, argv);
    config.command = app.get_subcommands().front()->get_name();
    if (!resolution.empty()) config.resolution = rational_option(resolution);
    config.margin = rational_option(margin);
    saw::Point r = point_option(region);
    if (r.size() != 2 || r[0] >= r[1]) throw CLI::ValidationError("--region must be 'lo,hi' with lo < hi");
    config.region_lo = r[0];
    config.region_hi = r[1];
    for (const std::string& c : centers) config.centers.push_back(point_option(c));
    if (lhs.empty() != rhs.empty()) throw CLI::ValidationError("--lhs and --rhs go together");
    if (!lhs.empty()) config.names = {lhs, rhs};
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : saw::cli::kInputError;
  }
  if (const char* t = std::getenv("SA_WITNESS_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(t, &end, 10);
    if (end == t || *end || v == 0) {
      std::cerr << "error: SA_WITNESS_THREADS must be a positive integer\n";
      return saw::cli::kInputError;
    }
    config.threads = v;
  }
  return saw::cli::run_and_write(config, std::cout, std::cerr);
}
