#include <doctest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

namespace {

// File contents with // comments removed.
std::string source(const std::string& relative) {
  std::ifstream in(std::string(DYADIC_SOURCE_DIR) + "/" + relative);
  REQUIRE_MESSAGE(in, "cannot open " << relative);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto slash = line.find("//");
    out << (slash == std::string::npos ? line : line.substr(0, slash)) << '\n';
  }
  return out.str();
}

std::set<std::string> project_includes(const std::string& text) {
  static const std::regex inc(R"re(#include\s+"([^"]+)")re");
  std::set<std::string> out;
  for (std::sregex_iterator it(text.begin(), text.end(), inc), end; it != end; ++it) out.insert((*it)[1]);
  return out;
}

}  // namespace

TEST_CASE("oracle shares only pair() with the tensor kernels") {
  for (const char* file : {"src/oracle.cpp", "include/dyadic/oracle.hpp"}) {
    CAPTURE(file);
    const auto text = source(file);
    for (const char* banned : {"wedge_eval", "small_determinant", "DenseLu", "gram(", "subsets.hpp", "exact.hpp",
                               "approx.hpp", "multiply(", "osquare"}) {
      CAPTURE(banned);
      CHECK(text.find(banned) == std::string::npos);
    }
    for (const auto& inc : project_includes(text)) {
      CAPTURE(inc);
      CHECK((inc == "dyadic/tensor.hpp" || inc == "dyadic/errors.hpp" || inc == "dyadic/oracle.hpp"));
    }
  }
}

TEST_CASE("module dependency direction") {
  // tensor is the base layer and depends on nothing above it.
  for (const auto& inc : project_includes(source("src/tensor.cpp") + source("include/dyadic/tensor.hpp"))) {
    CAPTURE(inc);
    CHECK((inc == "dyadic/tensor.hpp" || inc == "dyadic/errors.hpp"));
  }
  // library kernels never reach into the oracle or the experiment driver.
  for (const char* file : {"src/exact.cpp", "src/approx.cpp", "src/metric.cpp", "src/tensor.cpp", "src/subsets.cpp"}) {
    CAPTURE(file);
    const auto incs = project_includes(source(file));
    CHECK(incs.count("dyadic/oracle.hpp") == 0);
    CHECK(incs.count("dyadic/bench.hpp") == 0);
  }
}
