#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace bvperiod::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

struct Assertion {
  std::string name;
  bool ok = true;
  std::string detail;
};

json to_json(const std::vector<Assertion>& list);
bool all_ok(const std::vector<Assertion>& list);

// Property suites; each is deterministic in its seed.
std::vector<Assertion> suite_bv(std::uint64_t seed, int samples = 120);
std::vector<Assertion> suite_linf(std::uint64_t seed);
std::vector<Assertion> suite_oracle(std::uint64_t seed, int samples = 50);
std::vector<Assertion> suite_wdvv(int order = 3);

// Entry point: returns the exit code (0 pass, 1 assertion failure, 2 usage or
// configuration error). The report goes to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvperiod::cli
