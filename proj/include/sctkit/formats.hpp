#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sctkit/buchi.hpp"
#include "sctkit/mcs.hpp"
#include "sctkit/sct.hpp"

namespace sctkit {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

struct BaFile {
    BuchiAutomaton automaton;
    Headers headers;  // `# key: value` comment lines, in file order
};

inline constexpr const char* kSuffixClosedHeader = "suffix-closed-wrt-flow";

BaFile parse_ba(std::string_view text);
// Canonical form: every list sorted, one `trans:` line per edge, sorted.
std::string render_ba(const BuchiAutomaton& b, const Headers& headers = {});
bool has_header(const Headers& headers, const std::string& key, const std::string& value);

SctProblem parse_sct(std::string_view text);
std::string render_sct(const SctProblem& p);

MonotonicityConstraintSystem parse_mcs(std::string_view text);
std::string render_mcs(const MonotonicityConstraintSystem& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sctkit
