#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtoric/io.hpp"

namespace qtoric::cli {

enum Exit { Ok = 0, False = 1, BadInput = 2, Undecided = 3 };

struct Result {
    json report;
    int code = Ok;
};

using Options = std::map<std::string, std::string>;

const std::vector<std::string>& command_names();

// Runs one command on already-read JSON inputs. Never throws: errors become
// {"error": {"code", "message"}} with exit code 2 or 3.
Result run(const std::string& command, const std::vector<json>& inputs, const Options& opts);

} // namespace qtoric::cli
