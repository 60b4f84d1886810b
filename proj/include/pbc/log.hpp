#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pbc::log {

// Structured single-line events on stderr: `level=info event=... k=v ...`.
// Data outputs never go through here, so pipelines stay composable.

void set_quiet(bool quiet);
bool quiet();

using Fields = std::vector<std::pair<std::string, std::string>>;

void info(const std::string& event, const Fields& fields = {});
void warn(const std::string& event, const Fields& fields = {});
void error(const std::string& event, const Fields& fields = {});

} // namespace pbc::log
