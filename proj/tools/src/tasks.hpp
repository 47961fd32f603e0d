#pragma once

#include <string>

#include "config.hpp"

namespace weylkit::cli {

const std::vector<std::string>& task_names();

// Runs c.task, writes grid output below out_dir and returns the summary.
json run_task(const JobConfig& c, const std::string& out_dir);

}  // namespace weylkit::cli
