#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "io.hpp"

namespace tricam::app {

// sign | slope | h2 | elliptic | l1 | consistency; "all" expands to every one.
std::vector<std::string> expand_checks(const std::vector<std::string>& requested);

// Recomputes one named check from a stored snapshot. Throws
// std::invalid_argument for an unknown name.
InvariantCheck diag_check(const SnapshotData& s, const std::string& name, const Tolerances& tol = {});

int cmd_diag(const std::filesystem::path& file, const std::vector<std::string>& checks, std::ostream& out,
             std::ostream& err);

}  // namespace tricam::app
