// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "knapqaoa/uc.hpp"

namespace knapqaoa::uc {

/// Text format: line 1 `n L`; lines 2..n+1 `A B C p_min p_max`.
/// `#` lines are comments and ignored.
std::string to_text(const UcInstance& uc);
UcInstance from_text(const std::string& text, const std::string& source_name = "<string>");

void save_uc_instance(const UcInstance& uc, const std::filesystem::path& path);
UcInstance load_uc_instance(const std::filesystem::path& path);

/// Scan curve as CSV: header `D,cost,feasible`, one row per grid point;
/// infeasible points carry the literal `inf`.
std::string scan_to_csv(const ScanResult& scan);
void save_scan_csv(const ScanResult& scan, const std::filesystem::path& path);

}  // namespace knapqaoa::uc
