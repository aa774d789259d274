// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "knapqaoa/knapsack.hpp"

namespace knapqaoa::knap {

/// Shortest decimal string that round-trips the exact double value.
std::string format_double(double v);
double parse_double(const std::string& token, const std::string& context);

/// Line-oriented text format:
///   line 1: `n capacity`
///   lines 2..n+1: `value weight`
/// `#` lines are comments and ignored; the writer records the instance id in
/// a leading `# id: ...` comment so load(save(x)) == x.
std::string to_text(const KnapsackInstance& instance);
KnapsackInstance from_text(const std::string& text, const std::string& source_name = "<string>");

void save_instance(const KnapsackInstance& instance, const std::filesystem::path& path);
KnapsackInstance load_instance(const std::filesystem::path& path);

/// JSON mirror: {id, capacity, items: [{v, w}]}.
std::string to_json(const KnapsackInstance& instance);
KnapsackInstance from_json(const std::string& json_text);

}  // namespace knapqaoa::knap
