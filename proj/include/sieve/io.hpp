#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sieve/tasks.hpp"

namespace sieve {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);
double parse_double(std::string_view s);

/// Feature matrix CSV: header `user_id,window_id,task,label` + the 52
/// catalog names. Doubles use shortest round-trip formatting, so
/// write-then-read reproduces values bit-exactly.
void write_instances_csv(const std::vector<LabeledInstance>& instances, Task task,
                         const std::string& path);
std::vector<LabeledInstance> read_instances_csv(const std::string& path, Task* task_out = nullptr);

/// FNV-1a 64-bit content hash, as a fixed-width hex string.
std::uint64_t fnv1a_bytes(std::string_view bytes);
std::string fnv1a_file_hex(const std::string& path);

/// Reproducibility manifest: command, config echo, input digests. Contains
/// no clocks or host state, so reruns produce identical bytes.
void write_manifest(const std::string& path, const std::string& command,
                    const nlohmann::ordered_json& config,
                    const std::vector<std::string>& input_paths,
                    const std::vector<std::string>& output_names);

/// Two-column `fpr,tpr` CSV of an ROC curve.
void write_roc_csv(const std::vector<std::pair<double, double>>& points, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace sieve
