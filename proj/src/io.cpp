#include "sieve/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sieve/errors.hpp"
#include "sieve/features.hpp"

namespace sieve {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("double formatting failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw MalformedLine("bad numeric field: " + std::string(s));
    }
    return v;
}

void write_instances_csv(const std::vector<LabeledInstance>& instances, Task task,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << "user_id,window_id,task,label";
    for (const auto& name : kFeatureNames) out << ',' << name;
    out << '\n';
    const std::string task_name = to_string(task);
    for (const LabeledInstance& inst : instances) {
        if (inst.features.values.size() != kFeatureCount) {
            throw DimensionMismatch("instance for " + inst.user_id + " has wrong width");
        }
        out << inst.user_id << ',' << inst.window_id << ',' << task_name << ',' << inst.label;
        for (double v : inst.features.values) out << ',' << format_double(v);
        out << '\n';
    }
    if (!out) throw IoFailure("write failed: " + path);
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

}  // namespace

std::vector<LabeledInstance> read_instances_csv(const std::string& path, Task* task_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw MalformedLine("empty CSV: " + path);
    const auto header = split_csv(line);
    if (header.size() != 4 + kFeatureCount || header[0] != "user_id" ||
        header[1] != "window_id" || header[2] != "task" || header[3] != "label") {
        throw SchemaViolation("unexpected CSV header in " + path);
    }
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        if (header[4 + j] != kFeatureNames[j]) {
            throw SchemaViolation("CSV column " + std::to_string(4 + j) + " is not " +
                                  std::string(kFeatureNames[j]));
        }
    }
    std::vector<LabeledInstance> instances;
    bool task_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 4 + kFeatureCount) {
            throw MalformedLine("CSV row with " + std::to_string(fields.size()) + " fields");
        }
        LabeledInstance inst;
        inst.user_id = std::string(fields[0]);
        inst.window_id = std::string(fields[1]);
        Task row_task = task_from_string(std::string(fields[2]));
        if (task_out) {
            if (task_seen && row_task != *task_out) {
                throw SchemaViolation("mixed task values in " + path);
            }
            *task_out = row_task;
            task_seen = true;
        }
        const long label = std::stol(std::string(fields[3]));
        if (label != 0 && label != 1) throw SchemaViolation("label must be 0 or 1");
        inst.label = static_cast<int>(label);
        inst.features.user_id = inst.user_id;
        inst.features.window_id = inst.window_id;
        inst.features.values.reserve(kFeatureCount);
        for (std::size_t j = 0; j < kFeatureCount; ++j) {
            inst.features.values.push_back(parse_double(fields[4 + j]));
        }
        instances.push_back(std::move(inst));
    }
    return instances;
}

std::uint64_t fnv1a_bytes(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoFailure("write failed: " + path);
}

std::string fnv1a_file_hex(const std::string& path) {
    const std::uint64_t h = fnv1a_bytes(read_text_file(path));
    char buf[19];
    auto [ptr, ec] = std::to_chars(buf + 2, buf + sizeof(buf), h, 16);
    if (ec != std::errc()) throw Error("hash formatting failed");
    std::string hex(buf + 2, ptr);
    return "0x" + std::string(16 - hex.size(), '0') + hex;
}

void write_manifest(const std::string& path, const std::string& command,
                    const nlohmann::ordered_json& config,
                    const std::vector<std::string>& input_paths,
                    const std::vector<std::string>& output_names) {
    nlohmann::ordered_json m;
    m["tool"] = "sieve";
    m["command"] = command;
    m["config"] = config;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const std::string& p : input_paths) {
        nlohmann::ordered_json entry;
        entry["path"] = p;
        entry["fnv1a"] = fnv1a_file_hex(p);
        inputs.push_back(std::move(entry));
    }
    m["inputs"] = std::move(inputs);
    m["outputs"] = output_names;
    write_text_file(path, m.dump(2) + "\n");
}

void write_roc_csv(const std::vector<std::pair<double, double>>& points, const std::string& path) {
    std::ostringstream out;
    out << "fpr,tpr\n";
    for (const auto& [fpr, tpr] : points) {
        out << format_double(fpr) << ',' << format_double(tpr) << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace sieve
