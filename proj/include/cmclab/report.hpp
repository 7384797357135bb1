#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cmclab {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

using FieldValue = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

struct Field {
    std::string key;
    FieldValue value;
};

using Record = std::vector<Field>;

/// One CLI run: a stable envelope {schema_version, command, params, seed}
/// plus homogeneous records. JSON and CSV encodings carry identical numeric
/// values (both serialize through round-trip-exact decimal forms).
struct RunReport {
    int schema_version = 1;
    std::string command;
    std::vector<Field> params;
    std::uint64_t seed = 0;
    std::vector<Record> records;
};

std::string to_json(const RunReport& report);

/// Comment header lines (# key=value) followed by a column header and one
/// line per record.
std::string to_csv(const RunReport& report);

}  // namespace cmclab
