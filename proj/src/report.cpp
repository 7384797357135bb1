#include "cmclab/report.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace cmclab {

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

nlohmann::json to_jsonvalue(const FieldValue& v) {
    return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

std::string to_csvvalue(const FieldValue& v) {
    if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    if (std::holds_alternative<std::uint64_t>(v)) return std::to_string(std::get<std::uint64_t>(v));
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    return std::get<std::string>(v);
}

}  // namespace

std::string to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema_version"] = report.schema_version;
    j["command"] = report.command;
    j["seed"] = report.seed;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& f : report.params) params[f.key] = to_jsonvalue(f.value);
    j["params"] = params;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : report.records) {
        nlohmann::json r = nlohmann::json::object();
        for (const auto& f : rec) r[f.key] = to_jsonvalue(f.value);
        records.push_back(std::move(r));
    }
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

std::string to_csv(const RunReport& report) {
    std::ostringstream os;
    os << "# schema_version=" << report.schema_version << "\n";
    os << "# command=" << report.command << "\n";
    os << "# seed=" << report.seed << "\n";
    for (const auto& f : report.params) os << "# " << f.key << "=" << to_csvvalue(f.value) << "\n";
    if (report.records.empty()) return os.str();
    const auto& head = report.records.front();
    for (std::size_t i = 0; i < head.size(); ++i) {
        os << head[i].key << (i + 1 < head.size() ? "," : "\n");
    }
    for (const auto& rec : report.records) {
        for (std::size_t i = 0; i < rec.size(); ++i) {
            os << to_csvvalue(rec[i].value) << (i + 1 < rec.size() ? "," : "\n");
        }
    }
    return os.str();
}

}  // namespace cmclab
