#include "arboreal/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace arboreal {

namespace {

std::string csv_cell(const Json& value) {
    std::string text;
    if (value.is_null()) return "";
    if (value.is_string()) {
        text = value.get<std::string>();
    } else {
        text = value.dump();
    }
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

Json rational_json(const Rational& q) { return q.str(); }

}  // namespace

Json Report::payload() const {
    Json out = Json::object();
    out["config"] = config;
    out["results"] = results;
    out["summary"] = summary;
    return out;
}

std::string Report::to_json(bool with_header) const {
    Json doc = Json::object();
    if (with_header) doc["header"] = {{"tool", "arboreal"}, {"command", command}, {"generated_at", utc_timestamp()}};
    const Json body = payload();
    for (const auto& [key, value] : body.items()) doc[key] = value;
    return doc.dump(2) + "\n";
}

std::string Report::to_csv(bool with_header) const {
    std::ostringstream out;
    if (with_header) out << "# arboreal " << command << " generated_at " << utc_timestamp() << '\n';
    for (std::size_t c = 0; c < csv_columns.size(); ++c) out << (c ? "," : "") << csv_columns[c];
    out << '\n';
    for (const auto& row : results) {
        for (std::size_t c = 0; c < csv_columns.size(); ++c) {
            out << (c ? "," : "");
            if (row.contains(csv_columns[c])) out << csv_cell(row[csv_columns[c]]);
        }
        out << '\n';
    }
    return out.str();
}

std::string Report::summary_line() const {
    std::string line = command + ":";
    for (const auto& [key, value] : summary.items()) {
        line += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    return line;
}

Json to_json(const ExactnessRecord& r) {
    return {{"degree", r.degree},
            {"dim", r.dimension},
            {"rank", r.image_rank},
            {"kernel_dim", r.kernel_dimension},
            {"exact", r.exact}};
}

Json tuple_json(const VertexTuple& x) { return Json(x); }

Json to_json(const VerificationReport& r) {
    Json out = {{"check", r.check},
                {"degree", r.degree},
                {"samples", r.samples},
                {"passed", r.passed},
                {"ok", r.ok()}};
    out["counterexample"] = r.counterexample ? tuple_json(*r.counterexample) : Json();
    out["detail"] = r.detail;
    return out;
}

Json to_json(const NormScan& r) {
    Json out = {{"degree", r.degree},
                {"samples", r.samples},
                {"max_norm", rational_json(r.max_norm)},
                {"term_bound", rational_json(Rational((r.degree + 1) * (r.degree + 2)) / 2)},
                {"standard_samples", r.standard_samples},
                {"max_standard_norm", rational_json(r.max_standard_norm)},
                {"term_bound_violations", r.term_bound_violations},
                {"standard_bound_violations", r.standard_bound_violations},
                {"ok", r.ok()}};
    out["worst_tuple"] = r.worst_tuple ? tuple_json(*r.worst_tuple) : Json();
    return out;
}

Json to_json(const OrbitClassRow& r, bool type_preserving) {
    return {{"signature", format_signature(r.signature, type_preserving)},
            {"type_bit", type_preserving ? Json(r.signature.type_bit) : Json()},
            {"gaps", r.signature.gaps},
            {"sort_sign", r.signature.sort_sign},
            {"class_size", r.class_size},
            {"witness_verified", r.witness_verified}};
}

Json to_json(const HomotopyNormReport& r) {
    std::string flags;
    for (bool e : r.exact_by_degree) flags += e ? '1' : '0';
    Json out = {{"instance", r.instance},
                {"factor1_size", r.factor1_size},
                {"factor2_size", r.factor2_size},
                {"degree", r.degree},
                {"samples", r.cycles_tested},
                {"seed", r.seed},
                {"exact", r.exact},
                {"exact_flags", flags}};
    if (r.max_min_preimage_norm) {
        out["max_min_norm"] = rational_json(*r.max_min_preimage_norm);
        out["max_min_norm_num"] = boost::multiprecision::numerator(*r.max_min_preimage_norm).str();
        out["max_min_norm_den"] = boost::multiprecision::denominator(*r.max_min_preimage_norm).str();
    } else {
        out["max_min_norm"] = nullptr;
        out["max_min_norm_num"] = nullptr;
        out["max_min_norm_den"] = nullptr;
    }
    out["certificates_ok"] = r.certificates_ok;
    out["suspicious_growth"] = r.suspicious_growth;
    return out;
}

void write_file_atomically(const std::string& path, const std::string& text) {
    const std::string temporary = path + ".tmp";
    {
        std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + temporary);
        out << text;
        if (!out.flush()) throw std::runtime_error("failed writing " + temporary);
    }
    if (std::rename(temporary.c_str(), path.c_str()) != 0) {
        std::remove(temporary.c_str());
        throw std::runtime_error("cannot move report into place at " + path);
    }
}

}  // namespace arboreal
