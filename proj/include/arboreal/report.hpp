#pragma once

#include "arboreal/aligned.hpp"
#include "arboreal/flatmate.hpp"
#include "arboreal/homology.hpp"
#include "arboreal/orbits.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace arboreal {

using Json = nlohmann::ordered_json;

/**
 * Machine-readable result of one experiment run: {config, results, summary}.
 * A wall-clock header is kept apart from the payload so that identical runs
 * produce identical payloads.
 */
struct Report {
    std::string command;
    Json config = Json::object();
    Json results = Json::array();
    Json summary = Json::object();
    std::vector<std::string> csv_columns;

    Json payload() const;
    std::string to_json(bool with_header = true) const;
    std::string to_csv(bool with_header = true) const;
    // "command: k=v k=v" built from the summary fields
    std::string summary_line() const;
};

Json to_json(const ExactnessRecord& r);
Json to_json(const VerificationReport& r);
Json to_json(const NormScan& r);
Json to_json(const OrbitClassRow& r, bool type_preserving);
Json to_json(const HomotopyNormReport& r);
Json tuple_json(const VertexTuple& x);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomically(const std::string& path, const std::string& text);

}  // namespace arboreal
