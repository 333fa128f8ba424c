#pragma once

#include <string>
#include <vector>

#include "dqkd/montecarlo.hpp"
#include "dqkd/pauli.hpp"

namespace dqkd::io {

// All emitters return complete, newline-terminated UTF-8 documents with
// deterministic formatting, so equal inputs yield byte-identical output.

std::string session_stats_json(const SessionStats& stats);

// JSON-lines transcript: one run record object per line. Absent optional
// quantities serialize as null.
std::string transcript_jsonl(const std::vector<RunRecord>& records);

std::string identity_report_json(const IdentityReport& report);

std::string mub_report_json(const Field& field, const MubCheck& check);

std::string scan_csv(const std::vector<ScanRow>& rows);
std::string scan_json(const std::vector<ScanRow>& rows);

std::string qdc_csv(const std::vector<QdcPoint>& points);
std::string qdc_json(const std::vector<QdcPoint>& points);

void write_file(const std::string& path, const std::string& content);

}  // namespace dqkd::io
