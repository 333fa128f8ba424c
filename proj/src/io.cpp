#include "dqkd/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace dqkd::io {

namespace {

using nlohmann::ordered_json;

ordered_json opt_int(int v) {
    if (v < 0) return nullptr;
    return v;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string session_stats_json(const SessionStats& s) {
    ordered_json j;
    j["d"] = s.d;
    j["attack"] = attack_name(s.attack);
    j["c"] = s.c;
    j["seed"] = s.seed;
    j["n_runs"] = s.n_runs;
    j["n_control"] = s.n_control;
    j["n_message"] = s.n_message;
    j["n_coincident"] = s.n_coincident;
    j["n_detected"] = s.n_detected;
    j["n_eve_correct_message"] = s.n_eve_correct_message;
    j["n_coincident_dual"] = s.n_coincident_dual;
    j["n_detected_dual"] = s.n_detected_dual;
    j["n_coincident_higher"] = s.n_coincident_higher;
    j["n_alice_mismatch_higher"] = s.n_alice_mismatch_higher;
    j["pe_hat"] = s.pe_hat;
    j["ci_lo"] = s.ci_lo;
    j["ci_hi"] = s.ci_hi;
    j["pe_hat_coincident"] = s.pe_hat_coincident;
    j["ci_lo_coincident"] = s.ci_lo_coincident;
    j["ci_hi_coincident"] = s.ci_hi_coincident;
    j["eve_message_accuracy"] = s.eve_message_accuracy;
    j["pe_analytic"] = s.pe_analytic;
    j["ir_analytic"] = s.ir_analytic;
    j["i_e"] = s.i_e;
    return j.dump(2) + "\n";
}

std::string transcript_jsonl(const std::vector<RunRecord>& records) {
    std::string out;
    for (const RunRecord& r : records) {
        ordered_json j;
        j["mode"] = mode_name(r.mode);
        j["bob_k"] = r.bob_k;
        j["bob_t"] = r.bob_t;
        j["alice_basis"] = opt_int(r.alice_basis);
        j["alice_outcome"] = opt_int(r.alice_outcome);
        j["encoded_a"] = opt_int(r.encoded_a);
        j["bob_outcome"] = r.bob_outcome;
        j["decoded_a"] = opt_int(r.decoded_a);
        j["eve_basis"] = opt_int(r.eve_basis);
        j["eve_decoded"] = opt_int(r.eve_decoded);
        j["coincident"] = r.coincident;
        j["detected"] = r.detected;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string identity_report_json(const IdentityReport& report) {
    ordered_json j;
    j["d"] = report.d;
    j["tol"] = report.tol;
    j["wrong_sign"] = report.wrong_sign;
    j["all_pass"] = report.all_pass();
    ordered_json checks = ordered_json::array();
    for (const IdentityCheck& c : report.checks) {
        ordered_json e;
        e["name"] = c.name;
        e["skipped"] = c.skipped;
        e["max_deviation"] = c.max_dev;
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string mub_report_json(const Field& field, const MubCheck& check) {
    ordered_json j;
    j["d"] = field.d();
    j["p"] = field.p();
    j["m"] = field.m();
    j["tol"] = check.tol;
    j["max_deviation"] = check.max_deviation;
    j["pass"] = check.pass;
    return j.dump(2) + "\n";
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "d,pe_analytic,pe_hat,ci_lo,ci_hi,n_control\n";
    for (const ScanRow& r : rows) {
        out += std::to_string(r.d);
        out += ',';
        out += fmt17(r.pe_analytic);
        out += ',';
        out += fmt17(r.pe_hat);
        out += ',';
        out += fmt17(r.ci_lo);
        out += ',';
        out += fmt17(r.ci_hi);
        out += ',';
        out += std::to_string(r.n_control);
        out += '\n';
    }
    return out;
}

std::string scan_json(const std::vector<ScanRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const ScanRow& r : rows) {
        ordered_json j;
        j["d"] = r.d;
        j["pe_analytic"] = r.pe_analytic;
        j["pe_hat"] = r.pe_hat;
        j["ci_lo"] = r.ci_lo;
        j["ci_hi"] = r.ci_hi;
        j["n_control"] = r.n_control;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string qdc_csv(const std::vector<QdcPoint>& points) {
    std::string out = "i_bits,qdc_undetected,qdc_success\n";
    for (const QdcPoint& pt : points) {
        out += fmt17(pt.i_bits);
        out += ',';
        out += fmt17(pt.undetected);
        out += ',';
        out += fmt17(pt.success);
        out += '\n';
    }
    return out;
}

std::string qdc_json(const std::vector<QdcPoint>& points) {
    ordered_json arr = ordered_json::array();
    for (const QdcPoint& pt : points) {
        ordered_json j;
        j["i_bits"] = pt.i_bits;
        j["qdc_undetected"] = pt.undetected;
        j["qdc_success"] = pt.success;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dqkd::io
