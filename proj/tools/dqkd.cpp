#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqkd/field.hpp"
#include "dqkd/io.hpp"
#include "dqkd/montecarlo.hpp"
#include "dqkd/mub.hpp"
#include "dqkd/pauli.hpp"
#include "dqkd/protocol.hpp"

namespace {

struct DimArgs {
    std::optional<int> d;
    std::optional<int> p;
    std::optional<int> m;
};

void add_dim_options(CLI::App* cmd, DimArgs& dim) {
    cmd->add_option("--d", dim.d, "dimension (must be a prime power)");
    cmd->add_option("--p", dim.p, "characteristic (prime)");
    cmd->add_option("--m", dim.m, "extension degree (default 1)");
}

dqkd::PrimePower resolve_dimension(const DimArgs& dim) {
    long long d = 0;
    if (dim.d) {
        if (dim.p || dim.m)
            throw std::invalid_argument("give either --d or --p/--m, not both");
        d = *dim.d;
    } else if (dim.p) {
        const int m = dim.m.value_or(1);
        if (m < 1 || m > 8) throw std::invalid_argument("bad degree");
        d = 1;
        for (int i = 0; i < m; ++i) {
            d *= *dim.p;
            if (d > 256) throw std::invalid_argument("field too large (p^m > 256)");
        }
    } else {
        throw std::invalid_argument("dimension required: --d or --p [--m]");
    }
    if (d < 2 || d > 256) throw std::invalid_argument("not a prime power");
    const auto pp = dqkd::factor_prime_power(static_cast<int>(d));
    if (!pp) throw std::invalid_argument("not a prime power");
    return *pp;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        dqkd::io::write_file(out_path, content);
        std::cout << "wrote " << out_path << "\n";
    }
}

int run_verify_mub(const DimArgs& dim, double tol, const std::string& out_path) {
    const dqkd::PrimePower pp = resolve_dimension(dim);
    const dqkd::Field field = dqkd::make_field(pp.p, pp.m);
    const dqkd::MubTable tab = dqkd::build_mub(field);
    const dqkd::MubCheck check = dqkd::verify_mub(tab, tol);
    std::cout << "d=" << field.d() << " (p=" << field.p() << ", m=" << field.m()
              << ")  bases=" << field.d() + 1
              << "  max deviation = " << fmt(check.max_deviation)
              << "  tol = " << fmt(check.tol) << "  -> "
              << (check.pass ? "pass" : "FAIL") << "\n";
    if (!out_path.empty()) {
        dqkd::io::write_file(out_path, dqkd::io::mub_report_json(field, check));
        std::cout << "wrote " << out_path << "\n";
    }
    return check.pass ? 0 : 1;
}

int run_verify_appendix(const DimArgs& dim, double tol, bool wrong_sign,
                        const std::string& out_path) {
    const dqkd::PrimePower pp = resolve_dimension(dim);
    const dqkd::Field field = dqkd::make_field(pp.p, pp.m);
    const dqkd::IdentityReport report = dqkd::verify_appendix(field, tol, wrong_sign);
    std::cout << "d=" << field.d() << " (p=" << field.p() << ", m=" << field.m()
              << ")  tol = " << fmt(tol)
              << (wrong_sign ? "  [wrong-sign negative control]" : "") << "\n";
    for (const dqkd::IdentityCheck& c : report.checks) {
        if (c.skipped)
            std::cout << "  " << c.name << ": skipped (odd p)\n";
        else
            std::cout << "  " << c.name << ": max deviation = " << fmt(c.max_dev)
                      << " -> " << (c.pass ? "pass" : "FAIL") << "\n";
    }
    std::cout << (report.all_pass() ? "all identities pass" : "identity check FAILED")
              << "\n";
    if (!out_path.empty()) {
        dqkd::io::write_file(out_path, dqkd::io::identity_report_json(report));
        std::cout << "wrote " << out_path << "\n";
    }
    return report.all_pass() ? 0 : 1;
}

int run_simulate(const DimArgs& dim, std::int64_t runs, double c,
                 const std::string& attack, std::uint64_t seed, int workers,
                 std::optional<int> fixed_message, bool ir_independent,
                 const std::string& out_path, const std::string& transcript_path) {
    const dqkd::PrimePower pp = resolve_dimension(dim);
    dqkd::ProtocolConfig cfg;
    cfg.p = pp.p;
    cfg.m = pp.m;
    cfg.c = c;
    cfg.attack = dqkd::parse_attack(attack);
    cfg.seed = seed;
    cfg.ir_independent_bases = ir_independent;
    cfg.fixed_message = fixed_message;

    std::vector<dqkd::RunRecord> transcript;
    std::vector<dqkd::RunRecord>* sink = transcript_path.empty() ? nullptr : &transcript;
    const dqkd::SessionStats stats = dqkd::run_session(cfg, runs, workers, sink);

    const std::string doc = dqkd::io::session_stats_json(stats);
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        dqkd::io::write_file(out_path, doc);
        std::cout << "d=" << stats.d << " attack=" << dqkd::attack_name(stats.attack)
                  << " runs=" << stats.n_runs << " control=" << stats.n_control
                  << "\n"
                  << "detection rate = " << fmt(stats.pe_hat) << "  ci95 = ["
                  << fmt(stats.ci_lo) << ", " << fmt(stats.ci_hi) << "]";
        if (stats.attack == dqkd::Attack::ControlledShift)
            std::cout << "  analytic = " << fmt(stats.pe_analytic);
        else if (stats.attack == dqkd::Attack::InterceptResend)
            std::cout << "  analytic = " << fmt(stats.ir_analytic);
        std::cout << "\nwrote " << out_path << "\n";
    }
    if (!transcript_path.empty()) {
        dqkd::io::write_file(transcript_path, dqkd::io::transcript_jsonl(transcript));
        std::cout << "wrote " << transcript_path << "\n";
    }
    return 0;
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad dimension list: " + text);
        }
        if (used != item.size()) throw std::invalid_argument("bad dimension list: " + text);
        dims.push_back(v);
    }
    if (dims.empty()) throw std::invalid_argument("empty dimension list");
    return dims;
}

int run_scan(const std::string& dims_text, std::int64_t runs, double c,
             std::uint64_t seed, int workers, const std::string& format,
             const std::string& out_path) {
    const std::vector<int> dims = parse_dims(dims_text);
    const std::vector<dqkd::ScanRow> rows =
        dqkd::scan_dimensions(dims, runs, c, seed, workers);
    emit(format == "json" ? dqkd::io::scan_json(rows) : dqkd::io::scan_csv(rows),
         out_path);
    return 0;
}

int run_qdc(double c, int d, int bits, const std::string& format,
            const std::string& out_path) {
    const std::vector<dqkd::QdcPoint> curve = dqkd::qdc_curve(c, d, bits);
    emit(format == "json" ? dqkd::io::qdc_json(curve) : dqkd::io::qdc_csv(curve),
         out_path);
    if (!out_path.empty()) {
        const dqkd::QdcPoint& last = curve.back();
        std::cout << "qdc_success(c=" << fmt(c) << ", d=" << d << ", I=" << bits
                  << " bits) = " << fmt(last.success) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and verifier for a deterministic qudit key-distribution protocol"};
    app.require_subcommand(1);

    DimArgs vm_dim;
    double vm_tol = 1e-9;
    std::string vm_out;
    CLI::App* vm = app.add_subcommand(
        "verify-mub", "check that all d+1 bases are mutually unbiased");
    add_dim_options(vm, vm_dim);
    vm->add_option("--tol", vm_tol, "max allowed deviation (default 1e-9)");
    vm->add_option("--out", vm_out, "write a JSON report to this path");

    DimArgs va_dim;
    double va_tol = 1e-9;
    bool va_wrong = false;
    std::string va_out;
    CLI::App* va = app.add_subcommand(
        "verify-appendix", "run the operator and phase identity suite");
    add_dim_options(va, va_dim);
    va->add_option("--tol", va_tol, "max allowed deviation (default 1e-9)");
    va->add_flag("--wrong-sign", va_wrong,
                 "negative control: drop the even-characteristic sign correction");
    va->add_option("--out", va_out, "write a JSON report to this path");

    DimArgs sim_dim;
    std::int64_t sim_runs = 100000;
    double sim_c = 0.5;
    std::string sim_attack = "none";
    std::uint64_t sim_seed = 1;
    int sim_workers = 1;
    std::optional<int> sim_fixed;
    bool sim_ir_indep = false;
    std::string sim_out;
    std::string sim_transcript;
    CLI::App* sim = app.add_subcommand("simulate", "run protocol sessions and report statistics");
    add_dim_options(sim, sim_dim);
    sim->add_option("--runs", sim_runs, "number of protocol runs (default 100000)");
    sim->add_option("--c", sim_c, "control-mode probability in (0,1] (default 0.5)");
    sim->add_option("--attack", sim_attack,
                    "none | intercept-resend | controlled-shift (default none)");
    sim->add_option("--seed", sim_seed, "generator seed (default 1)");
    sim->add_option("--workers", sim_workers, "worker threads (default 1)");
    sim->add_option("--fixed-message", sim_fixed,
                    "encode this symbol on every message run");
    sim->add_flag("--ir-independent-bases", sim_ir_indep,
                  "intercept-resend draws a fresh basis on the backward leg");
    sim->add_option("--out", sim_out, "write stats JSON to this path");
    sim->add_option("--transcript", sim_transcript,
                    "write a JSON-lines transcript of every run to this path");

    std::string scan_dims = "2,3,4,5,7,8,9";
    std::int64_t scan_runs = 20000;
    double scan_c = 0.5;
    std::uint64_t scan_seed = 1;
    int scan_workers = 1;
    std::string scan_format = "csv";
    std::string scan_out;
    CLI::App* sc = app.add_subcommand(
        "scan", "detection-rate scan over a list of dimensions");
    sc->add_option("--dims", scan_dims, "comma-separated prime powers (default 2,3,4,5,7,8,9)");
    sc->add_option("--runs", scan_runs, "runs per dimension (default 20000)");
    sc->add_option("--c", scan_c, "control-mode probability (default 0.5)");
    sc->add_option("--seed", scan_seed, "generator seed (default 1)");
    sc->add_option("--workers", scan_workers, "worker threads (default 1)");
    sc->add_option("--format", scan_format, "csv | json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", scan_out, "write the table to this path");

    double qdc_c = 0.5;
    int qdc_d = 3;
    int qdc_bits = 128;
    std::string qdc_format = "csv";
    std::string qdc_out;
    CLI::App* qd = app.add_subcommand(
        "qdc", "eavesdropping-success curve for direct communication");
    qd->add_option("--c", qdc_c, "control-mode probability (default 0.5)");
    qd->add_option("--d", qdc_d, "dimension (default 3)");
    qd->add_option("--bits", qdc_bits, "message size in bits (default 128)");
    qd->add_option("--format", qdc_format, "csv | json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    qd->add_option("--out", qdc_out, "write the curve to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(vm)) return run_verify_mub(vm_dim, vm_tol, vm_out);
        if (app.got_subcommand(va))
            return run_verify_appendix(va_dim, va_tol, va_wrong, va_out);
        if (app.got_subcommand(sim))
            return run_simulate(sim_dim, sim_runs, sim_c, sim_attack, sim_seed,
                                sim_workers, sim_fixed, sim_ir_indep, sim_out,
                                sim_transcript);
        if (app.got_subcommand(sc))
            return run_scan(scan_dims, scan_runs, scan_c, scan_seed, scan_workers,
                            scan_format, scan_out);
        if (app.got_subcommand(qd))
            return run_qdc(qdc_c, qdc_d, qdc_bits, qdc_format, qdc_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
