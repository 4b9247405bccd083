// srr: service rate regions of erasure-coded storage with MDS cores.
//
// Subcommands: groups | feasible | maximize | region | validate.
// Exit codes: 0 success/feasible, 1 infeasible, 2 usage or parse error,
// 3 out of a method's domain.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srr/closed_form.hpp"
#include "srr/greedy.hpp"
#include "srr/lp_oracle.hpp"
#include "srr/region.hpp"
#include "srr/routing.hpp"
#include "srr/system_io.hpp"

namespace {

using namespace srr;

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOutOfDomain = 3;

LpMode resolve_mode(const std::string& flag_mode, const std::string& flag_tol,
                    const SystemSpecFile& spec) {
    Rat tol = frac(1, 1000000000);
    if (!flag_tol.empty()) tol = parse_rational(flag_tol);

    std::string mode = flag_mode;
    if (mode.empty()) {
        if (const char* env = std::getenv("SRR_MODE")) mode = env;
    }
    if (mode.empty()) {
        if (spec.default_mode) {
            if (!flag_tol.empty() && !spec.default_mode->is_rational())
                return LpMode::floating(tol);
            return *spec.default_mode;
        }
        mode = "rational";
    }
    if (mode == "rational") return LpMode::rational();
    if (mode == "float") return LpMode::floating(tol);
    throw std::invalid_argument("mode must be rational or float (got \"" + mode +
                                "\")");
}

std::vector<Rat> parse_lambdas(const std::vector<std::string>& args) {
    std::vector<Rat> out;
    for (const std::string& a : args) {
        Rat v = parse_rational(a);
        if (v < 0) throw std::invalid_argument("demand must be nonnegative");
        out.push_back(std::move(v));
    }
    return out;
}

void print_groups(const StorageSystem& system, const RepairGroupTable& table) {
    bool any = false;
    for (int k = 0; k < system.K; ++k) {
        std::cout << "f" << k + 1 << " (gamma=" << table.gamma(k) << "):";
        if (table.gamma(k) == 0) {
            std::cout << " -\n";
            continue;
        }
        any = true;
        std::cout << " ";
        for (int i = 0; i < table.gamma(k); ++i) {
            if (i) std::cout << ",";
            std::cout << "{";
            const auto& members = table.groups[k][i].members;
            for (size_t j = 0; j < members.size(); ++j) {
                if (j) std::cout << ",";
                std::cout << members[j] + 1;
            }
            std::cout << "}";
        }
        std::cout << "\n";
    }
    if (!any) std::cerr << "warning: no file recoverable\n";
}

int cmd_groups(const std::string& spec_path) {
    SystemSpecFile spec = load_system_spec(spec_path);
    print_groups(spec.system, enumerate_repair_groups(spec.system));
    return kExitFeasible;
}

int cmd_feasible(const std::string& spec_path, const std::vector<std::string>& lambda_args,
                 const std::string& mode_flag, const std::string& tol_flag,
                 const std::string& out_path) {
    SystemSpecFile spec = load_system_spec(spec_path);
    std::vector<Rat> lambda = parse_lambdas(lambda_args);
    if (static_cast<int>(lambda.size()) != spec.system.K)
        throw std::invalid_argument("expected K = " + std::to_string(spec.system.K) +
                                    " demand values");
    const LpMode mode = resolve_mode(mode_flag, tol_flag, spec);
    const RepairGroupTable table = enumerate_repair_groups(spec.system);
    DemandVector demand{lambda};
    FeasibilityWitness witness = feasible(spec.system, table, demand, mode);
    if (!witness.feasible) {
        std::cout << "infeasible\n";
        return kExitInfeasible;
    }
    if (out_path.empty()) {
        write_witness_json(std::cout, demand, witness);
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + out_path);
        write_witness_json(os, demand, witness);
        std::cout << "feasible, witness written to " << out_path << "\n";
    }
    return kExitFeasible;
}

struct MethodValue {
    bool available = false;
    bool in_region = false;
    Rat value;
    std::string note;
};

MethodValue run_lp(const SystemSpecFile& spec, const RepairGroupTable& table,
                   const std::vector<Rat>& hat, const LpMode& mode) {
    MethodValue mv;
    mv.available = true;
    MaximizeResult r = maximize_last(spec.system, table, hat, mode);
    if (r.ok()) {
        mv.in_region = true;
        mv.value = r.L;
    } else {
        mv.note = "not in region";
    }
    return mv;
}

MethodValue run_closed(const SystemSpecFile& spec, const std::vector<Rat>& hat) {
    MethodValue mv;
    const auto counts = spec.system.systematic_counts();
    const int C = spec.system.coded_count();
    const bool all_coded =
        std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0; });
    if (all_coded) {
        mv.available = true;
        LValue v = L_all_coded(C, spec.system.K, spec.system.mu, hat);
        if (v.ok()) {
            mv.in_region = true;
            mv.value = v.value;
        } else {
            mv.note = "not in region";
        }
        return mv;
    }
    if (spec.system.K != 3) {
        mv.note = "no closed form for this system";
        return mv;
    }
    LValue v = L_three_file(counts[0], counts[1], counts[2], C, spec.system.mu,
                            hat[0], hat[1]);
    if (v.status == LValue::Status::out_of_domain) {
        mv.note = "outside the closed form's hypotheses";
        return mv;
    }
    mv.available = true;
    if (v.ok()) {
        mv.in_region = true;
        mv.value = v.value;
    } else {
        mv.note = "not in region";
    }
    return mv;
}

MethodValue run_greedy(const SystemSpecFile& spec, const std::vector<Rat>& hat) {
    MethodValue mv;
    GreedyResult r = maximize_lambda_K_greedy(spec.system, hat);
    if (r.status == GreedyResult::Status::unsupported_parameters) {
        mv.note = "demand exceeds the water-fill precondition";
        return mv;
    }
    mv.available = true;
    if (r.ok()) {
        mv.in_region = true;
        mv.value = r.lambda_K;
    } else {
        mv.note = "not in region (residual demand unserved)";
    }
    return mv;
}

int cmd_maximize(const std::string& spec_path, const std::vector<std::string>& lambda_args,
                 const std::string& method, const std::string& mode_flag,
                 const std::string& tol_flag) {
    SystemSpecFile spec = load_system_spec(spec_path);
    std::vector<Rat> hat = parse_lambdas(lambda_args);
    if (static_cast<int>(hat.size()) != spec.system.K - 1)
        throw std::invalid_argument("expected K-1 = " +
                                    std::to_string(spec.system.K - 1) +
                                    " demand values");
    const LpMode mode = resolve_mode(mode_flag, tol_flag, spec);
    const RepairGroupTable table = enumerate_repair_groups(spec.system);

    if (method == "all") {
        MethodValue lp = run_lp(spec, table, hat, mode);
        MethodValue closed = run_closed(spec, hat);
        MethodValue greedy = run_greedy(spec, hat);
        auto show = [](const char* name, const MethodValue& mv) {
            std::cout << name << "\t";
            if (mv.available && mv.in_region)
                std::cout << to_decimal_string(mv.value);
            else
                std::cout << "n/a (" << mv.note << ")";
            std::cout << "\n";
        };
        show("lp", lp);
        show("closed", closed);
        show("greedy", greedy);
        bool disagree = false;
        for (const MethodValue* a : {&lp, &closed, &greedy})
            for (const MethodValue* b : {&lp, &closed, &greedy}) {
                if (!a->available || !b->available) continue;
                if (a->in_region != b->in_region ||
                    (a->in_region && a->value != b->value))
                    disagree = true;
            }
        std::cout << (disagree ? "DISAGREEMENT\n" : "agreement\n");
        if (!lp.available || !lp.in_region) return kExitInfeasible;
        return kExitFeasible;
    }

    MethodValue mv;
    if (method == "lp")
        mv = run_lp(spec, table, hat, mode);
    else if (method == "closed")
        mv = run_closed(spec, hat);
    else if (method == "greedy")
        mv = run_greedy(spec, hat);
    else
        throw std::invalid_argument("method must be lp, closed, greedy, or all");

    if (!mv.available) {
        std::cerr << "error: " << mv.note << "\n";
        return kExitOutOfDomain;
    }
    if (!mv.in_region) {
        std::cout << mv.note << "\n";
        return kExitInfeasible;
    }
    std::cout << to_decimal_string(mv.value) << "\n";
    return kExitFeasible;
}

int cmd_region(const std::string& spec_path, const std::string& step_flag,
               const std::string& format_flag, std::string out_path,
               const std::string& method, const std::string& mode_flag,
               const std::string& tol_flag) {
    SystemSpecFile spec = load_system_spec(spec_path);
    Rat step = frac(1, 4);
    if (!step_flag.empty())
        step = parse_rational(step_flag);
    else if (spec.grid_step)
        step = *spec.grid_step;
    if (step <= 0) throw std::invalid_argument("step must be positive");

    ExportFormat format = ExportFormat::csv;
    std::string ext = "csv";
    if (format_flag == "json") {
        format = ExportFormat::json;
        ext = "json";
    } else if (format_flag == "svg") {
        format = ExportFormat::svg;
        ext = "svg";
    } else if (!format_flag.empty() && format_flag != "csv") {
        throw std::invalid_argument("format must be csv, json, or svg");
    }
    if (format == ExportFormat::svg && spec.system.K > 3)
        throw std::invalid_argument("unsupported format: svg needs K <= 3");

    BoundarySource source = BoundarySource::lp;
    if (method == "closed")
        source = BoundarySource::closed_form;
    else if (method == "greedy")
        source = BoundarySource::greedy;
    else if (!method.empty() && method != "lp")
        throw std::invalid_argument("method must be lp, closed, or greedy");

    const LpMode mode = resolve_mode(mode_flag, tol_flag, spec);
    RegionBoundary region = sample_boundary(spec.system, step, source, mode);
    const auto counts = spec.system.systematic_counts();
    if (std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0; })) {
        RegionBoundary polytope = all_coded_polytope(
            spec.system.coded_count(), spec.system.K, spec.system.mu);
        region.halfspaces = std::move(polytope.halfspaces);
        region.vertices = std::move(polytope.vertices);
    }

    if (out_path.empty()) out_path = "region." + ext;
    export_region(region, format, out_path);

    Rat max_L = 0;
    for (const BoundarySample& s : region.samples)
        if (s.L > max_L) max_L = s.L;
    std::cout << "samples=" << region.samples.size()
              << " max_L=" << to_decimal_string(max_L) << " wrote=" << out_path
              << "\n";
    return kExitFeasible;
}

int cmd_validate(const std::string& spec_path) {
    SystemSpecFile spec = load_system_spec(spec_path);
    const auto counts = spec.system.systematic_counts();
    std::cout << "ok: K=" << spec.system.K << " N=" << spec.system.node_count()
              << " systematic=[";
    for (size_t i = 0; i < counts.size(); ++i)
        std::cout << (i ? "," : "") << counts[i];
    std::cout << "] coded=" << spec.system.coded_count()
              << " mu=" << to_string(spec.system.mu) << "\n";
    return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"service rate regions of erasure-coded storage"};
    app.require_subcommand(1);

    std::string spec_path, mode_flag, tol_flag, out_path, method, step_flag,
        format_flag;
    std::vector<std::string> lambda_args;

    auto* groups = app.add_subcommand("groups", "list repair groups per file");
    groups->add_option("spec", spec_path, "system spec file")->required();

    auto* feas = app.add_subcommand("feasible", "test demand membership");
    feas->add_option("spec", spec_path)->required();
    feas->add_option("lambda", lambda_args, "K demand values")->required();
    feas->add_option("--mode", mode_flag, "rational|float");
    feas->add_option("--tol", tol_flag, "float-mode tolerance");
    feas->add_option("--out", out_path, "witness output path");

    auto* maxi = app.add_subcommand("maximize", "maximize demand for the last file");
    maxi->add_option("spec", spec_path)->required();
    maxi->add_option("lambda_hat", lambda_args, "K-1 demand values")->required();
    maxi->add_option("--method", method, "lp|closed|greedy|all")
        ->default_val("lp");
    maxi->add_option("--mode", mode_flag, "rational|float");
    maxi->add_option("--tol", tol_flag, "float-mode tolerance");

    auto* region = app.add_subcommand("region", "sample and export the region");
    region->add_option("spec", spec_path)->required();
    region->add_option("--step", step_flag, "grid step (default 1/4)");
    region->add_option("--format", format_flag, "csv|json|svg");
    region->add_option("--out", out_path, "output path");
    region->add_option("--method", method, "lp|closed|greedy");
    region->add_option("--mode", mode_flag, "rational|float");
    region->add_option("--tol", tol_flag, "float-mode tolerance");

    auto* validate = app.add_subcommand("validate", "check a system spec file");
    validate->add_option("spec", spec_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (groups->parsed()) return cmd_groups(spec_path);
        if (feas->parsed())
            return cmd_feasible(spec_path, lambda_args, mode_flag, tol_flag, out_path);
        if (maxi->parsed())
            return cmd_maximize(spec_path, lambda_args, method, mode_flag, tol_flag);
        if (region->parsed())
            return cmd_region(spec_path, step_flag, format_flag, out_path, method,
                              mode_flag, tol_flag);
        if (validate->parsed()) return cmd_validate(spec_path);
    } catch (const srr::SpecParseError& e) {
        std::cerr << "parse error at line " << e.line << ", column " << e.column
                  << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
