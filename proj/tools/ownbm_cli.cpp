// Command-line front end: instance generation, experiment runs, the exact
// oracle, instance validation, and report rendering.
//
// Exit codes: 0 success, 1 failed checks or invariant breaches, 2 usage.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ownbm/ownbm.hpp"

namespace fs = std::filesystem;

namespace {

struct NamedInstance {
    std::string id;
    ownbm::Instance instance;
};

std::string sanitize_id(std::string s) {
    for (char& c : s) {
        if (c == ':' || c == ';' || c == '=' || c == ',' || c == ' ') c = '-';
    }
    return s;
}

void ensure_unique(std::vector<NamedInstance>& list) {
    for (size_t i = 0; i < list.size(); ++i) {
        int clash = 0;
        for (size_t k = 0; k < i; ++k) {
            if (list[k].id == list[i].id) ++clash;
        }
        if (clash > 0) list[i].id += "#" + std::to_string(clash + 1);
    }
}

// Interprets --instance/--gen sources. File problems throw ownbm::ParseError
// (exit 1); malformed generator specs throw std::invalid_argument (exit 2).
std::vector<NamedInstance> collect_instances(const std::vector<std::string>& files,
                                             const std::vector<std::string>& gens) {
    std::vector<NamedInstance> out;
    for (const std::string& file : files) {
        out.push_back({fs::path(file).stem().string(), ownbm::load_instance(file)});
    }
    int idx = 0;
    for (const std::string& spec : gens) {
        const ownbm::GeneratorConfig cfg = ownbm::parse_generator_spec(spec);
        out.push_back({"gen" + std::to_string(idx++) + "-" + sanitize_id(cfg.kind),
                       ownbm::generate(cfg)});
    }
    if (out.empty()) {
        throw std::invalid_argument("no instances: pass --instance <file> and/or --gen <spec>");
    }
    ensure_unique(out);
    return out;
}

int cmd_generate(const std::string& spec, const std::string& out_path) {
    ownbm::GeneratorConfig cfg;
    try {
        cfg = ownbm::parse_generator_spec(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const ownbm::Instance inst = ownbm::generate(cfg);
    const std::string text = ownbm::serialize(inst);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        ownbm::save_instance(inst, out_path);
        std::cout << "wrote " << out_path << " (n=" << inst.n << ", d=" << inst.d
                  << ", edges=" << inst.edges.size() << ")\n";
    }
    return 0;
}

int cmd_run(const std::vector<std::string>& files, const std::vector<std::string>& gens,
            const std::string& pipeline, int trials, std::uint64_t seed, const std::string& out_dir,
            bool strict) {
    ownbm::ExperimentConfig cfg;
    cfg.pipeline = ownbm::parse_pipeline(pipeline);
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.strict = strict;

    const std::vector<NamedInstance> named = collect_instances(files, gens);
    std::vector<std::pair<std::string, ownbm::Instance>> instances;
    for (const NamedInstance& ni : named) instances.emplace_back(ni.id, ni.instance);

    fs::create_directories(out_dir);
    const fs::path csv_path = fs::path(out_dir) / "trials.csv";
    const fs::path json_path = fs::path(out_dir) / "report.json";
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    csv << ownbm::kTrialsCsvHeader << "\n";
    const auto sink = [&csv](const ownbm::TrialRow& row) { csv << ownbm::trial_csv_row(row) << "\n"; };

    const ownbm::ExperimentReport report = ownbm::run_experiment(instances, cfg, sink);
    csv.close();
    std::ofstream json(json_path);
    if (!json) throw std::runtime_error("cannot write " + json_path.string());
    json << ownbm::report_json(report);
    json.close();

    for (const ownbm::InstanceSummary& s : report.instances) {
        std::cout << s.id << ": opt=" << ownbm::fmt_double(s.opt)
                  << " mean_final=" << ownbm::fmt_double(s.mean_final) << " mean_ratio="
                  << (s.ratio_defined ? ownbm::fmt_double(s.mean_ratio) : std::string("undefined"))
                  << " violations="
                  << s.deadline_violations + s.floor_violations + s.validation_violations << "\n";
    }
    std::cout << "report: " << json_path.string() << "\ntrials: " << csv_path.string() << "\n";
    if (!report.clean()) {
        std::cerr << "error: invariant violations recorded (see report)\n";
        return 1;
    }
    return 0;
}

int cmd_oracle(const std::string& file, const std::string& method, int cap,
               const std::string& out_path) {
    ownbm::OracleOptions opts;
    opts.exhaustive_edge_cap = cap;
    if (method == "automatic") {
        opts.method = ownbm::OracleMethod::automatic;
    } else if (method == "exhaustive") {
        opts.method = ownbm::OracleMethod::exhaustive;
    } else if (method == "bnb") {
        opts.method = ownbm::OracleMethod::branch_and_bound;
    } else {
        std::cerr << "error: --method must be automatic, exhaustive or bnb\n";
        return 2;
    }
    const ownbm::Instance inst = ownbm::load_instance(file);
    const std::string text = ownbm::oracle_json(ownbm::optimum(inst, opts));
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text;
    }
    return 0;
}

int cmd_validate(const std::vector<std::string>& files) {
    int failures = 0;
    for (const std::string& file : files) {
        try {
            ownbm::load_instance(file);
            std::cout << file << ": ok\n";
        } catch (const std::exception& e) {
            std::cout << file << ": " << e.what() << "\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}

// Table cells show six significant digits; the JSON keeps full precision.
std::string fmt_cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int cmd_report(const std::vector<std::string>& files) {
    std::cout << std::left << std::setw(30) << "instance" << std::setw(8) << "mode" << std::setw(5)
              << "n" << std::setw(5) << "d" << std::setw(7) << "edges" << std::setw(13) << "opt"
              << std::setw(13) << "mean_final" << std::setw(12) << "mean_ratio" << std::setw(12)
              << "min_det" << "violations\n";
    for (const std::string& file : files) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot read " << file << "\n";
            return 1;
        }
        nlohmann::json j;
        try {
            in >> j;
            for (const auto& s : j.at("instances")) {
                const auto& v = s.at("violations");
                const int violations = v.at("deadline").get<int>() + v.at("floor").get<int>() +
                                       v.at("validation").get<int>();
                auto ratio_text = [](const nlohmann::json& field) {
                    return field.is_string() ? field.get<std::string>()
                                             : fmt_cell(field.get<double>());
                };
                std::cout << std::left << std::setw(30) << s.at("id").get<std::string>()
                          << std::setw(8) << s.at("mode").get<std::string>() << std::setw(5)
                          << s.at("n").get<int>() << std::setw(5) << s.at("d").get<int>()
                          << std::setw(7) << s.at("edges").get<std::uint64_t>() << std::setw(13)
                          << fmt_cell(s.at("opt").get<double>()) << std::setw(13)
                          << fmt_cell(s.at("mean_final").get<double>()) << std::setw(12)
                          << ratio_text(s.at("mean_ratio")) << std::setw(12)
                          << ratio_text(s.at("min_deterministic_ratio")) << violations << "\n";
            }
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: " << file << ": not a report file (" << e.what() << ")\n";
            return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online windowed non-bipartite matching toolkit"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "Generate an instance file from a spec");
    std::string gen_spec;
    std::string gen_out;
    generate->add_option("--gen", gen_spec, "generator spec, e.g. kind=random;n=8;d=2;p=0.5;seed=1")
        ->required();
    generate->add_option("--out", gen_out, "output file (default: stdout)");

    auto* run = app.add_subcommand("run", "Run seeded pipeline trials against the oracle");
    std::vector<std::string> run_files, run_gens;
    std::string run_pipeline = "both";
    int run_trials = 1;
    std::uint64_t run_seed = 0;
    std::string run_out = "out";
    bool run_strict = false;
    run->add_option("--instance", run_files, "instance file (repeatable)");
    run->add_option("--gen", run_gens, "generator spec (repeatable)");
    run->add_option("--pipeline", run_pipeline, "edge | vertex | both (default both)");
    run->add_option("--trials", run_trials, "trials per instance")->check(CLI::PositiveNumber);
    run->add_option("--seed", run_seed, "base seed; trial k uses seed base+k");
    run->add_option("--out", run_out, "output directory (default ./out)");
    run->add_flag("--strict", run_strict, "abort on the first invariant breach");

    auto* oracle = app.add_subcommand("oracle", "Exact offline optimum of an instance");
    std::string oracle_file, oracle_method = "automatic", oracle_out;
    int oracle_cap = 26;
    oracle->add_option("--instance", oracle_file, "instance file")->required();
    oracle->add_option("--method", oracle_method, "automatic | exhaustive | bnb");
    oracle->add_option("--cap", oracle_cap, "exhaustive edge cap (default 26)");
    oracle->add_option("--out", oracle_out, "output file (default: stdout)");

    auto* validate = app.add_subcommand("validate", "Parse and validate instance files");
    std::vector<std::string> validate_files;
    validate->add_option("--instance", validate_files, "instance file (repeatable)")->required();

    auto* report = app.add_subcommand("report", "Render aggregate tables from report files");
    std::vector<std::string> report_files;
    report->add_option("files", report_files, "report.json files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
        if (run->parsed()) {
            return cmd_run(run_files, run_gens, run_pipeline, run_trials, run_seed, run_out,
                           run_strict);
        }
        if (oracle->parsed()) return cmd_oracle(oracle_file, oracle_method, oracle_cap, oracle_out);
        if (validate->parsed()) return cmd_validate(validate_files);
        if (report->parsed()) return cmd_report(report_files);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
