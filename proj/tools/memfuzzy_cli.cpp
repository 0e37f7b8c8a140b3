// memfuzzy: train, query, compose and export memristor-crossbar fuzzy
// blocks, and run the reference experiments.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "memfuzzy/errors.hpp"
#include "memfuzzy/harness.hpp"
#include "memfuzzy/io.hpp"
#include "memfuzzy/system.hpp"

namespace {

using memfuzzy::Block;
using memfuzzy::FuzzyNumber;
using memfuzzy::io::json;
namespace harness = memfuzzy::harness;
namespace io = memfuzzy::io;

json centroid_or_null(const FuzzyNumber& f) {
    try {
        return memfuzzy::defuzzify_centroid(f);
    } catch (const memfuzzy::EmptyOutputError&) {
        return nullptr;
    }
}

json describe_output(const FuzzyNumber& f) {
    const json c = centroid_or_null(f);
    return {{"output", io::to_json(f)}, {"centroid", c}, {"degenerate", c.is_null()}};
}

// Accepts a crisp number, a comma list of crisp numbers, JSON (number,
// array of numbers, fuzzy number object, array of fuzzy numbers), or a
// path to a file holding such JSON.
std::vector<FuzzyNumber> parse_inputs(const std::string& text, const Block& block) {
    json j;
    if (std::filesystem::is_regular_file(text)) {
        j = io::read_json_file(text);
    } else {
        j = json::parse(text, nullptr, false);
        if (j.is_discarded()) {
            j = json::array();
            std::stringstream ss(text);
            std::string part;
            while (std::getline(ss, part, ',')) {
                try {
                    j.push_back(std::stod(part));
                } catch (const std::exception&) {
                    throw memfuzzy::ConfigError("cannot parse input '" + text + "'");
                }
            }
        }
    }
    if (j.is_number()) j = json::array({j});
    if (j.is_object()) j = json::array({j});
    if (!j.is_array() || j.size() != block.inputs().size()) {
        throw memfuzzy::ConfigError("model expects " + std::to_string(block.inputs().size()) + " input(s)");
    }
    std::vector<FuzzyNumber> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& v = block.inputs()[k].variable;
        if (j[k].is_number()) {
            out.push_back(memfuzzy::fuzzify_gaussian(j[k].get<double>(), v.sigma, v.universe));
        } else {
            out.push_back(io::fuzzy_from_json(j[k]));
        }
    }
    return out;
}

int cmd_train(const std::string& config_path, const std::string& model_path) {
    const auto config = io::config_from_json(io::read_json_file(config_path));
    if (!config.output_dir.empty()) {
        const auto r = harness::run_experiment(config);
        std::cout << io::to_json(r).dump(2) << '\n';
        return 0;
    }
    const auto sys = harness::train_system(config);
    auto r = harness::evaluate_system(sys, config);
    for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
        std::string path = (sys.blocks.size() == 1 && !model_path.empty())
                               ? model_path
                               : config.name + "_" + config.blocks[b].name + ".model.json";
        io::save_block(sys.blocks[b], path);
        r.model_paths.push_back(path);
    }
    std::cout << io::to_json(r).dump(2) << '\n';
    return 0;
}

int cmd_infer(const std::string& model_path, const std::string& input) {
    const Block block = io::load_block(model_path);
    const auto inputs = parse_inputs(input, block);
    std::cout << describe_output(block.infer(inputs)).dump(2) << '\n';
    return 0;
}

int cmd_compose(const std::vector<std::string>& paths, const std::vector<double>& inputs,
                bool normalize) {
    std::vector<Block> blocks;
    for (const auto& p : paths) blocks.push_back(io::load_block(p));
    const memfuzzy::Pipeline pipe(std::move(blocks), {normalize, true});
    std::vector<double> xs = inputs;
    if (xs.empty()) {
        const auto& u = pipe.blocks().front().inputs()[0].variable.universe;
        for (int k = 0; k <= 10; ++k) xs.push_back(u.lo() + (u.hi() - u.lo()) * k / 10.0);
    }
    json rows = json::array();
    for (double x : xs) {
        json c = nullptr;
        try {
            c = memfuzzy::defuzzify_centroid(pipe.infer_crisp(x));
        } catch (const memfuzzy::EmptyOutputError&) {
        }
        rows.push_back({{"input", x}, {"centroid", c}});
    }
    std::cout << json{{"stages", paths.size()}, {"results", rows}}.dump(2) << '\n';
    return 0;
}

int cmd_experiment(const std::string& name, const std::string& config_path, double fault_fraction,
                   long long seed, const std::string& output_dir, bool points) {
    auto config = harness::default_config(name);
    if (!config_path.empty()) config = io::config_from_json(io::read_json_file(config_path), config);
    if (fault_fraction >= 0.0) config.faults.fraction = fault_fraction;
    if (seed >= 0) config.faults.seed = static_cast<std::uint64_t>(seed);
    if (!output_dir.empty()) config.output_dir = output_dir;
    harness::validate(config);
    const auto r = harness::run_experiment(config);
    std::cout << io::to_json(r, points).dump(2) << '\n';
    return 0;
}

int cmd_export(const std::string& model_path, const std::string& surface_path,
               const std::string& section) {
    const Block block = io::load_block(model_path);
    const double r_off = block.crossbar().params().r_off;
    if (section.empty()) {
        memfuzzy::write_surface_csv(surface_path, block.crossbar().snapshot_delta(), r_off);
        return 0;
    }
    for (std::size_t s = 0; s < block.inputs().size(); ++s) {
        if (block.inputs()[s].variable.name == section) {
            memfuzzy::write_surface_csv(surface_path, block.section_surface(s), r_off);
            return 0;
        }
    }
    throw memfuzzy::ConfigError("model has no input section '" + section + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memristor-crossbar fuzzy inference simulator"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Log debug output");

    std::string config_path, model_path, input, surface_path, section, output_dir, experiment;
    std::vector<std::string> block_paths;
    std::vector<double> compose_inputs;
    double fault_fraction = -1.0;
    long long seed = -1;
    bool no_normalize = false;
    bool points = false;

    auto* train = app.add_subcommand("train", "Train a block (or pipeline) from a JSON config");
    train->add_option("--config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);
    train->add_option("--model", model_path, "Where to write the trained model (single block)");

    auto* infer = app.add_subcommand("infer", "Query a trained block");
    infer->add_option("--model", model_path, "Model JSON")->required()->check(CLI::ExistingFile);
    infer->add_option("--input", input, "Crisp value(s), fuzzy-number JSON, or a JSON file")->required();

    auto* compose = app.add_subcommand("compose", "Chain trained blocks and query the pipeline");
    compose->add_option("--blocks", block_paths, "Model files in stage order")->required()->expected(1, -1);
    compose->add_option("--input", compose_inputs, "Crisp inputs (default: 11-point sweep)");
    compose->add_flag("--no-normalize", no_normalize, "Skip peak normalisation between stages");

    auto* exp = app.add_subcommand("experiment", "Run a reference experiment");
    exp->add_option("name", experiment, "exp-f1 | exp-f2 | exp-compose | exp-2input | exp-2input-faulty")
        ->required()
        ->check(CLI::IsMember(harness::experiment_names()));
    exp->add_option("--config", config_path, "JSON overrides merged onto the defaults")->check(CLI::ExistingFile);
    exp->add_option("--fault-fraction", fault_fraction, "Fraction of cells stuck at r_off")->check(CLI::Range(0.0, 1.0));
    exp->add_option("--seed", seed, "Fault-injection seed");
    exp->add_option("--output-dir", output_dir, "Write surfaces, models and result.json here");
    exp->add_flag("--points", points, "Include per-point results in the printed JSON");

    auto* exp_out = app.add_subcommand("export", "Export a model's stored-value surface as CSV");
    exp_out->add_option("--model", model_path, "Model JSON")->required()->check(CLI::ExistingFile);
    exp_out->add_option("--surface", surface_path, "Output CSV path")->required();
    exp_out->add_option("--section", section, "Only this input variable's columns");

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

    try {
        if (*train) return cmd_train(config_path, model_path);
        if (*infer) return cmd_infer(model_path, input);
        if (*compose) return cmd_compose(block_paths, compose_inputs, !no_normalize);
        if (*exp) return cmd_experiment(experiment, config_path, fault_fraction, seed, output_dir, points);
        if (*exp_out) return cmd_export(model_path, surface_path, section);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
