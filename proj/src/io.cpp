#include "memfuzzy/io.hpp"

#include <algorithm>
#include <fstream>

#include "memfuzzy/errors.hpp"

namespace memfuzzy::io {
namespace {

constexpr const char* kModelFormat = "memfuzzy-block";
constexpr int kModelVersion = 1;

template <typename T>
T get(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

json variable_to_json(const harness::VariableSpec& v) {
    json j{{"name", v.name}, {"lo", v.lo}, {"hi", v.hi}, {"count", v.count}};
    j["sigma"] = v.sigma ? json(*v.sigma) : json(nullptr);
    return j;
}

harness::VariableSpec variable_from_json(const json& j) {
    harness::VariableSpec v;
    v.name = get<std::string>(j, "name");
    v.lo = get<double>(j, "lo");
    v.hi = get<double>(j, "hi");
    v.count = get<std::size_t>(j, "count");
    if (j.contains("sigma") && !j.at("sigma").is_null()) v.sigma = get<double>(j, "sigma");
    return v;
}

json variable_to_json(const Variable& v) {
    return {{"name", v.name}, {"universe", to_json(v.universe)}, {"sigma", v.sigma}};
}

Variable model_variable_from_json(const json& j) {
    return {get<std::string>(j, "name"), universe_from_json(get<json>(j, "universe")),
            get<double>(j, "sigma")};
}

}  // namespace

json to_json(const device::MemristorParams& p) {
    return {{"mu_v", p.mu_v}, {"D", p.D}, {"r_on", p.r_on}, {"r_off", p.r_off}};
}

device::MemristorParams params_from_json(const json& j) {
    device::MemristorParams p{get<double>(j, "mu_v"), get<double>(j, "D"), get<double>(j, "r_on"),
                              get<double>(j, "r_off")};
    try {
        device::validate(p);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("device: ") + e.what());
    }
    return p;
}

json to_json(const Universe& u) { return {{"lo", u.lo()}, {"hi", u.hi()}, {"count", u.count()}}; }

Universe universe_from_json(const json& j) {
    try {
        return {get<double>(j, "lo"), get<double>(j, "hi"), get<std::size_t>(j, "count")};
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("universe: ") + e.what());
    }
}

json to_json(const FuzzyNumber& f) {
    return {{"universe", to_json(f.universe())},
            {"grades", std::vector<double>(f.grades().begin(), f.grades().end())}};
}

FuzzyNumber fuzzy_from_json(const json& j) {
    try {
        return {universe_from_json(get<json>(j, "universe")), get<std::vector<double>>(j, "grades")};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("fuzzy number: ") + e.what());
    }
}

json to_json(const harness::ExperimentConfig& c) {
    json blocks = json::array();
    for (const auto& b : c.blocks) {
        json inputs = json::array();
        for (const auto& v : b.dataset.inputs) inputs.push_back(variable_to_json(v));
        blocks.push_back({{"name", b.name},
                          {"dataset",
                           {{"target", b.dataset.target},
                            {"n", b.dataset.n},
                            {"seed", b.dataset.seed},
                            {"inputs", inputs},
                            {"output", variable_to_json(b.dataset.output)}}}});
    }
    json bounds = json::array();
    for (const auto& [lo, hi] : c.evaluation.bounds) bounds.push_back({lo, hi});
    return {{"experiment", c.name},
            {"device", to_json(c.device)},
            {"t0", c.t0},
            {"max_delta_ratio", c.max_delta_ratio},
            {"read_mode", to_string(c.read_mode)},
            {"blocks", blocks},
            {"conditioning", {{"normalize", c.conditioning.normalize}, {"regrid", c.conditioning.regrid}}},
            {"evaluation",
             {{"kind", c.evaluation.kind == harness::EvalSpec::Kind::random ? "random" : "lattice"},
              {"n", c.evaluation.n},
              {"per_axis", c.evaluation.per_axis},
              {"seed", c.evaluation.seed},
              {"bounds", bounds}}},
            {"faults", {{"fraction", c.faults.fraction}, {"seed", c.faults.seed}}},
            {"output_dir", c.output_dir}};
}

harness::ExperimentConfig config_from_json(const json& j, const harness::ExperimentConfig& defaults) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    json merged = to_json(defaults);
    merged.merge_patch(j);

    harness::ExperimentConfig c;
    c.name = get<std::string>(merged, "experiment");
    c.device = params_from_json(get<json>(merged, "device"));
    c.t0 = get<double>(merged, "t0");
    c.max_delta_ratio = get<double>(merged, "max_delta_ratio");
    c.read_mode = read_mode_from_string(get<std::string>(merged, "read_mode"));

    for (const auto& jb : get<json>(merged, "blocks")) {
        harness::BlockSpec b;
        const json& d = get<json>(jb, "dataset");
        b.dataset.target = get<std::string>(d, "target");
        b.name = jb.contains("name") ? get<std::string>(jb, "name") : b.dataset.target;
        b.dataset.n = get<std::size_t>(d, "n");
        b.dataset.seed = get<std::uint64_t>(d, "seed");
        for (const auto& v : get<json>(d, "inputs")) b.dataset.inputs.push_back(variable_from_json(v));
        b.dataset.output = variable_from_json(get<json>(d, "output"));
        c.blocks.push_back(std::move(b));
    }

    const json& cond = get<json>(merged, "conditioning");
    c.conditioning = {get<bool>(cond, "normalize"), get<bool>(cond, "regrid")};

    const json& ev = get<json>(merged, "evaluation");
    const auto kind = get<std::string>(ev, "kind");
    if (kind == "random") {
        c.evaluation.kind = harness::EvalSpec::Kind::random;
    } else if (kind == "lattice") {
        c.evaluation.kind = harness::EvalSpec::Kind::lattice;
    } else {
        throw ConfigError("evaluation.kind must be 'random' or 'lattice'");
    }
    c.evaluation.n = get<std::size_t>(ev, "n");
    c.evaluation.per_axis = get<std::size_t>(ev, "per_axis");
    c.evaluation.seed = get<std::uint64_t>(ev, "seed");
    if (ev.contains("bounds") && !ev.at("bounds").is_null()) {
        for (const auto& b : ev.at("bounds")) {
            if (!b.is_array() || b.size() != 2) throw ConfigError("evaluation.bounds entries are [lo, hi]");
            c.evaluation.bounds.emplace_back(b[0].get<double>(), b[1].get<double>());
        }
    }

    const json& f = get<json>(merged, "faults");
    c.faults = {get<double>(f, "fraction"), get<std::uint64_t>(f, "seed")};
    c.output_dir = get<std::string>(merged, "output_dir");

    harness::validate(c);
    return c;
}

harness::ExperimentConfig config_from_json(const json& j) {
    if (j.is_object() && j.contains("experiment")) {
        const auto name = j.at("experiment").get<std::string>();
        const auto& names = harness::experiment_names();
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            return config_from_json(j, harness::default_config(name));
        }
    }
    // No named defaults: start from exp-f1's device/evaluation settings but
    // require the caller to describe the blocks.
    if (!j.is_object() || !j.contains("blocks")) {
        throw ConfigError("config must name a known experiment or define 'blocks'");
    }
    auto base = harness::default_config("exp-f1");
    base.name = "custom";
    return config_from_json(j, base);
}

json to_json(const harness::ExperimentResult& r, bool include_points) {
    json j{{"experiment", r.name},
           {"mse", r.mse},
           {"n_train", r.n_train},
           {"saturation_count", r.saturation_count},
           {"config", to_json(r.config)},
           {"runtime_s", r.runtime_s},
           {"degenerate_count", r.evaluation.degenerate_count},
           {"n_eval", r.evaluation.points.size()},
           {"t0", r.t0},
           {"max_delta_ratio", r.max_delta_ratio},
           {"surfaces", r.surface_paths},
           {"models", r.model_paths}};
    if (include_points) {
        json pts = json::array();
        for (const auto& p : r.evaluation.points) {
            pts.push_back({{"input", p.input},
                           {"target", p.target},
                           {"predicted", p.predicted},
                           {"degenerate", p.degenerate}});
        }
        j["points"] = std::move(pts);
    }
    return j;
}

json block_to_json(const Block& block) {
    const Crossbar& x = block.crossbar();
    json inputs = json::array();
    for (const auto& s : block.inputs()) inputs.push_back(variable_to_json(s.variable));
    std::vector<std::size_t> faults;
    const auto mask = x.fault_mask();
    for (std::size_t k = 0; k < mask.size(); ++k) {
        if (mask[k]) faults.push_back(k);
    }
    const auto m = x.memristance().flat();
    return {{"format", kModelFormat},
            {"version", kModelVersion},
            {"device", to_json(x.params())},
            {"read_mode", to_string(block.read_mode())},
            {"inputs", inputs},
            {"output", variable_to_json(block.output())},
            {"rows", x.rows()},
            {"cols", x.cols()},
            {"memristance", std::vector<double>(m.begin(), m.end())},
            {"faults", faults},
            {"saturation_count", x.saturation_count()}};
}

Block block_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != kModelFormat) {
        throw ConfigError("not a memfuzzy block model");
    }
    if (get<int>(j, "version") != kModelVersion) throw ConfigError("unsupported model version");
    std::vector<Variable> inputs;
    for (const auto& v : get<json>(j, "inputs")) inputs.push_back(model_variable_from_json(v));
    try {
        Block block(std::move(inputs), model_variable_from_json(get<json>(j, "output")),
                    params_from_json(get<json>(j, "device")),
                    read_mode_from_string(get<std::string>(j, "read_mode")));
        const auto rows = get<std::size_t>(j, "rows");
        const auto cols = get<std::size_t>(j, "cols");
        if (rows != block.crossbar().rows() || cols != block.crossbar().cols()) {
            throw ConfigError("model shape does not match its declared variables");
        }
        const auto values = get<std::vector<double>>(j, "memristance");
        if (values.size() != rows * cols) throw ConfigError("memristance array has the wrong length");
        Matrix m(rows, cols);
        std::copy(values.begin(), values.end(), m.flat().begin());
        std::vector<std::uint8_t> mask(rows * cols, 0);
        for (auto k : get<std::vector<std::size_t>>(j, "faults")) {
            if (k >= mask.size()) throw ConfigError("fault index out of range");
            mask[k] = 1;
        }
        block.crossbar().restore(std::move(m), std::move(mask), get<std::size_t>(j, "saturation_count"));
        return block;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
}

void save_block(const Block& block, const std::string& path) { write_json_file(block_to_json(block), path); }

Block load_block(const std::string& path) { return block_from_json(read_json_file(path)); }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

}  // namespace memfuzzy::io
