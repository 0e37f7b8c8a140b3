#include "memfuzzy/harness.hpp"

#include <omp.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <memory>

#include "memfuzzy/errors.hpp"
#include "memfuzzy/expression.hpp"
#include "memfuzzy/io.hpp"
#include "memfuzzy/rng.hpp"

namespace memfuzzy::harness {
namespace {

double sinc(double v) { return v == 0.0 ? 1.0 : std::sin(v) / v; }

std::vector<std::string> names_of(const std::vector<VariableSpec>& vars) {
    std::vector<std::string> names;
    for (const auto& v : vars) names.push_back(v.name);
    return names;
}

VariableSpec var(std::string name, double lo, double hi, std::size_t count) {
    return {std::move(name), lo, hi, count, std::nullopt};
}

}  // namespace

Target make_target(const std::string& id, const std::vector<std::string>& inputs) {
    const std::size_t arity = inputs.size();
    auto need = [&](std::size_t k) {
        if (arity != k) {
            throw ConfigError("target '" + id + "' takes " + std::to_string(k) + " input(s), got " +
                              std::to_string(arity));
        }
    };
    if (id == "f1") {
        need(1);
        return {id, 1, [](std::span<const double> x) { return x[0] * x[0]; }};
    }
    if (id == "f2") {
        need(1);
        return {id, 1, [](std::span<const double> x) { return std::sqrt(x[0]); }};
    }
    if (id == "identity") {
        need(1);
        return {id, 1, [](std::span<const double> x) { return x[0]; }};
    }
    if (id == "sinc2") {
        need(2);
        return {id, 2, [](std::span<const double> x) {
                    const double sx = sinc(x[0]);
                    const double sy = sinc(x[1]);
                    return 0.5 * std::sqrt(2.0 * sx * sx + 3.0 * sy * sy);
                }};
    }
    Expression expr(id, inputs);
    return {id, arity, [expr](std::span<const double> x) { return expr(x); }};
}

Target compose_targets(std::vector<Target> stages) {
    if (stages.empty()) throw ConfigError("cannot compose zero targets");
    std::string id;
    for (const auto& s : stages) {
        if (s.arity != 1) throw ConfigError("only single-input targets can be composed");
        id = id.empty() ? s.id : s.id + "(" + id + ")";
    }
    return {id, 1, [stages = std::move(stages)](std::span<const double> x) {
                double v = x[0];
                for (const auto& s : stages) v = s(std::span<const double>(&v, 1));
                return v;
            }};
}

Variable VariableSpec::to_variable() const {
    const double s = sigma.value_or(0.05 * (hi - lo));
    return {name, Universe(lo, hi, count), s};
}

void validate(const DatasetSpec& spec) {
    if (spec.n < 1) throw ConfigError("dataset needs n >= 1");
    if (spec.inputs.empty()) throw ConfigError("dataset needs at least one input");
    try {
        for (const auto& v : spec.inputs) (void)v.to_variable();
        (void)spec.output.to_variable();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid dataset domain: ") + e.what());
    }
    (void)make_target(spec.target, names_of(spec.inputs));
}

std::vector<Sample> generate_dataset(const DatasetSpec& spec) {
    validate(spec);
    const Target target = make_target(spec.target, names_of(spec.inputs));
    std::vector<Variable> in_vars;
    for (const auto& v : spec.inputs) in_vars.push_back(v.to_variable());
    const Variable out_var = spec.output.to_variable();

    Rng rng(spec.seed);
    std::vector<Sample> data;
    data.reserve(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        std::vector<double> x(in_vars.size());
        for (std::size_t d = 0; d < in_vars.size(); ++d) {
            x[d] = rng.uniform(in_vars[d].universe.lo(), in_vars[d].universe.hi());
        }
        const double y = target(x);
        if (!std::isfinite(y)) throw ConfigError("target '" + spec.target + "' is not finite at a sample");
        std::vector<FuzzyNumber> fx;
        for (std::size_t d = 0; d < in_vars.size(); ++d) {
            fx.push_back(fuzzify_gaussian(x[d], in_vars[d].sigma, in_vars[d].universe));
        }
        auto fy = fuzzify_gaussian(y, out_var.sigma, out_var.universe);
        data.push_back({std::move(x), y, std::move(fx), std::move(fy)});
    }
    return data;
}

double max_total_drive(std::span<const Sample> dataset) {
    if (dataset.empty()) return 0.0;
    std::vector<double> col_sum;
    std::vector<double> row_sum(dataset.front().output.grades().size(), 0.0);
    for (const auto& s : dataset) {
        std::size_t c = 0;
        for (const auto& f : s.inputs) {
            for (double g : f.grades()) {
                if (c == col_sum.size()) col_sum.push_back(0.0);
                col_sum[c++] += g;
            }
        }
        const auto og = s.output.grades();
        for (std::size_t i = 0; i < og.size(); ++i) row_sum[i] += og[i];
    }
    return *std::max_element(col_sum.begin(), col_sum.end()) +
           *std::max_element(row_sum.begin(), row_sum.end());
}

double scaled_t0(double nominal, double max_drive, const device::MemristorParams& params,
                 double max_delta_ratio) {
    if (!(nominal > 0.0)) throw ConfigError("t0 must be positive");
    if (!(max_delta_ratio > 0.0 && max_delta_ratio < 1.0)) {
        throw ConfigError("max_delta_ratio must lie in (0, 1)");
    }
    if (!(max_drive > 0.0)) return nominal;
    // f(drive) = r_off (1 - sqrt(1 - beta t0 drive / r_off^2)) = ratio * r_off
    // sequential sqrt updates round; stay a hair under the ceiling
    const double keep = 1.0 - max_delta_ratio * (1.0 - 1e-9);
    const double budget = params.r_off * params.r_off * (1.0 - keep * keep);
    return std::min(nominal, budget / (device::beta(params) * max_drive));
}

void train_block(Block& block, std::span<const Sample> dataset, double t0) {
    for (const auto& s : dataset) block.train(s.inputs, s.output, t0);
}

std::vector<EvalPoint> make_eval_points(const EvalSpec& spec,
                                        const std::vector<std::pair<double, double>>& default_bounds,
                                        const Target& target) {
    const auto& bounds = spec.bounds.empty() ? default_bounds : spec.bounds;
    if (bounds.size() != target.arity) {
        throw ConfigError("evaluation bounds do not match the target's input count");
    }
    for (const auto& [lo, hi] : bounds) {
        if (!(lo <= hi)) throw ConfigError("evaluation bounds must satisfy lo <= hi");
    }
    std::vector<EvalPoint> points;
    if (spec.kind == EvalSpec::Kind::random) {
        Rng rng(spec.seed);
        for (std::size_t k = 0; k < spec.n; ++k) {
            std::vector<double> x(bounds.size());
            for (std::size_t d = 0; d < bounds.size(); ++d) x[d] = rng.uniform(bounds[d].first, bounds[d].second);
            const double t = target(x);
            points.push_back({std::move(x), t});
        }
        return points;
    }
    if (spec.per_axis < 2) throw ConfigError("lattice evaluation needs per_axis >= 2");
    const std::size_t dims = bounds.size();
    std::vector<std::size_t> idx(dims, 0);
    for (;;) {
        std::vector<double> x(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            const double t = static_cast<double>(idx[d]) / static_cast<double>(spec.per_axis - 1);
            x[d] = bounds[d].first + t * (bounds[d].second - bounds[d].first);
        }
        const double tv = target(x);
        points.push_back({std::move(x), tv});
        std::size_t d = 0;
        while (d < dims && ++idx[d] == spec.per_axis) idx[d++] = 0;
        if (d == dims) break;
    }
    return points;
}

namespace {

PointResult score_point(const Predictor& predict, const EvalPoint& p, double fallback) {
    PointResult r{p.input, p.target, fallback, false};
    try {
        r.predicted = defuzzify_centroid(predict(p.input));
    } catch (const EmptyOutputError&) {
        r.degenerate = true;
    }
    return r;
}

Evaluation reduce(std::vector<PointResult> points) {
    Evaluation ev;
    double sum = 0.0;
    for (const auto& r : points) {
        const double e = r.predicted - r.target;
        sum += e * e;
        ev.degenerate_count += r.degenerate ? 1 : 0;
    }
    ev.mse = points.empty() ? 0.0 : sum / static_cast<double>(points.size());
    ev.points = std::move(points);
    return ev;
}

}  // namespace

Evaluation evaluate_mse_serial(const Predictor& predict, std::span<const EvalPoint> points,
                               const Universe& output) {
    const double mid = 0.5 * (output.lo() + output.hi());
    std::vector<PointResult> results;
    results.reserve(points.size());
    for (const auto& p : points) results.push_back(score_point(predict, p, mid));
    return reduce(std::move(results));
}

Evaluation evaluate_mse(const Predictor& predict, std::span<const EvalPoint> points,
                        const Universe& output) {
    const double mid = 0.5 * (output.lo() + output.hi());
    std::vector<PointResult> results(points.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            const auto u = static_cast<std::size_t>(k);
            results[u] = score_point(predict, points[u], mid);
        } catch (...) {
#pragma omp critical(memfuzzy_eval_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return reduce(std::move(results));
}

double ShapeRecovery::worst() const {
    if (error_resolutions.empty()) return 0.0;
    return *std::max_element(error_resolutions.begin(), error_resolutions.end());
}

double ShapeRecovery::fraction_within(double resolutions) const {
    if (error_resolutions.empty()) return 1.0;
    const auto ok = std::count_if(error_resolutions.begin(), error_resolutions.end(),
                                  [&](double e) { return e <= resolutions; });
    return static_cast<double>(ok) / static_cast<double>(error_resolutions.size());
}

ShapeRecovery column_argmax_tracking(const Matrix& surface, const Universe& input,
                                     const Universe& output, const Target& target, double margin) {
    if (surface.rows() != output.count() || surface.cols() != input.count()) {
        throw DimensionError("surface shape does not match the universes");
    }
    ShapeRecovery rec;
    for (std::size_t j = 0; j < input.count(); ++j) {
        const double x = input.value(j);
        if (x < input.lo() + margin || x > input.hi() - margin) continue;
        std::size_t best = 0;
        for (std::size_t i = 1; i < surface.rows(); ++i) {
            if (surface(i, j) > surface(best, j)) best = i;
        }
        const double err = std::fabs(output.value(best) - target(std::span<const double>(&x, 1)));
        rec.columns.push_back(j);
        rec.error_resolutions.push_back(err / output.resolution());
    }
    return rec;
}

void validate(const ExperimentConfig& config) {
    device::validate(config.device);
    if (!(config.t0 > 0.0)) throw ConfigError("t0 must be positive");
    if (!(config.max_delta_ratio > 0.0 && config.max_delta_ratio < 1.0)) {
        throw ConfigError("max_delta_ratio must lie in (0, 1)");
    }
    if (config.blocks.empty()) throw ConfigError("config needs at least one block");
    for (const auto& b : config.blocks) validate(b.dataset);
    if (config.blocks.size() > 1) {
        for (const auto& b : config.blocks) {
            if (b.dataset.inputs.size() != 1) {
                throw ConfigError("pipeline blocks must have exactly one input");
            }
        }
    }
    if (!(config.faults.fraction >= 0.0 && config.faults.fraction <= 1.0)) {
        throw ConfigError("fault fraction must lie in [0, 1]");
    }
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"exp-f1", "exp-f2", "exp-compose", "exp-2input",
                                                "exp-2input-faulty"};
    return names;
}

ExperimentConfig default_config(std::string_view name) {
    ExperimentConfig c;
    c.name = std::string(name);
    auto unit_block = [](std::string target, std::string in, std::string out, std::uint64_t seed) {
        BlockSpec b;
        b.name = target;
        b.dataset.target = std::move(target);
        b.dataset.inputs = {var(std::move(in), 0.0, 1.0, 100)};
        b.dataset.output = var(std::move(out), 0.0, 1.0, 100);
        b.dataset.n = 500;
        b.dataset.seed = seed;
        return b;
    };
    auto two_input = [&c] {
        BlockSpec b;
        b.name = "sinc2";
        b.dataset.target = "sinc2";
        b.dataset.inputs = {var("x", 1.0, 10.0, 90), var("y", 1.0, 10.0, 90)};
        b.dataset.output = var("z", 0.0, 1.12, 100);
        b.dataset.n = 800;
        b.dataset.seed = 30;
        c.blocks = {b};
        c.evaluation.kind = EvalSpec::Kind::lattice;
        c.evaluation.per_axis = 30;
    };

    if (name == "exp-f1") {
        c.blocks = {unit_block("f1", "x", "y", 1)};
        c.evaluation = {EvalSpec::Kind::random, 200, 30, 1001, {}};
    } else if (name == "exp-f2") {
        c.blocks = {unit_block("f2", "x", "y", 2)};
        c.evaluation = {EvalSpec::Kind::random, 200, 30, 1002, {}};
    } else if (name == "exp-compose") {
        c.blocks = {unit_block("f2", "x", "y", 2), unit_block("f1", "y", "z", 1)};
        c.evaluation = {EvalSpec::Kind::random, 100, 30, 1003, {{0.05, 0.95}}};
    } else if (name == "exp-2input") {
        two_input();
    } else if (name == "exp-2input-faulty") {
        two_input();
        c.faults = {0.5, 50};
    } else {
        throw ConfigError("unknown experiment '" + std::string(name) + "'");
    }
    return c;
}

TrainedSystem train_system(const ExperimentConfig& config) {
    validate(config);
    TrainedSystem sys;
    for (const auto& spec : config.blocks) {
        std::vector<Variable> inputs;
        for (const auto& v : spec.dataset.inputs) inputs.push_back(v.to_variable());
        Block block(std::move(inputs), spec.dataset.output.to_variable(), config.device,
                    config.read_mode);
        if (config.faults.fraction > 0.0) {
            block.crossbar().inject_faults(config.faults.fraction, config.faults.seed);
        }
        const auto data = generate_dataset(spec.dataset);
        const double t0 = scaled_t0(config.t0, max_total_drive(data), config.device,
                                    config.max_delta_ratio);
        train_block(block, data, t0);

        const double ratio = block.crossbar().snapshot_delta().max() / config.device.r_off;
        sys.max_delta_ratio = std::max(sys.max_delta_ratio, ratio);
        sys.saturation_count += block.crossbar().saturation_count();
        sys.n_train += data.size();
        sys.t0.push_back(t0);
        sys.blocks.push_back(std::move(block));
    }
    if (sys.saturation_count > 0) {
        spdlog::warn("{}: {} cell updates clamped at r_on", config.name, sys.saturation_count);
    }
    return sys;
}

Target evaluation_target(const ExperimentConfig& config) {
    std::vector<Target> stages;
    for (const auto& b : config.blocks) {
        stages.push_back(make_target(b.dataset.target, names_of(b.dataset.inputs)));
    }
    if (stages.size() == 1) return stages.front();
    return compose_targets(std::move(stages));
}

Predictor make_predictor(const TrainedSystem& system, const Conditioning& conditioning) {
    if (system.blocks.size() == 1) {
        const Block* block = &system.blocks.front();
        return [block](std::span<const double> x) { return block->infer_crisp(x); };
    }
    auto pipe = std::make_shared<const Pipeline>(system.blocks, conditioning);
    return [pipe](std::span<const double> x) {
        if (x.size() != 1) throw DimensionError("pipeline takes one crisp input");
        return pipe->infer_crisp(x[0]);
    };
}

ExperimentResult evaluate_system(const TrainedSystem& system, const ExperimentConfig& config) {
    const Target target = evaluation_target(config);
    std::vector<std::pair<double, double>> bounds;
    for (const auto& in : system.blocks.front().inputs()) {
        bounds.emplace_back(in.variable.universe.lo(), in.variable.universe.hi());
    }
    const auto points = make_eval_points(config.evaluation, bounds, target);
    const auto predict = make_predictor(system, config.conditioning);
    const Universe& out = system.blocks.back().output().universe;

    ExperimentResult r;
    r.name = config.name;
    r.evaluation = evaluate_mse(predict, points, out);
    r.mse = r.evaluation.mse;
    r.n_train = system.n_train;
    r.saturation_count = system.saturation_count;
    r.t0 = system.t0;
    r.max_delta_ratio = system.max_delta_ratio;
    r.config = config;
    if (r.evaluation.degenerate_count > 0) {
        spdlog::warn("{}: {} evaluation points fell in untrained regions", config.name,
                     r.evaluation.degenerate_count);
    }
    return r;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const TrainedSystem sys = train_system(config);
    ExperimentResult r = evaluate_system(sys, config);

    if (!config.output_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.output_dir);
        for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
            const Block& block = sys.blocks[b];
            const std::string stem = config.name + "_" + config.blocks[b].name;
            for (std::size_t s = 0; s < block.inputs().size(); ++s) {
                const auto path = (fs::path(config.output_dir) /
                                   (stem + "_" + block.inputs()[s].variable.name + ".csv"))
                                      .string();
                write_surface_csv(path, block.section_surface(s), config.device.r_off);
                r.surface_paths.push_back(path);
            }
            const auto model = (fs::path(config.output_dir) / (stem + ".model.json")).string();
            io::save_block(block, model);
            r.model_paths.push_back(model);
        }
    }
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!config.output_dir.empty()) {
        io::write_json_file(io::to_json(r, true),
                            (std::filesystem::path(config.output_dir) / (config.name + "_result.json")).string());
    }
    return r;
}

}  // namespace memfuzzy::harness
