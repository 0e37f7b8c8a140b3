#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "memfuzzy/crossbar.hpp"
#include "memfuzzy/device.hpp"
#include "memfuzzy/fuzzy.hpp"
#include "memfuzzy/system.hpp"

namespace memfuzzy::harness {

/// A crisp target function of one or more named inputs.
struct Target {
    std::string id;
    std::size_t arity = 0;
    std::function<double(std::span<const double>)> fn;

    double operator()(std::span<const double> x) const { return fn(x); }
};

/// Built-in ids: f1 (x^2), f2 (sqrt x), sinc2 (two-input sinc surface),
/// identity. Anything else is compiled as an expression over `inputs`.
[[nodiscard]] Target make_target(const std::string& id, const std::vector<std::string>& inputs);

/// t_n(...t_2(t_1(x))) for single-output stages.
[[nodiscard]] Target compose_targets(std::vector<Target> stages);

struct VariableSpec {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 100;
    std::optional<double> sigma;  ///< defaults to 5% of the domain width

    [[nodiscard]] Variable to_variable() const;
};

struct DatasetSpec {
    std::string target = "f1";
    std::vector<VariableSpec> inputs;
    VariableSpec output;
    std::size_t n = 500;
    std::uint64_t seed = 1;
};

/// One training example, crisp and fuzzified.
struct Sample {
    std::vector<double> crisp_inputs;
    double crisp_output = 0.0;
    std::vector<FuzzyNumber> inputs;
    FuzzyNumber output;
};

/// Throws ConfigError on an invalid spec.
void validate(const DatasetSpec& spec);

/// n points drawn uniformly (seeded) over the input domains, with exact
/// targets, fuzzified per variable.
[[nodiscard]] std::vector<Sample> generate_dataset(const DatasetSpec& spec);

/// Largest total drive any cell of a block sees over the whole dataset:
/// max_j C_j + max_i D_i, with C and D the summed column and row grades.
[[nodiscard]] double max_total_drive(std::span<const Sample> dataset);

/// Largest pulse length <= nominal for which the predicted peak stored
/// value stays at or below max_delta_ratio * r_off.
[[nodiscard]] double scaled_t0(double nominal, double max_drive,
                               const device::MemristorParams& params, double max_delta_ratio);

/// One write pulse per sample, in dataset order.
void train_block(Block& block, std::span<const Sample> dataset, double t0);

struct EvalSpec {
    enum class Kind { random, lattice };
    Kind kind = Kind::random;
    std::size_t n = 200;         ///< random: number of points
    std::size_t per_axis = 30;   ///< lattice: points per input axis
    std::uint64_t seed = 1001;
    /// Per-input [lo, hi]; defaults to each input universe's domain.
    std::vector<std::pair<double, double>> bounds;
};

struct EvalPoint {
    std::vector<double> input;
    double target = 0.0;
};

[[nodiscard]] std::vector<EvalPoint> make_eval_points(
    const EvalSpec& spec, const std::vector<std::pair<double, double>>& default_bounds,
    const Target& target);

struct PointResult {
    std::vector<double> input;
    double target = 0.0;
    double predicted = 0.0;
    bool degenerate = false;
};

struct Evaluation {
    double mse = 0.0;
    std::size_t degenerate_count = 0;
    std::vector<PointResult> points;
};

using Predictor = std::function<FuzzyNumber(std::span<const double>)>;

/// Centroid-defuzzified prediction error over the points. An all-zero
/// output is scored against the output domain midpoint and flagged.
/// The parallel variant distributes points over threads against a frozen
/// model and reduces in point order, so both return identical results.
[[nodiscard]] Evaluation evaluate_mse_serial(const Predictor& predict,
                                             std::span<const EvalPoint> points,
                                             const Universe& output);
[[nodiscard]] Evaluation evaluate_mse(const Predictor& predict, std::span<const EvalPoint> points,
                                      const Universe& output);

/// Column-argmax tracking of a single-input relation surface: for each
/// column whose grid value lies at least `margin` inside the input domain,
/// |y(argmax_i surface[i][j]) - target(x_j)|, in output resolutions.
struct ShapeRecovery {
    std::vector<std::size_t> columns;
    std::vector<double> error_resolutions;

    [[nodiscard]] double worst() const;
    [[nodiscard]] double fraction_within(double resolutions) const;
};

[[nodiscard]] ShapeRecovery column_argmax_tracking(const Matrix& surface, const Universe& input,
                                                   const Universe& output, const Target& target,
                                                   double margin);

struct BlockSpec {
    std::string name;
    DatasetSpec dataset;
};

struct FaultSpec {
    double fraction = 0.0;
    std::uint64_t seed = 0;
};

/// Everything a run depends on; results are a pure function of it.
struct ExperimentConfig {
    std::string name = "custom";
    device::MemristorParams device{};
    double t0 = 1e-4;               ///< nominal pulse length before scaling
    double max_delta_ratio = 1e-3;  ///< ceiling on predicted max DeltaM / r_off
    ReadMode read_mode = ReadMode::ideal;
    std::vector<BlockSpec> blocks;  ///< one block, or a pipeline in order
    Conditioning conditioning{};
    EvalSpec evaluation{};
    FaultSpec faults{};
    std::string output_dir;  ///< empty: write nothing
};

void validate(const ExperimentConfig& config);

/// Defaults for exp-f1, exp-f2, exp-compose, exp-2input, exp-2input-faulty.
[[nodiscard]] ExperimentConfig default_config(std::string_view name);
[[nodiscard]] const std::vector<std::string>& experiment_names();

struct TrainedSystem {
    std::vector<Block> blocks;
    std::vector<double> t0;  ///< pulse length used per block
    std::size_t n_train = 0;
    std::size_t saturation_count = 0;
    double max_delta_ratio = 0.0;  ///< observed max DeltaM / r_off
};

/// Builds the blocks, injects faults, and trains each on its dataset.
[[nodiscard]] TrainedSystem train_system(const ExperimentConfig& config);

/// Target used to score a trained system: the block target, or the
/// composition of stage targets for a pipeline.
[[nodiscard]] Target evaluation_target(const ExperimentConfig& config);

/// Predictor for one block or the pipeline of all blocks.
[[nodiscard]] Predictor make_predictor(const TrainedSystem& system,
                                       const Conditioning& conditioning);

struct ExperimentResult {
    std::string name;
    double mse = 0.0;
    Evaluation evaluation;
    std::size_t n_train = 0;
    std::size_t saturation_count = 0;
    std::vector<double> t0;
    double max_delta_ratio = 0.0;
    std::vector<std::string> surface_paths;
    std::vector<std::string> model_paths;
    ExperimentConfig config;
    double runtime_s = 0.0;
};

[[nodiscard]] ExperimentResult evaluate_system(const TrainedSystem& system,
                                               const ExperimentConfig& config);

/// Train, evaluate and, when output_dir is set, write relation surfaces,
/// block models and result.json there.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace memfuzzy::harness
