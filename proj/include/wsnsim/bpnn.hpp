#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wsnsim {

// Dense layer parameters. Weights are row-major: row u holds the incoming
// weights of unit u from the previous layer.
struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> biases;   // out
};

// Multilayer perceptron with ReLU hidden units and an identity output.
// The output layer always has a single unit (one fused value).
struct Mlp {
    std::vector<int> layer_sizes;  // input, hidden..., output
    std::vector<Layer> layers;
};

// Intermediate pre-activations/activations from a forward pass, consumed
// by backward().
struct ForwardCache {
    std::vector<std::vector<double>> z;  // per layer
    std::vector<std::vector<double>> a;  // a[0] = input, then per layer
};

struct Gradients {
    std::vector<std::vector<double>> d_weights;  // matches Layer::weights
    std::vector<std::vector<double>> d_biases;   // matches Layer::biases
};

struct TrainBatch {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
};

struct TrainResult {
    Mlp net;
    std::vector<double> loss_history;  // one MSE value per epoch
};

// Glorot-uniform weights, zero biases; deterministic per seed.
Mlp init_weights(std::span<const int> layer_sizes, std::uint64_t seed);

// Runs the net on one input vector; the cache holds everything backward
// needs. Output is the single output unit's activation.
double forward(const Mlp& net, std::span<const double> x, ForwardCache& cache);
double forward(const Mlp& net, std::span<const double> x);

// Mean squared error over paired predictions/targets.
double mse_loss(std::span<const double> y, std::span<const double> y_true);

// Backpropagation for one sample. The output delta is (y - y_true) with
// the identity output activation; ReLU derivative at exactly 0 is taken
// as 0. Note the resulting gradients correspond to the half squared
// error 0.5*(y - y_true)^2.
Gradients backward(const Mlp& net, const ForwardCache& cache, double y_true);

// In-place descent step: W -= eta * dW, b -= eta * db.
void sgd_step(Mlp& net, const Gradients& grads, double eta);

// Full-batch gradient descent; per-sample gradients are averaged over the
// batch each epoch. Throws TrainingError if the loss turns NaN/Inf.
TrainResult train(Mlp net, const TrainBatch& batch, double eta, int epochs);

// Fuses a variable-length reading vector: readings are right-padded with
// their mean (or truncated) to the net's input width, then run forward.
double fuse(const Mlp& net, std::span<const double> readings);

// JSON (de)serialization of the full parameter set.
std::string mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const std::string& text);
void save_mlp(const Mlp& net, const std::string& path);
Mlp load_mlp(const std::string& path);

}  // namespace wsnsim
