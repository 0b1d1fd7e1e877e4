#include "wsnsim/bpnn.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

void check_sizes(std::span<const int> sizes) {
    if (sizes.size() < 2) throw ConfigError("mlp needs at least input and output layers");
    for (int s : sizes) {
        if (s <= 0) throw ConfigError("mlp layer sizes must be positive");
    }
}

}  // namespace

Mlp init_weights(std::span<const int> layer_sizes, std::uint64_t seed) {
    check_sizes(layer_sizes);
    Mlp net;
    net.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
    Rng rng(seed, "bpnn-init");
    for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
        Layer layer;
        layer.in = layer_sizes[k];
        layer.out = layer_sizes[k + 1];
        const double limit = std::sqrt(6.0 / (layer.in + layer.out));
        layer.weights.resize(static_cast<std::size_t>(layer.in) * layer.out);
        for (double& w : layer.weights) w = rng.uniform(-limit, limit);
        layer.biases.assign(layer.out, 0.0);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

double forward(const Mlp& net, std::span<const double> x, ForwardCache& cache) {
    if (net.layers.empty()) throw StateError("forward: uninitialized net");
    if (static_cast<int>(x.size()) != net.layers.front().in) {
        throw ShapeError("forward: input width mismatch");
    }
    cache.z.assign(net.layers.size(), {});
    cache.a.assign(net.layers.size() + 1, {});
    cache.a[0].assign(x.begin(), x.end());

    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const Layer& layer = net.layers[k];
        const std::vector<double>& prev = cache.a[k];
        std::vector<double>& z = cache.z[k];
        z.resize(layer.out);
        for (int u = 0; u < layer.out; ++u) {
            double acc = layer.biases[u];
            const double* row = layer.weights.data() + static_cast<std::size_t>(u) * layer.in;
            for (int v = 0; v < layer.in; ++v) acc += row[v] * prev[v];
            z[u] = acc;
        }
        std::vector<double>& a = cache.a[k + 1];
        a.resize(layer.out);
        const bool hidden = k + 1 < net.layers.size();
        for (int u = 0; u < layer.out; ++u) {
            a[u] = hidden ? std::max(z[u], 0.0) : z[u];
        }
    }
    return cache.a.back()[0];
}

double forward(const Mlp& net, std::span<const double> x) {
    ForwardCache cache;
    return forward(net, x, cache);
}

double mse_loss(std::span<const double> y, std::span<const double> y_true) {
    if (y.size() != y_true.size()) throw ShapeError("mse_loss: length mismatch");
    if (y.empty()) throw ShapeError("mse_loss: empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - y_true[i];
        sum += r * r;
    }
    return sum / static_cast<double>(y.size());
}

Gradients backward(const Mlp& net, const ForwardCache& cache, double y_true) {
    if (cache.a.size() != net.layers.size() + 1 || cache.z.size() != net.layers.size()) {
        throw StateError("backward: cache does not match the net");
    }
    Gradients grads;
    grads.d_weights.resize(net.layers.size());
    grads.d_biases.resize(net.layers.size());

    const double y = cache.a.back()[0];
    std::vector<double> delta{y - y_true};  // identity output: sigma' = 1

    for (int k = static_cast<int>(net.layers.size()) - 1; k >= 0; --k) {
        const Layer& layer = net.layers[k];
        const std::vector<double>& prev = cache.a[k];
        auto& dw = grads.d_weights[k];
        auto& db = grads.d_biases[k];
        dw.resize(layer.weights.size());
        db.resize(layer.out);
        for (int u = 0; u < layer.out; ++u) {
            db[u] = delta[u];
            double* row = dw.data() + static_cast<std::size_t>(u) * layer.in;
            for (int v = 0; v < layer.in; ++v) row[v] = delta[u] * prev[v];
        }
        if (k > 0) {
            std::vector<double> prev_delta(layer.in, 0.0);
            for (int u = 0; u < layer.out; ++u) {
                const double* row = layer.weights.data() + static_cast<std::size_t>(u) * layer.in;
                for (int v = 0; v < layer.in; ++v) prev_delta[v] += row[v] * delta[u];
            }
            // ReLU derivative: 1 for z > 0, 0 for z <= 0.
            for (int v = 0; v < layer.in; ++v) {
                if (cache.z[k - 1][v] <= 0.0) prev_delta[v] = 0.0;
            }
            delta = std::move(prev_delta);
        }
    }
    return grads;
}

void sgd_step(Mlp& net, const Gradients& grads, double eta) {
    if (grads.d_weights.size() != net.layers.size()) {
        throw ShapeError("sgd_step: gradient layer count mismatch");
    }
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        Layer& layer = net.layers[k];
        if (grads.d_weights[k].size() != layer.weights.size() ||
            grads.d_biases[k].size() != layer.biases.size()) {
            throw ShapeError("sgd_step: gradient shape mismatch");
        }
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            layer.weights[i] -= eta * grads.d_weights[k][i];
        }
        for (std::size_t i = 0; i < layer.biases.size(); ++i) {
            layer.biases[i] -= eta * grads.d_biases[k][i];
        }
    }
}

TrainResult train(Mlp net, const TrainBatch& batch, double eta, int epochs) {
    if (epochs < 1) throw ConfigError("train: epochs must be >= 1");
    const std::size_t m = batch.inputs.size();
    if (m == 0 || batch.targets.size() != m) {
        throw ShapeError("train: batch inputs/targets mismatch");
    }

    TrainResult result;
    result.loss_history.reserve(epochs);
    ForwardCache cache;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        Gradients sum;
        sum.d_weights.resize(net.layers.size());
        sum.d_biases.resize(net.layers.size());
        for (std::size_t k = 0; k < net.layers.size(); ++k) {
            sum.d_weights[k].assign(net.layers[k].weights.size(), 0.0);
            sum.d_biases[k].assign(net.layers[k].biases.size(), 0.0);
        }
        double loss = 0.0;
        for (std::size_t s = 0; s < m; ++s) {
            const double y = forward(net, batch.inputs[s], cache);
            const double r = y - batch.targets[s];
            loss += r * r;
            const Gradients g = backward(net, cache, batch.targets[s]);
            for (std::size_t k = 0; k < net.layers.size(); ++k) {
                for (std::size_t i = 0; i < g.d_weights[k].size(); ++i) {
                    sum.d_weights[k][i] += g.d_weights[k][i];
                }
                for (std::size_t i = 0; i < g.d_biases[k].size(); ++i) {
                    sum.d_biases[k][i] += g.d_biases[k][i];
                }
            }
        }
        loss /= static_cast<double>(m);
        if (!std::isfinite(loss)) {
            throw TrainingError("training diverged at epoch " + std::to_string(epoch + 1));
        }
        result.loss_history.push_back(loss);
        const double scale = 1.0 / static_cast<double>(m);
        for (auto& w : sum.d_weights) {
            for (double& g : w) g *= scale;
        }
        for (auto& b : sum.d_biases) {
            for (double& g : b) g *= scale;
        }
        sgd_step(net, sum, eta);
    }
    result.net = std::move(net);
    return result;
}

double fuse(const Mlp& net, std::span<const double> readings) {
    if (readings.empty()) throw StateError("fuse: no readings to fuse");
    if (net.layers.empty()) throw StateError("fuse: uninitialized net");
    const std::size_t width = static_cast<std::size_t>(net.layers.front().in);
    std::vector<double> x(readings.begin(),
                          readings.begin() + std::min(readings.size(), width));
    if (x.size() < width) {
        const double mean = std::accumulate(readings.begin(), readings.end(), 0.0) /
                            static_cast<double>(readings.size());
        x.resize(width, mean);
    }
    return forward(net, x);
}

std::string mlp_to_json(const Mlp& net) {
    nlohmann::ordered_json doc;
    doc["layer_sizes"] = net.layer_sizes;
    auto weights = nlohmann::ordered_json::array();
    auto biases = nlohmann::ordered_json::array();
    for (const Layer& layer : net.layers) {
        weights.push_back(layer.weights);
        biases.push_back(layer.biases);
    }
    doc["weights"] = std::move(weights);
    doc["biases"] = std::move(biases);
    return doc.dump(2) + "\n";
}

Mlp mlp_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model JSON parse error: ") + e.what());
    }
    Mlp net;
    try {
        net.layer_sizes = doc.at("layer_sizes").get<std::vector<int>>();
        check_sizes(net.layer_sizes);
        const auto& weights = doc.at("weights");
        const auto& biases = doc.at("biases");
        for (std::size_t k = 0; k + 1 < net.layer_sizes.size(); ++k) {
            Layer layer;
            layer.in = net.layer_sizes[k];
            layer.out = net.layer_sizes[k + 1];
            layer.weights = weights.at(k).get<std::vector<double>>();
            layer.biases = biases.at(k).get<std::vector<double>>();
            if (layer.weights.size() != static_cast<std::size_t>(layer.in) * layer.out ||
                layer.biases.size() != static_cast<std::size_t>(layer.out)) {
                throw ConfigError("model JSON: parameter shapes disagree with layer_sizes");
            }
            net.layers.push_back(std::move(layer));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model JSON structure error: ") + e.what());
    }
    return net;
}

void save_mlp(const Mlp& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open model file for writing: " + path);
    out << mlp_to_json(net);
    if (!out) throw IoError("failed writing model file: " + path);
}

Mlp load_mlp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return mlp_from_json(buf.str());
}

}  // namespace wsnsim
