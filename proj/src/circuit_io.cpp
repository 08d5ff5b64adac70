// Copyright 2026 The hgbs Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hgbs/circuit_io.hpp"

#include <fstream>
#include <sstream>

namespace hgbs::circuit {

nlohmann::ordered_json to_json(const Circuit &c) {
    nlohmann::ordered_json j;
    if (c.seed()) {
        j["header"] = {{"seed", *c.seed()}};
    }
    j["num_modes"] = c.num_modes();
    auto layers = nlohmann::ordered_json::array();
    for (const auto &layer : c.layers()) {
        auto gates = nlohmann::ordered_json::array();
        for (const auto &g : layer) {
            nlohmann::ordered_json jg;
            jg["modes"] = {g.first_mode, g.second_mode()};
            jg["theta"] = g.params.theta;
            jg["varphi"] = g.params.varphi;
            jg["phi"] = g.params.phi;
            jg["loss_gamma"] = g.loss_gamma;
            jg["lossy_mode"] = g.lossy_mode;
            gates.push_back(std::move(jg));
        }
        layers.push_back(std::move(gates));
    }
    j["layers"] = std::move(layers);
    return j;
}

Circuit circuit_from_json(const nlohmann::json &j) {
    try {
        const int M = j.at("num_modes").get<int>();
        std::optional<std::uint64_t> seed;
        if (j.contains("header") && j["header"].contains("seed")) {
            seed = j["header"]["seed"].get<std::uint64_t>();
        }
        std::vector<Layer> layers;
        for (const auto &jl : j.at("layers")) {
            Layer layer;
            for (const auto &jg : jl) {
                const auto modes = jg.at("modes").get<std::vector<int>>();
                if (modes.size() != 2 || modes[1] != modes[0] + 1) {
                    throw std::invalid_argument("circuit file: gate modes must be an adjacent pair [i, i+1]");
                }
                Gate g;
                g.first_mode = modes[0];
                g.params.theta = jg.at("theta").get<double>();
                g.params.varphi = jg.at("varphi").get<double>();
                g.params.phi = jg.at("phi").get<double>();
                g.loss_gamma = jg.value("loss_gamma", 0.0);
                g.lossy_mode = jg.value("lossy_mode", 1);
                layer.push_back(g);
            }
            layers.push_back(std::move(layer));
        }
        return Circuit(M, std::move(layers), seed);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("circuit file: ") + e.what());
    }
}

std::string dump_circuit(const Circuit &c) { return to_json(c).dump(2) + "\n"; }

void write_circuit_file(const Circuit &c, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << dump_circuit(c);
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

Circuit read_circuit_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("'" + path.string() + "': " + e.what());
    }
    return circuit_from_json(j);
}

} // namespace hgbs::circuit
