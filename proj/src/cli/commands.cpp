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

#include "cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgbs/analysis.hpp"
#include "hgbs/circuit_io.hpp"
#include "hgbs/fockdense.hpp"
#include "hgbs/gauss.hpp"
#include "hgbs/tnet/batch.hpp"

namespace hgbs::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

template <class T> T parse_number(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        T value;
        if constexpr (std::is_same_v<T, int>) value = std::stoi(s, &used);
        else value = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception &) {
        throw UsageError("cannot parse " + what + " '" + s + "'");
    }
}

FockOutcome parse_outcome(const std::string &text) {
    std::vector<int> counts;
    for (const auto &p : split(text, ',')) counts.push_back(parse_number<int>(p, "photon count"));
    try {
        return FockOutcome(counts);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

gauss::SqueezeSpec parse_squeezing(const std::string &text, int num_modes) {
    std::vector<double> r;
    for (const auto &p : split(text, ',')) r.push_back(parse_number<double>(p, "squeezing"));
    if (r.size() == 1) return gauss::SqueezeSpec::uniform(num_modes, r.front());
    if (static_cast<int>(r.size()) != num_modes) {
        throw UsageError("squeezing list has " + std::to_string(r.size()) + " entries, circuit has " +
                         std::to_string(num_modes) + " modes");
    }
    return gauss::SqueezeSpec{r};
}

// Writes JSON lines or text either to the given stream or to a file.
class Sink {
  public:
    Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }
    std::ostream &os() { return *stream_; }
    void line(const ordered_json &j) { *stream_ << j.dump() << "\n"; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_;
};

// Gaussian route handles per-gate loss only when every gate carries the same
// gamma; names the first gate that breaks it.
void require_gaussian_compatible(const circuit::Circuit &c) {
    if (c.is_uniform_loss()) return;
    const double ref = c.layers().front().front().loss_gamma;
    std::size_t index = 0;
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer) {
            if (g.loss_gamma != ref) {
                throw UnsupportedConfiguration("gaussian backend needs a lossless or uniform-loss circuit: gate " +
                                               std::to_string(index) + " has gamma " + std::to_string(g.loss_gamma) +
                                               ", gate 0 has " + std::to_string(ref));
            }
            ++index;
        }
    }
}

int auto_cutoff(const circuit::Circuit &c, const gauss::SqueezeSpec &s, const FockOutcome &n, double epsilon) {
    if (c.num_modes() % 2 == 0 && s.is_uniform()) {
        analysis::CutoffPolicy p;
        p.epsilon = epsilon;
        p.gamma = c.max_loss_gamma();
        p.num_sources = static_cast<int>(c.lossy_gate_count());
        p.num_modes = c.num_modes();
        p.r = s.r.front();
        p.n_tilde = n.total();
        return std::max(1, analysis::choose_cutoff(p).local_cutoff);
    }
    // Outcomes with at most n_c photons are exact at cutoff n_c without loss.
    if (c.is_lossless()) return std::max(1, n.total());
    throw UnsupportedConfiguration("automatic cutoff needs an even mode count and uniform squeezing; pass --cutoff");
}

struct ProbOptions {
    std::string circuit_path;
    std::vector<std::string> outcomes;
    std::optional<int> total;
    std::string squeezing = "0.4";
    std::string picture = "heisenberg";
    std::string backend = "tn";
    std::optional<int> cutoff;
    std::optional<int> max_bond;
    double svd_threshold = 1e-12;
    double epsilon = 1e-6;
    bool no_timing = false;
    std::string output = "-";
};

struct Record {
    FockOutcome outcome;
    std::optional<int> n_c;
    bool ok = false;
    double probability = 0.0;
    std::optional<tnet::EvolutionStats> stats;
    std::string error;
    double wall_time = 0.0;
};

ordered_json to_json(const Record &r, const ProbOptions &o) {
    ordered_json j;
    j["outcome"] = r.outcome.counts();
    if (!r.ok) {
        j["backend"] = o.backend;
        j["error"] = r.error;
        return j;
    }
    j["probability"] = r.probability;
    j["picture"] = o.backend == "tn" ? ordered_json(o.picture) : ordered_json(nullptr);
    j["backend"] = o.backend;
    j["n_c"] = r.n_c ? ordered_json(*r.n_c) : ordered_json(nullptr);
    if (r.stats) {
        j["max_bond"] = r.stats->max_bond_seen;
        j["truncation_weight"] = r.stats->truncation_weight;
        j["flop_estimate"] = r.stats->flop_estimate;
        if (r.stats->raw_probability) j["raw_probability"] = *r.stats->raw_probability;
        if (r.stats->recommended_cutoff) j["recommended_cutoff"] = *r.stats->recommended_cutoff;
    } else {
        j["max_bond"] = nullptr;
        j["truncation_weight"] = nullptr;
        j["flop_estimate"] = nullptr;
    }
    j["wall_time"] = o.no_timing ? ordered_json(nullptr) : ordered_json(r.wall_time);
    return j;
}

void run_tn(const circuit::Circuit &c, const gauss::SqueezeSpec &s, const ProbOptions &o,
            std::vector<Record> &records) {
    tnet::BatchConfig config;
    config.picture = o.picture == "heisenberg" ? tnet::Picture::heisenberg : tnet::Picture::schrodinger;
    config.policy.max_bond = o.max_bond;
    config.policy.svd_threshold = o.svd_threshold;
    config.policy.validate();

    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].n_c) groups[*records[i].n_c].push_back(i);
    for (const auto &[nc, members] : groups) {
        std::vector<FockOutcome> batch;
        for (auto i : members) batch.push_back(records[i].outcome);
        config.local_cutoff = nc;
        const auto items = tnet::evaluate_batch(c, batch, s, config);
        for (std::size_t k = 0; k < members.size(); ++k) {
            auto &rec = records[members[k]];
            rec.ok = items[k].ok;
            rec.error = items[k].error;
            rec.probability = items[k].result.probability;
            rec.stats = items[k].result.stats;
            rec.wall_time = items[k].wall_time;
        }
    }
}

void run_dense(const circuit::Circuit &c, const gauss::SqueezeSpec &s, std::vector<Record> &records) {
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].n_c) groups[*records[i].n_c].push_back(i);
    for (const auto &[nc, members] : groups) {
        const auto t0 = Clock::now();
        std::optional<fockdense::DenseState> psi;
        std::optional<fockdense::DenseDensity> rho;
        std::string error;
        try {
            const auto input = fockdense::dense_squeezed_vacuum(s, nc);
            if (c.is_lossless()) psi = fockdense::dense_evolve_state(input, c);
            else rho = fockdense::dense_evolve_density(fockdense::to_density(input), c);
        } catch (const std::exception &e) {
            error = e.what();
        }
        const double setup = std::chrono::duration<double>(Clock::now() - t0).count();
        for (auto i : members) {
            auto &rec = records[i];
            const auto t1 = Clock::now();
            try {
                if (!psi && !rho) throw std::runtime_error(error);
                rec.probability = psi ? fockdense::dense_probability(*psi, rec.outcome)
                                      : fockdense::dense_probability(*rho, rec.outcome);
                rec.ok = true;
            } catch (const std::exception &e) {
                rec.error = e.what();
            }
            rec.wall_time = setup + std::chrono::duration<double>(Clock::now() - t1).count();
        }
    }
}

void run_gaussian(const circuit::Circuit &c, const gauss::SqueezeSpec &s, std::vector<Record> &records) {
    const auto t0 = Clock::now();
    const auto g = gauss::propagate_circuit(gauss::squeezed_vacuum_cov(s), c);
    const double setup = std::chrono::duration<double>(Clock::now() - t0).count();
    for (auto &rec : records) {
        const auto t1 = Clock::now();
        try {
            rec.probability = gauss::gbs_probability(g, rec.outcome);
            rec.ok = true;
        } catch (const std::exception &e) {
            rec.error = e.what();
        }
        rec.n_c.reset();
        rec.wall_time = setup + std::chrono::duration<double>(Clock::now() - t1).count();
    }
}

int cmd_prob(const ProbOptions &o, std::ostream &out) {
    const auto c = circuit::read_circuit_file(o.circuit_path);
    const auto s = parse_squeezing(o.squeezing, c.num_modes());

    std::vector<FockOutcome> outcomes;
    for (const auto &text : o.outcomes) outcomes.push_back(parse_outcome(text));
    if (o.total) {
        for (auto &n : outcomes_with_total(c.num_modes(), *o.total)) outcomes.push_back(std::move(n));
    }
    if (outcomes.empty()) throw UsageError("no outcomes given; use --outcome or --total");
    for (const auto &n : outcomes) {
        if (static_cast<int>(n.num_modes()) != c.num_modes()) {
            throw UsageError("outcome " + n.to_string() + " has " + std::to_string(n.num_modes()) +
                             " modes, circuit has " + std::to_string(c.num_modes()));
        }
    }
    if (o.backend == "gaussian") require_gaussian_compatible(c);
    if (o.backend != "gaussian" && o.picture == "schrodinger" && !c.is_lossless()) {
        throw UnsupportedConfiguration("schrodinger picture needs a lossless circuit: gate " +
                                       std::to_string(*c.first_lossy_gate()) + " is lossy");
    }

    std::vector<Record> records(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        records[i].outcome = outcomes[i];
        if (o.backend == "gaussian") continue;
        try {
            records[i].n_c = o.cutoff ? *o.cutoff : auto_cutoff(c, s, outcomes[i], o.epsilon);
        } catch (const std::exception &e) {
            records[i].error = e.what();
        }
    }

    if (o.backend == "tn") run_tn(c, s, o, records);
    else if (o.backend == "dense") run_dense(c, s, records);
    else run_gaussian(c, s, records);

    Sink sink(o.output, out);
    bool all_ok = true;
    for (const auto &r : records) {
        sink.line(to_json(r, o));
        all_ok = all_ok && r.ok;
    }
    return all_ok ? kExitOk : kExitFailure;
}

struct GenOptions {
    int modes = 4;
    int depth = 4;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    std::string output = "-";
};

int cmd_gen(const GenOptions &o, std::ostream &out) {
    auto c = circuit::build_brickwork(o.modes, o.depth, o.seed);
    if (o.gamma > 0.0) c = circuit::with_uniform_loss(c, o.gamma);
    if (o.output == "-") out << circuit::dump_circuit(c);
    else circuit::write_circuit_file(c, o.output);
    return kExitOk;
}

struct CutoffOptions {
    std::string circuit_path;
    int modes = 4;
    double gamma = 0.0;
    int sources = 0;
    double r = 0.4;
    int n_tilde = 0;
    double epsilon = 1e-6;
    std::string output = "-";
};

int cmd_cutoff(CutoffOptions o, std::ostream &out) {
    if (!o.circuit_path.empty()) {
        const auto c = circuit::read_circuit_file(o.circuit_path);
        if (!c.is_uniform_loss()) throw UnsupportedConfiguration("cutoff: circuit loss is not uniform");
        o.modes = c.num_modes();
        o.gamma = c.max_loss_gamma();
        o.sources = static_cast<int>(c.lossy_gate_count());
    }
    if (o.modes % 2 != 0) {
        throw UnsupportedConfiguration("cutoff: unsupported for odd mode count " + std::to_string(o.modes) +
                                       " (the photon-number distribution needs paired sources)");
    }
    analysis::CutoffPolicy p;
    p.epsilon = o.epsilon;
    p.gamma = o.gamma;
    p.num_sources = o.sources;
    p.num_modes = o.modes;
    p.r = o.r;
    p.n_tilde = o.n_tilde;
    const auto rec = analysis::choose_cutoff(p);

    ordered_json j;
    j["n_c"] = rec.local_cutoff;
    j["delta"] = rec.delta;
    j["num_sources"] = rec.num_sources;
    j["n_tilde"] = o.n_tilde;
    j["epsilon"] = o.epsilon;
    j["gamma"] = o.gamma;
    j["num_modes"] = o.modes;
    j["r"] = o.r;
    Sink sink(o.output, out);
    sink.line(j);
    return kExitOk;
}

struct ScalingOptions {
    std::vector<int> modes;
    std::vector<double> squeezings;
    std::string output = "-";
};

int cmd_scaling(ScalingOptions o, std::ostream &out) {
    if (o.modes.empty())
        for (int m = 6; m <= 30; m += 2) o.modes.push_back(m);
    if (o.squeezings.empty()) o.squeezings = {0.3, 0.4, 0.5, 0.6, 0.7};
    Sink sink(o.output, out);
    sink.os() << analysis::scaling_csv(analysis::scaling_grid(o.modes, o.squeezings));
    return kExitOk;
}

struct ValidateOptions {
    std::string instance = "lossless-m4";
    std::uint64_t seed = 7;
    double tolerance = 1e-8;
    std::string output = "-";
};

int cmd_validate(const ValidateOptions &o, std::ostream &out) {
    Sink sink(o.output, out);
    const tnet::TruncationPolicy exact;
    double worst = 0.0;
    std::size_t count = 0;

    auto emit = [&](const FockOutcome &n, const ordered_json &values) {
        double lo = 1.0, hi = 0.0;
        for (const auto &[name, v] : values.items()) {
            lo = std::min(lo, v.get<double>());
            hi = std::max(hi, v.get<double>());
        }
        const double diff = hi - lo;
        worst = std::max(worst, diff);
        ++count;
        ordered_json j;
        j["instance"] = o.instance;
        j["outcome"] = n.counts();
        j["values"] = values;
        j["max_diff"] = diff;
        sink.line(j);
    };

    if (o.instance == "lossless-m4") {
        const int nc = 8;
        const auto c = circuit::build_brickwork(4, 4, o.seed);
        const auto s = gauss::SqueezeSpec::uniform(4, 0.4);
        const auto psi = fockdense::dense_evolve_state(fockdense::dense_squeezed_vacuum(s, nc), c);
        const auto g = gauss::propagate_circuit(gauss::squeezed_vacuum_cov(s), c);
        tnet::EvolutionStats stats;
        const auto forward = tnet::schrodinger_evolve(c, s, nc, exact, stats);
        for (int total : {0, 2, 4}) {
            for (const auto &n : outcomes_with_total(4, total)) {
                ordered_json v;
                v["tn_heisenberg"] = tnet::heisenberg_probability_lossless(c, n, s, nc, exact).probability;
                v["tn_schrodinger"] = std::norm(tnet::amplitude(forward, n));
                v["dense"] = fockdense::dense_probability(psi, n);
                v["gaussian"] = gauss::gbs_probability(g, n);
                emit(n, v);
            }
        }
    } else if (o.instance == "lossy-m3") {
        const int nc = 4;
        const auto c = circuit::with_uniform_loss(circuit::build_brickwork(3, 3, o.seed), 0.05);
        const auto s = gauss::SqueezeSpec::uniform(3, 0.4);
        const auto rho =
            fockdense::dense_evolve_density(fockdense::to_density(fockdense::dense_squeezed_vacuum(s, nc)), c);
        for (const auto &n : outcomes_up_to_total(3, 3)) {
            ordered_json v;
            v["tn_heisenberg"] = tnet::heisenberg_probability_lossy(c, n, s, nc, exact).probability;
            v["dense"] = fockdense::dense_probability(rho, n);
            emit(n, v);
        }
    } else {
        throw UsageError("unknown instance '" + o.instance + "' (known: lossless-m4, lossy-m3)");
    }

    const bool passed = worst <= o.tolerance;
    ordered_json summary;
    summary["instance"] = o.instance;
    summary["seed"] = o.seed;
    summary["outcomes"] = count;
    summary["max_diff"] = worst;
    summary["tolerance"] = o.tolerance;
    summary["passed"] = passed;
    sink.line(summary);
    return passed ? kExitOk : kExitFailure;
}

} // namespace

void apply_thread_override() {
    if (const char *env = std::getenv("HGBS_NUM_THREADS")) {
        char *end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Gaussian boson sampling probabilities with tensor trains", "hgbs"};
    app.require_subcommand(1);

    GenOptions gen;
    auto *gen_cmd = app.add_subcommand("gen", "Write a seeded brickwork circuit");
    gen_cmd->add_option("--modes", gen.modes, "Number of modes M")->required();
    gen_cmd->add_option("--depth", gen.depth, "Number of layers")->required();
    gen_cmd->add_option("--seed", gen.seed, "Angle seed")->required();
    gen_cmd->add_option("--gamma", gen.gamma, "Loss per gate");
    gen_cmd->add_option("--output,-o", gen.output, "Circuit file, - for stdout");

    ProbOptions prob;
    auto *prob_cmd = app.add_subcommand("prob", "Outcome probabilities");
    prob_cmd->add_option("--circuit,-c", prob.circuit_path, "Circuit file")->required();
    prob_cmd->add_option("--outcome,-n", prob.outcomes, "Photon counts, comma separated; repeatable");
    prob_cmd->add_option("--total", prob.total, "Add every outcome with this photon total");
    prob_cmd->add_option("--squeezing,-r", prob.squeezing, "r for all modes, or one per mode");
    prob_cmd->add_option("--picture", prob.picture)->check(CLI::IsMember({"heisenberg", "schrodinger"}));
    prob_cmd->add_option("--backend", prob.backend)->check(CLI::IsMember({"tn", "dense", "gaussian"}));
    prob_cmd->add_option("--cutoff", prob.cutoff, "Local cutoff n_c (automatic when absent)")
        ->check(CLI::PositiveNumber);
    prob_cmd->add_option("--max-bond", prob.max_bond)->check(CLI::PositiveNumber);
    prob_cmd->add_option("--svd-threshold", prob.svd_threshold)->check(CLI::NonNegativeNumber);
    prob_cmd->add_option("--epsilon", prob.epsilon, "Target for the automatic cutoff");
    prob_cmd->add_flag("--no-timing", prob.no_timing, "Write null wall times");
    prob_cmd->add_option("--output,-o", prob.output, "JSON lines file, - for stdout");

    CutoffOptions cut;
    auto *cut_cmd = app.add_subcommand("cutoff", "Recommend a local cutoff");
    cut_cmd->add_option("--circuit,-c", cut.circuit_path, "Take M, gamma and Q from a circuit");
    cut_cmd->add_option("--modes", cut.modes);
    cut_cmd->add_option("--gamma", cut.gamma);
    cut_cmd->add_option("--sources", cut.sources, "Number of lossy gates Q");
    cut_cmd->add_option("--squeezing,-r", cut.r);
    cut_cmd->add_option("--n-tilde", cut.n_tilde, "Photon total of the target outcome");
    cut_cmd->add_option("--epsilon", cut.epsilon);
    cut_cmd->add_option("--output,-o", cut.output);

    ScalingOptions scaling;
    auto *scaling_cmd = app.add_subcommand("scaling", "Bond-dimension scaling grid as CSV");
    scaling_cmd->add_option("--modes", scaling.modes)->delimiter(',');
    scaling_cmd->add_option("--squeezing,-r", scaling.squeezings)->delimiter(',');
    scaling_cmd->add_option("--output,-o", scaling.output);

    ValidateOptions val;
    auto *val_cmd = app.add_subcommand("validate", "Cross-check every route on a named instance");
    val_cmd->add_option("instance", val.instance, "lossless-m4 or lossy-m3");
    val_cmd->add_option("--seed", val.seed);
    val_cmd->add_option("--tolerance", val.tolerance);
    val_cmd->add_option("--output,-o", val.output);

    std::vector<std::string> storage = args;
    std::vector<char *> argv;
    for (auto &a : storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    apply_thread_override();
    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (prob_cmd->parsed()) return cmd_prob(prob, out);
        if (cut_cmd->parsed()) return cmd_cutoff(cut, out);
        if (scaling_cmd->parsed()) return cmd_scaling(scaling, out);
        if (val_cmd->parsed()) return cmd_validate(val, out);
    } catch (const UsageError &e) {
        err << "hgbs: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedConfiguration &e) {
        err << "hgbs: unsupported: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "hgbs: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "hgbs: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace hgbs::cli
