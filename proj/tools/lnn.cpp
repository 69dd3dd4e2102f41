// Copyright 2026 The lnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: parse, rewrite, infer, and learn over knowledge
// bases in the .lnn text format.
//
// Exit codes: 0 success, 1 usage/parse/config error, 2 inference found a
// contradiction, 3 broken internal invariant.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lnn/lnn.hpp"

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw lnn::Error("cannot read '" + path + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

lnn::KnowledgeBase load_kb(const std::string &path) {
    std::vector<std::string> warnings;
    lnn::KnowledgeBase kb = lnn::parse_kb(read_file(path), &warnings);
    for (const auto &w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    return kb;
}

std::string join_csv(const std::vector<std::string> &parts) {
    if (parts.empty()) {
        return "-";
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += parts[i];
    }
    return out;
}

void dump_graph(const lnn::NeuronGraph &g) {
    for (const auto &n : g.nodes) {
        std::vector<std::string> children;
        for (lnn::NodeId c : n.children) {
            children.push_back(std::to_string(c));
        }
        std::vector<std::string> weights;
        for (double w : n.weights) {
            weights.push_back(lnn::format_number(w));
        }
        std::string bias = lnn::is_weighted(n.kind) ? lnn::format_number(n.bias) : "-";
        std::printf("%zu %s %s %s %s %.4f %.4f\n", n.id, lnn::to_string(n.kind),
                    join_csv(children).c_str(), join_csv(weights).c_str(), bias.c_str(), n.bounds.lower,
                    n.bounds.upper);
    }
}

struct InferArgs {
    std::string kb_path;
    lnn::InferenceConfig config;
    bool dump = false;
};

int run_infer(const InferArgs &args) {
    lnn::KnowledgeBase kb = load_kb(args.kb_path);
    lnn::AugmentedKb aug = lnn::augment(kb);
    lnn::NeuronGraph graph = lnn::compile(aug.kb);
    lnn::InferenceReport report = lnn::infer(graph, args.config);
    for (const auto &r : report.roots) {
        if (r.is_query) {
            std::printf("%s %s %.4f %.4f\n", r.name.c_str(), lnn::to_string(r.state), r.bounds.lower,
                        r.bounds.upper);
        }
    }
    if (args.dump) {
        dump_graph(graph);
    }
    if (!report.converged) {
        std::cerr << "warning: no fixpoint within " << args.config.max_passes << " passes\n";
    }
    return report.has_contradiction() ? 2 : 0;
}

struct LearnArgs {
    std::string kb_path;
    lnn::LearnConfig config;
    unsigned seed = 0;  // accepted for interface stability; training is deterministic
    bool dump = false;
};

int run_learn(const LearnArgs &args) {
    lnn::KnowledgeBase kb = load_kb(args.kb_path);
    lnn::AugmentedKb aug = lnn::augment(kb);
    lnn::NeuronGraph graph = lnn::compile(aug.kb);
    lnn::TrainReport report = lnn::train(graph, args.config);
    for (std::size_t i = 0; i < report.losses.size(); ++i) {
        std::printf("%zu %.6g\n", i + 1, report.losses[i]);
    }
    if (report.divergence_warning) {
        std::cerr << "warning: loss rose for five consecutive epochs; try a smaller --lr\n";
    }
    if (args.dump) {
        dump_graph(graph);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Logical neural network reasoning over .lnn knowledge bases"};
    app.require_subcommand(1);

    std::string parse_path;
    CLI::App *parse_cmd = app.add_subcommand("parse", "Parse a knowledge base and print it normalized");
    parse_cmd->add_option("--kb", parse_path, "knowledge base file")->required();

    std::string rewrite_path;
    CLI::App *rewrite_cmd = app.add_subcommand(
        "rewrite", "Print the knowledge base with theory axioms added and functions eliminated");
    rewrite_cmd->add_option("--kb", rewrite_path, "knowledge base file")->required();

    InferArgs infer_args;
    CLI::App *infer_cmd = app.add_subcommand("infer", "Run inference and print each query's state");
    infer_cmd->add_option("--kb", infer_args.kb_path, "knowledge base file")->required();
    infer_cmd->add_option("--alpha", infer_args.config.alpha, "threshold of truth, in (1/2, 1]")
        ->envname("LNN_ALPHA");
    infer_cmd->add_option("--max-passes", infer_args.config.max_passes, "pass limit");
    infer_cmd->add_option("--tol", infer_args.config.tolerance, "fixpoint tolerance");
    infer_cmd->add_flag("--dump-graph", infer_args.dump, "print one line per node after the queries");

    LearnArgs learn_args;
    CLI::App *learn_cmd =
        app.add_subcommand("learn", "Descend on the contradiction loss and print it per epoch");
    learn_cmd->add_option("--kb", learn_args.kb_path, "knowledge base file")->required();
    learn_cmd->add_option("--epochs", learn_args.config.epochs, "number of epochs");
    learn_cmd->add_option("--lr", learn_args.config.learning_rate, "learning rate");
    learn_cmd->add_option("--seed", learn_args.seed, "accepted for compatibility; runs are deterministic");
    learn_cmd->add_flag("--dump-graph", learn_args.dump, "print one line per node after the losses");

    try {
        app.parse(argc, argv);
        if (parse_cmd->parsed()) {
            std::fputs(lnn::serialize_kb(load_kb(parse_path)).c_str(), stdout);
            return 0;
        }
        if (rewrite_cmd->parsed()) {
            std::fputs(lnn::serialize_kb(lnn::augment(load_kb(rewrite_path)).kb).c_str(), stdout);
            return 0;
        }
        if (infer_cmd->parsed()) {
            infer_args.config.validate();
            return run_infer(infer_args);
        }
        learn_args.config.validate();
        return run_learn(learn_args);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const lnn::InternalError &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const lnn::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
