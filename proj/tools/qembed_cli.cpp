// Copyright 2026 The qembed Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include <qembed/cli/commands.hpp>

namespace {

using command_fn = std::function<int(qembed::cli::run_config, const qembed::cli::options &,
                                     std::ostream &)>;

struct command {
    const char *name;
    const char *help;
    command_fn run;
    bool uses_checkpoint = false;
    bool uses_split = false;
};

} // namespace

int main(int argc, char **argv) {
    using namespace qembed;
    CLI::App app{"Greedy triplet-loss quantum embeddings with a variational classifier"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir, encoder_path, checkpoint, split = "test";
    std::uint64_t seed = 0;
    std::size_t limit = 0;

    const command commands[] = {
        {"build-encoder", "Run the greedy construction and report gate counts",
         cli::cmd_build_encoder},
        {"train", "Train the VQC over the configured repetitions", cli::cmd_train},
        {"evaluate", "Evaluate a checkpoint on a split", cli::cmd_evaluate, true, true},
        {"export-distances", "Write pairwise trace distances and encoded states",
         cli::cmd_export_distances, false, true},
        {"compare", "Greedy vs amplitude encoding with 1 and 2 layers", cli::cmd_compare},
    };

    std::vector<std::pair<CLI::App *, const command *>> subs;
    std::vector<CLI::Option *> seed_opts, limit_opts;
    for (const auto &cmd : commands) {
        auto *sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--config", config_path, "Run configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides config)");
        seed_opts.push_back(sub->add_option("--seed", seed, "Seed (overrides config)"));
        limit_opts.push_back(
            sub->add_option("--limit", limit, "Use only the first N samples of the split"));
        sub->add_option("--encoder", encoder_path, "Prebuilt greedy circuit JSON");
        if (cmd.uses_checkpoint) {
            sub->add_option("--checkpoint", checkpoint, "Checkpoint JSON")->required();
        }
        if (cmd.uses_split) {
            sub->add_option("--split", split, "Split to use")
                ->check(CLI::IsMember({"train", "val", "test"}));
        }
        subs.emplace_back(sub, &cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            auto [sub, cmd] = subs[i];
            if (!sub->parsed()) continue;
            cli::options opt;
            if (!out_dir.empty()) opt.out_dir = out_dir;
            if (seed_opts[i]->count() > 0) opt.seed = seed;
            if (limit_opts[i]->count() > 0) opt.limit = limit;
            if (!encoder_path.empty()) opt.encoder_path = encoder_path;
            if (!checkpoint.empty()) opt.checkpoint = checkpoint;
            opt.split = cli::split_from_string(split);
            return cmd->run(cli::load_run_config(config_path), opt, std::cout);
        }
    } catch (const error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
