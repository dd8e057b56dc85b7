// Copyright 2026 The loomxai Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// loomxai: demo data, standalone host and headless acceptance runner.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loomxai/error.hpp"
#include "loomxai/harness/acceptance.hpp"
#include "loomxai/harness/demo.hpp"
#include "loomxai/harness/serve.hpp"

namespace {

using namespace loomxai;

struct DataFlags {
    std::uint64_t seed = 7;
    std::size_t n = 200;
    std::vector<std::string> classes{"pos", "neg"};
    std::size_t vocab = 24;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
    cmd->add_option("--seed", flags.seed, "generator seed")->capture_default_str();
    cmd->add_option("--n", flags.n, "number of records")->capture_default_str();
    cmd->add_option("--classes", flags.classes, "class labels")->delimiter(',')->capture_default_str();
    cmd->add_option("--vocab", flags.vocab, "tokens per class")->capture_default_str();
}

harness::DemoData generate(const DataFlags& flags) {
    harness::DemoConfig config;
    config.n_records = flags.n;
    config.classes = flags.classes;
    config.seed = flags.seed;
    config.vocab_per_class = flags.vocab;
    return harness::demo_data(config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loomxai widget toolkit"};
    app.require_subcommand(1);

    DataFlags data_flags;
    std::string out_path;
    auto* data_cmd = app.add_subcommand("data", "write synthetic labeled sentences as jsonl");
    add_data_flags(data_cmd, data_flags);
    data_cmd->add_option("--out", out_path, "output file (default stdout)");

    DataFlags serve_data;
    std::string widget_kind = "inference_explorer";
    std::string data_path;
    std::uint16_t port = 8765;
    std::size_t page_size = wire::kDefaultPageSize;
    std::size_t payload_cap = 0;
    std::size_t sessions = 0;
    auto* serve_cmd = app.add_subcommand("serve", "host one widget for a socket view");
    add_data_flags(serve_cmd, serve_data);
    serve_cmd->add_option("--widget", widget_kind, "data_explorer | data_selector | inference_explorer")
        ->capture_default_str();
    serve_cmd->add_option("--data", data_path, "jsonl/csv/json dataset (default: demo data)");
    serve_cmd->add_option("--port", port, "TCP port, 0 for any free port")->capture_default_str();
    serve_cmd->add_option("--page-size", page_size, "rows per page")->capture_default_str();
    serve_cmd->add_option("--payload-cap", payload_cap, "max encoded message bytes (default: env or 10 MiB)");
    serve_cmd->add_option("--sessions", sessions, "exit after this many views (0: never)");

    std::string suite = "all";
    std::string report_path;
    std::uint64_t accept_seed = 1;
    auto* accept_cmd = app.add_subcommand("accept", "run acceptance criteria headlessly");
    accept_cmd->add_option("suite", suite, "dp1 dp2 convergence callbacks echo wire geometry projector e2e all")
        ->capture_default_str();
    accept_cmd->add_option("--report", report_path, "also write the report to this file");
    accept_cmd->add_option("--seed", accept_seed, "base seed for randomized criteria")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*data_cmd) {
            const std::string jsonl = data::to_jsonl(generate(data_flags).dataset);
            if (out_path.empty()) {
                std::cout << jsonl;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!(out << jsonl)) throw Error(ErrorCode::Io, "cannot write " + out_path);
            }
            return 0;
        }
        if (*serve_cmd) {
            widgets::WidgetOptions options;
            options.page_size = page_size;
            options.payload_cap = payload_cap ? payload_cap : harness::payload_cap_from_env();
            data::TextDataset ds = data_path.empty() ? generate(serve_data).dataset : data::load_file(data_path);
            auto widget = harness::make_widget(widget_kind, std::move(ds), options);
            harness::ServeOptions serve_options;
            serve_options.port = port;
            serve_options.max_sessions = sessions;
            serve_options.on_listen = [&](std::uint16_t bound) {
                std::cout << "serving " << widget->id() << " on " << serve_options.address << ":" << bound
                          << std::endl;
            };
            harness::serve(*widget, serve_options);
            return 0;
        }
        const auto results = harness::run_suite(suite, {accept_seed});
        bool all = harness::write_report(results, std::cout);
        if (!report_path.empty()) {
            std::ofstream out(report_path, std::ios::binary);
            harness::write_report(results, out);
            if (!out) throw Error(ErrorCode::Io, "cannot write " + report_path);
        }
        return all ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "loomxai: " << e.what() << '\n';
        return 2;
    }
}
