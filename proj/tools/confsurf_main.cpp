// Command-line front end.
//
//   confsurf run <config.json> [output_dir]
//   confsurf report <manifest.json>
//   confsurf list-kinds
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.
// CONFSURF_THREADS controls kernel parallelism (default 1, reproducible).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include "confsurf/scenario.hpp"

namespace fs = std::filesystem;
using confsurf::io::json;

namespace {

int usage() {
    std::fprintf(stderr,
                 "usage:\n"
                 "  confsurf run <config.json> [output_dir]\n"
                 "  confsurf report <manifest.json>\n"
                 "  confsurf list-kinds\n");
    return 2;
}

int cmd_run(int argc, char** argv) {
    if (argc < 1) return usage();
    const fs::path cfg_path = argv[0];
    json config;
    try {
        config = json::parse(confsurf::io::read_text(cfg_path));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    fs::path out_dir = argc >= 2 ? fs::path(argv[1])
                                 : cfg_path.parent_path() / (cfg_path.stem().string() + "_out");
    try {
        confsurf::scenario::run_batch(config, out_dir);
    } catch (const confsurf::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const confsurf::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        std::fprintf(stderr, "manifest (with partial outputs flagged): %s\n",
                     (out_dir / "manifest.json").string().c_str());
        return 3;
    }
    std::printf("manifest: %s\n", (out_dir / "manifest.json").string().c_str());
    return 0;
}

int cmd_report(int argc, char** argv) {
    if (argc < 1) return usage();
    try {
        std::cout << confsurf::scenario::report_text(argv[0]);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "report error: %s\n", e.what());
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage();
    const std::string cmd = argv[1];
    if (cmd == "run") return cmd_run(argc - 2, argv + 2);
    if (cmd == "report") return cmd_report(argc - 2, argv + 2);
    if (cmd == "list-kinds") {
        for (const auto& k : confsurf::scenario::kinds()) std::printf("%s\n", k.c_str());
        return 0;
    }
    return usage();
}
