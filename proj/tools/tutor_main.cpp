// tutor: command-line front end over the C API in libtutor.

#include <csignal>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "tutor/tutor.h"

namespace {

int fail(const char* what, tutor_status st) {
    std::fprintf(stderr, "tutor %s: %s: %s\n", what, tutor_status_name(st), tutor_last_error());
    return static_cast<int>(st) + 1;
}

int run_serve(const std::string& config, const std::string& index, const std::string& tasks, const std::string& log,
              const std::string& host, int port) {
    // Block the signals before any thread starts so only sigwait sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    sigaddset(&signals, SIGHUP);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    tutor_service* service = nullptr;
    if (auto st = tutor_service_open(config.c_str(), index.c_str(), tasks.empty() ? nullptr : tasks.c_str(),
                                     log.c_str(), &service);
        st != TUTOR_OK)
        return fail("serve", st);

    tutor_server* server = nullptr;
    if (auto st = tutor_server_start(service, host.empty() ? nullptr : host.c_str(), port, &server); st != TUTOR_OK) {
        tutor_service_close(service);
        return fail("serve", st);
    }
    std::fprintf(stderr, "tutor: listening on port %d (SIGHUP reloads tasks)\n", tutor_server_port(server));

    for (;;) {
        int sig = 0;
        sigwait(&signals, &sig);
        if (sig != SIGHUP) break;
        if (auto st = tutor_service_reload_tasks(service); st != TUTOR_OK)
            std::fprintf(stderr, "tutor: task reload failed: %s\n", tutor_last_error());
        else
            std::fprintf(stderr, "tutor: tasks reloaded\n");
    }
    tutor_server_stop(server);
    tutor_service_close(service);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Course-aware programming tutor"};
    app.require_subcommand(1);

    auto* ingest = app.add_subcommand("ingest", "Chunk and embed course materials into an index file");
    std::string materials, index_out;
    std::size_t chunk_size = 1200, overlap = 200;
    ingest->add_option("--materials", materials, "Directory of plain-text course materials")->required();
    ingest->add_option("--out", index_out, "Index file to write")->required();
    ingest->add_option("--chunk-size", chunk_size, "Chunk size in characters")->capture_default_str();
    ingest->add_option("--overlap", overlap, "Overlap in characters")->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    std::string config, index_in, tasks, log_dir, host;
    int port = -1;
    serve->add_option("--config", config, "Service config (JSON)")->required();
    serve->add_option("--index", index_in, "Index file produced by ingest")->required();
    serve->add_option("--tasks", tasks, "Task file (JSON array)");
    serve->add_option("--log", log_dir, "Interaction log directory")->required();
    serve->add_option("--host", host, "Override listen host");
    serve->add_option("--port", port, "Override listen port (0 = any free port)");

    auto* analyze = app.add_subcommand("analyze", "Offline interaction-log analysis");
    analyze->require_subcommand(1);
    auto* merge = analyze->add_subcommand("merge", "Merge split prompts into interactions");
    std::string merge_log, merged_out;
    double window = 60;
    merge->add_option("--log", merge_log, "Interaction log directory")->required();
    merge->add_option("--window", window, "Merge window in seconds")->capture_default_str();
    merge->add_option("--out", merged_out, "Merged interactions file")->required();

    auto* tag = analyze->add_subcommand("tag", "Assign a question category to a merged interaction");
    std::string tag_merged, tag_tags, tag_id, tag_category;
    tag->add_option("--merged", tag_merged, "Merged interactions file")->required();
    tag->add_option("--tags", tag_tags, "Tag file (default: <merged>.tags.json)");
    tag->add_option("--id", tag_id, "merged_id to tag")->required();
    tag->add_option("--category", tag_category, "Category name, e.g. ExplainConcept")->required();

    auto* stats = analyze->add_subcommand("stats", "Category distribution of tagged interactions");
    std::string stats_merged, stats_tags, format = "table", awareness;
    stats->add_option("--merged", stats_merged, "Merged interactions file")->required();
    stats->add_option("--tags", stats_tags, "Tag file (default: <merged>.tags.json)");
    stats->add_option("--format", format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    stats->add_option("--awareness", awareness, "Only interactions sent with this awareness level")
        ->check(CLI::IsMember({"none", "task", "code", "task_and_code"}));

    CLI11_PARSE(app, argc, argv);

    if (*ingest) {
        std::size_t chunks = 0;
        if (auto st = tutor_ingest(materials.c_str(), index_out.c_str(), chunk_size, overlap, &chunks); st != TUTOR_OK)
            return fail("ingest", st);
        std::printf("wrote %zu chunks to %s\n", chunks, index_out.c_str());
        return 0;
    }
    if (*serve) return run_serve(config, index_in, tasks, log_dir, host, port);

    if (*merge) {
        std::size_t n = 0;
        if (auto st = tutor_analyze_merge(merge_log.c_str(), window, merged_out.c_str(), &n); st != TUTOR_OK)
            return fail("analyze merge", st);
        std::printf("%zu merged interactions written to %s\n", n, merged_out.c_str());
        return 0;
    }
    if (*tag) {
        if (auto st = tutor_analyze_tag(tag_merged.c_str(), tag_tags.empty() ? nullptr : tag_tags.c_str(),
                                        tag_id.c_str(), tag_category.c_str());
            st != TUTOR_OK)
            return fail("analyze tag", st);
        return 0;
    }
    if (*stats) {
        char* out = nullptr;
        if (auto st = tutor_analyze_stats(stats_merged.c_str(), stats_tags.empty() ? nullptr : stats_tags.c_str(),
                                          format.c_str(), awareness.empty() ? nullptr : awareness.c_str(), &out);
            st != TUTOR_OK)
            return fail("analyze stats", st);
        std::fputs(out, stdout);
        tutor_string_free(out);
        return 0;
    }
    return 0;
}
