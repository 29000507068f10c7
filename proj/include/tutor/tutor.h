/*
 * C interface to the course tutor library.
 *
 * Every function returns a tutor_status. On failure, tutor_last_error()
 * returns a message for the calling thread (valid until the next call on
 * that thread). Strings returned through `char **` out-parameters are
 * heap-allocated and must be released with tutor_string_free().
 * Structured payloads (requests, responses, configs) are JSON text.
 */
#ifndef TUTOR_TUTOR_H
#define TUTOR_TUTOR_H

#include <stddef.h>

#if defined(_WIN32)
#define TUTOR_API __declspec(dllexport)
#else
#define TUTOR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tutor_status {
    TUTOR_OK = 0,
    TUTOR_E_INVALID_ARGUMENT = 1,
    TUTOR_E_IO = 2,
    TUTOR_E_EMPTY_DOCUMENT = 3,
    TUTOR_E_CORRUPT_INDEX = 4,
    TUTOR_E_VERSION_UNSUPPORTED = 5,
    TUTOR_E_DIMENSION_MISMATCH = 6,
    TUTOR_E_UNKNOWN_THREAD = 7,
    TUTOR_E_UNKNOWN_TASK = 8,
    TUTOR_E_MISSING_CONTEXT = 9,
    TUTOR_E_CONTEXT_TOO_LARGE = 10,
    TUTOR_E_INVALID_CONFIG = 11,
    TUTOR_E_PROVIDER_UNAVAILABLE = 12,
    TUTOR_E_PROVIDER_REJECTED = 13,
    TUTOR_E_SCRIPT_EXHAUSTED = 14,
    TUTOR_E_SINK_UNAVAILABLE = 15,
    TUTOR_E_UNSORTED_INPUT = 16,
    TUTOR_E_UNKNOWN_CATEGORY = 17,
    TUTOR_E_UNKNOWN_MERGED_ID = 18,
    TUTOR_E_INTERNAL = 19
} tutor_status;

typedef struct tutor_service tutor_service;
typedef struct tutor_server tutor_server;

TUTOR_API const char *tutor_status_name(tutor_status status);
TUTOR_API const char *tutor_last_error(void);
TUTOR_API void tutor_string_free(char *s);

/* Knowledge base ------------------------------------------------------- */

/* Chunks and embeds (offline embedder) every material file below
 * materials_dir and writes the index file. chunk_count may be NULL. */
TUTOR_API tutor_status tutor_ingest(const char *materials_dir, const char *out_index, size_t chunk_size,
                                    size_t overlap, size_t *chunk_count);

/* Service -------------------------------------------------------------- */

/* tasks_path may be NULL (no tasks). */
TUTOR_API tutor_status tutor_service_open(const char *config_path, const char *index_path, const char *tasks_path,
                                          const char *log_dir, tutor_service **out);
TUTOR_API void tutor_service_close(tutor_service *service);

TUTOR_API tutor_status tutor_service_create_session(tutor_service *service, char **thread_id);
/* request_json: {"text", "awareness"?, "task_id"?, "code"?} */
TUTOR_API tutor_status tutor_service_post_message(tutor_service *service, const char *thread_id,
                                                  const char *request_json, char **response_json);
TUTOR_API tutor_status tutor_service_get_config(tutor_service *service, char **config_json);
TUTOR_API tutor_status tutor_service_put_config(tutor_service *service, const char *patch_json,
                                                char **config_json);
TUTOR_API tutor_status tutor_service_list_tasks(tutor_service *service, char **tasks_json);
TUTOR_API tutor_status tutor_service_reload_tasks(tutor_service *service);
/* Blocks until queued telemetry is written. */
TUTOR_API tutor_status tutor_service_flush(tutor_service *service);

/* HTTP server ---------------------------------------------------------- */

/* port 0 picks a free port; a NULL host or negative port falls back to the
 * config file's listen section. Serves on a background thread. */
TUTOR_API tutor_status tutor_server_start(tutor_service *service, const char *host, int port, tutor_server **out);
TUTOR_API int tutor_server_port(const tutor_server *server);
TUTOR_API void tutor_server_stop(tutor_server *server);

/* Analytics ------------------------------------------------------------ */

/* merged_count may be NULL. */
TUTOR_API tutor_status tutor_analyze_merge(const char *log_dir, double window_seconds, const char *out_path,
                                           size_t *merged_count);
/* tags_path NULL -> "<merged_path minus .json>.tags.json" */
TUTOR_API tutor_status tutor_analyze_tag(const char *merged_path, const char *tags_path, const char *merged_id,
                                         const char *category);
/* format: "table" | "csv" | "json"; awareness_filter may be NULL. */
TUTOR_API tutor_status tutor_analyze_stats(const char *merged_path, const char *tags_path, const char *format,
                                           const char *awareness_filter, char **output);

#ifdef __cplusplus
}
#endif

#endif /* TUTOR_TUTOR_H */
