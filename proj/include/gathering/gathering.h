/* C interface to the gathering simulator. All objects are opaque handles
 * owned by the caller and released with the matching *_free function.
 * Functions return GATHERING_OK or an error code; the message for the most
 * recent failure on the calling thread is available from gathering_last_error.
 */
#ifndef GATHERING_H
#define GATHERING_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GATHERING_BUILDING_LIBRARY)
#    define GATHERING_API __declspec(dllexport)
#  else
#    define GATHERING_API __declspec(dllimport)
#  endif
#else
#  define GATHERING_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gathering_status {
    GATHERING_OK = 0,
    GATHERING_ERR_ARGUMENT = 1,   /* null pointer, bad option, bad assumption set */
    GATHERING_ERR_CONFIG = 2,     /* malformed or invalid configuration */
    GATHERING_ERR_IO = 3,         /* file could not be read or written */
    GATHERING_ERR_ENGINE = 4,     /* a program misbehaved during simulation */
    GATHERING_ERR_BUFFER = 5,     /* output buffer too small */
    GATHERING_ERR_INTERNAL = 6
} gathering_status;

typedef enum gathering_class {
    GATHERING_UNGATHERABLE = 0,
    GATHERING_BAD = 1,
    GATHERING_GOOD = 2
} gathering_class;

typedef enum gathering_algorithm {
    GATHERING_DEDICATED = 0,
    GATHERING_GATHER_N = 1,
    GATHERING_GATHER_A = 2
} gathering_algorithm;

typedef enum gathering_verdict {
    GATHERING_GATHERED = 0,
    GATHERING_SPLIT = 1,
    GATHERING_TIMEOUT = 2
} gathering_verdict;

typedef struct gathering_config gathering_config;
typedef struct gathering_trace gathering_trace;
typedef struct gathering_sweep gathering_sweep;

typedef struct gathering_sim_options {
    gathering_algorithm algorithm;
    const char* assumption_set; /* "2,3,7"; required for GATHERING_GATHER_A */
    double horizon;             /* <= 0 selects the default horizon */
} gathering_sim_options;

typedef struct gathering_sweep_options {
    int n;
    int count;
    uint64_t seed;
    gathering_class feasibility;
    gathering_algorithm algorithm;
    const char* assumption_set; /* may be NULL unless algorithm is GATHER_A */
    double epsilon;             /* <= 0 selects 0.5 */
    double spatial_scale;       /* <= 0 selects 2 */
    double time_scale;          /* <= 0 selects 3 */
    double horizon;             /* <= 0 selects the default horizon */
    unsigned threads;           /* 0 selects hardware concurrency */
} gathering_sweep_options;

GATHERING_API const char* gathering_last_error(void);

/* configurations */
GATHERING_API gathering_status gathering_config_load(const char* path, gathering_config** out);
GATHERING_API gathering_status gathering_config_from_json(const char* json, gathering_config** out);
GATHERING_API gathering_status gathering_config_create(double epsilon, size_t n, const double* xs, const double* ys,
                                                       const double* ts, gathering_config** out);
GATHERING_API gathering_status gathering_config_save(const gathering_config* cfg, const char* path);
GATHERING_API size_t gathering_config_size(const gathering_config* cfg);
GATHERING_API void gathering_config_free(gathering_config* cfg);

/* witness_i / witness_j are set to SIZE_MAX when there is no witness; either may be NULL */
GATHERING_API gathering_status gathering_classify(const gathering_config* cfg, gathering_class* out,
                                                  size_t* witness_i, size_t* witness_j);

/* simulation */
GATHERING_API gathering_status gathering_simulate(const gathering_config* cfg, const gathering_sim_options* opts,
                                                  gathering_trace** out);
GATHERING_API gathering_verdict gathering_trace_verdict(const gathering_trace* trace);
GATHERING_API double gathering_trace_end_time(const gathering_trace* trace);
GATHERING_API size_t gathering_trace_event_count(const gathering_trace* trace);
GATHERING_API size_t gathering_trace_ga_count(const gathering_trace* trace);
GATHERING_API size_t gathering_trace_group_count(const gathering_trace* trace);
GATHERING_API gathering_status gathering_trace_group_point(const gathering_trace* trace, size_t group, double* x,
                                                           double* y);
GATHERING_API gathering_status gathering_trace_write_jsonl(const gathering_trace* trace, const char* path);
GATHERING_API gathering_status gathering_trace_write_svg(const gathering_trace* trace, const char* path);
GATHERING_API void gathering_trace_free(gathering_trace* trace);

/* assumption sets: *independent is 1 or 0; when dependent and buffer is not
 * NULL, the certificate ("7 = 2·2 + 1·3", UTF-8) is written there */
GATHERING_API gathering_status gathering_check_independence(const char* set, int* independent, char* buffer,
                                                            size_t buffer_size);
GATHERING_API gathering_status gathering_build_counterexample(const char* set, double epsilon,
                                                              gathering_config** out);

/* sweeps */
GATHERING_API void gathering_sweep_options_init(gathering_sweep_options* opts);
GATHERING_API gathering_status gathering_sweep_run(const gathering_sweep_options* opts, gathering_sweep** out);
GATHERING_API size_t gathering_sweep_runs(const gathering_sweep* sweep);
GATHERING_API size_t gathering_sweep_gathered(const gathering_sweep* sweep);
GATHERING_API double gathering_sweep_max_time(const gathering_sweep* sweep);
GATHERING_API size_t gathering_sweep_ga_events(const gathering_sweep* sweep);
GATHERING_API size_t gathering_sweep_violations(const gathering_sweep* sweep);
/* human-readable summary; *written receives the length needed (without the terminator) */
GATHERING_API gathering_status gathering_sweep_summary(const gathering_sweep* sweep, char* buffer, size_t buffer_size,
                                                       size_t* written);
GATHERING_API void gathering_sweep_free(gathering_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif
