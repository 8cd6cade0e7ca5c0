#ifndef GAUDIN_H
#define GAUDIN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GAUDIN_API __declspec(dllexport)
#else
#define GAUDIN_API __attribute__((visibility("default")))
#endif

/* Status codes double as the command-line exit codes. */
typedef enum gaudin_status {
  GAUDIN_OK = 0,
  GAUDIN_IDENTITY_FAILED = 1,
  GAUDIN_ERR_USAGE = 2,
  GAUDIN_ERR_INVALID_SIZES = 3,
  GAUDIN_ERR_NON_DISTINCT_Z = 4,
  GAUDIN_ERR_WINDOW_TOO_SHALLOW = 5,
  GAUDIN_ERR_PARSE = 6,
  GAUDIN_ERR_UNKNOWN_COMMAND = 7,
  GAUDIN_ERR_INTERNAL = 8
} gaudin_status;

typedef struct gaudin_params gaudin_params;
typedef struct gaudin_report gaudin_report;

/* Sizes are checked when a command runs. The truncation starts at the default
   for the sizes; z and lambda start empty. */
GAUDIN_API gaudin_status gaudin_params_create(int m, int n, int k, gaudin_params** out);
/* Comma-separated rationals, each an integer or p/q. */
GAUDIN_API gaudin_status gaudin_params_set_z(gaudin_params* params, const char* csv);
GAUDIN_API gaudin_status gaudin_params_set_lambda(gaudin_params* params, const char* csv);
GAUDIN_API void gaudin_default_truncation(int m, int n, int k, int* v_floor, int* d_floor, int* w_top);
GAUDIN_API gaudin_status gaudin_params_set_truncation(gaudin_params* params, int v_floor, int d_floor, int w_top);
GAUDIN_API void gaudin_params_destroy(gaudin_params* params);

/* command: duality, capelli-g, capelli-bhat, ber-invariance, commutativity,
   classical-duality, phi, manin or coeffs. seed feeds the random checks. */
GAUDIN_API gaudin_status gaudin_run(const gaudin_params* params, const char* command, unsigned seed,
                                    gaudin_report** out);

/* 1 when every compared slot passed. */
GAUDIN_API int gaudin_report_passed(const gaudin_report* report);
/* The returned strings belong to the report and stay valid until the next
   render call on it or its destruction. */
GAUDIN_API const char* gaudin_report_json(gaudin_report* report, int with_timing);
GAUDIN_API const char* gaudin_report_text(gaudin_report* report, int with_timing);
GAUDIN_API void gaudin_report_destroy(gaudin_report* report);

/* Message of the most recent failure on this thread, "" if none. */
GAUDIN_API const char* gaudin_last_error(void);
GAUDIN_API const char* gaudin_status_name(gaudin_status status);

#ifdef __cplusplus
}
#endif

#endif /* GAUDIN_H */
