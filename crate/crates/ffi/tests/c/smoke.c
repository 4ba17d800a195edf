#include <stdio.h>
#include <string.h>

#include "ginzero.h"

int main(void) {
    GzIdeal *ideal = NULL;
    const char *job = "{\"vars\":[\"x\",\"y\"],\"char\":3,\"gens\":[\"x^6\",\"y^6\"]}";
    if (gz_ideal_parse(job, &ideal) != GZ_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", gz_last_error_message());
        return 1;
    }
    int64_t reg = 0;
    if (gz_ideal_regularity(ideal, 0, &reg) != GZ_STATUS_OK || reg != 11) {
        fprintf(stderr, "regularity %lld: %s\n", (long long)reg, gz_last_error_message());
        return 1;
    }
    char *report = NULL;
    int32_t exit_code = -1;
    if (gz_run_job(ideal, "gin0", &report, &exit_code) != GZ_STATUS_OK || exit_code != 0) {
        fprintf(stderr, "run: %s\n", gz_last_error_message());
        return 1;
    }
    int ok = strstr(report, "x^4*y^3") != NULL;
    gz_string_free(report);
    gz_ideal_free(ideal);
    if (gz_ideal_parse("{\"char\":4}", &ideal) != GZ_STATUS_PARSE) {
        return 1;
    }
    printf("reg %lld\n", (long long)reg);
    return ok ? 0 : 1;
}
