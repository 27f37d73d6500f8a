#include <stdio.h>
#include <string.h>
#include "ln_kit.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    LnSolutionSet *set = NULL;
    CHECK(ln_solve(0, 12, "1000000", &set) == LN_STATUS_OK);
    CHECK(ln_solution_set_len(set) == 2);
    char *x = NULL, *y = NULL;
    uint32_t n = 0;
    CHECK(ln_solution_set_get(set, 1, &x, &y, &n) == LN_STATUS_OK);
    CHECK(strcmp(x, "559") == 0 && strcmp(y, "5") == 0 && n == 7);
    printf("%s %s %u\n", x, y, n);
    ln_string_free(x);
    ln_string_free(y);
    CHECK(ln_solution_set_get(set, 2, &x, &y, &n) == LN_STATUS_INVALID_ARGUMENT);
    CHECK(ln_last_error() != NULL);
    ln_solution_set_free(set);

    uint64_t h = 0;
    CHECK(ln_class_number(-23, &h) == LN_STATUS_OK && h == 3);
    char *u = NULL;
    CHECK(ln_lucas_u(1, 5, 7, &u) == LN_STATUS_OK && strcmp(u, "1") == 0);
    ln_string_free(u);
    return 0;
}
