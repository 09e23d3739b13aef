#include <stdio.h>
#include <string.h>
#include "sortstat.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, sortstat_last_error()); return 1; } } while (0)

int main(void) {
    SortstatPermutation *p = NULL;
    size_t v = 0;
    CHECK(sortstat_perm_parse("6571342", &p) == SORTSTAT_STATUS_OK);
    CHECK(sortstat_perm_sor(p, &v) == SORTSTAT_STATUS_OK && v == 16);
    sortstat_perm_free(p);

    SortstatSignedPermutation *s = NULL;
    CHECK(sortstat_sperm_parse("-5,1,3,-4,-2", &s) == SORTSTAT_STATUS_OK);
    CHECK(sortstat_sperm_sor_b(s, &v) == SORTSTAT_STATUS_OK && v == 13);
    CHECK(sortstat_sperm_sor_d(s, &v) == SORTSTAT_STATUS_INVALID_OBJECT);
    CHECK(strlen(sortstat_last_error()) > 0);
    sortstat_sperm_free(s);

    const char *ids[] = {"LASTHM"};
    SortstatReport *r = NULL;
    CHECK(sortstat_verify(ids, 1, 4, &r) == SORTSTAT_STATUS_OK);
    CHECK(sortstat_report_passed(r) == 1);
    char *json = sortstat_report_json(r);
    CHECK(strstr(json, "\"LASTHM\"") != NULL);
    sortstat_string_free(json);
    sortstat_report_free(r);

    puts("ok");
    return 0;
}
