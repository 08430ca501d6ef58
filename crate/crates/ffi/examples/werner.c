#include <stdio.h>
#include "steercoh.h"

int main(void) {
    ScState *s = NULL;
    if (sc_state_werner(0.7, &s) != SC_STATUS_OK) {
        fprintf(stderr, "%s\n", sc_last_error_message());
        return 1;
    }
    ScMscResult r;
    ScStatus st = sc_msc(s, 0, &r);
    sc_state_free(s);
    if (st != SC_STATUS_OK) {
        fprintf(stderr, "%s\n", sc_last_error_message());
        return 1;
    }
    printf("msc %.9f\n", r.value);
    return 0;
}
