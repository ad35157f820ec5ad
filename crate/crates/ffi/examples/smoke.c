/* Links against libqcert_ffi and checks one identity at a given point. */
#include <stdio.h>
#include <string.h>

#include "qcert.h"

int main(void) {
    char *lhs = NULL, *rhs = NULL;
    QcertStatus s = qcert_eval_sides_str("jackson_8phi7", "a=3,b=1/2,c=5,d=1/7,q=2,n=3", &lhs, &rhs);
    if (s != QCERT_STATUS_OK) {
        char *msg = qcert_last_error_message();
        fprintf(stderr, "status %d: %s\n", (int)s, msg ? msg : "");
        qcert_string_free(msg);
        return 1;
    }
    printf("%s %s\n", lhs, rhs);
    int same = strcmp(lhs, rhs) == 0;
    qcert_string_free(lhs);
    qcert_string_free(rhs);

    s = qcert_eval_sides_str("nope", "q=2", &lhs, &rhs);
    if (s != QCERT_STATUS_UNKNOWN_ID) {
        return 1;
    }
    return same ? 0 : 1;
}
