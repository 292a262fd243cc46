#include <stdio.h>
#include "rankcrit.h"

int main(void) {
    RcRational *r = NULL;
    if (rc_density_3x3(2, &r) != RC_STATUS_OK) {
        fprintf(stderr, "%s\n", rc_last_error());
        return 1;
    }
    char *s = rc_rational_to_string(r);
    printf("%s %.6g\n", s, rc_rational_to_f64(r));
    rc_string_free(s);
    rc_rational_free(r);
    return 0;
}
