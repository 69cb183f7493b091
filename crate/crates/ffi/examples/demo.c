/* cargo build -p heightlab-ffi
 * cc examples/demo.c -Iinclude ../../target/debug/libheightlab_ffi.a -lm -lpthread -ldl -o demo */
#include <stdio.h>
#include "heightlab.h"

int main(void) {
    HlCurve *e = NULL;
    HlPoint *p = NULL;
    HlReal h;
    if (hl_curve_parse("0,0,1,-1,0", &e) != HL_STATUS_OK) {
        fprintf(stderr, "%s\n", hl_last_error());
        return 1;
    }
    if (hl_point_parse(e, "0,0", &p) != HL_STATUS_OK ||
        hl_canonical_height(e, p, 1e-10, &h) != HL_STATUS_OK) {
        fprintf(stderr, "%s\n", hl_last_error());
        return 1;
    }
    printf("h(0,0) = %.10f +- %.1e\n", h.value, h.error);
    hl_point_free(p);
    hl_curve_free(e);
    return 0;
}
