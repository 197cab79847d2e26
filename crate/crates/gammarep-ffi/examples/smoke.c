#include <math.h>
#include <stdio.h>

#include "gammarep.h"

int main(void) {
    double v = 0.0;
    if (gammarep_psi_ref(1.0, &v) != GAMMAREP_STATUS_OK || fabs(v + 0.5772156649015329) > 1e-15) {
        fprintf(stderr, "psi_ref failed\n");
        return 1;
    }

    GammarepCtx *ctx = gammarep_ctx_new();
    GammarepResult r;
    if (gammarep_psi(ctx, 0.5, "exp-integral", &r) != GAMMAREP_STATUS_OK) {
        fprintf(stderr, "psi failed: %s\n", gammarep_last_error());
        return 1;
    }
    printf("psi(1/2) = %.17g (err %.3g)\n", r.value, r.err_est);

    if (gammarep_psi_ref(-1.0, &v) != GAMMAREP_STATUS_DOMAIN) {
        fprintf(stderr, "expected a domain error\n");
        return 1;
    }
    printf("error: %s\n", gammarep_last_error());
    gammarep_ctx_free(ctx);
    return 0;
}
