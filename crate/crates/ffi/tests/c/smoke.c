#include <stdio.h>
#include <string.h>
#include "fusioncheck.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        FcStatus st_ = (call);                                             \
        if (st_ != FC_STATUS_OK) {                                         \
            fprintf(stderr, "%s: %s (%s)\n", #call, fc_status_name(st_),   \
                    fc_last_error());                                      \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    FcGroup *g = NULL;
    FcFusion *f = NULL;
    size_t order = 0, s_order = 0, op = 0;
    bool ss = true, nil = true, pss = true;
    char *json = NULL;

    CHECK(fc_group_from_source("builder:symmetric(4)", &g));
    CHECK(fc_group_order(g, &order));
    CHECK(fc_fusion_new(g, 2, &f));
    CHECK(fc_fusion_sylow_order(f, &s_order));
    CHECK(fc_fusion_o_p_order(f, &op));
    CHECK(fc_fusion_is_supersolvable(f, &ss));
    CHECK(fc_fusion_is_nilpotent(f, &nil));
    CHECK(fc_is_p_supersolvable(g, 2, &pss));
    CHECK(fc_check_json(g, "B", 2, &json));
    printf("order=%zu sylow=%zu op=%zu supersolvable=%d nilpotent=%d p_supersolvable=%d\n",
           order, s_order, op, ss, nil, pss);
    printf("b_report_has_theorem=%d\n", strstr(json, "\"theorem\":\"B\"") != NULL);
    fc_string_free(json);
    fc_fusion_free(f);
    fc_group_free(g);

    /* (1 2 3) and (1 2) as 1-based image lists */
    const uint32_t gens[] = {2, 3, 1, 2, 1, 3};
    CHECK(fc_group_from_generators(3, gens, 2, &g));
    CHECK(fc_group_order(g, &order));
    printf("generated=%zu\n", order);
    fc_group_free(g);

    FcStatus st = fc_group_from_source("fixture:missing", &g);
    printf("missing=%s\n", fc_status_name(st));
    return 0;
}
