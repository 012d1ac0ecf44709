#include <stdio.h>
#include <string.h>

#include "tempus.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            const char *msg = tempus_last_error();                    \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, msg ? msg : "no error");                   \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    TempusBuilder *b = tempus_builder_new(2005, 2011);
    CHECK(b != NULL);
    CHECK(tempus_builder_add_node(b, "u", "HIA", 2005) == TEMPUS_STATUS_OK);
    CHECK(tempus_builder_add_edge(b, "u", "v", 2007) == TEMPUS_STATUS_OK);
    CHECK(tempus_builder_add_edge(b, "v", "w", 2006) == TEMPUS_STATUS_OK);

    TempusGraph *g = NULL;
    CHECK(tempus_builder_build(b, &g) == TEMPUS_STATUS_OK);
    CHECK(tempus_graph_node_count(g) == 3);

    TempusScores *st = NULL;
    TempusScores *tb = NULL;
    CHECK(tempus_static_betweenness(g, 2005, 2011, false, &st) == TEMPUS_STATUS_OK);
    CHECK(tempus_foremost_betweenness(g, 2005, 2011, false, &tb) == TEMPUS_STATUS_OK);

    double score = -1.0;
    size_t rank = 0;
    CHECK(strcmp(tempus_scores_node(st, 0), "v") == 0);
    CHECK(tempus_scores_get(st, 0, &score, &rank) == TEMPUS_STATUS_OK);
    CHECK(score == 1.0 && rank == 1);
    for (size_t i = 0; i < tempus_scores_len(tb); i++) {
        CHECK(tempus_scores_get(tb, i, &score, NULL) == TEMPUS_STATUS_OK);
        CHECK(score == 0.0);
    }
    CHECK(tempus_scores_get(tb, 99, &score, NULL) == TEMPUS_STATUS_OUT_OF_RANGE);

    TempusFlowLabel label;
    CHECK(tempus_classify(117, 9, 20, 100, &label) == TEMPUS_STATUS_OK);
    CHECK(label == TEMPUS_FLOW_LABEL_INVISIBLE_BROOK);
    CHECK(tempus_classify(1, 1, 20, 20, &label) == TEMPUS_STATUS_INVALID_ARGUMENT);

    tempus_scores_free(st);
    tempus_scores_free(tb);
    tempus_graph_free(g);
    printf("ok %s\n", tempus_version());
    return 0;
}
