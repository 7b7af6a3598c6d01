/* Build: cc decode.c -I../include -L../../../target/debug -lhelixtext_ffi -lpthread -ldl -lm */
#include <stdio.h>
#include <string.h>
#include "helixtext.h"

int main(void) {
    const char *fasta = ">one\nAAAATTTGGC\n";
    HtGenome *genome = NULL;
    HtMapping *mapping = NULL;
    char *text = NULL;
    HtWindowSpec spec = {10, 1, 10, HT_DIRECTION_BACKWARD};

    if (ht_genome_parse((const uint8_t *)fasta, strlen(fasta), false, &genome) != HT_STATUS_OK ||
        ht_mapping_fixture(&mapping) != HT_STATUS_OK ||
        ht_decode(genome, &spec, mapping, &text) != HT_STATUS_OK) {
        fprintf(stderr, "error: %s\n", ht_last_error_message());
        return 1;
    }
    printf("%s\n", text);
    ht_string_free(text);
    ht_mapping_free(mapping);
    ht_genome_free(genome);
    return 0;
}
