int cwe416_bug_helper_reads_c_show(char *b) {
  return b[0];
}

int cwe416_bug_helper_reads_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  return cwe416_bug_helper_reads_c_show(p);
}
