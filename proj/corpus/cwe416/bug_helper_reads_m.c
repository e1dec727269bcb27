int cwe416_bug_helper_reads_m_show(char *b) {
  return b[0];
}

int cwe416_bug_helper_reads_m_main(int c) {
  char *p = malloc(16);
  free(p);
  return cwe416_bug_helper_reads_m_show(p);
}
