void cwe415_bug_inside_helper_m_done(char *b) {
  free(b);
  free(b);
}

int cwe415_bug_inside_helper_m_main(int c) {
  char *p = malloc(16);
  cwe415_bug_inside_helper_m_done(p);
  return 0;
}
