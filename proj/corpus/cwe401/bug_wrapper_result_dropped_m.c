char *cwe401_bug_wrapper_result_dropped_m_make(int n) {
  char *b = malloc(16);
  return b;
}

int cwe401_bug_wrapper_result_dropped_m_main(int c) {
  char *p = cwe401_bug_wrapper_result_dropped_m_make(4);
  p[0] = 1;
  return 0;
}
