int cwe415_bug_first_conditional_m_main(int c) {
  char *p = malloc(16);
  if (c) {
    free(p);
  }
  free(p);
  return 0;
}
