int cwe415_bug_second_conditional_m_main(int c) {
  char *p = malloc(16);
  free(p);
  if (c) {
    free(p);
  }
  return 0;
}
