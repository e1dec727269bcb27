int cwe415_bug_free_then_loop_m_main(int c) {
  char *p = malloc(16);
  free(p);
  while (c) {
    c = c - 1;
    free(p);
  }
  return 0;
}
