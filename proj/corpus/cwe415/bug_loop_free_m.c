int cwe415_bug_loop_free_m_main(int c) {
  char *p = malloc(16);
  while (c) {
    free(p);
    c = c - 1;
  }
  return 0;
}
