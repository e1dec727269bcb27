int cwe416_bug_loop_after_free_m_main(int c) {
  char *p = malloc(16);
  free(p);
  while (c) {
    p[c] = 0;
    c = c - 1;
  }
  return 0;
}
