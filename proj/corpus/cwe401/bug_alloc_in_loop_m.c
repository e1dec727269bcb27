int cwe401_bug_alloc_in_loop_m_main(int c) {
  char *p = 0;
  while (c) {
    p = malloc(16);
    p[0] = 1;
    c = c - 1;
  }
  free(p);
  return 0;
}
