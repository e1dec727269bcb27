int cwe415_ok_fresh_each_iteration_m_main(int c) {
  while (c) {
    char *p = malloc(16);
    free(p);
    c = c - 1;
  }
  return 0;
}
