int cwe416_bug_in_condition_m_main(int c) {
  char *p = malloc(16);
  p[0] = 1;
  free(p);
  if (p[0] == 1) {
    c = 2;
  }
  return c;
}
