int cwe416_bug_alias_after_free_m_main(int c) {
  char *p = malloc(16);
  free(p);
  char *q = p;
  q[0] = 2;
  return 0;
}
