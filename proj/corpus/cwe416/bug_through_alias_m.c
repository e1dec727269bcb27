int cwe416_bug_through_alias_m_main(int c) {
  char *p = malloc(16);
  char *q = p;
  free(p);
  q[0] = 1;
  return 0;
}
