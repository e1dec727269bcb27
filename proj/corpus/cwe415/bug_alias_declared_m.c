int cwe415_bug_alias_declared_m_main(int c) {
  char *p = malloc(16);
  char *q = p;
  free(p);
  free(q);
  return 0;
}
