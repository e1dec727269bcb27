int cwe415_bug_alias_assigned_m_main(int c) {
  char *p = malloc(16);
  char *q;
  q = p;
  free(q);
  free(p);
  return 0;
}
