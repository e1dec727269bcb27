int cwe401_bug_alias_then_overwrite_m_main(int c) {
  char *p = malloc(16);
  char *q = p;
  q[0] = 1;
  p = malloc(16);
  free(p);
  return 0;
}
