int cwe415_bug_alias_chain_m_main(int c) {
  char *p = malloc(16);
  char *q = p;
  char *r = q;
  free(r);
  free(p);
  return 0;
}
