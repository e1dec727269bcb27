int cwe415_bug_alias_chain_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = p;
  char *r = q;
  free(r);
  free(p);
  return 0;
}
