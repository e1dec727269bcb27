int cwe415_bug_alias_declared_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = p;
  free(p);
  free(q);
  return 0;
}
