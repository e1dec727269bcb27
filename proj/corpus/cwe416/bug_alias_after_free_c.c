int cwe416_bug_alias_after_free_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  char *q = p;
  q[0] = 2;
  return 0;
}
