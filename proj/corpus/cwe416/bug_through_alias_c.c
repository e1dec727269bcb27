int cwe416_bug_through_alias_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = p;
  free(p);
  q[0] = 1;
  return 0;
}
