int cwe401_bug_alias_then_overwrite_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = p;
  q[0] = 1;
  p = calloc(4, 4);
  free(p);
  return 0;
}
