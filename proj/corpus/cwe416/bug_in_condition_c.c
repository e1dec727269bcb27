int cwe416_bug_in_condition_c_main(int c) {
  char *p = calloc(4, 4);
  p[0] = 1;
  free(p);
  if (p[0] == 1) {
    c = 2;
  }
  return c;
}
