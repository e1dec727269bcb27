int cwe416_bug_conditional_use_c_main(int c) {
  int x = 0;
  char *p = calloc(4, 4);
  free(p);
  if (c) {
    x = *p;
  }
  return x;
}
