int cwe416_ok_disjoint_arms_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    free(p);
  } else {
    p[0] = 1;
    free(p);
  }
  return 0;
}
