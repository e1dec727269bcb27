int cwe401_ok_null_checked_c_main(int c) {
  char *p = calloc(4, 4);
  if (p == NULL) {
    return 1;
  }
  p[0] = 1;
  free(p);
  return 0;
}
