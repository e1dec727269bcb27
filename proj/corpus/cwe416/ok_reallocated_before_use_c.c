int cwe416_ok_reallocated_before_use_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  p = calloc(4, 4);
  *p = 1;
  free(p);
  return 0;
}
