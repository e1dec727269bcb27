int cwe415_ok_reallocated_between_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  p = calloc(4, 4);
  free(p);
  return 0;
}
