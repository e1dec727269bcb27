int cwe415_ok_nulled_between_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  p = NULL;
  free(p);
  return 0;
}
