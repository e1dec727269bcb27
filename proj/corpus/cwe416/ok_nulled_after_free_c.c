int cwe416_ok_nulled_after_free_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  p = NULL;
  return 0;
}
