int cwe416_ok_use_then_free_c_main(int c) {
  char *p = calloc(4, 4);
  *p = 1;
  free(p);
  return 0;
}
