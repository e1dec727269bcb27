char *cwe401_ok_wrapper_result_freed_c_make(int n) {
  char *b = calloc(4, 4);
  return b;
}

int cwe401_ok_wrapper_result_freed_c_main(int c) {
  char *p = cwe401_ok_wrapper_result_freed_c_make(8);
  p[0] = 1;
  free(p);
  return 0;
}
