char *cwe401_bug_wrapper_result_dropped_c_make(int n) {
  char *b = calloc(4, 4);
  return b;
}

int cwe401_bug_wrapper_result_dropped_c_main(int c) {
  char *p = cwe401_bug_wrapper_result_dropped_c_make(4);
  p[0] = 1;
  return 0;
}
