char *cwe401_ok_wrapper_result_freed_m_make(int n) {
  char *b = malloc(16);
  return b;
}

int cwe401_ok_wrapper_result_freed_m_main(int c) {
  char *p = cwe401_ok_wrapper_result_freed_m_make(8);
  p[0] = 1;
  free(p);
  return 0;
}
