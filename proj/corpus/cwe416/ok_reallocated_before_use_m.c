int cwe416_ok_reallocated_before_use_m_main(int c) {
  char *p = malloc(16);
  free(p);
  p = malloc(16);
  *p = 1;
  free(p);
  return 0;
}
