int cwe415_ok_reallocated_between_m_main(int c) {
  char *p = malloc(16);
  free(p);
  p = malloc(16);
  free(p);
  return 0;
}
