int cwe416_ok_use_then_free_m_main(int c) {
  char *p = malloc(16);
  *p = 1;
  free(p);
  return 0;
}
