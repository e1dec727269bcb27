int cwe416_ok_nulled_after_free_m_main(int c) {
  char *p = malloc(16);
  free(p);
  p = NULL;
  return 0;
}
