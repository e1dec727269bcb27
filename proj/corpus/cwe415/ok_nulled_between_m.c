int cwe415_ok_nulled_between_m_main(int c) {
  char *p = malloc(16);
  free(p);
  p = NULL;
  free(p);
  return 0;
}
