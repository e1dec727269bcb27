int cwe415_bug_error_flag_m_main(int c) {
  int rc = 0;
  char *p = malloc(16);
  if (c > 2) {
    free(p);
    rc = 1;
  }
  free(p);
  return rc;
}
