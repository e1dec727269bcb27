int cwe415_bug_error_flag_c_main(int c) {
  int rc = 0;
  char *p = calloc(4, 4);
  if (c > 2) {
    free(p);
    rc = 1;
  }
  free(p);
  return rc;
}
