int cwe401_ok_null_checked_m_main(int c) {
  char *p = malloc(16);
  if (p == NULL) {
    return 1;
  }
  p[0] = 1;
  free(p);
  return 0;
}
