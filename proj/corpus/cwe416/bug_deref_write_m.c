int cwe416_bug_deref_write_m_main(int c) {
  char *p = malloc(16);
  free(p);
  *p = 1;
  return 0;
}
