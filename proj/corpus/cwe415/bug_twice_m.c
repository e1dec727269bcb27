int cwe415_bug_twice_m_main(int c) {
  char *p = malloc(16);
  free(p);
  free(p);
  return 0;
}
