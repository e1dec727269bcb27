int cwe401_bug_no_free_m_main(int c) {
  char *p = malloc(16);
  p[0] = 1;
  return 0;
}
