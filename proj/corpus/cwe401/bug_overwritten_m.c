int cwe401_bug_overwritten_m_main(int c) {
  char *p = malloc(16);
  p = malloc(16);
  free(p);
  return 0;
}
