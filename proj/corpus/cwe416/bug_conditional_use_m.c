int cwe416_bug_conditional_use_m_main(int c) {
  int x = 0;
  char *p = malloc(16);
  free(p);
  if (c) {
    x = *p;
  }
  return x;
}
