int cwe401_bug_early_return_m_main(int c) {
  char *p = malloc(16);
  if (c > 3) {
    return 1;
  }
  free(p);
  return 0;
}
